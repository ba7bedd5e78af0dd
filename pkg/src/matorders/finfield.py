"""Orders of classical groups over finite fields and mod-p reduction.

Order formulas are kept in factored form; a brute-force counter serves as
an independent oracle at tiny sizes.  Reduction of rational matrix groups
modulo p realizes the localization at p entry-wise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from math import gcd

from .bounds import SchurField, minkowski_p_part, schur_bound
from .exactnum import (
    Factorization,
    factorial_p_part,
    factorize,
    is_prime,
    primes,
    valuation,
)
from .matgroup import GroupClosure


def _prime_power(q: int) -> tuple[int, int]:
    """(p, f) with q = p^f, or ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    fac = factorize(q)
    if len(fac.primes()) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = fac.primes()[0]
    return p, fac.exponent(p)


def gl_order(n: int, q: int) -> tuple[Factorization, Factorization]:
    """(order of GL_n over the q-element field, its part prime to char).

    The order is q^(n(n-1)/2) times the product of q^i - 1 for i = 1..n;
    the second component drops the characteristic-power factor.
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    p, f = _prime_power(q)
    coprime = Factorization.one()
    for i in range(1, n + 1):
        coprime = coprime * factorize(q**i - 1)
    assert coprime.exponent(p) == 0
    full = Factorization({p: f * n * (n - 1) // 2}) * coprime
    return full, coprime


_GF4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)


def gl_order_bruteforce(n: int, q: int) -> int:
    """Count invertible n x n matrices over the q-element field directly.

    Enumeration oracle, deliberately restricted to n <= 3 and q <= 5.
    q = 4 uses table arithmetic for the four-element field; other q must
    be prime.
    """
    if n > 3 or q > 5:
        raise ValueError("brute force is limited to n <= 3 and q <= 5")
    if n < 1 or q < 2:
        raise ValueError("need n >= 1 and q >= 2")
    if q == 4:
        mul = lambda a, b: _GF4_MUL[a][b]
        sub = lambda a, b: a ^ b
    else:
        if not is_prime(q):
            raise ValueError(f"{q} is not a prime power handled here")
        mul = lambda a, b: a * b % q
        sub = lambda a, b: (a - b) % q

    def det(m) -> int:
        if n == 1:
            return m[0]
        if n == 2:
            return sub(mul(m[0], m[3]), mul(m[1], m[2]))
        a, b, c, d, e, f, g, h, i = m
        return sub(
            sub(
                mul(a, sub(mul(e, i), mul(f, h))),
                mul(b, sub(mul(d, i), mul(f, g))),
            ),
            sub(0, mul(c, sub(mul(d, h), mul(e, g)))) if False else mul(c, sub(mul(e, g), mul(d, h))),
        )

    count = 0
    for m in iter_product(range(q), repeat=n * n):
        if det(m) != 0:
            count += 1
    return count


_SPECIAL_PRIME_SEARCH_BOUND = 10**6


def _is_special_prime(p: int, ell: int) -> bool:
    """Does p generate the full unit group modulo ell^2?"""
    mod = ell * ell
    target = ell * (ell - 1)
    if p == ell or p % ell == 0:
        return False
    radicals = {ell} | set(factorize(ell - 1).primes())
    return all(pow(p, target // r, mod) != 1 for r in radicals)


def find_special_prime(ell: int, skip: int = 0) -> int:
    """(skip+1)-th smallest prime whose order mod ell^2 is ell(ell-1).

    Such primes make the ell-part of general linear group orders exactly
    predictable.  The search stops at 10^6.
    """
    if ell == 2 or not is_prime(ell):
        raise ValueError(f"{ell} must be an odd prime")
    if skip < 0:
        raise ValueError("skip must be non-negative")
    remaining = skip
    for p in primes():
        if p >= _SPECIAL_PRIME_SEARCH_BOUND:
            break
        if _is_special_prime(p, ell):
            if remaining == 0:
                return p
            remaining -= 1
    raise ValueError(
        f"no qualifying prime below {_SPECIAL_PRIME_SEARCH_BOUND} for ell={ell}"
    )


@dataclass(frozen=True)
class GLPartReport:
    """Predicted vs actual ell-part of a general linear group order."""

    ell: int
    p: int
    f: int
    tau: int
    predicted: Factorization
    actual: Factorization
    match: bool
    minkowski_match: bool | None  # populated only for f = 1


def gl_l_part_check(n: int, f: int, ell: int, p: int) -> GLPartReport:
    """Check the closed form of the ell-part of |GL_n| over the p^f field.

    For p generating the units mod ell^2, the ell-part is
    ell^((1 + v_ell(f)) * floor(n/tau)) * (floor(n/tau)!)_ell with
    tau = (ell-1)/gcd(ell-1, f).  For f = 1 the same quantity must equal
    the ell-part of the dimension-n rational-matrix bound, which is
    reported alongside.
    """
    if n < 1 or f < 1:
        raise ValueError("n and f must be positive")
    if ell == 2 or not is_prime(ell):
        raise ValueError(f"{ell} must be an odd prime")
    if not is_prime(p) or not _is_special_prime(p, ell):
        raise ValueError(f"{p} is not a qualifying prime for ell={ell}")
    tau = (ell - 1) // gcd(ell - 1, f)
    alpha = n // tau
    exp = (1 + valuation(f, ell)) * alpha if alpha else 0
    predicted = Factorization({ell: exp} if exp else {}) * factorial_p_part(alpha, ell)
    actual = gl_order(n, p**f)[0].restrict(ell)
    match = predicted == actual
    minkowski_match = None
    if f == 1:
        minkowski_match = predicted == minkowski_p_part(n, ell)
    return GLPartReport(ell, p, f, tau, predicted, actual, match, minkowski_match)


# --- reduction modulo p ------------------------------------------------------


@dataclass(frozen=True)
class FpMatrix:
    """n x n matrix of residues modulo a prime."""

    p: int
    entries: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.entries)

    def is_identity(self) -> bool:
        n = self.dim
        return all(
            self.entries[i][j] == (1 if i == j else 0)
            for i in range(n)
            for j in range(n)
        )


@dataclass(frozen=True)
class ReductionReport:
    p: int
    injective_on_coprime_order: bool
    kernel_element_orders: tuple[int, ...]


def _reduce_entry(x, p: int) -> int:
    if isinstance(x, int):
        return x % p
    num, den = x.numerator, x.denominator
    if den % p == 0:
        raise ValueError(f"entry {x} has denominator divisible by {p}")
    return num * pow(den, -1, p) % p


def reduce_mod_p(G: GroupClosure, p: int) -> tuple[set[FpMatrix], ReductionReport]:
    """Reduce a rational matrix group entry-wise modulo p.

    Entries may be non-integral as long as denominators are coprime to p.
    The report records whether elements of order coprime to p map
    injectively (they must: kernel elements of the reduction have p-power
    order) and the multiset of orders of the elements that reduce to the
    identity.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if G.field is not None:
        raise ValueError("reduction requires a rational matrix group")
    images = [
        FpMatrix(p, tuple(tuple(_reduce_entry(x, p) for x in row) for row in g.rows))
        for g in G.elements
    ]
    image_set = set(images)
    if len(image_set) == len(images):
        report = ReductionReport(p, True, (1,))
        return image_set, report
    kernel_orders = sorted(
        G.element_order(i) for i, m in enumerate(images) if m.is_identity()
    )
    seen: dict[FpMatrix, int] = {}
    injective = True
    for i, m in enumerate(images):
        if G.element_order(i) % p == 0:
            continue
        if m in seen:
            injective = False
            break
        seen[m] = i
    report = ReductionReport(p, injective, tuple(kernel_orders))
    return image_set, report


# --- isometry group orders ---------------------------------------------------


def isometry_order(
    kind: str,
    n: int,
    q: int,
    epsilon: int | None = None,
) -> Factorization:
    """Order of the isometry group of a non-singular form on n-space.

    kind: "unitary" (q = p^f with f even; the form is hermitian for the
    order-2 field automorphism), "symplectic" (n even), or "orthogonal"
    (even n needs the type sign epsilon = +-1).  Characteristic 2 is not
    supported.
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    p, f = _prime_power(q)
    if p == 2:
        raise ValueError("characteristic 2 is not supported")
    if kind == "unitary":
        if f % 2 != 0:
            raise ValueError("unitary groups need an even-degree field")
        result = Factorization({p: f * n * (n - 1) // 4} if n > 1 else {})
        for i in range(1, n + 1):
            result = result * factorize(p ** (f * i // 2) - (-1) ** i)
        return result
    if kind == "symplectic":
        if n % 2 != 0:
            raise ValueError("symplectic groups need even dimension")
        result = Factorization({p: f * n * n // 4})
        for i in range(1, n // 2 + 1):
            result = result * factorize(q ** (2 * i) - 1)
        return result
    if kind == "orthogonal":
        if n % 2 == 0:
            if epsilon not in (1, -1):
                raise ValueError("even orthogonal groups need epsilon = +1 or -1")
            result = Factorization({2: 1, p: f * n * (n - 2) // 4})
            result = result * factorize(q ** (n // 2) - epsilon)
            for i in range(1, (n - 2) // 2 + 1):
                result = result * factorize(q ** (2 * i) - 1)
            return result
        result = Factorization({2: 1, p: f * (n - 1) ** 2 // 4})
        for i in range(1, (n - 1) // 2 + 1):
            result = result * factorize(q ** (2 * i) - 1)
        return result
    raise ValueError(f"unknown isometry kind {kind!r}")


# --- 2-adic valuation identities ---------------------------------------------


def two_adic_checks(p: int, k: int, i_max: int) -> bool:
    """Check v_2(p^i - (-1)^i) = k + v_2(i) for i = 1..i_max.

    Requires p to be a prime congruent to -1 + 2^k modulo 2^(k+1), k >= 2.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p % 2 ** (k + 1) != (2**k - 1) % 2 ** (k + 1):
        raise ValueError(f"{p} is not congruent to -1 + 2^{k} modulo 2^{k + 1}")
    if i_max < 1:
        raise ValueError("i_max must be positive")
    return all(
        valuation(p**i - (-1) ** i, 2) == k + valuation(i, 2)
        for i in range(1, i_max + 1)
    )


def _orthogonal_core_2val(n: int, q: int) -> int:
    """v_2 of the odd/even-dimension product 2 * prod(q^2i - 1) (q odd)."""
    if n % 2:
        return 1 + sum(valuation(q ** (2 * i) - 1, 2) for i in range(1, (n - 1) // 2 + 1))
    return sum(valuation(q ** (2 * i) - 1, 2) for i in range(1, n // 2 + 1))


def iso_two_part_check(
    n: int,
    p: int,
    *,
    field: SchurField | None = None,
    f: int | None = None,
) -> bool:
    """2-part identities for isometry group orders against the trace bound.

    Unitary mode (field given, conductor 2^m with m >= 2; p must be
    -1 + 2^m mod 2^(m+1)): checks v_2 of prod(p^i - (-1)^i) over i = 1..n
    equals m*n + v_2(n!) and that 2^(that) divides the 2-part of the trace
    bound for the field.

    Real mode (f given, a power of 2; p must be 3 mod 8): checks the 2-part
    of the orthogonal/symplectic core for q = p^f equals
    f^floor(n/2) * 2^n * (n!)_2.
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if (field is None) == (f is None):
        raise ValueError("give exactly one of field= (unitary) or f= (real)")
    if field is not None:
        k = field.conductor
        if k is None or k < 4 or k & (k - 1):
            raise ValueError("field conductor must be a power of 2, at least 4")
        m = k.bit_length() - 1
        if p % 2 ** (m + 1) != (2**m - 1) % 2 ** (m + 1):
            raise ValueError(f"{p} is not congruent to -1 + 2^{m} modulo 2^{m + 1}")
        actual = sum(valuation(p**i - (-1) ** i, 2) for i in range(1, n + 1))
        target = m * n + factorial_p_part(n, 2).exponent(2)
        bound_exp = schur_bound(n, field).exponent(2)
        return actual == target and target <= bound_exp
    if f < 1 or f & (f - 1):
        raise ValueError("f must be a power of 2")
    if p % 8 != 3:
        raise ValueError(f"{p} must be congruent to 3 modulo 8")
    actual = _orthogonal_core_2val(n, p**f)
    target = (n // 2) * valuation(f, 2) + n + factorial_p_part(n, 2).exponent(2)
    return actual == target
