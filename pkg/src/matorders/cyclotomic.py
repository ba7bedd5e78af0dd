"""Exact arithmetic in cyclotomic fields Q(zeta_k).

Elements are residues modulo the k-th cyclotomic polynomial with Fraction
coefficients.  All operations are exact; inversion goes through the extended
Euclidean algorithm in Q[x].
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

# --- dense polynomial helpers (ascending coefficients) ---------------------


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_sub(a: list, b: list) -> list:
    out = list(a) + [0] * (len(b) - len(a))
    for i, bi in enumerate(b):
        out[i] -= bi
    return _trim(out)


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _trim(out)


def _int_poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials with monic divisor."""
    num = list(num)
    assert den and den[-1] == 1, "divisor must be monic"
    dn, dd = len(num) - 1, len(den) - 1
    quot = [0] * (dn - dd + 1)
    for i in range(dn - dd, -1, -1):
        c = num[i + dd]
        quot[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    assert not _trim(num), "division was not exact"
    return quot


def _frac_poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    den = _trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    dd = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(len(num) - dd, 0)
    for i in range(len(num) - dd - 1, -1, -1):
        c = num[i + dd] / lead
        quot[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    return _trim(quot), _trim(num)


def _euler_phi(k: int) -> int:
    phi = 1
    n = k
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            phi *= p - 1
            while n % p == 0:
                n //= p
                phi *= p
        p += 1
    if n > 1:
        phi *= n - 1
    return phi


@lru_cache(maxsize=None)
def cyclotomic_polynomial(k: int) -> tuple[int, ...]:
    """k-th cyclotomic polynomial, ascending integer coefficients.

    Computed as (x^k - 1) divided exactly by the product of the cyclotomic
    polynomials of all proper divisors of k.
    """
    if k < 1:
        raise ValueError(f"conductor must be positive, got {k}")
    if k == 1:
        return (-1, 1)
    num = [0] * (k + 1)
    num[0], num[k] = -1, 1
    den = [1]
    for d in range(1, k):
        if k % d == 0:
            den = _poly_mul(den, list(cyclotomic_polynomial(d)))
    return tuple(_int_poly_divexact(num, den))


class CycloField:
    """The field Q(zeta_k): conductor, degree phi(k), defining polynomial."""

    __slots__ = ("conductor", "degree", "polynomial", "_pow_table")

    def __init__(self, conductor: int):
        if conductor < 1:
            raise ValueError(f"conductor must be positive, got {conductor}")
        self.conductor = conductor
        self.polynomial: tuple[int, ...] = cyclotomic_polynomial(conductor)
        self.degree = len(self.polynomial) - 1
        assert self.degree == _euler_phi(conductor)
        # zeta^m mod polynomial for m = 0..k-1; exponents fold mod k since
        # the polynomial divides x^k - 1.
        d = self.degree
        table = []
        cur = [1] + [0] * (d - 1)
        for _ in range(conductor):
            table.append(tuple(cur))
            lead = cur[d - 1]
            cur = [0] + cur[: d - 1]  # multiply by x
            if lead:  # fold the overflowed x^d term using the monic polynomial
                for j in range(d):
                    cur[j] -= lead * self.polynomial[j]
        self._pow_table: tuple[tuple[int, ...], ...] = tuple(table)

    def zero(self) -> "CycloElem":
        return CycloElem(self, (Fraction(0),) * self.degree)

    def one(self) -> "CycloElem":
        return self.from_rational(1)

    def zeta(self) -> "CycloElem":
        """The root of unity generating the field."""
        coeffs = tuple(Fraction(c) for c in self._pow_table[1 % self.conductor])
        return CycloElem(self, coeffs)

    def from_rational(self, r) -> "CycloElem":
        coeffs = (Fraction(r),) + (Fraction(0),) * (self.degree - 1)
        return CycloElem(self, coeffs)

    def from_coeffs(self, coeffs) -> "CycloElem":
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > self.degree:
            raise ValueError(
                f"{len(cs)} coefficients exceed degree {self.degree} of Q(zeta_{self.conductor})"
            )
        cs += [Fraction(0)] * (self.degree - len(cs))
        return CycloElem(self, tuple(cs))

    def zeta_power(self, m: int) -> "CycloElem":
        coeffs = tuple(Fraction(c) for c in self._pow_table[m % self.conductor])
        return CycloElem(self, coeffs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CycloField) and other.conductor == self.conductor

    def __hash__(self) -> int:
        return hash(("CycloField", self.conductor))

    def __repr__(self) -> str:
        return f"CycloField({self.conductor})"


@lru_cache(maxsize=None)
def cyclo_field(k: int) -> CycloField:
    """The cyclotomic field of conductor k (cached)."""
    return CycloField(k)


class CycloElem:
    """Element of Q(zeta_k): sum of c_j zeta^j for j < degree, c_j rational."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs: tuple[Fraction, ...]):
        if len(coeffs) != field.degree:
            raise ValueError("coefficient count must equal the field degree")
        self.field = field
        self.coeffs = coeffs

    # -- ring structure ------------------------------------------------

    def _coerce(self, other) -> "CycloElem | None":
        if isinstance(other, CycloElem):
            if other.field.conductor != self.field.conductor:
                if other.is_rational() and self.is_rational():
                    return self.field.from_rational(other.as_rational())
                raise ValueError("mixing cyclotomic fields of different conductors")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloElem(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloElem(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        k = self.field.conductor
        conv = [Fraction(0)] * (2 * d - 1 if d > 1 else 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    conv[i + j] += a * b
        out = [Fraction(0)] * d
        table = self.field._pow_table
        for m, c in enumerate(conv):
            if c == 0:
                continue
            row = table[m % k]
            for j in range(d):
                if row[j]:
                    out[j] += c * row[j]
        return CycloElem(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CycloElem":
        """Multiplicative inverse via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError(
                f"division by zero in Q(zeta_{self.field.conductor})"
            )
        # r0 = defining polynomial, r1 = self; track only the self-cofactor.
        r0 = [Fraction(c) for c in self.field.polynomial]
        r1 = _trim([Fraction(c) for c in self.coeffs])
        t0: list[Fraction] = []
        t1: list[Fraction] = [Fraction(1)]
        while r1:
            q, r = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
        assert len(r0) == 1, "defining polynomial is irreducible; gcd must be constant"
        g = r0[0]
        inv = [c / g for c in t0]
        inv += [Fraction(0)] * (self.field.degree - len(inv))
        return CycloElem(self.field, tuple(inv[: self.field.degree]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field.from_rational(other) / self

    def __pow__(self, k: int) -> "CycloElem":
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure queries ----------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction | None:
        """The element as a Fraction, or None if it is irrational."""
        if self.is_rational():
            return self.coeffs[0]
        return None

    def galois_image(self, j: int) -> "CycloElem":
        """Image under zeta -> zeta^j (j coprime to the conductor)."""
        k = self.field.conductor
        if gcd(j, k) != 1:
            raise ValueError(f"{j} is not coprime to the conductor {k}")
        d = self.field.degree
        out = [Fraction(0)] * d
        table = self.field._pow_table
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            row = table[(i * j) % k]
            for t in range(d):
                if row[t]:
                    out[t] += c * row[t]
        return CycloElem(self.field, tuple(out))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycloElem):
            if other.field.conductor == self.field.conductor:
                return self.coeffs == other.coeffs
            return (
                self.is_rational()
                and other.is_rational()
                and self.coeffs[0] == other.coeffs[0]
            )
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.conductor, self.coeffs))

    def __repr__(self) -> str:
        if self.is_rational():
            return f"CycloElem({self.field.conductor}, {self.coeffs[0]})"
        return f"CycloElem({self.field.conductor}, {list(self.coeffs)})"


def cyclo_trace_to_Q(e: CycloElem) -> Fraction:
    """Trace down to Q: sum of all Galois images zeta -> zeta^j, j coprime.

    The sum is Galois-invariant, hence rational; this is asserted on the
    computed coefficients before the rational part is returned.
    """
    k = e.field.conductor
    d = e.field.degree
    total = [Fraction(0)] * d
    units = [0] if k == 1 else [j for j in range(1, k) if gcd(j, k) == 1]
    for j in units:
        img = e.galois_image(j)
        for t in range(d):
            total[t] += img.coeffs[t]
    assert all(c == 0 for c in total[1:]), "Galois-invariant sum must be rational"
    return total[0]
