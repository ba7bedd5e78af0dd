"""Multiplicative bounds on orders of finite matrix groups.

``minkowski_bound`` is the least common multiple of the orders of all finite
groups of n x n rational matrices; ``schur_bound`` is the trace-field
generalization, supported here for Q and for cyclotomic fields given by a
conductor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exactnum import (
    Factorization,
    factorial_p_part,
    is_prime,
    sieve_primes,
    valuation,
)


def minkowski_bound(n: int) -> Factorization:
    """lcm of the orders of all finite subgroups of GL_n(Q), as a Factorization.

    The exponent of p is the floor sum over i >= 0 of n / (p^i (p-1));
    primes above n+1 contribute nothing.
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    exps = {}
    for p in sieve_primes(n + 2):
        e = 0
        q = p - 1
        while n >= q:
            e += n // q
            q *= p
        if e:
            exps[p] = e
    return Factorization(exps)


def minkowski_p_part(n: int, p: int) -> Factorization:
    """p-part of minkowski_bound(n), by the compact factorial formula.

    Computed as p^a (a!)_p with a = floor(n/(p-1)) and checked against the
    floor-sum series before returning.
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a = n // (p - 1)
    e = a + factorial_p_part(a, p).exponent(p)
    series = 0
    q = p - 1
    while n >= q:
        series += n // q
        q *= p
    assert e == series, "compact and series forms must agree"
    return Factorization({p: e} if e else {})


def minkowski_recursion_check(n: int) -> tuple[bool, Factorization]:
    """Check the two-step recursion of the bound sequence at index n.

    Verifies M(2n+1) = 2 M(2n) and M(2n) = 2 M(2n-1) * T where the step
    term T multiplies p^(1 + v_p(n)) over the primes p with p-1 | 2n.
    Returns (both equalities hold, T).
    """
    if n < 1:
        raise ValueError(f"index must be positive, got {n}")
    exps = {}
    for p in sieve_primes(2 * n + 2):
        if (2 * n) % (p - 1) == 0:
            exps[p] = 1 + valuation(n, p)
    term = Factorization(exps)
    two = Factorization({2: 1})
    odd_ok = minkowski_bound(2 * n + 1) == two * minkowski_bound(2 * n)
    even_ok = minkowski_bound(2 * n) == two * minkowski_bound(2 * n - 1) * term
    return odd_ok and even_ok, term


@dataclass(frozen=True)
class SchurField:
    """Trace field for the Schur bound: Q, or a cyclotomic field by conductor."""

    conductor: int | None  # None means Q

    @classmethod
    def rational(cls) -> "SchurField":
        return cls(None)

    @classmethod
    def cyclotomic(cls, k: int) -> "SchurField":
        if k < 1:
            raise ValueError(f"conductor must be positive, got {k}")
        return cls(k)

    @property
    def is_rational(self) -> bool:
        return self.conductor is None

    def __str__(self) -> str:
        return "Q" if self.conductor is None else f"Q(zeta_{self.conductor})"


@dataclass(frozen=True)
class SchurParams:
    """Per-prime data (m, t) entering the Schur bound's ell-factor."""

    ell: int
    m: int
    t: int

    def __post_init__(self):
        if self.m < 1 or self.t < 1:
            raise ValueError("m and t must be positive")
        if self.ell == 2:
            if self.t not in (1, 2):
                raise ValueError("t must be 1 or 2 for ell = 2")
        elif (self.ell - 1) % self.t != 0:
            raise ValueError("t must divide ell - 1 for odd ell")


def schur_params(K: SchurField, ell: int) -> SchurParams:
    """(m, t) for the field K at the prime ell.

    For conductor k: m = max(1, v_ell(k)); t = 1 if ell divides k, else
    ell - 1.  Q behaves as conductor 1.
    """
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    k = 1 if K.is_rational else K.conductor
    m = max(1, valuation(k, ell))
    t = 1 if k % ell == 0 else ell - 1
    return SchurParams(ell, m, t)


def schur_bound(n: int, K: SchurField) -> Factorization:
    """The trace-field bound S(n, K) as a Factorization.

    2^(n - floor(n/t_2)) times, over each prime ell, ell^(m * floor(n/t))
    times the ell-part of floor(n/t)!.  Only primes with t <= n contribute,
    so the candidate set is primes <= n+1 plus primes dividing the conductor.
    """
    if n < 0:
        raise ValueError(f"dimension must be non-negative, got {n}")
    if n == 0:
        return Factorization.one()
    k = 1 if K.is_rational else K.conductor
    candidates = set(sieve_primes(n + 2))
    for p in (factor for factor in range(2, k + 1) if k % factor == 0 and is_prime(factor)):
        candidates.add(p)
    t2 = schur_params(K, 2).t
    exps = {2: n - n // t2} if n - n // t2 else {}
    result = Factorization(exps)
    for ell in sorted(candidates):
        par = schur_params(K, ell)
        b = n // par.t
        if b == 0:
            continue
        ell_fact = Factorization({ell: par.m * b}) * factorial_p_part(b, ell)
        result = result * ell_fact
    return result


def schur_divisibility_checks(
    m: int, n: int, K: SchurField, K_prime: SchurField | None = None
) -> bool:
    """Divisibility laws of the bound, compared exponent-wise.

    Always checks S(m,K) S(n,K) | S(m+n,K).  When K_prime is given, also
    checks S(m+n,K) | S(m+n,K_prime); the pair must be comparable, meaning
    K is rational or conductor(K) divides conductor(K_prime).
    """
    if m < 0 or n < 0:
        raise ValueError("sizes must be non-negative")
    product_ok = (schur_bound(m, K) * schur_bound(n, K)).divides(schur_bound(m + n, K))
    if K_prime is None:
        return product_ok
    if not K.is_rational:
        if K_prime.is_rational or K_prime.conductor % K.conductor != 0:
            raise ValueError(
                f"incomparable fields {K} and {K_prime}: need conductor divisibility"
            )
    tower_ok = schur_bound(m + n, K).divides(schur_bound(m + n, K_prime))
    return product_ok and tower_ok


def katznelson_estimate(prime_bound: int, n: int) -> tuple[float, float]:
    """Asymptotic constant of the bound sequence, and the ratio at a given n.

    constant: product over primes p < prime_bound of p^(1/(p-1)^2),
    accumulated in log space.  ratio: (M(n)/n!)^(1/n) from the exact
    factorization of M(n).
    """
    if prime_bound < 2:
        raise ValueError(f"prime bound must be at least 2, got {prime_bound}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    log_c = 0.0
    for p in sieve_primes(prime_bound):
        log_c += math.log(p) / (p - 1) ** 2
    constant = math.exp(log_c)
    log_m = sum(e * math.log(p) for p, e in minkowski_bound(n).items())
    ratio = math.exp((log_m - math.lgamma(n + 1)) / n)
    return constant, ratio
