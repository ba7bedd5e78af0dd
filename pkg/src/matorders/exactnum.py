"""Exact integer arithmetic: primality, p-adic valuations, factorizations.

Everything here is plain Python ``int`` (unbounded) and ``fractions.Fraction``;
the :class:`Factorization` type keeps large values in prime-exponent form so
divisibility questions never materialize huge integers.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

# First 12 primes: deterministic Miller-Rabin witnesses for n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sieve_primes(limit: int) -> list[int]:
    """All primes < limit by a byte sieve."""
    if limit <= 2:
        return []
    sieve = bytearray([1]) * limit
    sieve[0] = sieve[1] = 0
    for p in range(2, int(limit**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit, p)))
    return [i for i in range(limit) if sieve[i]]


def primes() -> Iterator[int]:
    """2, 3, 5, 7, ... without end."""
    yield 2
    n = 3
    while True:
        if is_prime(n):
            yield n
        n += 2


def valuation(m: int, p: int) -> int:
    """Largest v with p^v dividing m (m nonzero)."""
    if m == 0:
        raise ValueError("valuation of 0 is undefined")
    v = 0
    m = abs(m)
    while m % p == 0:
        m //= p
        v += 1
    return v


def p_part(m: int, p: int) -> tuple[int, int]:
    """(v, p^v) where p^v is the largest power of p dividing m.

    Requires m >= 1 and p prime.
    """
    if m < 1:
        raise ValueError(f"p_part requires a positive integer, got {m}")
    if not is_prime(p):
        raise ValueError(f"p_part requires a prime, got {p}")
    v = valuation(m, p)
    return v, p**v


def factorial_p_part(m: int, p: int) -> "Factorization":
    """p-part of m! as a Factorization, via the base-p digit sum of floors."""
    if m < 0:
        raise ValueError(f"factorial_p_part requires m >= 0, got {m}")
    if not is_prime(p):
        raise ValueError(f"factorial_p_part requires a prime, got {p}")
    e = 0
    q = p
    while q <= m:
        e += m // q
        q *= p
    return Factorization({p: e} if e else {})


_TRIAL_PRIMES = sieve_primes(10_000)


@lru_cache(maxsize=4096)
def factorize(n: int) -> "Factorization":
    """Exact prime factorization of a positive integer.

    Trial division for the small part; sympy (Pollard rho etc.) for any
    remaining composite cofactor.  sympy is imported lazily so that callers
    that never factor big numbers do not pay its import cost.
    """
    if n < 1:
        raise ValueError(f"factorize requires a positive integer, got {n}")
    exps: dict[int, int] = {}
    rem = n
    for p in _TRIAL_PRIMES:
        if p * p > rem:
            break
        while rem % p == 0:
            exps[p] = exps.get(p, 0) + 1
            rem //= p
    if rem > 1:
        if is_prime(rem):
            exps[rem] = exps.get(rem, 0) + 1
        else:
            from sympy import factorint

            for q, e in factorint(rem).items():
                exps[int(q)] = exps.get(int(q), 0) + int(e)
    return Factorization(exps)


class Factorization:
    """A positive integer held as a map prime -> exponent.

    Immutable.  Zero exponents are never stored; all keys are verified prime.
    Comparisons and divisibility work exponent-wise, so values far beyond
    machine range stay cheap.
    """

    __slots__ = ("_exps",)

    def __init__(self, exponents: dict[int, int] | None = None):
        exps = {}
        for p, e in (exponents or {}).items():
            if e < 0:
                raise ValueError(f"negative exponent {e} for prime {p}")
            if e == 0:
                continue
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            exps[p] = e
        self._exps = dict(sorted(exps.items()))

    @classmethod
    def one(cls) -> "Factorization":
        return cls({})

    @classmethod
    def from_int(cls, n: int) -> "Factorization":
        return factorize(n)

    def value(self) -> int:
        n = 1
        for p, e in self._exps.items():
            n *= p**e
        return n

    def exponent(self, p: int) -> int:
        return self._exps.get(p, 0)

    def primes(self) -> tuple[int, ...]:
        return tuple(self._exps)

    def items(self):
        return self._exps.items()

    def restrict(self, p: int) -> "Factorization":
        """The p-part: p^{exponent(p)}."""
        e = self._exps.get(p, 0)
        return Factorization({p: e} if e else {})

    def without(self, p: int) -> "Factorization":
        """The p'-part: everything except the prime p."""
        return Factorization({q: e for q, e in self._exps.items() if q != p})

    def divides(self, other: "Factorization") -> bool:
        return all(e <= other.exponent(p) for p, e in self._exps.items())

    def __mul__(self, other: "Factorization") -> "Factorization":
        exps = dict(self._exps)
        for p, e in other._exps.items():
            exps[p] = exps.get(p, 0) + e
        return Factorization(exps)

    def __pow__(self, k: int) -> "Factorization":
        if k < 0:
            raise ValueError("negative power of a Factorization")
        return Factorization({p: e * k for p, e in self._exps.items()})

    def exact_div(self, other: "Factorization") -> "Factorization":
        """self / other, required to be exact."""
        exps = dict(self._exps)
        for p, e in other._exps.items():
            r = exps.get(p, 0) - e
            if r < 0:
                raise ValueError(f"{other} does not divide {self}")
            exps[p] = r
        return Factorization(exps)

    def lcm(self, other: "Factorization") -> "Factorization":
        exps = dict(self._exps)
        for p, e in other._exps.items():
            exps[p] = max(exps.get(p, 0), e)
        return Factorization(exps)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Factorization):
            return NotImplemented
        return self._exps == other._exps

    def __hash__(self) -> int:
        return hash(tuple(self._exps.items()))

    def __bool__(self) -> bool:
        return bool(self._exps)

    def to_string(self, sep: str = " · ") -> str:
        if not self._exps:
            return "1"
        parts = []
        for p, e in self._exps.items():
            parts.append(f"{p}^{e}" if e > 1 else f"{p}")
        return sep.join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Factorization({self._exps!r})"
