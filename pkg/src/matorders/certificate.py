"""Executable divisibility certificate for p-groups with rational traces.

The certificate combines the power-sum congruences of the trace character
with a Vandermonde/companion-matrix identity to certify, per trace value,
that the group order divides m_t * p^a * prod(s - t).
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactnum import is_prime, valuation
from .matgroup import GroupClosure, SquareMatrix, trace_stats


def elementary_symmetric(values, s: int) -> int:
    """Sum over all s-subsets of the product, by incremental convolution."""
    vals = list(values)
    if s < 0 or s > len(vals):
        raise ValueError(f"index {s} out of range for {len(vals)} values")
    coeffs = [1]  # coefficients of prod(1 + v_i y), ascending in y
    for v in vals:
        nxt = coeffs + [0]
        for i in range(len(coeffs)):
            nxt[i + 1] += coeffs[i] * v
        coeffs = nxt
    return coeffs[s]


def vandermonde_pair(z) -> tuple[SquareMatrix, SquareMatrix, bool]:
    """The Vandermonde matrix of z with its signed-symmetric companion.

    V[t][s] = z_t^s; E[s][t] = (-1)^(a-s) e_(a-s) of z with z_t removed.
    Their product is the diagonal of prod(z_t - z_s) over s != t, which is
    verified exactly and reported as the third component.
    Entries must be pairwise distinct.
    """
    zs = [int(v) for v in z]
    if len(zs) != len(set(zs)):
        raise ValueError("entries must be pairwise distinct")
    if not zs:
        raise ValueError("at least one entry is required")
    a = len(zs) - 1
    V = SquareMatrix([[zt**s for s in range(a + 1)] for zt in zs])
    E_rows = []
    for s in range(a + 1):
        row = []
        for t in range(a + 1):
            others = zs[:t] + zs[t + 1 :]
            row.append((-1) ** (a - s) * elementary_symmetric(others, a - s))
        E_rows.append(row)
    E = SquareMatrix(E_rows)
    product = V * E
    ok = True
    for t in range(a + 1):
        diag = 1
        for s in range(a + 1):
            if s != t:
                diag *= zs[t] - zs[s]
        for c in range(a + 1):
            want = diag if c == t else 0
            if product.rows[t][c] != want:
                ok = False
    return V, E, ok


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of the per-trace-value divisibility certificate."""

    p: int
    a: int
    group_order: int
    values: tuple[int, ...]
    counts: tuple[int, ...]
    power_sums_ok: bool
    per_t: tuple[tuple[int, int, bool], ...]  # (t, product, divisible)
    overall: bool


def schur_certificate(G: GroupClosure, p: int) -> CertificateReport:
    """Certify the order divisibilities of a p-group from its traces alone.

    Requires |G| to be a power of p and all traces rational.  Checks that
    every trace power sum (exponents 0..a) is divisible by |G|, and that
    |G| divides |m_t * p^a * prod_(s != t)(s - t)| for each t.  The t = 0
    line is the classical bound: |G| divides p^a * a!.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    order = G.order
    if order != p ** valuation(order, p):
        raise ValueError(f"group order {order} is not a power of {p}")
    report = trace_stats(G, p)
    assert report.spectrum_ok, "trace spectrum must hold for a p-power group"
    stats = report.stats
    a = stats.a
    power_sums_ok = all(
        sum(m * z**s for z, m in zip(stats.values, stats.counts)) % order == 0
        for s in range(a + 1)
    )
    per_t = []
    overall = power_sums_ok
    for t in range(a + 1):
        prod = stats.counts[t] * p**a
        for s in range(a + 1):
            if s != t:
                prod *= s - t
        divisible = abs(prod) % order == 0
        overall = overall and divisible
        per_t.append((t, prod, divisible))
    return CertificateReport(
        p=p,
        a=a,
        group_order=order,
        values=stats.values,
        counts=stats.counts,
        power_sums_ok=power_sums_ok,
        per_t=tuple(per_t),
        overall=overall,
    )
