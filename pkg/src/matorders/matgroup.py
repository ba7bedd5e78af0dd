"""Exact square matrices over Q or Q(zeta_k) and finite group closure.

Rational entries are Python ints whenever integral (fast path for the
integer witness groups) and Fractions otherwise; cyclotomic entries are
CycloElem.  Matrices are immutable and hashable on their reduced entries,
which makes closure deduplication exact.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd, lcm

from .bounds import minkowski_p_part
from .cyclotomic import CycloElem, CycloField
from .exactnum import is_prime

Rational = int | Fraction


def _norm_rational(x) -> Rational:
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    raise TypeError(f"not a rational entry: {x!r}")


class SquareMatrix:
    """Immutable n x n matrix over Q (field None) or Q(zeta_k)."""

    __slots__ = ("dim", "field", "rows")

    def __init__(self, rows, field: CycloField | None = None):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and non-empty")
        if field is None:
            rows = tuple(tuple(_norm_rational(x) for x in r) for r in rows)
        else:
            coerced = []
            for r in rows:
                row = []
                for x in r:
                    if isinstance(x, CycloElem):
                        if x.field.conductor != field.conductor:
                            raise ValueError("entry from a different cyclotomic field")
                        row.append(x)
                    else:
                        row.append(field.from_rational(Fraction(x)))
                coerced.append(tuple(row))
            rows = tuple(coerced)
        self.dim = n
        self.field = field
        self.rows = rows

    @classmethod
    def identity(cls, n: int, field: CycloField | None = None) -> "SquareMatrix":
        one, zero = (1, 0) if field is None else (field.one(), field.zero())
        return cls(
            tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)),
            field,
        )

    def __mul__(self, other: "SquareMatrix") -> "SquareMatrix":
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        if other.dim != self.dim or not _same_field(self.field, other.field):
            raise ValueError("dimension or field mismatch in matrix product")
        cols = tuple(zip(*other.rows))
        rows = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.rows
        )
        return SquareMatrix(rows, self.field)

    def __pow__(self, k: int) -> "SquareMatrix":
        if k < 0:
            return self.inverse() ** (-k)
        result = SquareMatrix.identity(self.dim, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def trace(self):
        t = self.rows[0][0]
        for i in range(1, self.dim):
            t = t + self.rows[i][i]
        return t

    def rational_trace(self) -> Rational:
        """Trace as int/Fraction; raises if it has an irrational part."""
        t = self.trace()
        if isinstance(t, CycloElem):
            r = t.as_rational()
            if r is None:
                raise ValueError("matrix trace is not rational")
            return _norm_rational(r)
        return t

    def is_identity(self) -> bool:
        return self == SquareMatrix.identity(self.dim, self.field)

    def is_integral(self) -> bool:
        if self.field is not None:
            raise ValueError("integrality is defined for rational matrices only")
        return all(isinstance(x, int) for row in self.rows for x in row)

    def _as_field_rows(self) -> list[list]:
        if self.field is None:
            return [[Fraction(x) for x in row] for row in self.rows]
        return [list(row) for row in self.rows]

    def det(self):
        """Exact determinant by fraction-free-enough Gaussian elimination."""
        n = self.dim
        a = self._as_field_rows()
        det = Fraction(1) if self.field is None else self.field.one()
        sign = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if not _is_zero(a[r][c])), None)
            if piv is None:
                return Fraction(0) if self.field is None else self.field.zero()
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                sign = -sign
            det = det * a[c][c]
            inv_p = _field_inv(a[c][c])
            for r in range(c + 1, n):
                if _is_zero(a[r][c]):
                    continue
                factor = a[r][c] * inv_p
                a[r] = [x - factor * y for x, y in zip(a[r], a[c])]
        return det * sign if self.field is None else det * self.field.from_rational(sign)

    def inverse(self) -> "SquareMatrix":
        n = self.dim
        a = self._as_field_rows()
        one, zero = (
            (Fraction(1), Fraction(0))
            if self.field is None
            else (self.field.one(), self.field.zero())
        )
        inv = [[one if i == j else zero for j in range(n)] for i in range(n)]
        for c in range(n):
            piv = next((r for r in range(c, n) if not _is_zero(a[r][c])), None)
            if piv is None:
                raise ValueError("matrix is singular")
            a[c], a[piv] = a[piv], a[c]
            inv[c], inv[piv] = inv[piv], inv[c]
            pinv = _field_inv(a[c][c])
            a[c] = [x * pinv for x in a[c]]
            inv[c] = [x * pinv for x in inv[c]]
            for r in range(n):
                if r == c or _is_zero(a[r][c]):
                    continue
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[c])]
        return SquareMatrix(inv, self.field)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return (
            self.dim == other.dim
            and _same_field(self.field, other.field)
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.rows))

    def __repr__(self) -> str:
        return f"SquareMatrix({[list(r) for r in self.rows]!r})"


def _same_field(f1: CycloField | None, f2: CycloField | None) -> bool:
    if f1 is None or f2 is None:
        return f1 is None and f2 is None
    return f1.conductor == f2.conductor


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, CycloElem) else x == 0


def _field_inv(x):
    return x.inverse() if isinstance(x, CycloElem) else Fraction(1) / x


class GroupClosure:
    """A finite matrix group, fully enumerated.

    elements[0] is the identity; the remaining order reflects the
    deterministic breadth-first discipline of :func:`closure`.
    """

    __slots__ = ("elements", "lookup", "generator_indices", "dim", "field")

    def __init__(self, elements, lookup, generator_indices, dim, field):
        self.elements: tuple[SquareMatrix, ...] = elements
        self.lookup: dict = lookup
        self.generator_indices: tuple[int, ...] = generator_indices
        self.dim = dim
        self.field = field

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def generators(self) -> tuple[SquareMatrix, ...]:
        return tuple(self.elements[i] for i in self.generator_indices)

    def index_of(self, mat: SquareMatrix) -> int:
        try:
            return self.lookup[mat.rows]
        except KeyError:
            raise ValueError("matrix is not an element of this group") from None

    def __contains__(self, mat: SquareMatrix) -> bool:
        return isinstance(mat, SquareMatrix) and mat.rows in self.lookup

    def element_order(self, i: int) -> int:
        g = self.elements[i]
        power = g
        k = 1
        ident = self.elements[0]
        while power != ident:
            power = power * g
            k += 1
            if k > self.order:
                raise AssertionError("element order exceeds group order")
        return k

    def trace_multiset(self) -> Counter:
        return Counter(g.rational_trace() for g in self.elements)

    def __len__(self) -> int:
        return self.order


DEFAULT_CLOSURE_CAP = 10**6


def closure(generators, cap: int = DEFAULT_CLOSURE_CAP) -> GroupClosure:
    """Breadth-first product closure of invertible generators.

    Deterministic element order: identity first, then products discovered
    FIFO, multiplying each frontier element by the generators in the order
    given.  Raises if the element count would exceed cap.
    """
    gens = list(generators)
    if not gens:
        raise ValueError("at least one generator is required")
    if cap < 1:
        raise ValueError("cap must be positive")
    dim, field = gens[0].dim, gens[0].field
    for g in gens:
        if g.dim != dim or not _same_field(g.field, field):
            raise ValueError("generators must share dimension and field")
        if _is_zero(g.det()):
            raise ValueError("singular generator")
    ident = SquareMatrix.identity(dim, field)
    elements = [ident]
    lookup = {ident.rows: 0}
    queue = deque([ident])
    gen_cols = [tuple(zip(*g.rows)) for g in gens]
    while queue:
        cur = queue.popleft()
        for cols in gen_cols:
            rows = tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in cur.rows
            )
            if rows in lookup:
                continue
            if len(elements) >= cap:
                raise ValueError(
                    f"group too large or infinite: closure exceeded cap {cap}"
                )
            mat = SquareMatrix(rows, field)
            lookup[mat.rows] = len(elements)
            elements.append(mat)
            queue.append(mat)
    gen_idx = tuple(lookup[g.rows] for g in gens)
    return GroupClosure(tuple(elements), lookup, gen_idx, dim, field)


def _rebuilt_closure(mapped_elements, src: GroupClosure) -> GroupClosure:
    """GroupClosure over an element-wise image of an existing closure."""
    lookup = {}
    for i, m in enumerate(mapped_elements):
        if m.rows in lookup:
            raise ValueError("mapped elements collide; image is not a bijection")
        lookup[m.rows] = i
    return GroupClosure(
        tuple(mapped_elements),
        lookup,
        src.generator_indices,
        mapped_elements[0].dim,
        mapped_elements[0].field,
    )


def conjugate_closure(G: GroupClosure, s: SquareMatrix) -> GroupClosure:
    """The group s^-1 G s, element by element."""
    s_inv = s.inverse()
    return _rebuilt_closure([s_inv * g * s for g in G.elements], G)


# --- witness constructions -------------------------------------------------


def a_m_representation(m: int) -> dict[tuple[int, int], SquareMatrix]:
    """Integer matrices of the adjacent transpositions of S_{m+1}.

    The symmetric group permutes the basis of Z^(m+1); restricting to the
    zero-coordinate-sum sublattice with basis e_i - e_(i+1) (i = 1..m) gives
    faithful m x m integer matrices.  Keys are the transpositions (j, j+1).
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    out = {}
    for j in range(1, m + 1):
        rows = [[1 if r == c else 0 for c in range(m)] for r in range(m)]
        # column i holds the image of basis vector f_i = e_i - e_(i+1)
        jj = j - 1  # 0-based position of the swapped pair
        rows[jj][jj] = -1
        if jj - 1 >= 0:
            rows[jj][jj - 1] = 1
        if jj + 1 < m:
            rows[jj][jj + 1] = 1
        out[(j, j + 1)] = SquareMatrix(rows)
    return out


def wreath_witness(n: int, p: int) -> list[SquareMatrix]:
    """Integer generators of the large-p-part witness group in dimension n.

    With m = p-1 and a = floor(n/m): block-diagonal copies of the S_p action
    on the zero-sum lattice (one per block), plus adjacent block-swap
    permutation matrices; the closure has order (p!)^a * a!.  Everything is
    padded by the identity up to dimension n.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > n + 1:
        raise ValueError(f"prime {p} exceeds n+1 = {n + 1}")
    m = p - 1
    a = n // m
    rep = a_m_representation(m)
    gens = []

    def padded(fill):
        rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        for (r, c), v in fill.items():
            rows[r][c] = v
        return SquareMatrix(rows)

    for b in range(a):
        for mat in rep.values():
            fill = {}
            for r in range(m):
                for c in range(m):
                    fill[(b * m + r, b * m + c)] = mat.rows[r][c]
            gens.append(padded(fill))
    for b in range(a - 1):
        fill = {}
        for i in range(m):
            fill[(b * m + i, b * m + i)] = 0
            fill[((b + 1) * m + i, (b + 1) * m + i)] = 0
            fill[(b * m + i, (b + 1) * m + i)] = 1
            fill[((b + 1) * m + i, b * m + i)] = 1
        gens.append(padded(fill))
    return gens


def expected_witness_order(n: int, p: int) -> int:
    """(p!)^a * a! with a = floor(n/(p-1))."""
    a = n // (p - 1)
    return factorial(p) ** a * factorial(a)


# --- trace statistics -------------------------------------------------------


@dataclass(frozen=True)
class TraceStats:
    """Counts of trace values against the p-power spectrum n - p*t."""

    dim: int
    p: int
    a: int
    values: tuple[int, ...]
    counts: tuple[int, ...]


@dataclass(frozen=True)
class TraceReport:
    stats: TraceStats
    spectrum_ok: bool
    fact1_ok: bool


def trace_stats(G: GroupClosure, p: int) -> TraceReport:
    """Tabulate traces of G against the spectrum {n - p*t : 0 <= t <= a}.

    spectrum_ok: every trace is on the spectrum and only the identity has
    trace n.  fact1_ok: the power sums of the trace over the group are
    divisible by |G| for every exponent s = 0..a (a character-theoretic
    divisibility that holds for every finite matrix group).
    Raises on a non-rational trace.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    n = G.dim
    a = n // (p - 1)
    values = tuple(n - p * t for t in range(a + 1))
    index = {z: t for t, z in enumerate(values)}
    counts = [0] * (a + 1)
    spectrum_ok = True
    traces = []
    for i, g in enumerate(G.elements):
        tr = g.rational_trace()
        traces.append(tr)
        t = index.get(tr)
        if t is None:
            spectrum_ok = False
            continue
        counts[t] += 1
        if t == 0 and i != 0:
            spectrum_ok = False  # non-identity element with maximal trace
    order = G.order
    fact1_ok = all(
        Fraction(sum(tr**s for tr in traces), order).denominator == 1
        for s in range(a + 1)
    )
    stats = TraceStats(n, p, a, values, tuple(counts))
    return TraceReport(stats, spectrum_ok, fact1_ok)


def frobenius_schur_indicator(G: GroupClosure) -> Fraction:
    """(1/|G|) * sum of tr(g^2) over the group; always a rational integer."""
    total = None
    for g in G.elements:
        t = (g * g).trace()
        total = t if total is None else total + t
    if isinstance(total, CycloElem):
        r = total.as_rational()
        assert r is not None, "indicator sum must be rational"
        total = r
    return Fraction(total, G.order)


# --- conjugation into integer matrices --------------------------------------


def _hnf_column_basis(columns: list[list[int]], n: int) -> list[list[int]]:
    """Lower-triangular positive-pivot basis of the column span over Z."""
    cols = [list(c) for c in columns if any(c)]
    basis = []
    for r in range(n):
        live = [c for c in cols if c[r] != 0]
        rest = [c for c in cols if c[r] == 0]
        while len(live) > 1:
            live.sort(key=lambda c: abs(c[r]))
            piv = live[0]
            reduced = []
            for c in live[1:]:
                q = c[r] // piv[r]
                if q:
                    for i in range(n):
                        c[i] -= q * piv[i]
                (reduced if c[r] != 0 else rest).append(c)
            live = [piv] + reduced
        if not live:
            raise AssertionError("column span has rank below the dimension")
        piv = live[0]
        if piv[r] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        cols = rest
    return basis


def integralize(G: GroupClosure) -> tuple[SquareMatrix, GroupClosure]:
    """Conjugate a finite rational matrix group onto integer matrices.

    Builds the lattice spanned by the images of the standard lattice under
    all group elements: denominators are cleared, all columns stacked, and
    an integer column-style Hermite reduction yields an n x n basis B.  The
    group fixes that lattice, so B^-1 g B is integral for every g; this is
    checked, along with preservation of order and trace multiset.
    Returns (B, conjugated group).
    """
    if G.field is not None:
        raise ValueError("integralize requires a rational matrix group")
    n = G.dim
    denom = 1
    for g in G.elements:
        for row in g.rows:
            for x in row:
                if isinstance(x, Fraction):
                    denom = lcm(denom, x.denominator)
    columns = []
    for g in G.elements:
        for j in range(n):
            col = [g.rows[i][j] * denom for i in range(n)]
            columns.append([int(x) for x in col])
    basis_cols = _hnf_column_basis(columns, n)
    basis_rows = [
        [Fraction(basis_cols[j][i], denom) for j in range(n)] for i in range(n)
    ]
    B = SquareMatrix(basis_rows)
    B_inv = B.inverse()
    mapped = [B_inv * g * B for g in G.elements]
    H = _rebuilt_closure(mapped, G)
    assert all(h.is_integral() for h in H.elements), "conjugated group must be integral"
    assert H.order == G.order
    assert H.trace_multiset() == G.trace_multiset()
    return B, H
