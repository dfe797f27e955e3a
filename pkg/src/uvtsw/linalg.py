"""Sparse matrices over Q(v, t) and exact rank computations.

Rank over the function field is found in two passes.  A specialization
pass evaluates the entries at a rational point and runs ordinary Gaussian
elimination over Q; this only picks pivots.  A symbolic pass then runs
fraction-free (Bareiss) elimination over Q[v, t] on the same pivot order
and checks that the trailing block vanishes identically, so the returned
rank is exact and never depends on the point.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .ratfield import PoleError, RatFunc, VarSet


class SparseMatrix:
    """Row-sparse matrix: ``rows[r][c] -> RatFunc``, zeros never stored."""

    __slots__ = ("nrows", "ncols", "varset", "rows")

    def __init__(self, nrows: int, ncols: int, entries: Mapping[tuple[int, int], RatFunc] | None = None,
                 varset: VarSet | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.varset = varset or VarSet.standard()
        self.rows: dict[int, dict[int, RatFunc]] = {}
        for (r, c), x in (entries or {}).items():
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
            if not isinstance(x, RatFunc):
                x = RatFunc.const(self.varset, x)
            if x:
                self.rows.setdefault(r, {})[c] = x

    @classmethod
    def _from_rows(cls, nrows: int, ncols: int, varset: VarSet, rows: dict) -> "SparseMatrix":
        obj = object.__new__(cls)
        obj.nrows, obj.ncols, obj.varset = nrows, ncols, varset
        obj.rows = {r: row for r, row in rows.items() if row}
        return obj

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None, varset: VarSet | None = None) -> "SparseMatrix":
        return cls._from_rows(nrows, nrows if ncols is None else ncols, varset or VarSet.standard(), {})

    @classmethod
    def identity(cls, n: int, varset: VarSet | None = None) -> "SparseMatrix":
        vs = varset or VarSet.standard()
        one = vs.one()
        return cls._from_rows(n, n, vs, {i: {i: one} for i in range(n)})

    @classmethod
    def diagonal(cls, values: Sequence[RatFunc]) -> "SparseMatrix":
        vs = values[0].varset
        return cls._from_rows(len(values), len(values), vs, {i: {i: x} for i, x in enumerate(values) if x})

    @classmethod
    def unit(cls, i: int, j: int, n: int, varset: VarSet | None = None) -> "SparseMatrix":
        """Matrix unit E_{ij} (1-based indices)."""
        vs = varset or VarSet.standard()
        return cls._from_rows(n, n, vs, {i - 1: {j - 1: vs.one()}})

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[RatFunc]], varset: VarSet | None = None) -> "SparseMatrix":
        vs = varset or next((x.varset for row in dense for x in row if isinstance(x, RatFunc)), VarSet.standard())
        entries = {(r, c): x for r, row in enumerate(dense) for c, x in enumerate(row)}
        return cls(len(dense), len(dense[0]) if dense else 0, entries, vs)

    # -- access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, rc: tuple[int, int]) -> RatFunc:
        r, c = rc
        return self.rows.get(r, {}).get(c, self.varset.zero())

    def items(self) -> Iterator[tuple[int, int, RatFunc]]:
        for r in sorted(self.rows):
            row = self.rows[r]
            for c in sorted(row):
                yield r, c, row[c]

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    def is_diagonal(self) -> bool:
        return all(set(row) <= {r} for r, row in self.rows.items())

    def column(self, c: int) -> list[RatFunc]:
        zero = self.varset.zero()
        return [self.rows.get(r, {}).get(c, zero) for r in range(self.nrows)]

    def to_dense(self) -> list[list[RatFunc]]:
        zero = self.varset.zero()
        return [[self.rows.get(r, {}).get(c, zero) for c in range(self.ncols)] for r in range(self.nrows)]

    def triplets(self) -> list[tuple[int, int, str]]:
        return [(r, c, str(x)) for r, c, x in self.items()]

    # -- arithmetic -------------------------------------------------------------

    def _same_shape(self, other: "SparseMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._same_shape(other)
        rows = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            target = rows.setdefault(r, {})
            for c, x in row.items():
                y = target.get(c)
                s = x if y is None else y + x
                if s:
                    target[c] = s
                else:
                    target.pop(c, None)
        return SparseMatrix._from_rows(self.nrows, self.ncols, self.varset, rows)

    def __neg__(self) -> "SparseMatrix":
        return SparseMatrix._from_rows(self.nrows, self.ncols, self.varset,
                                       {r: {c: -x for c, x in row.items()} for r, row in self.rows.items()})

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scale(self, a: RatFunc | int) -> "SparseMatrix":
        if not isinstance(a, RatFunc):
            a = RatFunc.const(self.varset, a)
        if not a:
            return SparseMatrix.zeros(self.nrows, self.ncols, self.varset)
        return SparseMatrix._from_rows(self.nrows, self.ncols, self.varset,
                                       {r: {c: a * x for c, x in row.items()} for r, row in self.rows.items()})

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        rows = {}
        for r, row in self.rows.items():
            acc: dict[int, RatFunc] = {}
            for m, x in row.items():
                orow = other.rows.get(m)
                if not orow:
                    continue
                for c, y in orow.items():
                    p = x * y
                    acc[c] = acc[c] + p if c in acc else p
            acc = {c: z for c, z in acc.items() if z}
            if acc:
                rows[r] = acc
        return SparseMatrix._from_rows(self.nrows, other.ncols, self.varset, rows)

    def __mul__(self, other):
        if isinstance(other, SparseMatrix):
            return self @ other
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    __hash__ = None

    def transpose(self) -> "SparseMatrix":
        rows: dict[int, dict[int, RatFunc]] = {}
        for r, row in self.rows.items():
            for c, x in row.items():
                rows.setdefault(c, {})[r] = x
        return SparseMatrix._from_rows(self.ncols, self.nrows, self.varset, rows)

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        """Kronecker product; ``(A kron B)(e_a kron e_b) = A e_a kron B e_b``."""
        rows: dict[int, dict[int, RatFunc]] = {}
        for r1, row1 in self.rows.items():
            for r2, row2 in other.rows.items():
                out = {}
                for c1, x in row1.items():
                    for c2, y in row2.items():
                        out[c1 * other.ncols + c2] = x * y
                rows[r1 * other.nrows + r2] = out
        return SparseMatrix._from_rows(self.nrows * other.nrows, self.ncols * other.ncols, self.varset, rows)

    def apply(self, vec: Sequence[RatFunc]) -> list[RatFunc]:
        zero = self.varset.zero()
        out = [zero] * self.nrows
        for r, row in self.rows.items():
            acc = zero
            for c, x in row.items():
                if vec[c]:
                    acc = acc + x * vec[c]
            out[r] = acc
        return out

    def diagonal_entries(self) -> list[RatFunc]:
        return [self[i, i] for i in range(min(self.shape))]

    def diagonal_inverse(self) -> "SparseMatrix":
        if not self.is_diagonal() or len(self.rows) != self.nrows:
            raise ValueError("not an invertible diagonal matrix")
        return SparseMatrix._from_rows(self.nrows, self.ncols, self.varset,
                                       {r: {r: row[r].inv()} for r, row in self.rows.items()})

    def first_difference(self, other: "SparseMatrix") -> tuple[int, int, RatFunc, RatFunc] | None:
        """First entry (row-major) where the two matrices differ."""
        self._same_shape(other)
        for r in range(self.nrows):
            a, b = self.rows.get(r, {}), other.rows.get(r, {})
            if a == b:
                continue
            for c in sorted(set(a) | set(b)):
                x, y = self[r, c], other[r, c]
                if x != y:
                    return r, c, x, y
        return None

    def specialize(self, point: Mapping[str, Fraction]) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for r, row in self.rows.items():
            for c, x in row.items():
                out[r][c] = x.eval_rational(point)
        return out

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def kron_all(mats: Iterable[SparseMatrix]) -> SparseMatrix:
    it = iter(mats)
    out = next(it)
    for m in it:
        out = out.kron(m)
    return out


# -- exact rank ------------------------------------------------------------------

def default_points(seed: int = 0, count: int = 4) -> list[dict[str, Fraction]]:
    """Specialization points; the first is (v, t) = (3/2, 5/7) for seed 0."""
    pts = [{"v": Fraction(3, 2), "t": Fraction(5, 7)}]
    rng = random.Random(seed)
    while len(pts) < count:
        pts.append({"v": Fraction(rng.randint(2, 97), rng.randint(2, 97)),
                    "t": Fraction(rng.randint(2, 97), rng.randint(2, 97))})
    if seed:
        pts = pts[1:] + pts[:1]
    return pts


def _pivots_over_q(mat: list[list[Fraction]]) -> list[tuple[int, int]]:
    """Pivot (row, col) pairs of Gaussian elimination scanning columns left to right."""
    a = [row[:] for row in mat]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    used = [False] * nrows
    pivots = []
    for c in range(ncols):
        p = next((r for r in range(nrows) if not used[r] and a[r][c] != 0), None)
        if p is None:
            continue
        used[p] = True
        pivots.append((p, c))
        inv = 1 / a[p][c]
        for r in range(nrows):
            if r != p and not used[r] and a[r][c] != 0:
                f = a[r][c] * inv
                row_p = a[p]
                row_r = a[r]
                for j in range(c, ncols):
                    if row_p[j]:
                        row_r[j] -= f * row_p[j]
    return pivots


def _specialize_safely(m: SparseMatrix, points: Sequence[Mapping[str, Fraction]]):
    for pt in points:
        try:
            return m.specialize(pt)
        except PoleError:
            continue
    raise PoleError("every specialization point hits a pole of the matrix")


def _clear_row_denominators(m: SparseMatrix) -> list[dict[int, object]]:
    """Each row scaled by the product of its distinct denominators -> polynomial rows."""
    out = []
    for r in range(m.nrows):
        row = m.rows.get(r, {})
        dens = []
        for x in row.values():
            if not x.den.is_one() and all(x.den != d for d in dens):
                dens.append(x.den)
        scale = m.varset.ctx.constant(1)
        for d in dens:
            scale = scale * d
        out.append({c: (x.num * scale) / x.den for c, x in row.items()})
    return out


def rank_with_pivots(m: SparseMatrix, seed: int = 0) -> tuple[int, list[tuple[int, int]]]:
    """Exact rank over Q(v, t) and the (row, col) pivots used."""
    if m.is_zero():
        return 0, []
    pivots = _pivots_over_q(_specialize_safely(m, default_points(seed)))
    r = len(pivots)
    ctx = m.varset.ctx
    zero = ctx.constant(0)
    poly_rows = _clear_row_denominators(m)
    prow = [p for p, _ in pivots]
    pcol = [c for _, c in pivots]
    row_order = prow + [i for i in range(m.nrows) if i not in set(prow)]
    col_order = pcol + [j for j in range(m.ncols) if j not in set(pcol)]
    a = [[poly_rows[i].get(j, zero) for j in col_order] for i in row_order]
    prev = ctx.constant(1)
    n_r, n_c = len(a), len(a[0])
    for kk in range(r):
        piv = a[kk][kk]
        if piv.is_zero():
            raise ArithmeticError("symbolic pivot vanished although its specialization did not")
        for i in range(kk + 1, n_r):
            aik = a[i][kk]
            row_i = a[i]
            row_k = a[kk]
            for j in range(kk + 1, n_c):
                val = row_i[j] * piv - aik * row_k[j]
                row_i[j] = val / prev if not val.is_zero() else zero
            row_i[kk] = zero
        prev = piv
    for i in range(r, n_r):
        for j in range(r, n_c):
            if not a[i][j].is_zero():
                raise ArithmeticError("specialization underestimated the rank; choose another seed")
    return r, pivots


def rank(m: SparseMatrix, seed: int = 0) -> int:
    return rank_with_pivots(m, seed)[0]


def determinant(m: SparseMatrix) -> RatFunc:
    """Exact determinant by Gaussian elimination over Q(v, t) (small matrices)."""
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    a = m.to_dense()
    n = m.nrows
    det = m.varset.one()
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return m.varset.zero()
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det = det * a[c][c]
        inv = a[c][c].inv()
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def inverse(m: SparseMatrix) -> SparseMatrix:
    """Gauss-Jordan inverse over Q(v, t) (small matrices)."""
    n = m.nrows
    if m.ncols != n:
        raise ValueError("inverse of a non-square matrix")
    vs = m.varset
    a = [row + [vs.one() if i == j else vs.zero() for j in range(n)] for i, row in enumerate(m.to_dense())]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        inv = a[c][c].inv()
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return SparseMatrix.from_dense([row[n:] for row in a], vs)


def rref(vectors: Sequence[Sequence[RatFunc]], varset: VarSet | None = None) -> list[list[RatFunc]]:
    """Reduced row echelon form (nonzero rows only) of the span of ``vectors``."""
    if not vectors:
        return []
    a = [list(vec) for vec in vectors]
    ncols = len(a[0])
    out_rows = 0
    for c in range(ncols):
        p = next((r for r in range(out_rows, len(a)) if a[r][c]), None)
        if p is None:
            continue
        a[out_rows], a[p] = a[p], a[out_rows]
        inv = a[out_rows][c].inv()
        a[out_rows] = [x * inv for x in a[out_rows]]
        for r in range(len(a)):
            if r != out_rows and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[out_rows])]
        out_rows += 1
    return [row for row in a[:out_rows]]


def nullspace(rows: Sequence[Sequence[RatFunc]], ncols: int, varset: VarSet | None = None) -> list[list[RatFunc]]:
    """Basis of {x : rows @ x = 0}, one vector per free column of the reduced form."""
    vs = varset or next((x.varset for r in rows for x in r), VarSet.standard())
    reduced = rref(rows, vs) if rows else []
    pivots = []
    for row in reduced:
        pivots.append(next(c for c, x in enumerate(row) if x))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [vs.zero()] * ncols
        vec[f] = vs.one()
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return basis
