"""R-matrices on V_n x V_n, the Hecke action on V_n^(tensor k) and Schur-Weyl checks.

``E_{a,b}`` is the matrix unit sending v_b to v_a, so ``E_{j,i} x E_{i,j}``
maps ``v_i x v_j`` to ``v_j x v_i``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .combinatorics import Partition, Permutation, hook, num_standard_tableaux, partitions, standard_tableaux
from .hecke import HeckeElement, idempotent_inductive, multiply
from .linalg import SparseMatrix, rank, rref
from .ratfield import RatFunc, VarSet
from .uvt_rep import DEFAULT_SIZE_CAP, SizeCapExceeded, tensor_basis_weight, tensor_index, tensor_rep


def _vs() -> VarSet:
    return VarSet.standard()


def _pair_unit(a: int, b: int, c: int, d: int, n: int) -> SparseMatrix:
    """E_{a,b} x E_{c,d} on V_n x V_n."""
    return SparseMatrix.unit(a, b, n, _vs()).kron(SparseMatrix.unit(c, d, n, _vs()))


def _two_site(n: int, swap_up, swap_down, lower_diag, diag) -> SparseMatrix:
    """sum_{i<j} swap_up E_ji x E_ij + swap_down E_ij x E_ji + lower_diag E_jj x E_ii + diag sum_i E_ii x E_ii."""
    vs = _vs()
    entries = {}
    for i in range(1, n + 1):
        entries[((i - 1) * n + i - 1, (i - 1) * n + i - 1)] = diag
        for j in range(i + 1, n + 1):
            ij = (i - 1) * n + (j - 1)
            ji = (j - 1) * n + (i - 1)
            entries[(ji, ij)] = swap_up      # v_i x v_j -> v_j x v_i
            entries[(ij, ji)] = swap_down    # v_j x v_i -> v_i x v_j
            entries[(ji, ji)] = lower_diag   # v_j x v_i -> itself
    return SparseMatrix(n * n, n * n, entries, vs)


def rtilde(n: int, *, shuffled: bool = False) -> SparseMatrix:
    """The braid operator R~ on V_n x V_n.

    ``shuffled=True`` swaps the vt and vt^-1 coefficients (a negative control).
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    vs = _vs()
    v, t = vs.var("v"), vs.var("t")
    up, down = v * t, v / t
    if shuffled:
        up, down = down, up
    return _two_site(n, up, down, (1 - v * v) / t, vs.one())


def r_matrix(n: int) -> SparseMatrix:
    """The modified R satisfying the Hecke quadratic."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    vs = _vs()
    v, t = vs.var("v"), vs.var("t")
    return _two_site(n, t * t, vs.one(), (1 / v - v) * t, t / v)


def family_matrix(family: str, n: int) -> SparseMatrix:
    if family in ("R", "r"):
        return r_matrix(n)
    if family in ("Rtilde", "rtilde", "R~"):
        return rtilde(n)
    raise ValueError(f"unknown R-matrix family {family!r}")


def _check_cap(n: int, k: int, cap: int | None):
    cap = DEFAULT_SIZE_CAP if cap is None else cap
    if n**k > cap:
        raise SizeCapExceeded(f"n^k = {n**k} exceeds the size cap {cap}")


def lift(i: int, base: SparseMatrix, n: int, k: int) -> SparseMatrix:
    """Act by ``base`` on tensor positions i, i+1 of V_n^(tensor k)."""
    if not 1 <= i < k:
        raise ValueError(f"position {i} outside 1..{k - 1}")
    if base.shape != (n * n, n * n):
        raise ValueError("base must act on V_n x V_n")
    vs = base.varset
    left = SparseMatrix.identity(n ** (i - 1), vs)
    right = SparseMatrix.identity(n ** (k - i - 1), vs)
    return left.kron(base).kron(right)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _compare(name: str, lhs: SparseMatrix, rhs: SparseMatrix) -> CheckResult:
    diff = lhs.first_difference(rhs)
    if diff is None:
        return CheckResult(name, True)
    r, c, x, y = diff
    return CheckResult(name, False, f"entry ({r},{c}): {x} != {y}")


def check_braid(base: SparseMatrix | str, n: int, k: int, cap: int | None = None) -> list[CheckResult]:
    """Braid and distant commutation relations for the lifted family."""
    _check_cap(n, k, cap)
    if isinstance(base, str):
        base = family_matrix(base, n)
    ops = {i: lift(i, base, n, k) for i in range(1, k)}
    out = []
    for i in range(1, k - 1):
        a, b = ops[i], ops[i + 1]
        out.append(_compare(f"braid({i},{i + 1})", a @ b @ a, b @ a @ b))
    for i in range(1, k):
        for j in range(i + 2, k):
            out.append(_compare(f"commute({i},{j})", ops[i] @ ops[j], ops[j] @ ops[i]))
    return out


def hecke_quadratic_residual(m: SparseMatrix, n: int) -> SparseMatrix:
    """(M - v^-1 t)(M + v t) for an operator on V_n x V_n."""
    vs = m.varset
    v, t = vs.var("v"), vs.var("t")
    ident = SparseMatrix.identity(m.nrows, vs)
    return (m - ident.scale(t / v)) @ (m + ident.scale(v * t))


def check_hecke_quadratic(family: str, n: int) -> CheckResult:
    """Whether the family's two-site operator satisfies (M - v^-1 t)(M + vt) = 0."""
    res = hecke_quadratic_residual(family_matrix(family, n), n)
    if res.is_zero():
        return CheckResult(f"quadratic[{family},n={n}]", True)
    r, c, x = next(iter(res.items()))
    return CheckResult(f"quadratic[{family},n={n}]", False, f"entry ({r},{c}) = {x}")


# -- the Hecke action -------------------------------------------------------------

_DELTA_CACHE: dict[tuple[int, int], dict[Permutation, SparseMatrix]] = {}


def delta_basis(w: Permutation, n: int) -> SparseMatrix:
    """delta_n(T_w) = R_{i_1} ... R_{i_l} along a reduced word, memoized per (n, k)."""
    k = len(w)
    cache = _DELTA_CACHE.setdefault((n, k), {})
    hit = cache.get(w)
    if hit is not None:
        return hit
    if w.length() == 0:
        out = SparseMatrix.identity(n**k, _vs())
    else:
        i = next(i for i in range(1, k) if w.has_right_descent(i))
        out = delta_basis(w.times_simple(i), n) @ lift(i, r_matrix(n), n, k)
    cache[w] = out
    return out


def delta_n(h: HeckeElement, n: int, cap: int | None = None) -> SparseMatrix:
    """Image of a Hecke element of H_k acting on V_n^(tensor k)."""
    k = h.k
    _check_cap(n, k, cap)
    out = SparseMatrix.zeros(n**k, n**k, _vs())
    for w, c in h.coeffs.items():
        out = out + delta_basis(w, n).scale(c)
    return out


def commutant_check(n: int, k: int, cap: int | None = None, *, operator: SparseMatrix | None = None) -> list[CheckResult]:
    """R_i g = g R_i for every R_i and every generator image g on V_n^(tensor k).

    ``operator`` replaces the two-site R (e.g. a flat swap as a negative control).
    """
    _check_cap(n, k, cap)
    g = tensor_rep(n, k, cap)
    base = r_matrix(n) if operator is None else operator
    out = []
    for i in range(1, k):
        ri = lift(i, base, n, k)
        for name, mat in g.all_generators():
            out.append(_compare(f"R{i}*{name}", ri @ mat, mat @ ri))
    return out


def flat_swap(n: int) -> SparseMatrix:
    """The plain transposition v_a x v_b -> v_b x v_a."""
    vs = _vs()
    entries = {((b - 1) * n + a - 1, (a - 1) * n + b - 1): vs.one()
               for a in range(1, n + 1) for b in range(1, n + 1)}
    return SparseMatrix(n * n, n * n, entries, vs)


def commutes_at(point: dict[str, Fraction], a: SparseMatrix, b: SparseMatrix) -> bool:
    """Exact commutation after specializing v, t to rationals."""
    x, y = a.specialize(point), b.specialize(point)
    n = len(x)
    for i in range(n):
        for j in range(n):
            if sum(x[i][m] * y[m][j] for m in range(n)) != sum(y[i][m] * x[m][j] for m in range(n)):
                return False
    return True


# -- projectors -------------------------------------------------------------------

class NotIdempotent(ValueError):
    pass


@dataclass
class Projection:
    rank: int
    basis: list[list[RatFunc]]
    blocks: dict[str, int] = field(default_factory=dict)


def project(e: HeckeElement, n: int, cap: int | None = None, *, seed: int = 0, check: bool = True) -> Projection:
    """Image of delta_n(e) for an idempotent e.

    The image is computed block by block: delta_n(e) commutes with the torus, so
    each weight space is mapped to itself.  Every block's basis is in reduced
    row echelon form.
    """
    if check and multiply(e, e) != e:
        raise NotIdempotent("E^2 != E")
    k = e.k
    m = delta_n(e, n, cap)
    groups: dict = {}
    for idx in range(n**k):
        groups.setdefault(tensor_basis_weight(idx, n, k), []).append(idx)
    total = 0
    basis = []
    blocks = {}
    for weight in sorted(groups, key=lambda w: w.coords, reverse=True):
        members = groups[weight]
        sub = SparseMatrix(len(members), len(members),
                           {(a, b): m[r, c] for a, r in enumerate(members) for b, c in enumerate(members) if m[r, c]},
                           m.varset)
        for r, c, _ in m.items():
            if (r in members) != (c in members):
                raise AssertionError("projector mixes weight spaces")
        r = rank(sub, seed)
        if r:
            cols = [[sub[i, j] for i in range(len(members))] for j in range(len(members))]
            reduced = rref(cols, m.varset)
            if len(reduced) != r:
                raise AssertionError("rank and row reduction disagree")
            for row in reduced:
                vec = [m.varset.zero()] * (n**k)
                for a, idx in enumerate(members):
                    vec[idx] = row[a]
                basis.append(vec)
        blocks[str(weight)] = r
        total += r
    return Projection(total, basis, blocks)


def weyl_dimension(lam: Partition, n: int) -> int:
    """Classical dimension of the GL_n irreducible: prod (n + content) / hook."""
    num = 1
    den = 1
    for cell in lam.cells():
        num *= n + cell.col - cell.row
        den *= hook(lam, cell)
    return num // den


@dataclass
class DecompositionReport:
    n: int
    k: int
    components: list[tuple[Partition, int, int]]
    weyl: dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(s * d for _, s, d in self.components)

    @property
    def expected(self) -> int:
        return self.n**self.k

    @property
    def ok(self) -> bool:
        return self.total == self.expected

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "components": [{"shape": str(lam), "syt": s, "dim": d} for lam, s, d in self.components],
            "total": self.total,
            "expected": self.expected,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def decompose(n: int, k: int, cap: int | None = None, *, seed: int = 0) -> DecompositionReport:
    """Ranks of delta_n(E^lam_T) for the first tableau of each shape with at most n rows."""
    _check_cap(n, k, cap)
    comps = []
    weyl = {}
    for lam in partitions(k):
        if len(lam) > n:
            continue
        tab = standard_tableaux(lam)[0]
        r = project(idempotent_inductive(tab), n, cap, seed=seed, check=False).rank
        comps.append((lam, num_standard_tableaux(lam), r))
        weyl[str(lam)] = weyl_dimension(lam, n)
    return DecompositionReport(n, k, comps, weyl)


def basis_vector(indices: tuple[int, ...], n: int, coeff: RatFunc | None = None) -> list[RatFunc]:
    vs = _vs()
    vec = [vs.zero()] * (n ** len(indices))
    vec[tensor_index(indices, n)] = coeff if coeff is not None else vs.one()
    return vec


def commutant_basis(n: int, k: int = 2, cap: int | None = None) -> list[SparseMatrix]:
    """Basis of the operators on V_n^(tensor k) commuting with every generator image.

    Candidates are restricted to weight-preserving matrices (forced by the torus),
    and the remaining E/F commutation conditions are solved exactly.
    """
    from .linalg import nullspace

    _check_cap(n, k, cap)
    g = tensor_rep(n, k, cap)
    vs = _vs()
    groups: dict = {}
    for idx in range(n**k):
        groups.setdefault(tensor_basis_weight(idx, n, k), []).append(idx)
    unknowns = [(r, c) for members in groups.values() for r in members for c in members]
    pos = {rc: i for i, rc in enumerate(unknowns)}
    rows = []
    for i in g.indices:
        for mat in (g.E[i], g.F[i]):
            cols_of = {}
            rows_of = {}
            for r, c, x in mat.items():
                rows_of.setdefault(r, []).append((c, x))
                cols_of.setdefault(c, []).append((r, x))
            eqs: dict[tuple[int, int], dict[int, RatFunc]] = {}
            # (X g)_{rc} = sum_m X_{rm} g_{mc};  (g X)_{rc} = sum_m g_{rm} X_{mc}
            for (r, m), u in pos.items():
                for c, x in rows_of.get(m, []):
                    eq = eqs.setdefault((r, c), {})
                    eq[u] = eq.get(u, vs.zero()) + x
            for (m, c), u in pos.items():
                for r, x in cols_of.get(m, []):
                    eq = eqs.setdefault((r, c), {})
                    eq[u] = eq.get(u, vs.zero()) - x
            for eq in eqs.values():
                if any(eq.values()):
                    row = [vs.zero()] * len(unknowns)
                    for u, x in eq.items():
                        row[u] = x
                    rows.append(row)
    out = []
    for vec in nullspace(rows, len(unknowns), vs):
        out.append(SparseMatrix(n**k, n**k, {unknowns[u]: x for u, x in enumerate(vec) if x}, vs))
    return out


def measured_intertwiner(n: int) -> SparseMatrix:
    """The element of the two-site commutant with eigenvalues v^-1 t (on v_1 x v_1) and -vt.

    This is the operator the printed R would have to equal to commute with the
    printed action of U_{v,t}(sl_n) on V_n x V_n.
    """
    vs = _vs()
    v, t = vs.var("v"), vs.var("t")
    ident = SparseMatrix.identity(n * n, vs)
    basis = commutant_basis(n, 2)
    x = next(b for b in basis if not (b - ident.scale(b[0, 0])).is_zero())
    # eigenvalues on the span of v_1 x v_2, v_2 x v_1
    lam1 = x[0, 0]
    lam2 = x[1, 1] + x[n, n] - lam1
    return ident.scale(t / v) + (x - ident.scale(lam1)).scale((-v * t - t / v) / (lam2 - lam1))


def diagonal_gauge(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix | None:
    """A diagonal D with D a D^-1 = b when a and b share their pattern and diagonal, else None."""
    if a.diagonal_entries() != b.diagonal_entries():
        return None
    vs = a.varset
    d: dict[int, RatFunc] = {}
    for r, c, x in sorted(a.items()):
        if r == c:
            continue
        y = b[r, c]
        if not y:
            return None
        ratio = y / x          # d_r / d_c
        if r in d and c in d:
            if d[r] / d[c] != ratio:
                return None
        elif c in d:
            d[r] = d[c] * ratio
        elif r in d:
            d[c] = d[r] / ratio
        else:
            d[c] = vs.one()
            d[r] = ratio
    for r, c, y in b.items():
        if r != c and not a[r, c]:
            return None
    for i in range(a.nrows):
        d.setdefault(i, vs.one())
    return SparseMatrix.diagonal([d[i] for i in range(a.nrows)])
