"""Representations of U_{v,t}(sl_n): the natural module V_n and its tensor powers.

The Cartan datum of type A_{n-1} is the lower bidiagonal matrix with
``<i,i> = 1`` and ``<i+1,i> = -1``; ``i.j = <i,j> + <j,i>``.  It is
extended to the index n by ``<i,n> = delta_{in}`` and
``<n,n-1> = -1``, ``<n,n> = 1``, ``<n,i> = 0`` otherwise.

Tensor basis vectors ``v_{i_1} x ... x v_{i_k}`` are indexed by
``sum (i_j - 1) n^(k-j)``: the first factor is the most significant
digit, matching the Kronecker product convention of
:meth:`SparseMatrix.kron`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .linalg import SparseMatrix, kron_all
from .ratfield import RatFunc, VarSet

DEFAULT_SIZE_CAP = 256


class SizeCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class CartanDatum:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")

    def bracket(self, i: int, j: int) -> int:
        """<i, j> for 1 <= i, j <= n, extended to the index n."""
        n = self.n
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"<{i},{j}> outside 1..{n}")
        if j == n:
            return 1 if i == n else 0
        if i == n:
            return -1 if j == n - 1 else 0
        if i == j:
            return 1
        return -1 if i == j + 1 else 0

    def dot(self, i: int, j: int) -> int:
        return self.bracket(i, j) + self.bracket(j, i)

    def antisym(self, i: int, j: int) -> int:
        """<i,j> - <j,i>."""
        return self.bracket(i, j) - self.bracket(j, i)

    def exchange_exponents(self, i: int, j: int) -> tuple[int, int]:
        """(v, t) exponents of the scalar in ``K_i E_j K_i^-1 = v^(i.j) t^(<i,j>-<j,i>) E_j``."""
        return self.dot(i, j), self.antisym(i, j)


@dataclass(frozen=True)
class Weight:
    coords: tuple[int, ...]

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    @classmethod
    def epsilon(cls, j: int, n: int) -> "Weight":
        return cls(tuple(1 if m == j else 0 for m in range(1, n + 1)))

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls((0,) * n)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coords)) + ")"


def basis_weight(j: int, n: int) -> Weight:
    """Weight of v_j: eps_j + ... + eps_n."""
    return Weight(tuple(1 if m >= j else 0 for m in range(1, n + 1)))


def weight_eigenvalue(lam: Weight, which: str, i: int, n: int, varset: VarSet | None = None) -> RatFunc:
    """lambda-hat(K_i) or lambda-hat(K_i') from the weight formula.

    ``K_i -> v^(sum lam_j i.j) t^(sum lam_j (<i,j>-<j,i>) - 1)``; the K_i'
    value has the opposite v exponent and the same t exponent.
    """
    vs = varset or VarSet.standard()
    cd = CartanDatum(n)
    if not 1 <= i < n:
        raise ValueError(f"K_{i} is not a generator for n={n}")
    ve = sum(l * cd.dot(i, j) for j, l in enumerate(lam.coords, start=1))
    te = sum(l * cd.antisym(i, j) for j, l in enumerate(lam.coords, start=1)) - 1
    if which == "K":
        return RatFunc.monomial(vs, {"v": ve, "t": te})
    if which in ("K'", "Kp"):
        return RatFunc.monomial(vs, {"v": -ve, "t": te})
    raise ValueError(f"unknown torus generator {which!r}")


@dataclass
class GeneratorImages:
    """Matrices of E_i, F_i, K_i^(+-1), K_i'^(+-1) (i < n) on V_n^(tensor k)."""

    n: int
    k: int
    E: dict[int, SparseMatrix]
    F: dict[int, SparseMatrix]
    K: dict[int, SparseMatrix]
    Kp: dict[int, SparseMatrix]
    Kinv: dict[int, SparseMatrix] = field(default_factory=dict)
    Kpinv: dict[int, SparseMatrix] = field(default_factory=dict)

    def __post_init__(self):
        for i in self.indices:
            if i not in self.Kinv:
                self.Kinv[i] = self.K[i].diagonal_inverse()
            if i not in self.Kpinv:
                self.Kpinv[i] = self.Kp[i].diagonal_inverse()

    @property
    def indices(self) -> range:
        return range(1, self.n)

    @property
    def dim(self) -> int:
        return self.n ** self.k

    def all_generators(self) -> list[tuple[str, SparseMatrix]]:
        out = []
        for i in self.indices:
            out += [(f"E{i}", self.E[i]), (f"F{i}", self.F[i]), (f"K{i}", self.K[i]), (f"K'{i}", self.Kp[i])]
        return out

    def replace(self, **changes) -> "GeneratorImages":
        """Copy with some generator dictionaries replaced (inverses recomputed)."""
        data = dict(n=self.n, k=self.k, E=dict(self.E), F=dict(self.F), K=dict(self.K), Kp=dict(self.Kp))
        data.update(changes)
        return GeneratorImages(**data)


@lru_cache(maxsize=None)
def natural_rep(n: int) -> GeneratorImages:
    """rho'_n: E_i -> E_{i,i+1}, F_i -> E_{i+1,i}, and the diagonal K_i, K_i'."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    vs = VarSet.standard()
    v, t = vs.var("v"), vs.var("t")
    tinv = t.inv()
    unit = lambda i, j: SparseMatrix.unit(i, j, n, vs)
    ident = SparseMatrix.identity(n, vs)
    E, F, K, Kp = {}, {}, {}, {}
    for i in range(1, n):
        E[i] = unit(i, i + 1)
        F[i] = unit(i + 1, i)
        K[i] = ident.scale(tinv) + unit(i, i).scale(v - tinv) + unit(i + 1, i + 1).scale(1 / v - tinv)
        Kp[i] = ident.scale(tinv) + unit(i, i).scale(1 / v - tinv) + unit(i + 1, i + 1).scale(v - tinv)
    return GeneratorImages(n, 1, E, F, K, Kp)


def _check_cap(n: int, k: int, cap: int | None):
    cap = DEFAULT_SIZE_CAP if cap is None else cap
    if n**k > cap:
        raise SizeCapExceeded(f"n^k = {n**k} exceeds the size cap {cap}")


def tensor_rep(n: int, k: int, cap: int | None = None) -> GeneratorImages:
    """Action on V_n^(tensor k) through the iterated coproduct.

    E_j -> sum_i K_j^(i-1) x E_j x 1^(k-i),
    F_j -> sum_i 1^(k-i) x F_j x K_j'^(i-1),
    K_j, K_j' -> k-fold tensor powers.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    _check_cap(n, k, cap)
    return _tensor_rep(n, k)


@lru_cache(maxsize=None)
def _tensor_rep(n: int, k: int) -> GeneratorImages:
    base = natural_rep(n)
    if k == 1:
        return base
    ident = SparseMatrix.identity(n, VarSet.standard())
    E, F, K, Kp = {}, {}, {}, {}
    for j in base.indices:
        e_terms = []
        f_terms = []
        for i in range(1, k + 1):
            e_terms.append(kron_all([base.K[j]] * (i - 1) + [base.E[j]] + [ident] * (k - i)))
            f_terms.append(kron_all([ident] * (k - i) + [base.F[j]] + [base.Kp[j]] * (i - 1)))
        E[j] = _msum(e_terms)
        F[j] = _msum(f_terms)
        K[j] = kron_all([base.K[j]] * k)
        Kp[j] = kron_all([base.Kp[j]] * k)
    return GeneratorImages(n, k, E, F, K, Kp)


def _msum(mats: Iterable[SparseMatrix]) -> SparseMatrix:
    it = iter(mats)
    out = next(it)
    for m in it:
        out = out + m
    return out


def coproduct_combine(a: GeneratorImages, b: GeneratorImages) -> GeneratorImages:
    """Images on M x N from images on M and N via Delta (one coproduct step)."""
    if a.n != b.n:
        raise ValueError("rank mismatch")
    vs = VarSet.standard()
    ia = SparseMatrix.identity(a.dim, vs)
    ib = SparseMatrix.identity(b.dim, vs)
    E, F, K, Kp = {}, {}, {}, {}
    for j in a.indices:
        E[j] = a.E[j].kron(ib) + a.K[j].kron(b.E[j])
        F[j] = ia.kron(b.F[j]) + a.F[j].kron(b.Kp[j])
        K[j] = a.K[j].kron(b.K[j])
        Kp[j] = a.Kp[j].kron(b.Kp[j])
    return GeneratorImages(a.n, a.k + b.k, E, F, K, Kp)


# -- relation checker -----------------------------------------------------------

@dataclass
class RelationResult:
    relation: str
    passed: bool
    checked: int
    detail: str = ""


def _first_failure(name: str, lhs: SparseMatrix, rhs: SparseMatrix) -> str:
    diff = lhs.first_difference(rhs)
    if diff is None:
        return ""
    r, c, x, y = diff
    return f"{name}: entry ({r},{c}) lhs={x} rhs={y}"


def check_relations(g: GeneratorImages) -> list[RelationResult]:
    """Exact verification of the defining relations (R1)-(R6) on matrices."""
    n = g.n
    cd = CartanDatum(n)
    vs = VarSet.standard()
    v, t = vs.var("v"), vs.var("t")
    ident = SparseMatrix.identity(g.dim, vs)
    idx = list(g.indices)
    results = []

    def run(label: str, cases: list[tuple[str, SparseMatrix, SparseMatrix]]):
        for name, lhs, rhs in cases:
            msg = _first_failure(name, lhs, rhs)
            if msg:
                results.append(RelationResult(label, False, len(cases), msg))
                return
        results.append(RelationResult(label, True, len(cases)))

    # (R1)
    cases = []
    tori = [(f"K{i}", g.K[i]) for i in idx] + [(f"K'{i}", g.Kp[i]) for i in idx] + \
           [(f"K{i}^-1", g.Kinv[i]) for i in idx] + [(f"K'{i}^-1", g.Kpinv[i]) for i in idx]
    for a in range(len(tori)):
        for b in range(a + 1, len(tori)):
            (na, A), (nb, B) = tori[a], tori[b]
            cases.append((f"{na}{nb}={nb}{na}", A @ B, B @ A))
    for i in idx:
        cases.append((f"K{i}K{i}^-1=1", g.K[i] @ g.Kinv[i], ident))
        cases.append((f"K{i}^-1K{i}=1", g.Kinv[i] @ g.K[i], ident))
        cases.append((f"K'{i}K'{i}^-1=1", g.Kp[i] @ g.Kpinv[i], ident))
        cases.append((f"K'{i}^-1K'{i}=1", g.Kpinv[i] @ g.Kp[i], ident))
    run("R1", cases)

    # (R2)
    cases = []
    for i in idx:
        for j in idx:
            dv, dt = cd.exchange_exponents(i, j)
            s = RatFunc.monomial(vs, {"v": dv, "t": dt})
            sp = RatFunc.monomial(vs, {"v": -dv, "t": dt})
            sf = RatFunc.monomial(vs, {"v": -dv, "t": -dt})
            sfp = RatFunc.monomial(vs, {"v": dv, "t": -dt})
            cases.append((f"K{i}E{j}K{i}^-1", g.K[i] @ g.E[j] @ g.Kinv[i], g.E[j].scale(s)))
            cases.append((f"K'{i}E{j}K'{i}^-1", g.Kp[i] @ g.E[j] @ g.Kpinv[i], g.E[j].scale(sp)))
            cases.append((f"K{i}F{j}K{i}^-1", g.K[i] @ g.F[j] @ g.Kinv[i], g.F[j].scale(sf)))
            cases.append((f"K'{i}F{j}K'{i}^-1", g.Kp[i] @ g.F[j] @ g.Kpinv[i], g.F[j].scale(sfp)))
    run("R2", cases)

    # (R3)
    cases = []
    denom = (v - 1 / v).inv()
    zero = SparseMatrix.zeros(g.dim, g.dim, vs)
    for i in idx:
        for j in idx:
            lhs = g.E[i] @ g.F[j] - g.F[j] @ g.E[i]
            rhs = (g.K[i] - g.Kp[i]).scale(denom) if i == j else zero
            cases.append((f"[E{i},F{j}]", lhs, rhs))
    run("R3", cases)

    # (R4)
    cases = []
    for i in idx:
        for j in idx:
            if abs(i - j) > 1:
                cases.append((f"[E{i},E{j}]", g.E[i] @ g.E[j], g.E[j] @ g.E[i]))
                cases.append((f"[F{i},F{j}]", g.F[i] @ g.F[j], g.F[j] @ g.F[i]))
    run("R4", cases)

    # (R5), (R6)
    q = v + 1 / v
    for label, X, c, d in (("R5", g.E, t * q, t * t), ("R6", g.F, q / t, 1 / (t * t))):
        cases = []
        for i in idx:
            if i + 1 not in X:
                continue
            a, b = X[i], X[i + 1]
            first = a @ a @ b - (a @ b @ a).scale(c) + (b @ a @ a).scale(d)
            second = a @ b @ b - (b @ a @ b).scale(c) + (b @ b @ a).scale(d)
            cases.append((f"Serre1({i},{i + 1})", first, zero))
            cases.append((f"Serre2({i},{i + 1})", second, zero))
        run(label, cases)
    return results


# -- weights --------------------------------------------------------------------

def tensor_index(indices: tuple[int, ...], n: int) -> int:
    idx = 0
    for i in indices:
        idx = idx * n + (i - 1)
    return idx


def tensor_indices(idx: int, n: int, k: int) -> tuple[int, ...]:
    digits = []
    for _ in range(k):
        idx, d = divmod(idx, n)
        digits.append(d + 1)
    return tuple(reversed(digits))


def tensor_basis_weight(idx: int, n: int, k: int) -> Weight:
    w = Weight.zero(n)
    for j in tensor_indices(idx, n, k):
        w = w + basis_weight(j, n)
    return w


def weight_decomposition(n: int, k: int, cap: int | None = None) -> dict[Weight, list[int]]:
    """Group the tensor basis by simultaneous K_i eigenvalues, labelled by weight.

    Raises if the eigenvalue grouping and the weight labelling disagree.
    """
    g = tensor_rep(n, k, cap)
    by_eigen: dict[tuple[str, ...], list[int]] = {}
    for idx in range(g.dim):
        key = tuple(str(g.K[i][idx, idx]) for i in g.indices)
        by_eigen.setdefault(key, []).append(idx)
    out: dict[Weight, list[int]] = {}
    for members in by_eigen.values():
        weights = {tensor_basis_weight(m, n, k) for m in members}
        if len(weights) != 1:
            raise AssertionError(f"one K-eigenspace carries several weights: {sorted(map(str, weights))}")
        out[weights.pop()] = members
    return dict(sorted(out.items(), key=lambda kv: kv[0].coords, reverse=True))


def weight_consistency(n: int) -> list[dict]:
    """Compare the weight formula with the diagonal of rho'_n(K_i), rho'_n(K_i') on every v_j."""
    g = natural_rep(n)
    rows = []
    for i in g.indices:
        for j in range(1, n + 1):
            lam = basis_weight(j, n)
            for which, mat in (("K", g.K[i]), ("K'", g.Kp[i])):
                formula = weight_eigenvalue(lam, which, i, n)
                matrix = mat[j - 1, j - 1]
                rows.append({"i": i, "j": j, "generator": which, "formula": str(formula),
                             "matrix": str(matrix), "match": formula == matrix})
    return rows
