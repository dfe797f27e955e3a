"""The Hecke algebra H_k(v,t) in the basis {T_w : w in S_k}.

Relations: braid relations for the generators T_i and the quadratic
``(T_i - v^-1 t)(T_i + v t) = 0``, i.e.
``T_i^2 = (v^-1 - v) t T_i + t^2``.  Products are expanded with the
length rule

    T_w T_i = T_{w s_i}                              if l(w s_i) > l(w)
    T_w T_i = (v^-1 - v) t T_w + t^2 T_{w s_i}       otherwise.

Besides the algebra itself this module builds the Jucys-Murphy elements,
the elements T_{w_i} of the longest permutations, the Baxterized
generators T_i(x, y), the fusion product Psi(u_1..u_k) and the two
constructions of the primitive idempotents E^lambda_T.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .combinatorics import (
    Partition,
    Permutation,
    StandardTableau,
    addable_cells,
    content_exponent,
    f_lambda,
    longest_element,
    permutations,
)
from .ratfield import RatFunc, VarSet


class HeckeElement:
    """Finitely supported map ``Permutation -> RatFunc`` (the T_w coefficients)."""

    __slots__ = ("k", "varset", "coeffs")

    def __init__(self, k: int, coeffs: Mapping[Permutation, RatFunc] | None = None,
                 varset: VarSet | None = None):
        self.k = k
        self.varset = varset or VarSet.standard()
        self.coeffs: dict[Permutation, RatFunc] = {}
        for w, c in (coeffs or {}).items():
            if len(w) != k:
                raise ValueError(f"{w} is not in S_{k}")
            if not isinstance(c, RatFunc):
                c = RatFunc.const(self.varset, c)
            elif c.varset != self.varset:
                raise ValueError("coefficient VarSet differs from element VarSet")
            if c:
                self.coeffs[Permutation(w) if not isinstance(w, Permutation) else w] = c

    @classmethod
    def _from_dict(cls, k: int, varset: VarSet, coeffs: dict) -> "HeckeElement":
        obj = object.__new__(cls)
        obj.k = k
        obj.varset = varset
        obj.coeffs = {w: c for w, c in coeffs.items() if c}
        return obj

    @classmethod
    def zero(cls, k: int, varset: VarSet | None = None) -> "HeckeElement":
        return cls._from_dict(k, varset or VarSet.standard(), {})

    @classmethod
    def one(cls, k: int, varset: VarSet | None = None) -> "HeckeElement":
        vs = varset or VarSet.standard()
        return cls._from_dict(k, vs, {Permutation.identity(k): vs.one()})

    @classmethod
    def basis(cls, w: Permutation, varset: VarSet | None = None) -> "HeckeElement":
        vs = varset or VarSet.standard()
        return cls._from_dict(len(w), vs, {Permutation(w): vs.one()})

    @classmethod
    def scalar(cls, c: RatFunc, k: int) -> "HeckeElement":
        return cls._from_dict(k, c.varset, {Permutation.identity(k): c})

    # -- container protocol -------------------------------------------------

    def __iter__(self) -> Iterator[tuple[Permutation, RatFunc]]:
        return iter(sorted(self.coeffs.items(), key=lambda wc: (wc[0].length(), tuple(wc[0]))))

    def __len__(self) -> int:
        return len(self.coeffs)

    def coefficient(self, w) -> RatFunc:
        return self.coeffs.get(Permutation(w), self.varset.zero())

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list[Permutation]:
        return [w for w, _ in self]

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "HeckeElement"):
        if other.k != self.k:
            raise ValueError(f"rank mismatch: H_{self.k} vs H_{other.k}")
        if other.varset != self.varset:
            raise ValueError("VarSet mismatch between Hecke elements")

    def __add__(self, other):
        if not isinstance(other, HeckeElement):
            return self + HeckeElement.scalar(self._scalar(other), self.k)
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out[w] + c if w in out else c
        return HeckeElement._from_dict(self.k, self.varset, out)

    __radd__ = __add__

    def __neg__(self) -> "HeckeElement":
        return HeckeElement._from_dict(self.k, self.varset, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _scalar(self, c) -> RatFunc:
        if isinstance(c, RatFunc):
            if c.varset != self.varset:
                raise ValueError("scalar VarSet differs from element VarSet")
            return c
        return RatFunc.const(self.varset, c)

    def scale(self, c) -> "HeckeElement":
        c = self._scalar(c)
        if not c:
            return HeckeElement.zero(self.k, self.varset)
        return HeckeElement._from_dict(self.k, self.varset, {w: c * x for w, x in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(self._scalar(c).inv())

    def __pow__(self, e: int) -> "HeckeElement":
        out = HeckeElement.one(self.k, self.varset)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.k == other.k and self.varset == other.varset and self.coeffs == other.coeffs

    __hash__ = None

    # -- coefficient maps ----------------------------------------------------

    def map_coefficients(self, fn) -> "HeckeElement":
        out = {w: fn(c) for w, c in self.coeffs.items()}
        vs = next(iter(out.values())).varset if out else self.varset
        return HeckeElement._from_dict(self.k, vs, out)

    def substitute(self, var: str, value) -> "HeckeElement":
        return HeckeElement._from_dict(
            self.k, self.varset, {w: c.substitute(var, value) for w, c in self.coeffs.items()})

    def to_varset(self, varset: VarSet) -> "HeckeElement":
        return HeckeElement._from_dict(self.k, varset, {w: c.to_varset(varset) for w, c in self.coeffs.items()})

    # -- text ------------------------------------------------------------------

    def to_pairs(self) -> list[tuple[str, str]]:
        return [(",".join(map(str, w)), str(c)) for w, c in self]

    def to_json(self) -> str:
        return json.dumps({"k": self.k, "terms": [list(p) for p in self.to_pairs()]})

    @classmethod
    def from_pairs(cls, k: int, pairs: Iterable[tuple[str, str]], varset: VarSet | None = None) -> "HeckeElement":
        vs = varset or VarSet.standard()
        return cls(k, {Permutation(int(x) for x in w.split(",")): vs.parse(c) for w, c in pairs}, vs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for w, c in self:
            basis = "1" if w.length() == 0 else "T_" + "".join(map(str, w.reduced_word()))
            parts.append(f"({c})*{basis}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"HeckeElement(k={self.k}, {self.to_pairs()})"


@lru_cache(maxsize=None)
def _quadratic_constants(vs: VarSet) -> tuple[RatFunc, RatFunc]:
    v, t = vs.var("v"), vs.var("t")
    return (1 / v - v) * t, t * t


def _right_mul_generator(coeffs: dict, i: int, vs: VarSet) -> dict:
    c1, t2 = _quadratic_constants(vs)
    out: dict = {}
    for w, c in coeffs.items():
        ws = w.times_simple(i)
        if not w.has_right_descent(i):
            out[ws] = out[ws] + c if ws in out else c
        else:
            a = c * c1
            b = c * t2
            out[w] = out[w] + a if w in out else a
            out[ws] = out[ws] + b if ws in out else b
    return {w: c for w, c in out.items() if c}


def multiply(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Product in the T_w basis.

    ``a * T_u`` is built for every u in the support of b by extending
    ``a * T_{u s_i}`` by one generator, sharing prefixes between words.
    """
    a._check(b)
    vs = a.varset
    cache: dict[Permutation, dict] = {Permutation.identity(a.k): a.coeffs}

    def times_basis(u: Permutation) -> dict:
        if u in cache:
            return cache[u]
        word = u.reduced_word()
        i = word[-1]
        prev = times_basis(u.times_simple(i))
        res = _right_mul_generator(prev, i, vs)
        cache[u] = res
        return res

    out: dict = {}
    for u, bu in b.coeffs.items():
        for w, c in times_basis(u).items():
            x = c * bu
            out[w] = out[w] + x if w in out else x
    return HeckeElement._from_dict(a.k, vs, out)


def product(elements: Iterable[HeckeElement], k: int, varset: VarSet | None = None) -> HeckeElement:
    out = HeckeElement.one(k, varset)
    for x in elements:
        out = out * x
    return out


def generator(i: int, k: int, varset: VarSet | None = None) -> HeckeElement:
    """The basis element T_i = T_{s_i}."""
    if not 1 <= i < k:
        raise ValueError(f"T_{i} is not a generator of H_{k} (need 1 <= i < k)")
    return HeckeElement.basis(Permutation.simple(i, k), varset)


def generator_inverse(i: int, k: int, varset: VarSet | None = None) -> HeckeElement:
    """``T_i^-1 = t^-2 T_i + (v - v^-1) t^-1``."""
    vs = varset or VarSet.standard()
    v, t = vs.var("v"), vs.var("t")
    return generator(i, k, vs) * t**-2 + HeckeElement.one(k, vs) * ((v - 1 / v) / t)


def basis_element(w: Permutation, varset: VarSet | None = None) -> HeckeElement:
    return HeckeElement.basis(w, varset)


def transposition_element(a: int, b: int, k: int, varset: VarSet | None = None) -> HeckeElement:
    return HeckeElement.basis(Permutation.transposition(a, b, k), varset)


def invert_basis_element(w: Permutation, varset: VarSet | None = None) -> HeckeElement:
    """``T_w^-1 = T_{i_l}^-1 ... T_{i_1}^-1`` along a reduced word of w."""
    k = len(w)
    return product((generator_inverse(i, k, varset) for i in reversed(w.reduced_word())), k, varset)


def word_element(word: Iterable[int], k: int, varset: VarSet | None = None) -> HeckeElement:
    """``T_{i_1} ... T_{i_m}`` for an arbitrary (not necessarily reduced) word."""
    vs = varset or VarSet.standard()
    coeffs = {Permutation.identity(k): vs.one()}
    for i in word:
        if not 1 <= i < k:
            raise ValueError(f"T_{i} is not a generator of H_{k}")
        coeffs = _right_mul_generator(coeffs, i, vs)
    return HeckeElement._from_dict(k, vs, coeffs)


# -- Jucys-Murphy elements ------------------------------------------------------

@lru_cache(maxsize=None)
def _jm(i: int, k: int, vs: VarSet) -> HeckeElement:
    if i == 1:
        return HeckeElement.one(k, vs)
    g = generator(i - 1, k, vs)
    t = vs.var("t")
    return (g * _jm(i - 1, k, vs) * g) * t**-2


def jm_element(i: int, k: int, varset: VarSet | None = None) -> HeckeElement:
    """y_i from ``y_1 = 1``, ``y_{i+1} = t^-2 T_i y_i T_i``."""
    if not 1 <= i <= k:
        raise ValueError(f"y_{i} undefined in H_{k}")
    return _jm(i, k, varset or VarSet.standard())


def normalized_transposition(m: int, i: int, k: int, varset: VarSet | None = None) -> HeckeElement:
    """T_(m i) for m < i, built as ``T_(i-1 i) = T_{i-1}`` and ``T_(m i) = t^-2 T_{i-1} T_(m i-1) T_{i-1}``.

    This is ``t^-2(i-m-1) T_w`` for w = (m i): the basis element rescaled so
    that the closed form of y_i below holds.
    """
    if not 1 <= m < i <= k:
        raise ValueError(f"({m} {i}) is not a transposition in S_{k}")
    vs = varset or VarSet.standard()
    t = vs.var("t")
    return transposition_element(m, i, k, vs) * t ** (-2 * (i - m - 1))


def jm_expanded(i: int, k: int, varset: VarSet | None = None, *, literal: bool = False) -> HeckeElement:
    """``1 + (v^-1 - v) t^-1 (T_(1 i) + ... + T_(i-1 i))``.

    By default T_(m i) is :func:`normalized_transposition`.  With
    ``literal=True`` it is the bare basis element T_w, which disagrees with
    the recursion from i = 3 on.
    """
    if not 1 <= i <= k:
        raise ValueError(f"y_{i} undefined in H_{k}")
    vs = varset or VarSet.standard()
    v, t = vs.var("v"), vs.var("t")
    total = HeckeElement.one(k, vs)
    c = (1 / v - v) / t
    for m in range(1, i):
        term = transposition_element(m, i, k, vs) if literal else normalized_transposition(m, i, k, vs)
        total = total + term * c
    return total


# -- longest elements ---------------------------------------------------------------

def t_longest(i: int, k: int, varset: VarSet | None = None) -> HeckeElement:
    """``T_{w_i} = T_1 (T_2 T_1) ... (T_{i-1} ... T_1)``, evaluated as a product."""
    if not 1 <= i <= k:
        raise ValueError(f"w_{i} undefined in S_{k}")
    word = [j for top in range(1, i) for j in range(top, 0, -1)]
    return word_element(word, k, varset)


def t_longest_alt(i: int, k: int, varset: VarSet | None = None) -> HeckeElement:
    """Second printed form ``(T_1 ... T_{i-1})(T_1 ... T_{i-2}) ... (T_1 T_2) T_1``."""
    if not 1 <= i <= k:
        raise ValueError(f"w_{i} undefined in S_{k}")
    word = [j for top in range(i - 1, 0, -1) for j in range(1, top + 1)]
    return word_element(word, k, varset)


def t_longest_square_exponent(i: int, k: int, varset: VarSet | None = None) -> int | None:
    """Exponent e with ``T_{w_i}^2 = t^e y_1 ... y_i``, or None if no such e exists."""
    vs = varset or VarSet.standard()
    sq = t_longest(i, k, vs) ** 2
    ys = product((jm_element(j, k, vs) for j in range(1, i + 1)), k, vs)
    w0 = next(iter(ys.coeffs))
    ratio = sq.coefficient(w0) / ys.coefficient(w0)
    mono = ratio.as_laurent_monomial()
    if mono is None or mono[0] != 1 or set(mono[1]) - {"t"}:
        return None
    e = mono[1].get("t", 0)
    return e if ys * ratio == sq else None


# -- Baxterized generators and the fusion product -----------------------------------

def baxterized(i: int, x: RatFunc, y: RatFunc, k: int) -> HeckeElement:
    """``T_i(x, y) = t^-1 T_i + (v^-1 - v) x / (y - x)``."""
    vs = x.varset
    diff = y - x
    if diff.is_zero():
        raise ZeroDivisionError(f"T_{i}(x, y) needs y != x (got x = y = {x})")
    v, t = vs.var("v"), vs.var("t")
    return generator(i, k, vs) * t.inv() + HeckeElement.one(k, vs) * ((1 / v - v) * x / diff)


def psi_factors(k: int) -> list[HeckeElement]:
    """The Baxterized factors of Psi in multiplication order (without T_{w_k}^-1)."""
    vs = VarSet.standard(k)
    u = [None] + [vs.var(f"u{j}") for j in range(1, k + 1)]
    factors = []
    for i in range(1, k):
        # T_i(u_1,u_{i+1}) T_{i-1}(u_2,u_{i+1}) ... T_1(u_i,u_{i+1})
        for m in range(1, i + 1):
            factors.append(baxterized(i + 1 - m, u[m], u[i + 1], k))
    return factors


@lru_cache(maxsize=None)
def psi(k: int) -> HeckeElement:
    """Psi(u_1..u_k) with coefficients in Q(v, t, u_1..u_k)."""
    vs = VarSet.standard(k)
    out = product(psi_factors(k), k, vs)
    return out * invert_basis_element(longest_element(k, k), vs)


def evaluate_consecutively(elem: HeckeElement, values: Iterable[RatFunc]) -> HeckeElement:
    """Substitute u_1 = values[0], then u_2 = values[1], ... reducing after each step."""
    for j, val in enumerate(values, start=1):
        elem = elem.substitute(f"u{j}", val)
    return elem


# -- idempotents --------------------------------------------------------------------

def _content(exp: int, vs: VarSet) -> RatFunc:
    return RatFunc.monomial(vs, {"v": exp})


@lru_cache(maxsize=None)
def _inductive(rows: tuple[tuple[int, ...], ...]) -> HeckeElement:
    T = StandardTableau(rows)
    k = T.k
    vs = VarSet.standard()
    if k == 1:
        return HeckeElement.one(1, vs)
    U = T.remove_largest()
    alpha = T.cell_of(k)
    prev = embed(_inductive(U.rows), k)
    sigma = _content(content_exponent(alpha), vs)
    yk = jm_element(k, k, vs)
    out = prev
    for cell in addable_cells(U.shape):
        if cell == alpha:
            continue
        rho = _content(content_exponent(cell), vs)
        out = out * (yk - rho) / (sigma - rho)
    return out


def idempotent_inductive(T: StandardTableau) -> HeckeElement:
    """E^lambda_T = E^mu_U prod_j (y_k - rho_j)/(sigma - rho_j), with E = 1 for k = 1."""
    return _inductive(T.rows)


def psi_evaluated(T: StandardTableau) -> HeckeElement:
    """Psi(u_1..u_k) at u_1 = sigma_1, ..., u_k = sigma_k (consecutive), over Q(v, t)."""
    k = T.k
    vs = VarSet.standard(k)
    values = [_content(e, vs) for e in T.content_exponents()]
    return evaluate_consecutively(psi(k), values).to_varset(VarSet.standard())


def idempotent_fusion(T: StandardTableau) -> HeckeElement:
    """E^lambda_T = f(lambda) Psi(u)|u_1=sigma_1|...|u_k=sigma_k."""
    return psi_evaluated(T) * f_lambda(T.shape, T.k)


def embed(elem: HeckeElement, k: int) -> HeckeElement:
    """Image of H_m in H_k (m <= k) under T_w -> T_{w x id}."""
    if k < elem.k:
        raise ValueError("cannot embed into a smaller rank")
    tail = tuple(range(elem.k + 1, k + 1))
    return HeckeElement._from_dict(k, elem.varset, {Permutation._trusted(tuple(w) + tail): c
                                                    for w, c in elem.coeffs.items()})


def all_idempotents(k: int, method: str = "inductive") -> list[tuple[Partition, StandardTableau, HeckeElement]]:
    from .combinatorics import all_standard_tableaux
    build = idempotent_inductive if method == "inductive" else idempotent_fusion
    return [(lam, T, build(T)) for lam, T in all_standard_tableaux(k)]


def basis_elements(k: int, varset: VarSet | None = None) -> list[HeckeElement]:
    return [HeckeElement.basis(w, varset) for w in permutations(k)]
