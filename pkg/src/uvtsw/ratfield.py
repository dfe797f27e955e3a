"""Exact rational functions over Q in a fixed, ordered set of variables.

Every scalar in the package is a :class:`RatFunc`.  A value is a reduced
fraction ``num/den`` of multivariate polynomials with rational
coefficients; the denominator is normalized to an integer polynomial with
content 1 and positive leading coefficient (lex order by the variable
order of the :class:`VarSet`).  With that convention two equal rational
functions have identical representations, so equality is structural and
serialization is canonical.

Polynomial arithmetic and gcd are delegated to FLINT (``python-flint``).
Negative powers such as ``v^-1`` are represented as fractions ``1/v``.

>>> V = VarSet.standard()
>>> v, t = V.gens()
>>> (v**2 - 1) / (v - 1)
RatFunc('v+1')
>>> str(v + 1 / v)
'(v^2+1)/v'
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Mapping, Union

import flint

MultiPoly = flint.fmpq_mpoly

Scalar = Union[int, Fraction]


class VarSetMismatch(ValueError):
    """Operands live in different variable sets."""


class PoleError(ZeroDivisionError):
    """A denominator vanishes under substitution or evaluation."""


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class VarSet:
    """Ordered tuple of distinct variable names.

    The order fixes the lex monomial order used for canonical forms.
    """

    names: tuple[str, ...]
    _ctx: flint.fmpq_mpoly_ctx = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if not names:
            raise ValueError("a VarSet needs at least one variable")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_ctx", flint.fmpq_mpoly_ctx.get(names, "lex"))

    @classmethod
    def standard(cls, k: int = 0) -> "VarSet":
        """``(v, t)`` followed by ``u1 .. uk``."""
        return _standard_varset(k)

    @property
    def ctx(self) -> flint.fmpq_mpoly_ctx:
        return self._ctx

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"variable {name!r} not in {self.names}") from None

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def __len__(self) -> int:
        return len(self.names)

    def gens(self) -> tuple["RatFunc", ...]:
        return tuple(self.var(name) for name in self.names)

    def var(self, name: str) -> "RatFunc":
        return RatFunc._raw(self, self._ctx.gen(self.index(name)), self._ctx.constant(1))

    def const(self, value: Scalar) -> "RatFunc":
        return RatFunc.const(self, value)

    def zero(self) -> "RatFunc":
        return _zero(self)

    def one(self) -> "RatFunc":
        return _one(self)

    def parse(self, text: str) -> "RatFunc":
        return parse(text, self)


@lru_cache(maxsize=None)
def _standard_varset(k: int) -> VarSet:
    return VarSet(("v", "t") + tuple(f"u{i}" for i in range(1, k + 1)))


@lru_cache(maxsize=None)
def _zero(vs: VarSet) -> "RatFunc":
    return RatFunc._raw(vs, vs.ctx.constant(0), vs.ctx.constant(1))


@lru_cache(maxsize=None)
def _one(vs: VarSet) -> "RatFunc":
    return RatFunc._raw(vs, vs.ctx.constant(1), vs.ctx.constant(1))


def _to_fmpq(x: Scalar) -> flint.fmpq:
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    return flint.fmpq(x)


def _normalize_den(num: MultiPoly, den: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Scale so that den is integral, primitive, with positive leading coefficient."""
    lc = den.leading_coefficient()
    if lc != 1:
        num = num / lc
        den = den / lc
    m = lcm(*(int(c.q) for c in den.coeffs()))
    if m != 1:
        num = num * m
        den = den * m
    return num, den


class RatFunc:
    """Reduced fraction of polynomials in a :class:`VarSet`.

    Instances are immutable.  Arithmetic with ``int`` and ``Fraction``
    operands is supported; arithmetic between different VarSets raises
    :class:`VarSetMismatch`.
    """

    __slots__ = ("varset", "num", "den", "_hash")

    def __init__(self, varset: VarSet, num: MultiPoly, den: MultiPoly | None = None):
        ctx = varset.ctx
        if den is None:
            den = ctx.constant(1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = ctx.constant(0), ctx.constant(1)
        elif not den.is_constant():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
            num, den = _normalize_den(num, den)
        elif den != 1:
            num = num / den.leading_coefficient()
            den = ctx.constant(1)
        self.varset = varset
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, varset: VarSet, num: MultiPoly, den: MultiPoly) -> "RatFunc":
        # caller guarantees canonical form
        obj = object.__new__(cls)
        obj.varset = varset
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def const(cls, varset: VarSet, value: Scalar) -> "RatFunc":
        ctx = varset.ctx
        return cls._raw(varset, ctx.constant(_to_fmpq(value)), ctx.constant(1))

    @classmethod
    def monomial(cls, varset: VarSet, exponents: Mapping[str, int], coeff: Scalar = 1) -> "RatFunc":
        """Laurent monomial ``coeff * prod name^e``; negative exponents go to the denominator."""
        up = [0] * len(varset)
        down = [0] * len(varset)
        for name, e in exponents.items():
            idx = varset.index(name)
            if e >= 0:
                up[idx] += e
            else:
                down[idx] -= e
        ctx = varset.ctx
        num = ctx.from_dict({tuple(up): _to_fmpq(coeff)})
        den = ctx.from_dict({tuple(down): 1})
        if _to_fmpq(coeff) == 0:
            return _zero(varset)
        return cls._raw(varset, num, den)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def free_variables(self) -> set[str]:
        names = self.varset.names
        used = set()
        for poly in (self.num, self.den):
            for mono in poly.monoms():
                used.update(names[i] for i, e in enumerate(mono) if e)
        return used

    def as_laurent_monomial(self) -> tuple[Fraction, dict[str, int]] | None:
        """``(coeff, exponents)`` if this is a single Laurent monomial, else None."""
        if self.num.is_zero() or len(self.num) != 1 or len(self.den) != 1:
            return None
        (mn, cn), = self.num.terms()
        (md, _), = self.den.terms()
        exps = {name: a - b for name, a, b in zip(self.varset.names, mn, md) if a != b}
        return Fraction(int(cn.p), int(cn.q)), exps

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.varset != self.varset:
                raise VarSetMismatch(f"{self.varset.names} vs {other.varset.names}")
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(self.varset, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            if self.den.is_one():
                return RatFunc._raw(self.varset, self.num + other.num, self.den)
            return RatFunc(self.varset, self.num + other.num, self.den)
        return RatFunc(self.varset, self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(self.varset, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return _zero(self.varset)
        if self.den.is_one() and other.den.is_one():
            return RatFunc._raw(self.varset, self.num * other.num, self.den)
        # cross-cancel before multiplying keeps intermediate degrees low
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1, d2 = (self.num, other.den) if g1.is_one() else (self.num / g1, other.den / g1)
        n2, d1 = (other.num, self.den) if g2.is_one() else (other.num / g2, self.den / g2)
        num, den = n1 * n2, d1 * d2
        if den.is_constant():
            return RatFunc._raw(self.varset, num / den.leading_coefficient(), self.varset.ctx.constant(1))
        num, den = _normalize_den(num, den)
        return RatFunc._raw(self.varset, num, den)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        num, den = _normalize_den(self.den, self.num)
        return RatFunc._raw(self.varset, num, den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, e: int) -> "RatFunc":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inv() ** (-e)
        if e == 0:
            return _one(self.varset)
        if self.den.is_one():
            return RatFunc._raw(self.varset, self.num**e, self.den)
        return RatFunc._raw(self.varset, *_normalize_den(self.num**e, self.den**e))

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.varset == other.varset and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den.is_one() and self.num == _to_fmpq(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.varset.names, str(self)))
        return self._hash

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # -- specialization ---------------------------------------------------

    def substitute(self, var: str, value: "RatFunc | Scalar") -> "RatFunc":
        """Replace ``var`` by ``value`` and reduce.

        ``self`` is always stored fully reduced, so a vanishing denominator
        after substitution is a genuine pole and raises :class:`PoleError`.
        """
        if not isinstance(value, RatFunc):
            value = RatFunc.const(self.varset, value)
        elif value.varset != self.varset:
            value = value.to_varset(self.varset)
        idx = self.varset.index(var)
        if value == self.varset.var(var):
            return self
        p, q = value.num, value.den
        num_sub, dn = _homogeneous_subs(self.num, idx, p, q, self.varset)
        den_sub, dd = _homogeneous_subs(self.den, idx, p, q, self.varset)
        if den_sub.is_zero():
            raise PoleError(f"{self} has a pole at {var}={value}")
        # N(p/q)/D(p/q) = num_sub q^dd / (den_sub q^dn)
        if dd >= dn:
            return RatFunc(self.varset, num_sub * q ** (dd - dn), den_sub)
        return RatFunc(self.varset, num_sub, den_sub * q ** (dn - dd))

    def eval_rational(self, assignment: Mapping[str, Scalar]) -> Fraction:
        point = [_to_fmpq(assignment[name]) if name in assignment else None for name in self.varset.names]
        missing = [n for n, x in zip(self.varset.names, point) if x is None and n in self.free_variables()]
        if missing:
            raise KeyError(f"no value for {missing}")
        point = [x if x is not None else flint.fmpq(0) for x in point]
        d = self.den(*point)
        if d == 0:
            raise PoleError(f"{self} has a pole at {dict(assignment)}")
        val = self.num(*point) / d
        return Fraction(int(val.p), int(val.q))

    def to_varset(self, target: VarSet) -> "RatFunc":
        """Re-express in another VarSet; every variable actually used must exist there."""
        if target == self.varset:
            return self
        names = self.varset.names
        pos = {}
        for i, name in enumerate(names):
            if name in target:
                pos[i] = target.index(name)
        ctx = target.ctx

        def conv(poly: MultiPoly) -> MultiPoly:
            terms = {}
            for mono, c in poly.terms():
                new = [0] * len(target)
                for i, e in enumerate(mono):
                    if e:
                        if i not in pos:
                            raise VarSetMismatch(f"variable {names[i]!r} not in {target.names}")
                        new[pos[i]] = e
                terms[tuple(new)] = c
            return ctx.from_dict(terms) if terms else ctx.constant(0)

        return RatFunc(target, conv(self.num), conv(self.den))

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        names = self.varset.names
        if self.den.is_one():
            return _poly_str(self.num, names)
        n = _poly_str(self.num, names)
        d = _poly_str(self.den, names)
        if len(self.num) > 1:
            n = f"({n})"
        if len(self.den) > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r})"


def _homogeneous_subs(poly: MultiPoly, idx: int, p: MultiPoly, q: MultiPoly, vs: VarSet):
    """Return (P~, d) with P(p/q) = P~ / q^d, d = degree of poly in the variable."""
    ctx = vs.ctx
    by_power: dict[int, dict] = {}
    for mono, c in poly.terms():
        e = mono[idx]
        rest = list(mono)
        rest[idx] = 0
        by_power.setdefault(e, {})[tuple(rest)] = c
    if not by_power:
        return ctx.constant(0), 0
    d = max(by_power)
    coeff = {e: ctx.from_dict(terms) for e, terms in by_power.items()}
    acc = coeff.get(d, ctx.constant(0))
    qpow = ctx.constant(1)
    for e in range(d - 1, -1, -1):
        qpow = qpow * q
        acc = acc * p
        if e in coeff:
            acc = acc + coeff[e] * qpow
    return acc, d


def _coeff_str(c: flint.fmpq) -> str:
    p, q = int(c.p), int(c.q)
    return str(p) if q == 1 else f"{p}/{q}"


def _poly_str(poly: MultiPoly, names: tuple[str, ...]) -> str:
    if poly.is_zero():
        return "0"
    out = []
    for mono, c in poly.terms():
        factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(names, mono) if e]
        m = "*".join(factors)
        if not m:
            term = _coeff_str(c)
        elif c == 1:
            term = m
        elif c == -1:
            term = "-" + m
        else:
            term = f"{_coeff_str(c)}*{m}"
        if out and not term.startswith("-"):
            out.append("+")
        out.append(term)
    return "".join(out)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        elif op is not None and not op.isspace():
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r} in {text!r}")
            tokens.append(("op", op))
    return tokens


class _Parser:
    def __init__(self, text: str, varset: VarSet):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.vs = varset

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or 'token'} at position {self.pos} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> RatFunc:
        if not self.tokens:
            raise ParseError("empty expression")
        val = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return val

    def expr(self) -> RatFunc:
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> RatFunc:
        val = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary(self) -> RatFunc:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            return base ** self.exponent()
        return base

    def exponent(self) -> int:
        if self.peek() == ("op", "("):
            self.take()
            e = self.exponent()
            self.take(")")
            return e
        sign = 1
        while self.peek() in (("op", "-"), ("op", "+")):
            if self.take()[1] == "-":
                sign = -sign
        kind, tok = self.take()
        if kind != "num":
            raise ParseError(f"integer exponent expected in {self.text!r}")
        return sign * int(tok)

    def atom(self) -> RatFunc:
        kind, tok = self.take()
        if kind == "num":
            return RatFunc.const(self.vs, int(tok))
        if kind == "name":
            if tok not in self.vs:
                raise ParseError(f"unknown variable {tok!r}; VarSet is {self.vs.names}")
            return self.vs.var(tok)
        if tok == "(":
            val = self.expr()
            self.take(")")
            return val
        raise ParseError(f"unexpected {tok!r} in {self.text!r}")


def parse(text: str, varset: VarSet | None = None) -> RatFunc:
    """Parse the grammar emitted by ``str(RatFunc)`` (plus spaces and ``^(-n)``)."""
    return _Parser(text, varset or VarSet.standard()).parse()


# -- functional interface ----------------------------------------------------

def add(a: RatFunc, b: RatFunc) -> RatFunc:
    return a + b


def mul(a: RatFunc, b: RatFunc) -> RatFunc:
    return a * b


def div(a: RatFunc, b: RatFunc) -> RatFunc:
    return a / b


def neg(a: RatFunc) -> RatFunc:
    return -a


def inv(a: RatFunc) -> RatFunc:
    return a.inv()


def power(a: RatFunc, e: int) -> RatFunc:
    return a**e


def substitute(f: RatFunc, var: str, value: RatFunc | Scalar) -> RatFunc:
    return f.substitute(var, value)


def eval_rational(f: RatFunc, assignment: Mapping[str, Scalar]) -> Fraction:
    return f.eval_rational(assignment)


def rsum(values: Iterable[RatFunc], varset: VarSet) -> RatFunc:
    total = _zero(varset)
    for x in values:
        total = total + x
    return total
