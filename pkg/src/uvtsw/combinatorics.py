"""Permutations, partitions, Young diagrams and standard tableaux.

Cells are 1-based ``(row, col)`` pairs.  The (v, v^-1)-content of the
cell in row m and column n is ``v^(-2(n-m))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _itperms
from math import factorial
from typing import Iterator

from .ratfield import RatFunc, VarSet


class Permutation(tuple):
    """A bijection of {1..k} in one-line notation ``(w(1), ..., w(k))``.

    Composition follows functions: ``(u * w)(j) = u(w(j))``, so
    ``w * s_i`` swaps positions i and i+1 of the one-line notation.
    """

    __slots__ = ()

    def __new__(cls, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        return super().__new__(cls, images)

    @classmethod
    def _trusted(cls, images) -> "Permutation":
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls._trusted(range(1, k + 1))

    @classmethod
    def simple(cls, i: int, k: int) -> "Permutation":
        if not 1 <= i < k:
            raise ValueError(f"s_{i} is not a simple transposition of S_{k}")
        img = list(range(1, k + 1))
        img[i - 1], img[i] = img[i], img[i - 1]
        return cls._trusted(img)

    @classmethod
    def transposition(cls, a: int, b: int, k: int) -> "Permutation":
        img = list(range(1, k + 1))
        img[a - 1], img[b - 1] = img[b - 1], img[a - 1]
        return cls._trusted(img)

    @property
    def k(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self)

    def __call__(self, j: int) -> int:
        return self[j - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(other) != len(self):
            raise ValueError("rank mismatch")
        return Permutation._trusted(self[j - 1] for j in other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for pos, img in enumerate(self, start=1):
            inv[img - 1] = pos
        return Permutation._trusted(inv)

    def times_simple(self, i: int) -> "Permutation":
        """``self * s_i``."""
        img = list(self)
        img[i - 1], img[i] = img[i], img[i - 1]
        return Permutation._trusted(img)

    def has_right_descent(self, i: int) -> bool:
        return self[i - 1] > self[i]

    def length(self) -> int:
        return sum(1 for a in range(len(self)) for b in range(a + 1, len(self)) if self[a] > self[b])

    def reduced_word(self) -> list[int]:
        """Indices ``[i_1, ..., i_l]`` with ``self = s_{i_1} ... s_{i_l}`` and ``l = length()``."""
        return list(_reduced_word(tuple(self)))

    def __repr__(self) -> str:
        return f"Permutation({tuple(self)})"

    def __str__(self) -> str:
        return "".join(map(str, self)) if len(self) < 10 else ",".join(map(str, self))


@lru_cache(maxsize=None)
def _reduced_word(images: tuple[int, ...]) -> tuple[int, ...]:
    for i in range(1, len(images)):
        if images[i - 1] > images[i]:
            shorter = list(images)
            shorter[i - 1], shorter[i] = shorter[i], shorter[i - 1]
            return _reduced_word(tuple(shorter)) + (i,)
    return ()


def permutations(k: int) -> list[Permutation]:
    """All of S_k, sorted by length and then lexicographically."""
    perms = [Permutation._trusted(p) for p in _itperms(range(1, k + 1))]
    return sorted(perms, key=lambda w: (w.length(), tuple(w)))


def reduced_word(w: Permutation) -> list[int]:
    return w.reduced_word()


def length(w: Permutation) -> int:
    return w.length()


def longest_element(i: int, k: int) -> Permutation:
    """The longest element of S_i inside S_k: reverses 1..i, fixes the rest."""
    if not 1 <= i <= k:
        raise ValueError(f"need 1 <= i <= k, got i={i}, k={k}")
    return Permutation._trusted(tuple(range(i, 0, -1)) + tuple(range(i + 1, k + 1)))


# -- partitions and diagrams -----------------------------------------------

class Partition(tuple):
    """Weakly decreasing tuple of positive parts."""

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    def cells(self) -> list["Cell"]:
        return [Cell(r, c) for r, row in enumerate(self, start=1) for c in range(1, row + 1)]

    def __contains__(self, cell) -> bool:
        if isinstance(cell, Cell):
            return 1 <= cell.row <= len(self) and 1 <= cell.col <= self[cell.row - 1]
        return tuple.__contains__(self, cell)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        body = text.strip().strip("()[]")
        return cls(int(x) for x in body.split(",") if x.strip())


@dataclass(frozen=True, order=True)
class Cell:
    row: int
    col: int

    def __iter__(self):
        return iter((self.row, self.col))


def partitions(k: int) -> list[Partition]:
    """Partitions of k in reverse lexicographic order: (k), (k-1,1), ..., (1^k)."""
    out: list[Partition] = []

    def rec(remaining: int, max_part: int, acc: list[int]):
        if remaining == 0:
            out.append(Partition(acc))
            return
        for p in range(min(remaining, max_part), 0, -1):
            rec(remaining - p, p, acc + [p])

    rec(k, k, [])
    return out


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return Partition()
    return Partition(sum(1 for part in lam if part >= j) for j in range(1, lam[0] + 1))


def hook(lam: Partition, cell: Cell) -> int:
    """Hook length ``lam_i + lam'_j - i - j + 1`` of ``cell = (i, j)``."""
    if cell not in lam:
        raise ValueError(f"cell {tuple(cell)} is outside the diagram {lam}")
    i, j = cell
    return lam[i - 1] + conjugate(lam)[j - 1] - i - j + 1


def content_exponent(cell: Cell) -> int:
    """Exponent e with content ``v^e``; ``e = -2(col - row)``."""
    return -2 * (cell.col - cell.row)


def content(cell: Cell, varset: VarSet | None = None) -> RatFunc:
    vs = varset or VarSet.standard()
    return RatFunc.monomial(vs, {"v": content_exponent(cell)})


def addable_cells(lam: Partition) -> list[Cell]:
    """Cells whose addition to ``lam`` gives a partition, ordered by row."""
    out = []
    for r in range(1, len(lam) + 2):
        c = (lam[r - 1] if r <= len(lam) else 0) + 1
        above = lam[r - 2] if r >= 2 else None
        if above is None or above >= c:
            out.append(Cell(r, c))
    return out


def removable_cells(lam: Partition) -> list[Cell]:
    out = []
    for r, part in enumerate(lam, start=1):
        below = lam[r] if r < len(lam) else 0
        if below < part:
            out.append(Cell(r, part))
    return out


def remove_cell(lam: Partition, cell: Cell) -> Partition:
    parts = list(lam)
    parts[cell.row - 1] -= 1
    return Partition(p for p in parts if p)


def add_cell(lam: Partition, cell: Cell) -> Partition:
    parts = list(lam) + [0]
    parts[cell.row - 1] += 1
    return Partition(p for p in parts if p)


def num_standard_tableaux(lam: Partition) -> int:
    """Hook length formula."""
    k = lam.size
    prod = 1
    for cell in lam.cells():
        prod *= hook(lam, cell)
    return factorial(k) // prod


def b_lambda(lam: Partition) -> int:
    return sum(p * (p - 1) for p in lam)


def f_lambda(lam: Partition, k: int | None = None, varset: VarSet | None = None) -> RatFunc:
    """Fusion normalization ``v^-b t^(k(k-1)/2) (1-v^-2)^k / prod (1 - v^(-2h))``."""
    vs = varset or VarSet.standard()
    k = lam.size if k is None else k
    if lam.size != k:
        raise ValueError(f"|{lam}| != {k}")
    v = vs.var("v")
    t = vs.var("t")
    val = v ** (-b_lambda(lam)) * t ** (k * (k - 1) // 2) * (1 - v**-2) ** k
    for cell in lam.cells():
        val = val / (1 - v ** (-2 * hook(lam, cell)))
    return val


# -- tableaux ----------------------------------------------------------------

class StandardTableau:
    """Standard filling of a Young diagram with 1..k, given by its rows."""

    __slots__ = ("rows", "shape", "_pos")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        self.rows = rows
        self.shape = Partition(len(r) for r in rows)
        k = self.shape.size
        entries = sorted(x for row in rows for x in row)
        if entries != list(range(1, k + 1)):
            raise ValueError(f"entries must be 1..{k}: {rows}")
        for r, row in enumerate(rows):
            for c, x in enumerate(row):
                if c + 1 < len(row) and row[c + 1] <= x:
                    raise ValueError(f"rows must increase: {rows}")
                if r + 1 < len(rows) and c < len(rows[r + 1]) and rows[r + 1][c] <= x:
                    raise ValueError(f"columns must increase: {rows}")
        self._pos = {x: Cell(r + 1, c + 1) for r, row in enumerate(rows) for c, x in enumerate(row)}

    @property
    def k(self) -> int:
        return self.shape.size

    @property
    def entries(self) -> dict[Cell, int]:
        return {cell: x for x, cell in self._pos.items()}

    def cell_of(self, entry: int) -> Cell:
        return self._pos[entry]

    def content_exponents(self) -> list[int]:
        """Exponents of sigma_1..sigma_k."""
        return [content_exponent(self._pos[i]) for i in range(1, self.k + 1)]

    def contents(self, varset: VarSet | None = None) -> list[RatFunc]:
        return [content(self._pos[i], varset) for i in range(1, self.k + 1)]

    def remove_largest(self) -> "StandardTableau":
        k = self.k
        rows = [tuple(x for x in row if x != k) for row in self.rows]
        return StandardTableau(r for r in rows if r)

    def __eq__(self, other) -> bool:
        return isinstance(other, StandardTableau) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"StandardTableau({[list(r) for r in self.rows]})"

    def __str__(self) -> str:
        return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in self.rows) + "]"

    @classmethod
    def parse(cls, text: str) -> "StandardTableau":
        import json
        return cls(json.loads(text))


def standard_tableaux(lam: Partition) -> list[StandardTableau]:
    """All standard tableaux of shape ``lam``.

    Built by recursively removing the cell holding k.  Ordered
    lexicographically by the sequence of cells occupied by k, k-1, ...
    """
    return [StandardTableau(rows) for rows in _syt_rows(Partition(lam))]


@lru_cache(maxsize=None)
def _syt_rows(lam: Partition) -> tuple[tuple[tuple[int, ...], ...], ...]:
    k = lam.size
    if k == 0:
        return ((),)
    out = []
    for cell in removable_cells(lam):
        smaller = remove_cell(lam, cell)
        for rows in _syt_rows(smaller):
            grown = [list(r) for r in rows] + [[]]
            grown[cell.row - 1].append(k)
            out.append(tuple(tuple(r) for r in grown if r))
    return tuple(out)


def all_standard_tableaux(k: int) -> Iterator[tuple[Partition, StandardTableau]]:
    for lam in partitions(k):
        for T in standard_tableaux(lam):
            yield lam, T
