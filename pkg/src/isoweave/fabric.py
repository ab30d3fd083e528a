"""Periodic weave designs: construction, text format and structural checks.

A design is a rows x cols boolean matrix read as an infinite periodic array;
``cells[i, j]`` is True when warp ``j`` (vertical) passes over weft ``i``
(horizontal).  True cells are written ``#`` and drawn dark.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import gcd, lcm

import networkx as nx
import numpy as np


class DesignError(ValueError):
    """Malformed design text or invalid construction parameters."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True, eq=False)
class Design:
    cells: np.ndarray
    label: str | None = None

    def __post_init__(self):
        arr = np.array(self.cells, dtype=bool)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DesignError(f"design must be a non-empty 2-D matrix, got shape {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "cells", arr)

    @classmethod
    def from_rows(cls, rows, label: str | None = None) -> Design:
        return parse_design("\n".join(rows), label=label)

    @property
    def rows(self) -> int:
        return self.cells.shape[0]

    @property
    def cols(self) -> int:
        return self.cells.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape

    @property
    def order(self) -> int:
        """Common period along strands (``lcm(rows, cols)``)."""
        return lcm(self.rows, self.cols)

    def cell(self, i: int, j: int) -> bool:
        return bool(self.cells[i % self.rows, j % self.cols])

    def tiled(self, rows: int, cols: int | None = None) -> np.ndarray:
        cols = rows if cols is None else cols
        ii = np.arange(rows) % self.rows
        jj = np.arange(cols) % self.cols
        return self.cells[np.ix_(ii, jj)]

    def square(self) -> np.ndarray:
        return self.tiled(self.order)

    def dark_count(self) -> int:
        return int(self.cells.sum())

    def __eq__(self, other):
        if not isinstance(other, Design):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.cells, other.cells))

    def __hash__(self):
        return hash((self.shape, self.cells.tobytes()))

    def __repr__(self):
        tag = f" {self.label!r}" if self.label else ""
        return f"<Design {self.rows}x{self.cols}{tag}>"

    def __str__(self):
        return serialize_design(self)


class Direction(enum.Enum):
    WARP = "warp"
    WEFT = "weft"


@dataclass(frozen=True)
class Strand:
    direction: Direction
    index: int

    @classmethod
    def reduced(cls, direction: Direction, index: int, design: Design) -> Strand:
        period = design.cols if direction is Direction.WARP else design.rows
        return cls(direction, index % period)


# -- generators ---------------------------------------------------------------


def make_twill(order: int, shift: int = 1) -> Design:
    """Row ``i`` is row 0 shifted right by ``i*shift``; row 0 has one dark cell."""
    if order < 1:
        raise DesignError("twill order must be at least 1")
    cells = np.zeros((order, order), dtype=bool)
    for i in range(order):
        cells[i, (i * shift) % order] = True
    return Design(cells, label=f"twill {order}/{shift % order}")


def make_satin(n: int, s: int) -> Design:
    """The ``(n, s)`` satin: row ``i`` is dark at column ``i*s mod n``."""
    if n < 1 or not 2 <= s <= n - 2 or gcd(n, s) != 1:
        raise DesignError(f"no ({n},{s}) satin: need gcd(n, s) = 1 and 2 <= s <= n-2")
    cells = np.zeros((n, n), dtype=bool)
    for i in range(n):
        cells[i, (i * s) % n] = True
    return Design(cells, label=f"satin ({n},{s})")


def double(d: Design) -> Design:
    """Replace each strand by two identical strands (each cell by a 2x2 block)."""
    cells = np.repeat(np.repeat(d.cells, 2, axis=0), 2, axis=1)
    label = f"{d.label} doubled" if d.label else None
    return Design(cells, label=label)


def reverse(d: Design) -> Design:
    """The design seen from the other side: the cellwise complement."""
    label = f"{d.label} reversed" if d.label else None
    return Design(~d.cells, label=label)


def minimal_period(d: Design) -> Design:
    """The same infinite design on its smallest rows x cols period."""
    rows = next(r for r in range(1, d.rows + 1)
                if d.rows % r == 0 and np.array_equal(d.cells, np.roll(d.cells, r, axis=0)))
    cols = next(c for c in range(1, d.cols + 1)
                if d.cols % c == 0 and np.array_equal(d.cells, np.roll(d.cells, c, axis=1)))
    return Design(d.cells[:rows, :cols], label=d.label)


def twillin_611() -> Design:
    """The order-6 twillin 6-1-1: the only non-twill isonemal one-per-order design of order 6.

    Cells are listed in canonical (lexicographically least) orientation as
    found by :func:`enumerate_one_per_order`.
    """
    return Design.from_rows(
        [".....#", "....#.", ".#....", "#.....", "...#..", "..#..."], label="6-1-1"
    )


# -- hanging together ---------------------------------------------------------


def passes_under_graph(d: Design) -> nx.DiGraph:
    """Digraph on strands with an edge ``u -> v`` when ``v`` lies over ``u`` somewhere."""
    g = nx.DiGraph()
    warps = [("warp", j) for j in range(d.cols)]
    wefts = [("weft", i) for i in range(d.rows)]
    g.add_nodes_from(warps + wefts)
    for i in range(d.rows):
        for j in range(d.cols):
            if d.cells[i, j]:
                g.add_edge(("weft", i), ("warp", j))
            else:
                g.add_edge(("warp", j), ("weft", i))
    return g


def hangs_together(d: Design) -> bool:
    """True when no set of strands can be lifted off the rest as a separate layer."""
    return nx.is_strongly_connected(passes_under_graph(d))


# -- equivalence and enumeration ----------------------------------------------


def grid_images(cells: np.ndarray):
    """The eight dihedral images of a matrix (transposition included)."""
    for m in (cells, cells.T):
        for r in range(4):
            yield np.rot90(m, r)


def canonical_form(d: Design) -> np.ndarray:
    """Least image under cyclic row/column shifts and the dihedral grid symmetries.

    Reversal (complement) is not an equivalence here.
    """
    sq = d.square()
    best = None
    for img in grid_images(sq):
        for r in range(img.shape[0]):
            rolled = np.roll(img, -r, axis=0)
            for c in range(img.shape[1]):
                key = np.roll(rolled, -c, axis=1).tobytes()
                if best is None or key < best:
                    best = key
    n = sq.shape[0]
    return np.frombuffer(best, dtype=bool).reshape(n, n).copy()


def equivalent(d1: Design, d2: Design) -> bool:
    if d1.order != d2.order:
        return False
    return bool(np.array_equal(canonical_form(d1), canonical_form(d2)))


def is_twill_permutation(perm) -> bool:
    n = len(perm)
    steps = {(perm[(i + 1) % n] - perm[i]) % n for i in range(n)}
    return steps == {1} or steps == {n - 1}


def one_per_order_classes(order: int) -> list[tuple[int, ...]]:
    """Representatives of permutation matrices of the given order up to equivalence."""
    n = order
    seen: set[tuple[int, ...]] = set()
    reps = []
    for perm in itertools.permutations(range(n)):
        if perm in seen:
            continue
        reps.append(perm)
        seen.update(_perm_orbit(perm))
    return reps


def _perm_orbit(perm: tuple[int, ...]) -> set[tuple[int, ...]]:
    n = len(perm)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    base = [tuple(perm), tuple(inv)]
    variants = []
    for p in base:
        variants.append(p)
        variants.append(tuple(p[n - 1 - i] for i in range(n)))  # flip rows
        variants.append(tuple(n - 1 - p[i] for i in range(n)))  # flip cols
        variants.append(tuple(n - 1 - p[n - 1 - i] for i in range(n)))
    out = set()
    for p in variants:
        for a in range(n):
            for b in range(n):
                out.add(tuple((p[(i - a) % n] + b) % n for i in range(n)))
    return out


def perm_design(perm, label: str | None = None) -> Design:
    n = len(perm)
    cells = np.zeros((n, n), dtype=bool)
    cells[np.arange(n), list(perm)] = True
    return Design(cells, label=label)


def enumerate_one_per_order(order: int) -> list[Design]:
    """Isonemal designs with one dark cell per row and column, up to equivalence.

    Labels are ``"twill"`` or ``"non-twill"``; each result is the canonical form
    of its class.
    """
    from .symmetry import is_isonemal

    if order < 2:
        raise DesignError("order must be at least 2")
    out = []
    for perm in one_per_order_classes(order):
        d = perm_design(perm)
        if not is_isonemal(d):
            continue
        kind = "twill" if is_twill_permutation(perm) else "non-twill"
        out.append(Design(canonical_form(d), label=f"{order} {kind}"))
    out.sort(key=lambda x: (x.label, x.cells.tobytes()))
    return out


# -- text format --------------------------------------------------------------


def parse_design(text: str, label: str | None = None) -> Design:
    """Parse rows of ``#`` (warp over) and ``.`` (weft over); ``%`` starts a comment line."""
    rows: list[list[bool]] = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if line.startswith("%"):
            if label is None and line[1:].strip().startswith("label:"):
                label = line[1:].strip()[len("label:"):].strip() or None
            continue
        line = line.strip()
        if not line:
            continue
        bad = set(line) - {"#", "."}
        if bad:
            raise DesignError(f"illegal character {sorted(bad)[0]!r}", lineno)
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise DesignError(f"ragged row: expected {width} cells, got {len(line)}", lineno)
        rows.append([ch == "#" for ch in line])
    if not rows:
        raise DesignError("empty design")
    return Design(np.array(rows, dtype=bool), label=label)


def serialize_design(d: Design) -> str:
    lines = []
    if d.label:
        lines.append(f"% label: {d.label}")
    for row in d.cells:
        lines.append("".join("#" if c else "." for c in row))
    return "\n".join(lines) + "\n"
