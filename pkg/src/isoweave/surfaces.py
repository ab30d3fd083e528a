"""Identifying opposite edges of a colour-even period region to weave a torus.

Two identification domains are supported: the least axis-aligned rectangle
that repeats both the design and the stripes, and an oblique square built
from ``k x k`` lattice units.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from math import gcd, lcm

from .colouring import Pattern
from .fabric import minimal_period
from .symmetry import LatticeUnit, enumerate_symmetries


@dataclass(frozen=True)
class TorusSpec:
    """Closed strands on a torus.

    ``census`` maps a colour name to ``(warps, wefts)``.  For rectangles
    ``rows x cols`` is the identified rectangle; for oblique squares ``rows``
    and ``cols`` count the closed wefts and warps, and ``side`` holds the
    square's edge vector in cells.
    """

    rows: int
    cols: int
    cells: int
    census: dict = field(default_factory=dict)
    side: tuple[int, int] | None = None
    multiplier: int = 1

    @property
    def warps(self) -> int:
        return sum(w for w, _ in self.census.values())

    @property
    def wefts(self) -> int:
        return sum(f for _, f in self.census.values())

    @property
    def warp_length(self) -> int:
        """Cells crossed by one closed warp."""
        return self.cells // self.warps

    @property
    def weft_length(self) -> int:
        return self.cells // self.wefts

    def to_table(self) -> str:
        head = f"{self.rows}x{self.cols} rectangle" if self.side is None else (
            f"oblique square, side {self.multiplier}*{self.side_unit}")
        lines = [f"{head}: {self.cells} cells", "colour  warps  wefts"]
        for name, (w, f) in self.census.items():
            lines.append(f"{name!s:<7} {w:>5}  {f:>5}")
        return "\n".join(lines) + "\n"

    @property
    def side_unit(self) -> tuple[int, int] | None:
        if self.side is None:
            return None
        return (self.side[0] // self.multiplier, self.side[1] // self.multiplier)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["colour", "warps", "wefts"])
        for name, (w, f) in self.census.items():
            writer.writerow([name, w, f])
        return buf.getvalue()


class MultiplierTooSmall(ValueError):
    def __init__(self, multiplier: int, minimal: int):
        self.multiplier = multiplier
        self.minimal = minimal
        super().__init__(
            f"multiplier {multiplier} does not make the colouring come out even; "
            f"the least that does is {minimal}"
        )


def _census(pat: Pattern, warps: int, wefts: int) -> dict:
    """Colours of the first ``warps`` columns and ``wefts`` rows."""
    if pat.striping is None:
        return {"dark": (warps, 0), "pale": (0, wefts)}
    counts = {c: [0, 0] for c in range(pat.striping.p)}
    for j in range(warps):
        counts[pat.warp_colour(j)][0] += 1
    for i in range(wefts):
        counts[pat.weft_colour(i)][1] += 1
    return {c: tuple(v) for c, v in counts.items()}


def torus_period(pat: Pattern) -> TorusSpec:
    d = minimal_period(pat.design)
    q = 1 if pat.striping is None else pat.striping.period
    rows, cols = lcm(d.rows, q), lcm(d.cols, q)
    return TorusSpec(rows, cols, rows * cols, _census(pat, cols, rows))


def _oblique_feasible(pat: Pattern, pure, unit: LatticeUnit, k: int) -> bool:
    q = 1 if pat.striping is None else pat.striping.period
    m, n = k * unit.M, k * unit.N
    for x, y in ((m, n), (-n, m)):
        if x % q or y % q or (2 * x, 2 * y) not in pure:
            return False
    return True


def minimal_multiplier(pat: Pattern, unit: LatticeUnit, limit: int = 1000) -> int:
    pure = enumerate_symmetries(pat.design).lattice
    for k in range(1, limit + 1):
        if _oblique_feasible(pat, pure, unit, k):
            return k
    raise ValueError(f"no multiplier up to {limit} gives an even colouring")


def oblique_torus_census(pat: Pattern, unit: LatticeUnit, multiplier: int) -> TorusSpec:
    """Census on the oblique square of side ``multiplier`` lattice-unit sides.

    Opposite edges are identified by the translations ``k(M, N)`` and
    ``k(-N, M)`` (cells), which must repeat both design and colours.  A warp
    closes up after crossing the square ``cells / (closed warps)`` cells long.
    """
    if multiplier < 1:
        raise ValueError("multiplier must be a positive integer")
    pure = enumerate_symmetries(pat.design).lattice
    if not _oblique_feasible(pat, pure, unit, multiplier):
        raise MultiplierTooSmall(multiplier, minimal_multiplier(pat, unit))
    k = multiplier
    a, b = k * unit.M, k * unit.N
    # columns (and rows) are identified modulo gcd of the edge components
    strands = gcd(a, b)
    cells = a * a + b * b
    return TorusSpec(strands, strands, cells, _census(pat, strands, strands), side=(a, b), multiplier=k)


__all__ = [
    "MultiplierTooSmall",
    "TorusSpec",
    "minimal_multiplier",
    "oblique_torus_census",
    "torus_period",
]
