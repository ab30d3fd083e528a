"""Striped colourings of designs, redundancy and perfection.

Colours are integers ``0..p-1``.  A striping gives each direction a sequence
of the ``p`` colours; thin stripes repeat it strand by strand, thick stripes
give each colour to two adjacent strands.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from math import gcd, lcm

import numpy as np

from .fabric import Design, Direction, double, make_satin, minimal_period, twillin_611
from .geometry import QUARTER, Lattice, Point2H, SymmetryOp
from .symmetry import (
    GroupDescription,
    axes,
    enumerate_symmetries,
    half_turns,
    is_subgroup_of,
    isometry_projection,
    lattice_unit_of,
    strand_image,
)


class Mode(enum.Enum):
    THIN = "thin"
    THICK = "thick"

    @property
    def width(self) -> int:
        return 1 if self is Mode.THIN else 2


class StripingError(ValueError):
    pass


@dataclass(frozen=True)
class Striping:
    """Colour sequences for warps and wefts.

    thin:  ``colour(k) = seq[k mod p]``
    thick: ``colour(k) = seq[floor((k + phase) / 2) mod p]``
    """

    p: int
    mode: Mode
    warp_seq: tuple[int, ...]
    weft_seq: tuple[int, ...]
    warp_phase: int = 0
    weft_phase: int = 0

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "warp_seq", tuple(self.warp_seq))
        object.__setattr__(self, "weft_seq", tuple(self.weft_seq))
        if self.p < 1:
            raise StripingError("need at least one colour")
        for seq in (self.warp_seq, self.weft_seq):
            if sorted(seq) != list(range(self.p)):
                raise StripingError(f"sequence {seq} is not an arrangement of {self.p} colours")
        if self.mode is Mode.THIN and (self.warp_phase or self.weft_phase):
            raise StripingError("pair phase only applies to thick stripes")
        if self.warp_phase not in (0, 1) or self.weft_phase not in (0, 1):
            raise StripingError("pair phase must be 0 or 1")

    @classmethod
    def linear(cls, p: int, mode: Mode | str, warp=(0, 1, 0), weft=(0, 1, 0)) -> Striping:
        """Stripes ``(offset + step*k) mod p`` per direction; ``step`` must be a unit mod p."""
        mode = Mode(mode)
        seqs = []
        for offset, step, *_ in (warp, weft):
            if gcd(step, p) != 1:
                raise StripingError(f"step {step} does not cycle through {p} colours")
            seqs.append(tuple((offset + step * k) % p for k in range(p)))
        phase = lambda t: t[2] if len(t) > 2 else 0
        return cls(p, mode, seqs[0], seqs[1], phase(warp), phase(weft))

    @property
    def width(self) -> int:
        return self.mode.width

    @property
    def period(self) -> int:
        return self.p * self.width

    def colour(self, direction: Direction, k: int) -> int:
        if direction is Direction.WARP:
            seq, phase = self.warp_seq, self.warp_phase
        else:
            seq, phase = self.weft_seq, self.weft_phase
        return seq[((k + phase) // self.width) % self.p]

    def warp_colour(self, j: int) -> int:
        return self.colour(Direction.WARP, j)

    def weft_colour(self, i: int) -> int:
        return self.colour(Direction.WEFT, i)

    def renamed(self, perm) -> Striping:
        return Striping(self.p, self.mode, tuple(perm[c] for c in self.warp_seq),
                        tuple(perm[c] for c in self.weft_seq), self.warp_phase, self.weft_phase)

    def canonical(self) -> Striping:
        """Rename colours so the warp sequence reads 0, 1, ..., p-1."""
        perm = {c: k for k, c in enumerate(self.warp_seq)}
        return self.renamed(perm)

    def to_descriptor(self) -> str:
        return f"stripe {self.mode.value} p={self.p} warp={_seq_text(self.warp_seq, self.warp_phase, self.mode)} " \
               f"weft={_seq_text(self.weft_seq, self.weft_phase, self.mode)}"

    @classmethod
    def from_descriptor(cls, text: str) -> Striping:
        return parse_striping(text)


def _seq_text(seq, phase, mode) -> str:
    p = len(seq)
    tail = f",{phase}" if mode is Mode.THICK else ""
    if p == 1:
        return f"{seq[0]},1{tail}"
    step = (seq[1] - seq[0]) % p
    if all(seq[k] == (seq[0] + step * k) % p for k in range(p)) and gcd(step, p) == 1:
        if step == p - 1:
            step = -1
        return f"{seq[0]},{step}{tail}"
    return "/".join(map(str, seq)) + tail


_DESCRIPTOR = re.compile(
    r"^stripe\s+(thin|thick)\s+p=(\d+)\s+warp=(\S+)\s+weft=(\S+)\s*$"
)


def parse_striping(text: str) -> Striping:
    """Parse ``stripe <thin|thick> p=<n> warp=<spec> weft=<spec>``.

    ``<spec>`` is ``offset,step[,phase]`` or ``c0/c1/.../c(p-1)[,phase]``.
    """
    m = _DESCRIPTOR.match(text.strip())
    if not m:
        raise StripingError(f"malformed striping descriptor: {text.strip()!r}")
    mode, p = Mode(m.group(1)), int(m.group(2))
    seqs, phases = [], []
    for field in (m.group(3), m.group(4)):
        parts = field.split(",")
        try:
            if "/" in parts[0]:
                seq = tuple(int(c) for c in parts[0].split("/"))
                phase = int(parts[1]) if len(parts) > 1 else 0
                if len(parts) > 2:
                    raise StripingError(f"too many fields in {field!r}")
            else:
                if len(parts) not in (2, 3):
                    raise StripingError(f"expected offset,step[,phase] in {field!r}")
                offset, step = int(parts[0]), int(parts[1])
                if gcd(step, p) != 1:
                    raise StripingError(f"step {step} does not cycle through {p} colours")
                seq = tuple((offset + step * k) % p for k in range(p))
                phase = int(parts[2]) if len(parts) > 2 else 0
        except ValueError as exc:
            if isinstance(exc, StripingError):
                raise
            raise StripingError(f"non-integer field in {field!r}") from exc
        seqs.append(seq)
        phases.append(phase)
    return Striping(p, mode, seqs[0], seqs[1], phases[0], phases[1])


@dataclass(frozen=True)
class Pattern:
    """A design with strand colours; ``striping=None`` is the normal colouring."""

    design: Design
    striping: Striping | None = None

    @property
    def colour_period(self) -> tuple[int, int]:
        q = 1 if self.striping is None else self.striping.period
        return lcm(self.design.rows, q), lcm(self.design.cols, q)

    def warp_colour(self, j: int) -> int:
        return 1 if self.striping is None else self.striping.warp_colour(j)

    def weft_colour(self, i: int) -> int:
        return 0 if self.striping is None else self.striping.weft_colour(i)


# -- redundancy -------------------------------------------------------------------


class EmptyRedundancy(ValueError):
    pass


def redundant_cells(pat: Pattern) -> Design:
    """Cells where warp and weft share a colour, over one stripe period."""
    if pat.striping is None:
        return Design(np.zeros((1, 1), dtype=bool), label="no redundancy")
    s = pat.striping
    q = s.period
    weft = np.array([s.weft_colour(i) for i in range(q)])
    warp = np.array([s.warp_colour(j) for j in range(q)])
    return Design(weft[:, None] == warp[None, :])


def derived_prefabric(pat: Pattern) -> Design:
    cells = redundant_cells(pat)
    if not cells.cells.any():
        raise EmptyRedundancy("no cell has warp and weft of the same colour")
    return minimal_period(Design(cells.cells, label="derived"))


def redundant_fraction(pat: Pattern):
    from fractions import Fraction

    r = redundant_cells(pat)
    return Fraction(int(r.cells.sum()), r.rows * r.cols)


# -- perfection ----------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationResult:
    passed: bool
    op: SymmetryOp | None = None
    conflict: tuple | None = None  # ((strand, colour, image colour), (strand, colour, image colour))
    checked: int = 0

    def __bool__(self):
        return self.passed

    def to_text(self) -> str:
        if self.passed:
            return f"PASS ({self.checked} generators checked)\n"
        a, b = self.conflict
        lines = [
            "FAIL",
            f"op: {_op_text(self.op)}",
            f"strand {a[0][0].value} {a[0][1]}: colour {a[1]} -> {a[2]}",
            f"strand {b[0][0].value} {b[0][1]}: colour {b[1]} -> {b[2]}",
        ]
        return "\n".join(lines) + "\n"


def _op_text(op: SymmetryOp) -> str:
    d = op.to_dict()
    return " ".join(f"{k}={v}" for k, v in d.items())


def colour_map(pat: Pattern, op: SymmetryOp):
    """Colour mapping induced by ``op`` or the first pair of strands contradicting one."""
    s = pat.striping
    q = s.period
    seen: dict = {}
    for direction in (Direction.WARP, Direction.WEFT):
        for k in range(q):
            src = s.colour(direction, k)
            nd, nk = strand_image(op, direction, k)
            dst = s.colour(nd, nk)
            if src in seen and seen[src][2] != dst:
                return None, (seen[src], ((direction, k), src, dst))
            seen.setdefault(src, ((direction, k), src, dst))
    mapping = {c: v[2] for c, v in seen.items()}
    if len(set(mapping.values())) != len(mapping):
        # two colours onto one: report a pair that collides
        inv: dict = {}
        for c, v in seen.items():
            if v[2] in inv:
                return None, (inv[v[2]], v)
            inv[v[2]] = v
    return mapping, None


def is_perfect(pat: Pattern, group: GroupDescription | None = None) -> VerificationResult:
    """Every symmetry of the design induces a permutation of the colours.

    Checking a generating set suffices: induced maps compose.
    """
    if pat.striping is None or pat.striping.p == 1:
        return VerificationResult(True)
    g = enumerate_symmetries(pat.design) if group is None else group
    gens = g.generators()
    for op in gens:
        mapping, bad = colour_map(pat, op)
        if mapping is None:
            return VerificationResult(False, op, bad, len(gens))
    return VerificationResult(True, checked=len(gens))


# -- construction from redundancy ------------------------------------------------------


@dataclass(frozen=True)
class RedundancyConfig:
    """Redundant cells given by a one-per-order ``base`` moved by ``anchor = (dr, dc)``.

    ``doubled`` replaces every base cell by a 2x2 block (thick stripes).
    """

    base: Design
    anchor: tuple[int, int] = (0, 0)
    doubled: bool = False

    def __post_init__(self):
        c = self.base.cells
        if c.shape[0] != c.shape[1] or not (c.sum(axis=0) == 1).all() or not (c.sum(axis=1) == 1).all():
            raise ValueError("redundancy base needs exactly one dark cell per row and column")

    @property
    def p(self) -> int:
        return self.base.rows

    def cells(self) -> Design:
        base = double(self.base) if self.doubled else self.base
        dr, dc = self.anchor
        return Design(np.roll(base.cells, (dr, dc), axis=(0, 1)), label=self.base.label)


@dataclass(frozen=True)
class Infeasible:
    reason: str

    def __bool__(self):
        return False


def striping_for_cells(red: np.ndarray, p: int, mode: Mode) -> Striping | Infeasible:
    """A striping whose redundant cells are exactly ``red`` (period ``p*width`` tiled)."""
    w = mode.width
    q = p * w
    if q % red.shape[0] or q % red.shape[1]:
        return Infeasible(f"redundant-cell period {red.shape} does not divide the stripe period {q}")
    red = np.tile(red, (q // red.shape[0], q // red.shape[1]))
    phases = [(0, 0)] if w == 1 else list(itertools.product((0, 1), repeat=2))
    last = "no phase works"
    for wp, fp in phases:
        parent = list(range(2 * q))  # warps 0..q-1, wefts q..2q-1

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for i, j in zip(*np.nonzero(red)):
            union(q + int(i), int(j))
        if w == 2:
            for k in range(0, q, 2):
                union((k - wp) % q, (k - wp + 1) % q)
                union(q + (k - fp) % q, q + (k - fp + 1) % q)
        roots = [find(a) for a in range(2 * q)]
        classes = sorted(set(roots), key=roots.index)
        if len(classes) != p:
            last = f"constraints force {len(classes)} colour classes, not {p}"
            continue
        colour = {r: n for n, r in enumerate(classes)}
        warp = [colour[roots[j]] for j in range(q)]
        weft = [colour[roots[q + i]] for i in range(q)]
        if any(warp.count(c) != w or weft.count(c) != w for c in range(p)):
            last = "some colour does not appear on exactly one stripe per period in each direction"
            continue
        match = np.array(weft)[:, None] == np.array(warp)[None, :]
        if not np.array_equal(match, red):
            last = "cells outside the configuration would also be redundant"
            continue
        warp_seq = tuple(warp[(k * w - wp) % q] for k in range(p))
        weft_seq = tuple(weft[(k * w - fp) % q] for k in range(p))
        return Striping(p, mode, warp_seq, weft_seq, wp, fp)
    return Infeasible(last)


def colour_by_redundancy(d: Design, cfg: RedundancyConfig, mode: Mode | str = Mode.THIN) -> Striping | Infeasible:
    """The striping (unique up to renaming colours) whose redundant cells are ``cfg``'s."""
    mode = Mode(mode)
    if not isinstance(d, Design):
        raise TypeError("design expected")
    return striping_for_cells(cfg.cells().cells, cfg.p, mode)


def double_striping(s: Striping) -> Striping:
    if s.mode is not Mode.THIN:
        raise StripingError("only thin stripings can be doubled")
    return Striping(s.p, Mode.THICK, s.warp_seq, s.weft_seq, 0, 0)


# -- searches ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class Colouring:
    anchor: tuple[int, int]
    base: str
    striping: Striping
    redundant: Design = field(compare=False)
    subgroup: bool = True
    perfect: bool = True
    orientation: int = 0


def cell_offset(anchor) -> tuple[int, int]:
    """Half-unit translation carrying cell (0, 0) to cell ``anchor = (dr, dc)``."""
    return (2 * anchor[1], -2 * anchor[0])


def satin_anchor_scan(d: Design) -> list[Colouring]:
    """Every placement of the order-5 satin (both handednesses) as thin redundancy."""
    g2 = isometry_projection(enumerate_symmetries(d))
    out = []
    for s in (3, 2):
        base = make_satin(5, s)
        base_g2 = isometry_projection(enumerate_symmetries(base))
        for dr in range(5):
            for dc in range(5):
                cfg = RedundancyConfig(base, (dr, dc))
                striping = colour_by_redundancy(d, cfg, Mode.THIN)
                off = cell_offset((dr, dc))
                sub = is_subgroup_of(g2, base_g2, (-off[0], -off[1]))
                perfect = bool(is_perfect(Pattern(d, striping)))
                out.append(Colouring((dr, dc), base.label, striping, cfg.cells(), sub, perfect))
    return out


def thin_satin_colourings(d: Design) -> list[Colouring]:
    return [c for c in satin_anchor_scan(d) if c.subgroup and c.perfect]


class Rejected(ValueError):
    pass


def _satin_lattice_containing(v) -> Lattice:
    """The area-5 square lattice (either handedness) containing the cell vector ``v``."""
    x, y = v
    if (x + 3 * y) % 5 == 0:
        return Lattice.from_generators([(2, 1), (-1, 2)])
    if (x + 2 * y) % 5 == 0:
        return Lattice.from_generators([(1, 2), (-2, 1)])
    raise Rejected(f"level-1 vector {v} lies in neither order-5 satin lattice")


def _blocks_design(centres_origin: Point2H, s_lattice: Lattice) -> Design:
    """Redundant 2x2 blocks centred at ``origin + 2*S`` (cells), as a 10x10 design."""
    cells = np.zeros((10, 10), dtype=bool)
    ox, oy = centres_origin.x2 // 2, centres_origin.y2 // 2  # cell-corner coordinates
    for x, y in s_lattice.scaled(2).points_in_box((-20, -20), (20, 20)):
        cx, cy = ox + x, oy + y
        # block occupies columns cx-1, cx and rows -cy-1, -cy
        for col in (cx - 1, cx):
            for row in (-cy - 1, -cy):
                cells[row % 10, col % 10] = True
    return Design(cells)


def thick_satin_colourings(d: Design) -> tuple[list[Colouring], list[Colouring]]:
    """Thick 5-colourings with doubled-satin redundancy in two block families.

    Family A has blocks on lattice-unit corners; family B on the unit centres
    (level 3) or on mid-sides (level 4).
    """
    g = enumerate_symmetries(d)
    if not g.has_quarter_turns:
        raise Rejected("no quarter turns, so no doubled-satin block lattice to align with")
    unit = lattice_unit_of(g)
    if unit.level not in (3, 4):
        raise Rejected(
            f"lattice unit at level {unit.level}: its isometry group is larger than the level-3 "
            "group of the doubled order-5 satin and cannot be one of its subgroups"
        )
    if not unit.anchor.at_cell_corner:
        raise Rejected("lattice-unit corners are not at cell corners")
    v1 = (unit.M // 2, unit.N // 2)
    if unit.level == 4:
        # halve to a level-2 side w; the centre (w + Rw)/2 of that unit is a level-1 vector
        m2, n2 = v1
        v1 = ((m2 - n2) // 2, (m2 + n2) // 2)
    s_lat = _satin_lattice_containing(v1)
    a = unit.anchor
    second = unit.centre if unit.level == 3 else unit.midside
    families = []
    for origin in (a, second):
        red = _blocks_design(origin, s_lat)
        striping = striping_for_cells(red.cells, 5, Mode.THICK)
        if isinstance(striping, Infeasible):
            families.append([])
            continue
        perfect = bool(is_perfect(Pattern(d, striping)))
        anchor = ((-origin.y2 // 2 - 1) % 10, (origin.x2 // 2 - 1) % 10)  # top-left cell of a block
        entry = Colouring(anchor, "doubled satin (5)", striping, red, True, perfect)
        families.append([entry] if perfect else [])
    return families[0], families[1]


def twillin_admissible(g: GroupDescription) -> tuple[bool, str]:
    """Necessary features for 6-1-1 redundancy."""
    if g.has_quarter_turns:
        return False, "quarter turns present"
    if any(not a.mirror and not a.mirror_position for a in axes(g)):
        return False, "glide axis not in mirror position"
    if any(not h.center.at_cell_corner for h in half_turns(g)):
        return False, "half-turn centre off the cell corners"
    return True, "admissible"


def twillin_placements(orientations=range(4)) -> list[tuple[int, tuple[int, int], Design]]:
    base = twillin_611()
    out = []
    for k in orientations:
        rotated = Design(np.rot90(base.cells, k), label=f"6-1-1 r{k}")
        for dr in range(6):
            for dc in range(6):
                out.append((k, (dr, dc), RedundancyConfig(rotated, (dr, dc)).cells()))
    return out


def twillin_colourings(d: Design) -> list[Colouring]:
    g = enumerate_symmetries(d)
    ok, _why = twillin_admissible(g)
    if not ok:
        return []
    out = []
    for k, anchor, red in twillin_placements():
        striping = striping_for_cells(red.cells, 6, Mode.THIN)
        if isinstance(striping, Infeasible):
            continue
        if is_perfect(Pattern(d, striping), g):
            out.append(Colouring(anchor, "6-1-1", striping, red, True, True, k))
    return sorted(out, key=lambda c: (c.anchor, c.orientation))


# -- views --------------------------------------------------------------------------------------


class Side(enum.Enum):
    OBVERSE = "obverse"
    REVERSE = "reverse"


def pattern_view(pat: Pattern, side: Side | str = Side.OBVERSE) -> np.ndarray:
    """Colour seen in each cell over one colour period.

    The reverse is the view from behind, mirrored left to right so that it
    reads like the obverse.
    """
    side = Side(side)
    rows, cols = pat.colour_period
    dark = pat.design.tiled(rows, cols)
    warp = np.array([pat.warp_colour(j) for j in range(cols)])
    weft = np.array([pat.weft_colour(i) for i in range(rows)])
    warp_grid = np.broadcast_to(warp[None, :], (rows, cols))
    weft_grid = np.broadcast_to(weft[:, None], (rows, cols))
    if side is Side.OBVERSE:
        return np.where(dark, warp_grid, weft_grid)
    return np.where(dark, weft_grid, warp_grid)[:, ::-1].copy()


__all__ = [
    "Colouring",
    "EmptyRedundancy",
    "Infeasible",
    "Mode",
    "Pattern",
    "RedundancyConfig",
    "Rejected",
    "Side",
    "Striping",
    "StripingError",
    "VerificationResult",
    "colour_by_redundancy",
    "derived_prefabric",
    "double_striping",
    "is_perfect",
    "parse_striping",
    "pattern_view",
    "redundant_cells",
    "redundant_fraction",
    "satin_anchor_scan",
    "striping_for_cells",
    "thick_satin_colourings",
    "thin_satin_colourings",
    "twillin_admissible",
    "twillin_colourings",
]
