"""Symmetry groups of designs, lattice units and species.

All coordinates are exact half-cell integers (see :mod:`isoweave.geometry`).
A group is stored as a translation lattice plus one representative operation
per (linear part, tau) pair; every other element differs from its
representative by a lattice translation.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .fabric import Design, Direction, hangs_together, minimal_period
from .geometry import (
    DIAG_NEG,
    DIAG_POS,
    FLIP_X,
    FLIP_Y,
    HALF,
    IDENTITY,
    POINT_GROUP,
    QUARTER,
    Lattice,
    Point2H,
    SymmetryOp,
    _xgcd,
    mat_vec,
    swaps_directions,
)

MAX_PERIOD = 64
AXIS_UNRESOLVED = "axis species, unresolved"


class PeriodBoundError(ValueError):
    pass


class NotApplicable(ValueError):
    """Raised when a design has no quarter turns but a lattice unit was requested."""


class Marker(enum.Enum):
    HOLLOW_BOX = "□"  # quarter turn
    FILLED_BOX = "■"  # quarter turn with tau
    HOLLOW_DIAMOND = "◇"  # half turn
    FILLED_DIAMOND = "◆"  # half turn with tau

    @classmethod
    def for_rotation(cls, quarter: bool, tau: bool) -> Marker:
        if quarter:
            return cls.FILLED_BOX if tau else cls.HOLLOW_BOX
        return cls.FILLED_DIAMOND if tau else cls.HOLLOW_DIAMOND


# -- single operations --------------------------------------------------------


def cell_image(op: SymmetryOp, i: int, j: int) -> tuple[int, int]:
    """Row and column of the cell that ``op`` sends cell ``(i, j)`` to."""
    x, y = op.apply((2 * j + 1, -2 * i - 1))
    return ((-y - 1) // 2, (x - 1) // 2)


def is_symmetry(d: Design, op: SymmetryOp) -> bool:
    """Whether ``op`` maps the infinite design onto itself.

    Image entry must equal source entry XOR (warps and wefts exchanged) XOR tau.
    """
    if not op.maps_cells:
        return False
    n = d.order
    flip = op.swaps_directions != op.tau
    for i in range(n):
        for j in range(n):
            ii, jj = cell_image(op, i, j)
            if d.cell(ii, jj) != (d.cell(i, j) != flip):
                return False
    return True


def strand_image(op: SymmetryOp, direction: Direction, index: int) -> tuple[Direction, int]:
    """The strand (unreduced index) that ``op`` carries the given strand onto."""
    (a00, a01), (a10, a11) = op.matrix
    b0, b1 = op.shift
    if direction is Direction.WARP:
        x = 2 * index + 1
        if not swaps_directions(op.matrix):
            return Direction.WARP, (a00 * x + b0 - 1) // 2
        return Direction.WEFT, (-(a10 * x + b1) - 1) // 2
    y = -2 * index - 1
    if not swaps_directions(op.matrix):
        return Direction.WEFT, (-(a11 * y + b1) - 1) // 2
    return Direction.WARP, (a01 * y + b0 - 1) // 2


# -- groups -------------------------------------------------------------------


class ClosureError(RuntimeError):
    pass


@dataclass(frozen=True)
class GroupDescription:
    """A crystallographic group on the half grid.

    ``lattice`` holds the side-preserving translations; ``reps`` maps each
    (matrix, tau) present in the group to one representative shift, reduced
    modulo the lattice.  ``isometric`` marks groups whose tau flags were erased.
    """

    lattice: Lattice
    reps: dict = field(compare=False)
    isometric: bool = False

    # construction

    @classmethod
    def generate(cls, lattice: Lattice, ops, isometric: bool = False) -> GroupDescription:
        """Smallest group containing ``lattice`` and ``ops`` (closure by saturation)."""
        reps: dict = {(IDENTITY, False): (0, 0)}
        pending = [SymmetryOp(o.matrix, o.shift, False if isometric else o.tau) for o in ops]
        while True:
            changed = False
            for op in pending:
                lattice, grew = _absorb(reps, lattice, op)
                changed |= grew
            reps = {k: lattice.reduce(v) for k, v in reps.items()}
            elems = [SymmetryOp(k[0], v, k[1]) for k, v in reps.items()]
            pending = [a * b for a in elems for b in elems]
            if not changed and all(_member(reps, lattice, p) for p in pending):
                break
        return cls(lattice, dict(sorted(reps.items())), isometric)

    def verify_closure(self) -> None:
        elems = self.elements()
        for a in elems:
            for b in elems:
                if not self.contains(a * b):
                    raise ClosureError(f"product of {a} and {b} is not in the group")

    # queries

    def elements(self) -> list[SymmetryOp]:
        """Coset representatives (identity included)."""
        return [SymmetryOp(m, s, t) for (m, t), s in self.reps.items()]

    @property
    def coset_reps(self) -> list[SymmetryOp]:
        return [op for op in self.elements() if op.matrix != IDENTITY or op.tau]

    @property
    def translation_basis(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return self.lattice.reduced_basis()

    def contains(self, op: SymmetryOp) -> bool:
        tau = False if self.isometric else op.tau
        return _member(self.reps, self.lattice, SymmetryOp(op.matrix, op.shift, tau))

    __contains__ = contains

    def generators(self) -> list[SymmetryOp]:
        basis = [SymmetryOp.translation(v) for v in self.lattice.hnf_basis]
        return basis + self.coset_reps

    @property
    def order_mod_translations(self) -> int:
        return len(self.reps)

    def has(self, matrix, tau: bool | None = None) -> bool:
        if tau is None:
            return (matrix, False) in self.reps or (matrix, True) in self.reps
        return (matrix, tau) in self.reps

    @property
    def has_tau_free_quarter(self) -> bool:
        return self.has(QUARTER, False)

    @property
    def has_tau_quarter(self) -> bool:
        return self.has(QUARTER, True)

    @property
    def has_quarter_turns(self) -> bool:
        return self.has(QUARTER)

    @property
    def full_lattice(self) -> Lattice:
        """Translations with or without tau."""
        t = self.reps.get((IDENTITY, True))
        return self.lattice if t is None else self.lattice.joined([t])

    def to_dict(self) -> dict:
        return {
            "translation_basis": [list(v) for v in self.translation_basis],
            "isometric": self.isometric,
            "coset_reps": [op.to_dict() for op in sorted(self.coset_reps)],
            "flags": {
                "tau_free_quarter_turns": self.has_tau_free_quarter,
                "tau_quarter_turns": self.has_tau_quarter,
                "half_turns": sorted(
                    Marker.for_rotation(False, t).value for t in (False, True) if self.has(HALF, t)
                ),
                "mirror_axes": [a.to_dict() for a in axes(self) if a.mirror],
                "glide_axes": [a.to_dict() for a in axes(self) if not a.mirror],
                "orthogonal_axes": self.has(FLIP_X) or self.has(FLIP_Y),
            },
        }


def _member(reps, lattice: Lattice, op: SymmetryOp) -> bool:
    s = reps.get((op.matrix, op.tau))
    if s is None:
        return False
    return (op.shift[0] - s[0], op.shift[1] - s[1]) in lattice


def _absorb(reps, lattice: Lattice, op: SymmetryOp):
    key = (op.matrix, op.tau)
    if key not in reps:
        reps[key] = lattice.reduce(op.shift)
        return lattice, True
    s = reps[key]
    diff = (op.shift[0] - s[0], op.shift[1] - s[1])
    if diff in lattice:
        return lattice, False
    return lattice.joined([diff]), True


@functools.lru_cache(maxsize=512)
def enumerate_symmetries(d: Design) -> GroupDescription:
    """The full symmetry group of ``d``, found by testing every candidate operation.

    For each of the 8 grid point-group matrices and each tau, the design's
    image is compared against every whole-cell shift within one period.
    """
    if d.rows > MAX_PERIOD or d.cols > MAX_PERIOD:
        raise PeriodBoundError(f"period {d.rows}x{d.cols} exceeds the bound {MAX_PERIOD}")
    m = minimal_period(d)
    cells = m.cells
    r, c = cells.shape
    ii, jj = np.meshgrid(np.arange(r), np.arange(c), indexing="ij")
    x, y = 2 * jj + 1, -2 * ii - 1
    lattice = Lattice.from_generators([(2 * c, 0), (0, 2 * r)])
    found: list[SymmetryOp] = []
    for a in POINT_GROUP:
        swap = swaps_directions(a)
        if swap and r != c:
            continue
        xp = a[0][0] * x + a[0][1] * y
        yp = a[1][0] * x + a[1][1] * y
        ip = ((-yp - 1) // 2) % r
        jp = ((xp - 1) // 2) % c
        for tau in (False, True):
            img = np.empty_like(cells)
            img[ip, jp] = cells ^ (swap != tau)
            # cells[a, b] must equal img[a + v, b - u]
            tiled = np.tile(img, (2, 2))
            win = sliding_window_view(tiled, (r, c))[:r, :c]
            hits = np.argwhere((win == cells).all(axis=(2, 3)))
            for v, t in hits:
                u = (-int(t)) % c
                found.append(SymmetryOp(a, (2 * u, 2 * int(v)), tau))
    for op in found:
        if op.matrix == IDENTITY and not op.tau:
            lattice = lattice.joined([op.shift]) if op.shift not in lattice else lattice
    reps: dict = {}
    for op in found:
        reps.setdefault((op.matrix, op.tau), lattice.reduce(op.shift))
    g = GroupDescription(lattice, dict(sorted(reps.items())))
    g.verify_closure()
    return g


def side_preserving_subgroup(g: GroupDescription) -> GroupDescription:
    reps = {k: v for k, v in g.reps.items() if not k[1]}
    return GroupDescription(g.lattice, reps, g.isometric)


def isometry_projection(g: GroupDescription) -> GroupDescription:
    """Forget tau: merge representatives sharing a linear part."""
    if g.isometric:
        return g
    lattice = g.full_lattice
    reps: dict = {}
    for (m, _tau), s in g.reps.items():
        reps.setdefault((m, False), lattice.reduce(s))
    return GroupDescription(lattice, dict(sorted(reps.items())), True)


def index_of_side_preserving(g: GroupDescription) -> int:
    return 2 if any(t for _m, t in g.reps) else 1


def is_subgroup_of(inner: GroupDescription, outer: GroupDescription, offset=(0, 0)) -> bool:
    """Whether ``inner`` moved by the translation ``offset`` (half units) lies in ``outer``."""
    if not outer.lattice.contains_lattice(inner.lattice):
        return False
    return all(outer.contains(op.conjugated(offset)) for op in inner.coset_reps)


def p4_group(anchor, v, *, tau_corner: bool = False, tau_centre: bool | None = None,
             isometric: bool = True) -> GroupDescription:
    """Group generated by quarter turns at ``anchor`` and translations ``v``, ``Rv``.

    With ``tau_centre`` differing from ``tau_corner`` the unit centre carries the
    other kind of quarter turn (the lattice then includes tau translations).
    """
    rv = mat_vec(QUARTER, v)
    lattice = Lattice.from_generators([v, rv])
    ops = [SymmetryOp.rotation(anchor, 1, tau_corner)]
    if tau_centre is not None and tau_centre != tau_corner:
        centre = (anchor[0] + (v[0] + rv[0]) // 2, anchor[1] + (v[1] + rv[1]) // 2)
        ops.append(SymmetryOp.rotation(centre, 1, tau_centre))
        # the two kinds differ by a tau translation, so the pure lattice halves
        lattice = Lattice.from_generators([(v[0] + rv[0], v[1] + rv[1]), (v[0] - rv[0], v[1] - rv[1])])
    return GroupDescription.generate(lattice, ops, isometric=isometric)


# -- strand action and isonemality ---------------------------------------------


def strand_orbits(d: Design, g: GroupDescription | None = None) -> list[set]:
    """Orbits of the strands of one period under the group."""
    g = enumerate_symmetries(d) if g is None else g
    nodes = [(Direction.WARP, j) for j in range(d.cols)] + [(Direction.WEFT, i) for i in range(d.rows)]
    parent = {n: n for n in nodes}

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    for op in g.generators():
        for direction, idx in nodes:
            nd, ni = strand_image(op, direction, idx)
            target = (nd, ni % (d.cols if nd is Direction.WARP else d.rows))
            ra, rb = find((direction, idx)), find(target)
            if ra != rb:
                parent[ra] = rb
    groups: dict = {}
    for n in nodes:
        groups.setdefault(find(n), set()).add(n)
    return sorted(groups.values(), key=lambda s: min((k[0].value, k[1]) for k in s))


def is_isonemal(d: Design, require_hangs_together: bool = True) -> bool:
    """Symmetry group transitive on strands (and, for fabrics, hanging together)."""
    if require_hangs_together and not hangs_together(d):
        return False
    if d.rows != d.cols and minimal_period(d).shape[0] != minimal_period(d).shape[1]:
        return False
    return len(strand_orbits(d)) == 1


# -- axes and half turns --------------------------------------------------------


@dataclass(frozen=True, order=True)
class Axis:
    """A diagonal reflection or glide axis; lengths in half units."""

    slope: int
    offset: Fraction  # x2 - y2 (slope +1) or x2 + y2 (slope -1)
    tau: bool
    glide: Fraction  # component along (1, slope); 0 for a mirror

    @property
    def mirror(self) -> bool:
        return self.glide == 0

    @property
    def mirror_position(self) -> bool:
        return self.offset.denominator == 1 and self.offset.numerator % 2 == 0

    @property
    def glide_delta(self) -> Fraction:
        return self.glide / 2

    def to_dict(self) -> dict:
        return {
            "slope": self.slope,
            "offset": _plain(self.offset),
            "tau": self.tau,
            "glide_delta": _plain(self.glide_delta),
            "mirror_position": self.mirror_position,
        }


@dataclass(frozen=True, order=True)
class HalfTurn:
    center: Point2H
    tau: bool

    @property
    def marker(self) -> Marker:
        return Marker.for_rotation(False, self.tau)


def _plain(x: Fraction):
    return x.numerator if x.denominator == 1 else float(x)


def _functionals(slope: int):
    if slope == 1:
        return (lambda v: v[0] - v[1]), (lambda v: v[0] + v[1])
    return (lambda v: v[0] + v[1]), (lambda v: v[0] - v[1])


def axis_period(lattice: Lattice, slope: int) -> int:
    """Offset period (half units of the axis constant) of parallel axes of one slope."""
    nf, _ = _functionals(slope)
    e1, e2 = lattice.hnf_basis
    return abs(gcd(nf(e1), nf(e2)))


def axes(g: GroupDescription) -> list[Axis]:
    """All diagonal axes with offsets in one period ``[0, axis_period)``."""
    out = []
    e1, e2 = g.lattice.hnf_basis
    for (m, tau), s0 in g.reps.items():
        if m not in (DIAG_POS, DIAG_NEG):
            continue
        slope = 1 if m == DIAG_POS else -1
        nf, af = _functionals(slope)
        d1, d2 = nf(e1), nf(e2)
        gg, x, y = _xgcd(d1, d2)
        if gg < 0:
            gg, x, y = -gg, -x, -y
        lstar = (x * e1[0] + y * e2[0], x * e1[1] + y * e2[1])
        lq = ((d2 // gg) * e1[0] - (d1 // gg) * e2[0], (d2 // gg) * e1[1] - (d1 // gg) * e2[1])
        qv = Fraction(abs(af(lq)), 2)
        for n in (0, 1):
            s = (s0[0] + n * lstar[0], s0[1] + n * lstar[1])
            k = Fraction(nf(s), 2) % gg
            t = Fraction(af(s), 2) % qv
            out.append(Axis(slope, k, tau, min(t, qv - t)))
    return sorted(set(out))


def half_turns(g: GroupDescription) -> list[HalfTurn]:
    """Half-turn centres, one per class modulo the lattice."""
    out = set()
    e1, e2 = g.lattice.hnf_basis
    for (m, tau), s0 in g.reps.items():
        if m != HALF:
            continue
        for l in ((0, 0), e1, e2, (e1[0] + e2[0], e1[1] + e2[1])):
            c = ((s0[0] + l[0]) // 2, (s0[1] + l[1]) // 2)
            out.add(HalfTurn(Point2H(*g.lattice.reduce(c)), tau))
    return sorted(out)


def quarter_turn_centres(g: GroupDescription) -> list[tuple[Point2H, bool]]:
    out = set()
    e1, e2 = g.lattice.hnf_basis
    for (m, tau), s0 in g.reps.items():
        if m != QUARTER:
            continue
        for l in ((0, 0), e1, e2, (e1[0] + e2[0], e1[1] + e2[1])):
            c = SymmetryOp(m, (s0[0] + l[0], s0[1] + l[1]), tau).center
            if c is not None:
                out.add((Point2H(*g.lattice.reduce(c)), tau))
    return sorted(out)


def diagonal_spacing(points: set, lattice: Lattice, direction: int) -> Fraction | None:
    """Least positive ``t`` with ``p`` and ``p + (t, direction*t)`` both in the periodic set, in delta units."""
    if not points:
        return None
    reduced = {lattice.reduce(p) for p in points}
    limit = 4 * (lattice.a + lattice.c) + 4
    for t in range(1, limit + 1):
        for p in reduced:
            if lattice.reduce((p[0] + t, p[1] + direction * t)) in reduced:
                return Fraction(t, 2)
    return None


# -- lattice units ------------------------------------------------------------------


def level_of(m: int, n: int) -> int | None:
    """Lattice-unit level of legs ``(M, N)``; None when not a valid level 1..5."""
    if m <= 0 or n < 0:
        return None
    if gcd(m, n) == 1:
        return 1 if (m + n) % 2 == 1 else 2
    if m % 2 == 0 and n % 2 == 0:
        inner = level_of(m // 2, n // 2)
        if inner is not None and inner + 2 <= 5:
            return inner + 2
    return None


@dataclass(frozen=True)
class LatticeUnit:
    level: int | None
    M: int
    N: int
    anchor: Point2H
    corner_kind: Marker
    center_kind: Marker
    midside_kind: Marker
    alternative_anchor: Point2H | None = None

    @property
    def area(self) -> int:
        return self.M * self.M + self.N * self.N

    @property
    def side(self) -> tuple[int, int]:
        """First side vector in half units."""
        return (2 * self.M, 2 * self.N)

    @property
    def sides(self) -> tuple[tuple[int, int], tuple[int, int]]:
        v = self.side
        return v, mat_vec(QUARTER, v)

    @property
    def centre(self) -> Point2H:
        return Point2H(self.anchor.x2 + self.M - self.N, self.anchor.y2 + self.M + self.N)

    @property
    def midside(self) -> Point2H:
        return Point2H(self.anchor.x2 + self.M, self.anchor.y2 + self.N)

    def corners(self) -> list[Point2H]:
        v, w = self.sides
        a = self.anchor
        return [a, a + v, Point2H(a.x2 + v[0] + w[0], a.y2 + v[1] + w[1]), a + w]

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "M": self.M,
            "N": self.N,
            "area": self.area,
            "anchor": list(self.anchor),
            "corner": self.corner_kind.value,
            "centre": self.center_kind.value,
            "midside": self.midside_kind.value,
            "alternative_anchor": None if self.alternative_anchor is None else list(self.alternative_anchor),
        }


def rotation_kind(g: GroupDescription, center, quarter: bool) -> Marker | None:
    turns = 1 if quarter else 2
    for tau in (False, True):
        if g.contains(SymmetryOp.rotation(center, turns, tau)):
            return Marker.for_rotation(quarter, tau)
    return None


def lattice_unit_of(g: GroupDescription) -> LatticeUnit:
    if not g.has_quarter_turns:
        raise NotApplicable("no quarter turns: axis species have no square lattice unit")
    full = g.full_lattice
    v = min(full.reduced_basis(), key=lambda w: (w[0] ** 2 + w[1] ** 2, w))
    while not (v[0] > 0 and v[1] >= 0):
        v = mat_vec(QUARTER, v)
    m, n = v[0] // 2, v[1] // 2
    key = next(k for k in g.reps if k[0] == QUARTER)
    c0 = Point2H(*full.reduce(SymmetryOp(QUARTER, g.reps[key], key[1]).center))
    c1 = Point2H(*full.reduce((c0.x2 + m - n, c0.y2 + m + n)))
    kinds = {c: rotation_kind(g, c, True) for c in (c0, c1)}

    def preference(c):
        return (kinds[c] is not Marker.HOLLOW_BOX, not c.at_cell_corner, tuple(c))

    anchor, other = sorted((c0, c1), key=preference)
    mid = (anchor.x2 + m, anchor.y2 + n)
    return LatticeUnit(
        level=level_of(m, n),
        M=m,
        N=n,
        anchor=anchor,
        corner_kind=kinds[anchor],
        center_kind=kinds[other],
        midside_kind=rotation_kind(g, mid, False),
        alternative_anchor=other if kinds[other] != kinds[anchor] else None,
    )


# -- species -----------------------------------------------------------------------

_QUARTER_SPECIES = {
    (1, "■■"): "36_1",
    (1, "□■"): "39",
    (2, "□□"): "34",
    (3, "□□"): "33_3",
    (3, "■■"): "35_3",
    (3, "□■"): "38",
    (4, "□□"): "33_4",
    (4, "■■"): "35_4",
    (4, "□■"): "37",
}


@dataclass(frozen=True)
class AxisFeatures:
    mirror_slopes: tuple[int, ...]
    glide_slopes_tau: tuple[int, ...]
    glide_slopes_free: tuple[int, ...]
    spacing: dict  # slope -> least gap between adjacent axes (delta units)
    mirror_spacing: dict  # slope -> gap between adjacent mirrors
    glides_in_mirror_position: bool
    half_turns: tuple[HalfTurn, ...]
    half_turns_at_cell_centres: bool
    hollow_spacing: dict  # direction (+1/-1) -> spacing of side-preserving half-turn centres
    filled_spacing: dict

    def to_dict(self) -> dict:
        def fmt(dct):
            return {str(k): (None if v is None else _plain(v)) for k, v in sorted(dct.items())}

        return {
            "mirror_slopes": list(self.mirror_slopes),
            "glide_slopes_tau": list(self.glide_slopes_tau),
            "glide_slopes_tau_free": list(self.glide_slopes_free),
            "axis_spacing_delta": fmt(self.spacing),
            "mirror_spacing_delta": fmt(self.mirror_spacing),
            "glides_in_mirror_position": self.glides_in_mirror_position,
            "half_turns": [
                {"center": list(h.center), "marker": h.marker.value, "position": h.center.position()}
                for h in self.half_turns
            ],
            "half_turns_at_cell_centres": self.half_turns_at_cell_centres,
            "hollow_diamond_spacing_delta": fmt(self.hollow_spacing),
            "filled_diamond_spacing_delta": fmt(self.filled_spacing),
        }


def _least_gap(offsets, period) -> Fraction | None:
    offs = sorted(offsets)
    if not offs:
        return None
    gaps = [b - a for a, b in zip(offs, offs[1:])] + [offs[0] + period - offs[-1]]
    return min(gaps) / 4


def axis_features(g: GroupDescription) -> AxisFeatures:
    ax = axes(g)
    ht = half_turns(g)
    spacing, mirror_spacing = {}, {}
    for slope in (1, -1):
        per = axis_period(g.lattice, slope)
        gap = _least_gap({a.offset for a in ax if a.slope == slope}, per)
        if gap is not None:
            spacing[slope] = gap
        gap = _least_gap({a.offset for a in ax if a.slope == slope and a.mirror}, per)
        if gap is not None:
            mirror_spacing[slope] = gap
    hollow = {h.center for h in ht if not h.tau}
    filled = {h.center for h in ht if h.tau}
    return AxisFeatures(
        mirror_slopes=tuple(sorted({a.slope for a in ax if a.mirror})),
        glide_slopes_tau=tuple(sorted({a.slope for a in ax if not a.mirror and a.tau})),
        glide_slopes_free=tuple(sorted({a.slope for a in ax if not a.mirror and not a.tau})),
        spacing=spacing,
        mirror_spacing=mirror_spacing,
        glides_in_mirror_position=all(a.mirror_position for a in ax if not a.mirror),
        half_turns=tuple(ht),
        half_turns_at_cell_centres=any(h.center.at_cell_centre for h in ht),
        hollow_spacing={s: diagonal_spacing(hollow, g.lattice, s) for s in (1, -1)} if hollow else {},
        filled_spacing={s: diagonal_spacing(filled, g.lattice, s) for s in (1, -1)} if filled else {},
    )


def _parity(values) -> str | None:
    vals = [v for v in values if v is not None]
    if not vals or any(v.denominator != 1 for v in vals):
        return None
    if all(v.numerator % 2 for v in vals):
        return "o"
    if all(v.numerator % 2 == 0 for v in vals):
        return "e"
    return None


def _axis_species(f: AxisFeatures) -> str:
    mirrors = set(f.mirror_slopes)
    gtau, gfree = set(f.glide_slopes_tau), set(f.glide_slopes_free)
    glides = gtau | gfree
    both = {1, -1}
    if mirrors == both:
        if not glides:
            if f.half_turns_at_cell_centres:
                return "26"
            par = _parity(f.hollow_spacing.values())
            return f"25_{par}" if par else "25"
        if not f.glides_in_mirror_position:
            return "unresolved"
        if gtau == both and not gfree and all(not h.tau for h in f.half_turns):
            par = _parity(f.hollow_spacing.values())
            return f"27_{par}" if par else "unresolved"
        if gfree == both:
            if f.half_turns_at_cell_centres:
                return "31"
            if _parity(f.hollow_spacing.values()) == "e" and _parity(f.filled_spacing.values()) == "e":
                return "29"
            return "30"
        return "unresolved"
    if len(mirrors) == 1:
        (ms,) = mirrors
        perp = -ms
        if glides - {perp} or perp not in glides or not f.glides_in_mirror_position:
            return "unresolved"
        if f.half_turns_at_cell_centres:
            return "unresolved"
        gap = f.hollow_spacing.get(perp)
        par = _parity([gap])
        if perp in gtau and perp in gfree:
            return {"o": "22", "e": "21"}.get(par, "unresolved")
        if par == "o":
            return "17_o" if perp in gtau else "19_o"
        return "unresolved"
    if not mirrors and glides == both and f.glides_in_mirror_position:
        tau_dirs = {s for s in both if s in gtau and s not in gfree}
        free_dirs = {s for s in both if s in gfree and s not in gtau}
        if free_dirs == both:
            return "11"
        if tau_dirs == both:
            return "13"
        if len(tau_dirs) == 1 and len(free_dirs) == 1:
            return "15"
    return "unresolved"


@dataclass(frozen=True)
class SpeciesReport:
    species: str
    quarter_turns: bool
    lattice_unit: LatticeUnit | None
    features: AxisFeatures | None
    h1_index: int
    alternative: str | None = None

    def to_dict(self) -> dict:
        return {
            "species": self.species,
            "quarter_turns": self.quarter_turns,
            "h1_index": self.h1_index,
            "lattice_unit": None if self.lattice_unit is None else self.lattice_unit.to_dict(),
            "axis_features": None if self.features is None else self.features.to_dict(),
            "alternative": self.alternative,
        }


class NotIsonemal(ValueError):
    pass


def quarter_turn_species(unit: LatticeUnit) -> str:
    pair = {unit.corner_kind, unit.center_kind}
    kinds = "□■" if len(pair) == 2 else 2 * unit.corner_kind.value
    if unit.level == 2 and kinds == "■■":
        return "36_2" if unit.anchor.at_cell_corner else "36_s"
    return _QUARTER_SPECIES.get((unit.level, kinds), "unresolved")


def classify_species(d: Design, require_hangs_together: bool = True) -> SpeciesReport:
    if not is_isonemal(d, require_hangs_together):
        raise NotIsonemal("design is not isonemal")
    g = enumerate_symmetries(d)
    idx = index_of_side_preserving(g)
    if g.has_quarter_turns:
        unit = lattice_unit_of(g)
        alt = None
        if unit.alternative_anchor is not None:
            alt = f"{unit.center_kind.value} at corners from anchor {tuple(unit.alternative_anchor)}"
        return SpeciesReport(quarter_turn_species(unit), True, unit, None, idx, alt)
    f = axis_features(g)
    label = _axis_species(f)
    return SpeciesReport(AXIS_UNRESOLVED if label == "unresolved" else label, False, None, f, idx)
