"""Exact plane geometry on the half-cell grid.

Points are stored in half-cell units (``x2 = 2x``, ``y2 = 2y``).  Cell ``(i, j)``
occupies ``[j, j+1] x [-i-1, -i]`` in cell units, so its centre is
``(2j+1, -2i-1)`` in half units.  Every isometry that maps cells onto cells has
the form ``p -> A p + b`` with ``A`` a signed permutation matrix and ``b`` an
even vector; :class:`SymmetryOp` stores exactly that plus the side-reversal
flag ``tau``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple

Matrix = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: Matrix = ((1, 0), (0, 1))
QUARTER: Matrix = ((0, -1), (1, 0))  # counter-clockwise
HALF: Matrix = ((-1, 0), (0, -1))
THREE_QUARTER: Matrix = ((0, 1), (-1, 0))
DIAG_POS: Matrix = ((0, 1), (1, 0))  # reflection in a slope +1 line
DIAG_NEG: Matrix = ((0, -1), (-1, 0))  # reflection in a slope -1 line
FLIP_Y: Matrix = ((1, 0), (0, -1))  # reflection in a horizontal line
FLIP_X: Matrix = ((-1, 0), (0, 1))  # reflection in a vertical line

POINT_GROUP: tuple[Matrix, ...] = (
    IDENTITY, QUARTER, HALF, THREE_QUARTER, DIAG_POS, DIAG_NEG, FLIP_Y, FLIP_X,
)
ROTATIONS = {IDENTITY: 0, QUARTER: 1, HALF: 2, THREE_QUARTER: 3}


class Point2H(NamedTuple):
    """A point in half-cell units."""

    x2: int
    y2: int

    @property
    def at_cell_corner(self) -> bool:
        return self.x2 % 2 == 0 and self.y2 % 2 == 0

    @property
    def at_cell_centre(self) -> bool:
        return self.x2 % 2 == 1 and self.y2 % 2 == 1

    def position(self) -> str:
        if self.at_cell_corner:
            return "corner"
        if self.at_cell_centre:
            return "centre"
        return "edge"

    def __add__(self, other):  # type: ignore[override]
        return Point2H(self.x2 + other[0], self.y2 + other[1])

    def __sub__(self, other):
        return Point2H(self.x2 - other[0], self.y2 - other[1])


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def mat_vec(a: Matrix, v) -> tuple[int, int]:
    return (a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1])


def mat_inv(a: Matrix) -> Matrix:
    # signed permutation matrices are orthogonal
    return ((a[0][0], a[1][0]), (a[0][1], a[1][1]))


def det(a: Matrix) -> int:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def swaps_directions(a: Matrix) -> bool:
    """True when the linear part exchanges the horizontal and vertical directions."""
    return a[0][0] == 0


@dataclass(frozen=True, order=True)
class SymmetryOp:
    """A grid isometry ``p -> matrix @ p + shift`` (half units) with a side-reversal flag."""

    matrix: Matrix
    shift: tuple[int, int]
    tau: bool = False

    # -- constructors -----------------------------------------------------

    @classmethod
    def translation(cls, v, tau: bool = False) -> SymmetryOp:
        return cls(IDENTITY, (v[0], v[1]), tau)

    @classmethod
    def rotation(cls, center, quarter_turns: int, tau: bool = False) -> SymmetryOp:
        m = (IDENTITY, QUARTER, HALF, THREE_QUARTER)[quarter_turns % 4]
        mc = mat_vec(m, center)
        return cls(m, (center[0] - mc[0], center[1] - mc[1]), tau)

    @classmethod
    def reflection(cls, slope: int, through, tau: bool = False) -> SymmetryOp:
        return cls.glide(slope, through, (0, 0), tau)

    @classmethod
    def glide(cls, slope: int, through, vector, tau: bool = False) -> SymmetryOp:
        """Reflection in the line of the given slope through ``through``, then ``vector``.

        ``slope`` is +1 or -1 for diagonal axes, 0 for horizontal and ``None``
        for vertical ones.  ``vector`` must be parallel to the axis.
        """
        m = _AXIS_MATRIX[slope]
        mp = mat_vec(m, through)
        return cls(m, (through[0] - mp[0] + vector[0], through[1] - mp[1] + vector[1]), tau)

    # -- algebra ----------------------------------------------------------

    def __mul__(self, other: SymmetryOp) -> SymmetryOp:
        """Composition: ``(self * other)(p) == self(other(p))``."""
        ab = mat_vec(self.matrix, other.shift)
        return SymmetryOp(
            mat_mul(self.matrix, other.matrix),
            (ab[0] + self.shift[0], ab[1] + self.shift[1]),
            self.tau != other.tau,
        )

    def inverse(self) -> SymmetryOp:
        inv = mat_inv(self.matrix)
        s = mat_vec(inv, self.shift)
        return SymmetryOp(inv, (-s[0], -s[1]), self.tau)

    def apply(self, p) -> Point2H:
        q = mat_vec(self.matrix, p)
        return Point2H(q[0] + self.shift[0], q[1] + self.shift[1])

    def conjugated(self, offset) -> SymmetryOp:
        """The same operation moved by the translation ``offset``."""
        mo = mat_vec(self.matrix, offset)
        return SymmetryOp(
            self.matrix,
            (self.shift[0] + offset[0] - mo[0], self.shift[1] + offset[1] - mo[1]),
            self.tau,
        )

    def erased(self) -> SymmetryOp:
        return SymmetryOp(self.matrix, self.shift, False)

    @property
    def maps_cells(self) -> bool:
        return self.shift[0] % 2 == 0 and self.shift[1] % 2 == 0

    @property
    def swaps_directions(self) -> bool:
        return swaps_directions(self.matrix)

    # -- geometric description -------------------------------------------

    @property
    def kind(self) -> str:
        if self.matrix == IDENTITY:
            return "translation"
        if det(self.matrix) == 1:
            return "rotation"
        return "reflection" if self.glide_vector == (0, 0) else "glide"

    @property
    def quarter_turns(self) -> int | None:
        return ROTATIONS.get(self.matrix)

    @property
    def center(self) -> Point2H | None:
        """Fixed point of a rotation, in half units (always integral)."""
        b0, b1 = self.shift
        if self.matrix == HALF:
            return Point2H(b0 // 2, b1 // 2) if b0 % 2 == 0 and b1 % 2 == 0 else None
        if self.matrix == QUARTER:
            # (I - R)^-1 = 1/2 [[1, -1], [1, 1]]
            return Point2H((b0 - b1) // 2, (b0 + b1) // 2) if (b0 + b1) % 2 == 0 else None
        if self.matrix == THREE_QUARTER:
            return Point2H((b0 + b1) // 2, (b1 - b0) // 2) if (b0 + b1) % 2 == 0 else None
        return None

    @property
    def axis_slope(self) -> int | None:
        """+1 / -1 for diagonal axes, 0 horizontal, 2 vertical; None for non-reflections."""
        return {DIAG_POS: 1, DIAG_NEG: -1, FLIP_Y: 0, FLIP_X: 2}.get(self.matrix)

    @property
    def glide_vector(self) -> tuple[int, int] | None:
        b0, b1 = self.shift
        m = self.matrix
        if m == DIAG_POS:
            return (Fraction(b0 + b1, 2),) * 2  # type: ignore[return-value]
        if m == DIAG_NEG:
            g = Fraction(b0 - b1, 2)
            return (g, -g)  # type: ignore[return-value]
        if m == FLIP_Y:
            return (b0, 0)
        if m == FLIP_X:
            return (0, b1)
        return None

    @property
    def axis_offset(self) -> Fraction | None:
        """Constant ``k`` of the axis equation in half units.

        slope +1: ``x2 - y2 = k``; slope -1: ``x2 + y2 = k``;
        horizontal: ``y2 = k``; vertical: ``x2 = k``.
        """
        b0, b1 = self.shift
        m = self.matrix
        if m == DIAG_POS:
            return Fraction(b0 - b1, 2)
        if m == DIAG_NEG:
            return Fraction(b0 + b1, 2)
        if m == FLIP_Y:
            return Fraction(b1, 2)
        if m == FLIP_X:
            return Fraction(b0, 2)
        return None

    @property
    def in_mirror_position(self) -> bool | None:
        """Diagonal axis runs through cell corners (and centres) rather than mid-sides."""
        k = self.axis_offset
        if k is None or self.matrix not in (DIAG_POS, DIAG_NEG):
            return None
        return k.denominator == 1 and k.numerator % 2 == 0

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "tau": self.tau}
        if self.kind == "translation":
            out["vector"] = list(self.shift)
        elif self.kind == "rotation":
            out["center"] = list(self.center)
            out["quarter_turns"] = self.quarter_turns
        else:
            out["axis"] = {"slope": self.axis_slope, "offset": _num(self.axis_offset)}
            out["glide"] = [_num(g) for g in self.glide_vector]
            out["mirror_position"] = self.in_mirror_position
        return out


_AXIS_MATRIX = {1: DIAG_POS, -1: DIAG_NEG, 0: FLIP_Y, None: FLIP_X, 2: FLIP_X}


def _num(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else float(x)


# -- integer lattices ---------------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


@dataclass(frozen=True)
class Lattice:
    """A full-rank sublattice of Z^2 in Hermite normal form ``{(a, b), (0, c)}``."""

    a: int
    b: int
    c: int

    @classmethod
    def from_generators(cls, vectors: Iterable) -> Lattice:
        rows = [(int(v[0]), int(v[1])) for v in vectors if v[0] or v[1]]
        a, b, rest = 0, 0, []
        for x, y in rows:
            if x == 0:
                rest.append(y)
                continue
            if a == 0:
                a, b = x, y
                continue
            g, s, t = _xgcd(a, x)
            # new first row s*(a,b) + t*(x,y); the other combination has zero x
            nb = s * b + t * y
            rest.append((a // g) * y - (x // g) * b)
            a, b = g, nb
        if a < 0:
            a, b = -a, -b
        c = 0
        for y in rest:
            c = gcd(c, y)
        if a == 0 or c == 0:
            raise ValueError("generators do not span a full-rank lattice")
        return cls(a, b % c, c)

    @property
    def determinant(self) -> int:
        return self.a * self.c

    def reduce(self, v) -> tuple[int, int]:
        """Canonical representative of ``v`` modulo the lattice."""
        x, y = v
        k = x // self.a
        x, y = x - k * self.a, y - k * self.b
        return (x, y % self.c)

    def __contains__(self, v) -> bool:
        return self.reduce(v) == (0, 0)

    def contains_lattice(self, other: Lattice) -> bool:
        return all(v in self for v in other.hnf_basis)

    @property
    def hnf_basis(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (0, self.c))

    def reduced_basis(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Lagrange-Gauss reduced basis (shortest vectors first)."""
        u, v = self.hnf_basis
        norm = lambda w: w[0] * w[0] + w[1] * w[1]
        if norm(u) > norm(v):
            u, v = v, u
        while True:
            dot = u[0] * v[0] + u[1] * v[1]
            q = round(Fraction(dot, norm(u)))
            v = (v[0] - q * u[0], v[1] - q * u[1])
            if norm(v) >= norm(u):
                return (u, v)
            u, v = v, u

    def transformed(self, m: Matrix) -> Lattice:
        return Lattice.from_generators(mat_vec(m, v) for v in self.hnf_basis)

    def scaled(self, k: int) -> Lattice:
        return Lattice.from_generators(((k * self.a, k * self.b), (0, k * self.c)))

    def joined(self, vectors: Iterable) -> Lattice:
        return Lattice.from_generators([*self.hnf_basis, *vectors])

    def points_in_box(self, lo, hi, origin=(0, 0)) -> list[tuple[int, int]]:
        """All ``origin + lattice`` points with ``lo <= p <= hi`` componentwise."""
        out = []
        ox, oy = origin
        k0 = -((ox - lo[0]) // self.a) - 1
        k1 = (hi[0] - ox) // self.a + 1
        for k in range(k0, k1 + 1):
            x = ox + k * self.a
            if not lo[0] <= x <= hi[0]:
                continue
            ybase = oy + k * self.b
            m0 = -((ybase - lo[1]) // self.c)
            y = ybase + m0 * self.c
            while y <= hi[1]:
                if y >= lo[1]:
                    out.append((x, y))
                y += self.c
        return out
