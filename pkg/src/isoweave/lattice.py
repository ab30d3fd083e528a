"""Integer arithmetic of level-1 lattice units inside the order-5 satin lattice.

The satin lattice here is ``{p(2, 1) + q(-1, 2)}``; a point ``(x, y)`` lies on it
iff ``2x + y`` is divisible by 5, and then ``(x, y) = (2m - n, m + 2n)`` with
``m = (2x + y)/5`` and ``n = (2y - x)/5``.
"""

from __future__ import annotations

import functools
from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd, isqrt

from .fabric import make_satin
from .geometry import QUARTER, mat_vec
from .symmetry import (
    enumerate_symmetries,
    is_subgroup_of,
    isometry_projection,
    lattice_unit_of,
    level_of,
    p4_group,
)

RULES = ("R1", "R2", "R3", "R4")


def on_satin_lattice(x: int, y: int) -> bool:
    return (2 * x + y) % 5 == 0


def decompose(x: int, y: int) -> tuple[int, int] | None:
    if not on_satin_lattice(x, y):
        return None
    return (2 * x + y) // 5, (2 * y - x) // 5


@dataclass(frozen=True)
class CornerCandidate:
    x: int
    y: int
    eligible: bool
    reasons: tuple[str, ...] = ()
    decomposition: tuple[int, int] | None = None

    @property
    def area(self) -> int:
        return self.x * self.x + self.y * self.y

    def row(self) -> dict:
        m, n = self.decomposition if self.decomposition else ("", "")
        return {
            "x": self.x,
            "y": self.y,
            "eligible": self.eligible,
            "reasons": " ".join(self.reasons),
            "m": m,
            "n": n,
            "area": self.area,
        }


def violated_rules(x: int, y: int) -> list[str]:
    """Every rule the point breaks, in order."""
    out = []
    if x % 5 == 0 or y % 5 == 0:
        out.append("R1")
    if x == 2 * y or 2 * x == -y:
        out.append("R2")
    if gcd(x, y) != 1:
        out.append("R3")
    if y == 3 * x:
        out.append("R4")
    return out


def classify_corner(x: int, y: int) -> CornerCandidate:
    dec = decompose(x, y)
    if dec is None:
        raise ValueError(f"({x}, {y}) is not on the satin lattice")
    reasons = violated_rules(x, y)
    m, n = dec
    if not reasons and (m + n) % 2 == 0:
        reasons.append("parity")
    return CornerCandidate(x, y, not reasons, tuple(reasons), dec)


def eligible_corners(radius: int) -> list[CornerCandidate]:
    """All satin-lattice points in the closed first-quadrant disc, origin excluded."""
    if radius < 1 or radius > 10_000:
        raise ValueError("radius must be between 1 and 10000")
    out = []
    r2 = radius * radius
    for x in range(radius + 1):
        ymax = isqrt(r2 - x * x)
        for y in range(ymax + 1):
            if (x or y) and on_satin_lattice(x, y):
                out.append(classify_corner(x, y))
    return out


def area_spectrum(radius: int) -> list[tuple[int, int]]:
    """Eligible areas with the number of distinct leg pairs ``{|x|, |y|}`` for each."""
    legs = defaultdict(set)
    for c in eligible_corners(radius):
        if c.eligible:
            legs[c.area].add(frozenset((abs(c.x), abs(c.y))))
    return sorted((a, len(s)) for a, s in legs.items())


def level1_orders(limit: int = 100) -> list[int]:
    """Orders up to ``limit`` of level-1 designs on lattice units fitting the satin lattice.

    A level-1 unit of area ``A`` admits orders ``A``, ``2A`` and ``4A``.
    """
    radius = isqrt(limit) + 1
    areas = {5} | {a for a, _ in area_spectrum(radius) if a <= limit}
    return sorted({k * a for a in areas for k in (1, 2, 4) if k * a <= limit})


def level_chain(m1: int, n1: int) -> list[tuple[int, int]]:
    """Legs of the lattice units at levels 1 to 5 over a level-1 unit."""
    if m1 <= 0 or n1 < 0 or level_of(m1, n1) != 1:
        raise ValueError(f"({m1}, {n1}) is not a level-1 pair: need coprime legs of opposite parity")
    m2, n2 = m1 + n1, abs(m1 - n1)
    return [(m1, n1), (m2, n2), (2 * m1, 2 * n1), (2 * m2, 2 * n2), (4 * m1, 4 * n1)]


# -- subgroup check -----------------------------------------------------------------------------


class HypothesisError(ValueError):
    pass


@dataclass
class CheckReport:
    m: int
    n: int
    legs: tuple[int, int]
    identities: dict = field(default_factory=dict)
    geometric: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.identities.values()) and all(self.geometric.values())

    def to_text(self) -> str:
        lines = [f"m={self.m} n={self.n} legs={self.legs}"]
        lines += [f"  {k}: {'ok' if v else 'FAILED'}" for k, v in self.identities.items()]
        lines += [f"  level {k} subgroup: {'ok' if v else 'FAILED'}" for k, v in self.geometric.items()]
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines) + "\n"


def _in_lattice(v) -> bool:
    return on_satin_lattice(*v)


@functools.lru_cache(maxsize=1)
def _satin_frame():
    g = enumerate_symmetries(make_satin(5, 3))
    unit = lattice_unit_of(g)
    return isometry_projection(g), unit.anchor


def theorem3_check(m: int, n: int, geometric: bool = True) -> CheckReport:
    """Verify the integer identities behind the quarter-turn subgroup, then the groups themselves."""
    if (m + n) % 2 == 0:
        raise HypothesisError(
            f"m={m} and n={n} have equal parity: the centre coefficients (m-n+1)/2 and "
            "(m-n-1)/2 are not integers"
        )
    x, y = 2 * m - n, m + 2 * n
    rep = CheckReport(m, n, (x, y))
    ids = rep.identities
    third, fourth = (m - 3 * n, 3 * m + n), (-m - 2 * n, 2 * m - n)
    ids["second corner on lattice"] = _in_lattice((x, y))
    ids["third corner = (m-n)(2,1) + (m+n)(-1,2)"] = third == (
        2 * (m - n) - (m + n), (m - n) + 2 * (m + n))
    ids["fourth corner = -n(2,1) + m(-1,2)"] = fourth == (-2 * n - m, -n + 2 * m)
    ids["corners are a quarter-turn square"] = (
        third == (x - y, x + y) and fourth == (-y, x)
    )
    # doubled coordinates keep the half-integer mid-sides exact
    first_mid, last_mid = (x, y), (-y, x)
    form_a, form_b = (2, 1), (-1, 2)

    def mid_form(mid, base, p, q):
        return mid == (base[0] + 2 * (2 * p - q), base[1] + 2 * (p + 2 * q))

    if m % 2:
        ids["first mid-side of form A"] = mid_form(first_mid, form_a, (m - 1) // 2, n // 2)
        ids["last mid-side of form B"] = mid_form(last_mid, form_b, -n // 2, (m - 1) // 2)
    else:
        ids["first mid-side of form B"] = mid_form(first_mid, form_b, m // 2, (n - 1) // 2)
        ids["last mid-side of form A"] = mid_form(last_mid, form_a, -(n + 1) // 2, m // 2)
    ids["centre coefficients (m-n+1)/2, (m-n-1)/2 integral"] = (m - n + 1) % 2 == 0
    # the coefficients that actually solve the centre equation
    p, q = (m - n - 1) // 2, (m + n - 1) // 2
    centre2 = (m - 3 * n, 3 * m + n)  # twice the centre
    ids["centre = (1/2, 3/2) + p(2,1) + q(-1,2), p=(m-n-1)/2, q=(m+n-1)/2"] = centre2 == (
        1 + 2 * (2 * p - q), 3 + 2 * (p + 2 * q))
    if geometric:
        g2, anchor = _satin_frame()
        v = (2 * x, 2 * y)
        rv = mat_vec(QUARTER, v)
        w = (v[0] - rv[0], v[1] - rv[1])
        sides = {1: v, 2: w, 3: (2 * v[0], 2 * v[1]), 4: (2 * w[0], 2 * w[1])}
        for level, side in sides.items():
            sub = p4_group(anchor, side)
            rep.geometric[level] = is_subgroup_of(sub, g2)
    return rep


__all__ = [
    "CheckReport",
    "CornerCandidate",
    "HypothesisError",
    "RULES",
    "area_spectrum",
    "classify_corner",
    "decompose",
    "eligible_corners",
    "level1_orders",
    "level_chain",
    "on_satin_lattice",
    "theorem3_check",
    "violated_rules",
]
