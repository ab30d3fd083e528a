"""Acceptance suite: one test per criterion.

Every comparison is exact (integers, fractions, byte strings); no tolerance
is involved anywhere.
"""

import itertools
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from conftest import CORPUS
from isoweave.colouring import (
    Pattern,
    Rejected,
    derived_prefabric,
    is_perfect,
    redundant_cells,
    redundant_fraction,
    satin_anchor_scan,
    thick_satin_colourings,
    thin_satin_colourings,
    twillin_colourings,
    twillin_placements,
    striping_for_cells,
    Infeasible,
    Mode,
)
from isoweave.fabric import double, enumerate_one_per_order, equivalent, hangs_together, make_satin, twillin_611
from isoweave.lattice import HypothesisError, area_spectrum, level1_orders, theorem3_check
from isoweave.render import DEFAULT_PALETTE, render_design, render_pattern
from isoweave.surfaces import oblique_torus_census, torus_period
from isoweave.symmetry import classify_species, enumerate_symmetries, lattice_unit_of
from oracles import hangs_together_bruteforce, perfect_bruteforce, symmetries_bruteforce
from test_symmetry import library_set

GOLDEN = Path(__file__).parent / "golden"
SUBGROUP_REASON = "cannot be one of its subgroups"
PUBLISHED_SPECTRUM = [(25, 1), (65, 2), (85, 2), (125, 1), (145, 2), (185, 2), (265, 2)]


def test_criterion_1_satin_species():
    assert classify_species(make_satin(5, 3)).species == "36_1"
    assert classify_species(make_satin(10, 3)).species == "36_s"
    unit = lattice_unit_of(enumerate_symmetries(make_satin(5, 3)))
    assert (unit.level, unit.M, unit.N) == (1, 2, 1)


def _equal_up_to_translation(a, b):
    return a.shape == b.shape and any(
        np.array_equal(np.roll(a, (dr, dc), axis=(0, 1)), b)
        for dr in range(a.shape[0])
        for dc in range(a.shape[1])
    )


def test_criterion_2_thin_satin_colouring():
    s = make_satin(5, 3)
    found = thin_satin_colourings(s)
    assert found
    for c in found:
        pat = Pattern(s, c.striping)
        assert is_perfect(pat).passed
        assert _equal_up_to_translation(derived_prefabric(pat).cells, s.cells)
        assert redundant_fraction(pat) == Fraction(1, 5)


def test_criterion_3_thick_block_families():
    d = double(make_satin(5, 3))
    assert lattice_unit_of(enumerate_symmetries(d)).level == 3
    fam_a, fam_b = thick_satin_colourings(d)
    assert fam_a and fam_b
    cells_a = set().union(*(map(tuple, np.argwhere(c.redundant.cells)) for c in fam_a))
    cells_b = set().union(*(map(tuple, np.argwhere(c.redundant.cells)) for c in fam_b))
    assert not cells_a & cells_b
    assert all(is_perfect(Pattern(d, c.striping)).passed for c in fam_a + fam_b)
    for low in (make_satin(5, 3), make_satin(10, 3)):  # levels 1 and 2
        with pytest.raises(Rejected, match=SUBGROUP_REASON):
            thick_satin_colourings(low)


def test_criterion_4_one_per_order_and_twillin():
    six = enumerate_one_per_order(6)
    non_twills = [d for d in six if "non-twill" in d.label]
    assert len(non_twills) == 1 and equivalent(non_twills[0], twillin_611())
    found = twillin_colourings(twillin_611())
    assert found and all(is_perfect(Pattern(twillin_611(), c.striping)).passed for c in found)
    counts = {n: sum("non-twill" in d.label for d in enumerate_one_per_order(n)) for n in (3, 4, 7)}
    assert counts == {3: 0, 4: 0, 7: 0}


def test_criterion_5_lattice_arithmetic():
    spectrum = area_spectrum(20)
    assert all(a % 5 == 0 for a, _ in spectrum)
    for m, n in itertools.product(range(-20, 21), repeat=2):
        if (m + n) % 2:
            assert theorem3_check(m, n).passed, (m, n)
        else:
            with pytest.raises(HypothesisError):
                theorem3_check(m, n)
    assert level1_orders(100) == [5, 10, 20, 25, 50, 65, 85, 100]
    assert spectrum[: len(PUBLISHED_SPECTRUM)] == PUBLISHED_SPECTRUM


def test_criterion_6_perfect_iff_subgroup():
    counterexamples = [
        (d.label, c.base, c.anchor)
        for d in CORPUS
        for c in satin_anchor_scan(d)
        if c.perfect != c.subgroup
    ]
    assert counterexamples == []


def _perfection_cases():
    for d in CORPUS:
        if d.order > 12:
            continue
        for c in satin_anchor_scan(d):
            yield d, c.striping
        try:
            fam_a, fam_b = thick_satin_colourings(d)
        except Rejected:
            continue
        for c in fam_a + fam_b:
            yield d, c.striping
    d = twillin_611()
    for _k, _anchor, red in twillin_placements():
        s = striping_for_cells(red.cells, 6, Mode.THIN)
        if not isinstance(s, Infeasible):
            yield d, s


def test_criterion_7_oracle_equivalence():
    disagreements = []
    for d in CORPUS:
        if d.rows + d.cols <= 12 and hangs_together(d) != hangs_together_bruteforce(d.cells):
            disagreements.append(("hangs together", d.label))
        if d.order <= 8 and library_set(d) != symmetries_bruteforce(d.cells):
            disagreements.append(("symmetries", d.label))
    for d, s in _perfection_cases():
        if is_perfect(Pattern(d, s)).passed != perfect_bruteforce(d.cells, s.warp_colour, s.weft_colour, s.period):
            disagreements.append(("perfect", d.label, s.to_descriptor()))
    assert disagreements == []


def test_criterion_8_torus():
    s = make_satin(5, 3)
    spec = torus_period(Pattern(s, thin_satin_colourings(s)[0].striping))
    assert (spec.rows, spec.cols) == (5, 5)
    assert len(spec.census) == 5 and set(spec.census.values()) == {(1, 1)}
    thick_found = 0
    for d in CORPUS:
        if d.order != 10:
            continue
        try:
            fam_a, fam_b = thick_satin_colourings(d)
        except Rejected:
            continue
        for c in fam_a + fam_b:
            thick_found += 1
            assert set(torus_period(Pattern(d, c.striping)).census.values()) == {(2, 2)}
    assert thick_found > 0
    d = double(s)
    fam_a, _ = thick_satin_colourings(d)
    pat = Pattern(d, fam_a[0].striping)
    assert torus_period(pat).cells == 100
    assert oblique_torus_census(pat, lattice_unit_of(enumerate_symmetries(d)), 5).cells == 500


def test_criterion_9_rendering():
    s = make_satin(5, 3)
    pat = Pattern(s, thin_satin_colourings(s)[0].striping)
    outputs = {
        "satin53_markers.svg": render_design(s, enumerate_symmetries(s)),
        "satin53_thin_obverse.svg": render_pattern(pat, "obverse", DEFAULT_PALETTE),
        "satin53_thin_reverse.svg": render_pattern(pat, "reverse", DEFAULT_PALETTE),
    }
    for name, text in outputs.items():
        assert text.encode() == (GOLDEN / name).read_bytes(), name
    from isoweave.colouring import pattern_view

    front = pattern_view(pat, "obverse")
    back = pattern_view(pat, "reverse")[:, ::-1]
    assert np.array_equal(front == back, redundant_cells(pat).cells)
