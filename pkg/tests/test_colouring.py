from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from isoweave.colouring import (
    Infeasible,
    Mode,
    Pattern,
    RedundancyConfig,
    Rejected,
    Side,
    Striping,
    StripingError,
    colour_by_redundancy,
    derived_prefabric,
    double_striping,
    is_perfect,
    parse_striping,
    pattern_view,
    redundant_cells,
    redundant_fraction,
    satin_anchor_scan,
    striping_for_cells,
    thick_satin_colourings,
    thin_satin_colourings,
    twillin_admissible,
    twillin_colourings,
)
from isoweave.fabric import double, equivalent, make_satin, make_twill, twillin_611
from isoweave.symmetry import enumerate_symmetries
from oracles import perfect_bruteforce


@st.composite
def stripings(draw, max_p=6):
    p = draw(st.integers(1, max_p))
    mode = draw(st.sampled_from(list(Mode)))
    warp = tuple(draw(st.permutations(range(p))))
    weft = tuple(draw(st.permutations(range(p))))
    phases = (0, 0) if mode is Mode.THIN else (draw(st.integers(0, 1)), draw(st.integers(0, 1)))
    return Striping(p, mode, warp, weft, *phases)


@given(stripings())
def test_descriptor_round_trip(s):
    assert parse_striping(s.to_descriptor()) == s


@given(stripings())
def test_colour_period_and_counts(s):
    q = s.period
    for k in range(2 * q):
        assert s.warp_colour(k) == s.warp_colour(k + q)
    counts = [sum(s.weft_colour(i) == c for i in range(q)) for c in range(s.p)]
    assert counts == [s.width] * s.p


def test_linear_descriptors():
    s = Striping.linear(5, "thin", (0, 1), (0, 3))
    assert s.weft_seq == (0, 3, 1, 4, 2)
    assert s.to_descriptor() == "stripe thin p=5 warp=0,1 weft=0,3"
    assert Striping.linear(5, "thin", (2, 4), (0, 1)).to_descriptor() == "stripe thin p=5 warp=2,-1 weft=0,1"
    t = parse_striping("stripe thick p=3 warp=0/2/1,1 weft=1,1,0")
    assert t.warp_seq == (0, 2, 1) and t.warp_phase == 1 and t.weft_seq == (1, 2, 0)
    assert [t.warp_colour(k) for k in range(6)] == [0, 2, 2, 1, 1, 0]


@pytest.mark.parametrize(
    "text",
    [
        "stripe thin p=5 warp=0,5 weft=0,1",  # step not a unit
        "stripe thin p=3 warp=0/1/1 weft=0,1",  # not an arrangement
        "stripe thin p=3 warp=0,1,1 weft=0,1",  # phase on thin
        "stripe wide p=3 warp=0,1 weft=0,1",
        "stripe thin p=3 warp=a,1 weft=0,1",
        "stripes",
    ],
)
def test_bad_descriptors(text):
    with pytest.raises(StripingError):
        parse_striping(text)


@given(stripings(max_p=5))
def test_striping_recovered_from_its_redundancy(s):
    red = redundant_cells(Pattern(make_twill(2), s)).cells
    found = striping_for_cells(red, s.p, s.mode)
    assert not isinstance(found, Infeasible)
    assert np.array_equal(redundant_cells(Pattern(make_twill(2), found)).cells, red)


def test_normal_colouring_has_no_redundancy():
    pat = Pattern(make_satin(5, 3))
    assert not redundant_cells(pat).cells.any()
    assert is_perfect(pat).passed


def test_infeasible_thick_without_doubling():
    cfg = RedundancyConfig(make_satin(5, 3))
    res = colour_by_redundancy(make_satin(5, 3), cfg, Mode.THICK)
    assert isinstance(res, Infeasible) and not res
    assert res.reason


def test_redundancy_config_validates():
    with pytest.raises(ValueError):
        RedundancyConfig(double(make_satin(5, 3)))


def test_thin_satin_colourings_are_perfect(satin53):
    found = thin_satin_colourings(satin53)
    assert len(found) == 5
    for c in found:
        pat = Pattern(satin53, c.striping)
        assert is_perfect(pat).passed
        assert equivalent(derived_prefabric(pat), satin53) or equivalent(derived_prefabric(pat), make_satin(5, 2))
        assert redundant_fraction(pat) == Fraction(1, 5)


def test_anchor_scan_subgroup_iff_perfect(satin53):
    scan = satin_anchor_scan(satin53)
    assert len(scan) == 50
    assert all(c.subgroup == c.perfect for c in scan)
    assert sum(c.perfect for c in scan) == 5


def test_failure_witness(satin53):
    s = Striping.linear(5, "thin", (0, 1), (0, 1))
    res = is_perfect(Pattern(satin53, s))
    assert not res.passed and res.op is not None
    (_, c1, d1), (_, c2, d2) = res.conflict
    assert (c1 == c2 and d1 != d2) or (c1 != c2 and d1 == d2)
    assert res.to_text().startswith("FAIL")


def test_thick_families_on_doubled_satin(satin53):
    d = double(satin53)
    fam_a, fam_b = thick_satin_colourings(d)
    assert fam_a and fam_b
    blocks_a = {tuple(map(tuple, np.argwhere(c.redundant.cells))) for c in fam_a}
    blocks_b = {tuple(map(tuple, np.argwhere(c.redundant.cells))) for c in fam_b}
    assert not blocks_a & blocks_b
    for c in fam_a + fam_b:
        assert is_perfect(Pattern(d, c.striping)).passed
        assert redundant_fraction(Pattern(d, c.striping)) == Fraction(1, 5)


def test_thick_level_four():
    d = double(make_satin(10, 3))
    fam_a, fam_b = thick_satin_colourings(d)
    assert len(fam_a) == 1 and len(fam_b) == 1


@pytest.mark.parametrize("d", [make_satin(5, 3), make_satin(10, 3)], ids=["level1", "level2"])
def test_thick_rejects_low_levels(d):
    with pytest.raises(Rejected, match="cannot be one of its subgroups"):
        thick_satin_colourings(d)


def test_thick_rejects_axis_species():
    with pytest.raises(Rejected):
        thick_satin_colourings(make_twill(4))


def test_double_striping_keeps_sequences():
    s = Striping.linear(5, "thin", (0, 1), (0, 3))
    t = double_striping(s)
    assert t.mode is Mode.THICK and t.warp_seq == s.warp_seq
    with pytest.raises(StripingError):
        double_striping(t)


def test_twillin_self_colouring():
    d = twillin_611()
    ok, why = twillin_admissible(enumerate_symmetries(d))
    assert ok, why
    found = twillin_colourings(d)
    assert found
    for c in found:
        pat = Pattern(d, c.striping)
        assert is_perfect(pat).passed
        s = c.striping
        assert perfect_bruteforce(d.cells, s.warp_colour, s.weft_colour, s.period)


def test_twillin_inadmissible_for_quarter_turns(satin53):
    ok, why = twillin_admissible(enumerate_symmetries(satin53))
    assert not ok and "quarter" in why
    assert twillin_colourings(satin53) == []


def test_reverse_view_shares_redundant_cells(satin53):
    c = thin_satin_colourings(satin53)[0]
    pat = Pattern(satin53, c.striping)
    front = pattern_view(pat, Side.OBVERSE)
    back = pattern_view(pat, "reverse")[:, ::-1]
    red = redundant_cells(pat).cells
    assert np.array_equal(front == back, red)


def test_normal_colouring_view_is_design(satin53):
    view = pattern_view(Pattern(satin53))
    assert np.array_equal(view == 1, satin53.cells)


@given(stripings(max_p=4), st.sampled_from([make_twill(3), make_twill(4), make_satin(5, 3), twillin_611()]))
def test_is_perfect_matches_strand_oracle(s, d):
    expect = perfect_bruteforce(d.cells, s.warp_colour, s.weft_colour, s.period)
    assert is_perfect(Pattern(d, s)).passed == expect
