import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CORPUS, ids
from isoweave.fabric import (
    Design,
    DesignError,
    canonical_form,
    double,
    enumerate_one_per_order,
    equivalent,
    hangs_together,
    is_twill_permutation,
    make_satin,
    make_twill,
    minimal_period,
    one_per_order_classes,
    parse_design,
    perm_design,
    reverse,
    serialize_design,
    twillin_611,
)
from oracles import hangs_together_bruteforce

matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.booleans(), min_size=r * c, max_size=r * c).map(
            lambda bits: np.array(bits, dtype=bool).reshape(r, c)
        )
    )
)


@given(matrices)
def test_text_round_trip(cells):
    d = Design(cells, label="x")
    assert parse_design(serialize_design(d)) == d
    assert parse_design(serialize_design(d)).label == "x"


@pytest.mark.parametrize(
    "text, line",
    [("#.\n#x\n", 2), ("#.\n#..\n", 2), ("% only a comment\n", None), ("", None), ("ab\n", 1)],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(DesignError) as exc:
        parse_design(text)
    assert exc.value.line == line


def test_comments_and_blank_lines_are_skipped():
    d = parse_design("% label: tiny\n\n#.\n% note\n.#\n")
    assert d.shape == (2, 2) and d.label == "tiny"


def test_satin_construction():
    s = make_satin(5, 3)
    assert [int(np.argmax(r)) for r in s.cells] == [0, 3, 1, 4, 2]
    for bad in [(6, 2), (5, 1), (5, 4), (4, 2)]:
        with pytest.raises(DesignError):
            make_satin(*bad)


def test_twill_and_double():
    t = make_twill(4)
    assert t.cells.sum() == 4 and (t.cells.sum(axis=0) == 1).all()
    d = double(t)
    assert d.shape == (8, 8)
    assert np.array_equal(d.cells[::2, ::2], t.cells)
    assert d.order == 8


def test_reverse_is_complement():
    s = make_satin(5, 3)
    assert np.array_equal(reverse(s).cells, ~s.cells)
    assert reverse(reverse(s)) == s


@given(matrices)
def test_minimal_period_tiles_back(cells):
    d = Design(np.tile(cells, (2, 3)))
    m = minimal_period(d)
    assert np.array_equal(m.tiled(d.rows, d.cols), d.cells)
    assert m.rows <= cells.shape[0] and m.cols <= cells.shape[1]


@given(matrices.filter(lambda c: c.shape[0] + c.shape[1] <= 10))
def test_hangs_together_matches_subset_oracle(cells):
    assert hangs_together(Design(cells)) == hangs_together_bruteforce(cells)


@pytest.mark.parametrize("d", [d for d in CORPUS if d.rows + d.cols <= 12], ids=ids)
def test_corpus_hangs_together_matches_oracle(d):
    assert hangs_together(d) == hangs_together_bruteforce(d.cells)


def test_all_dark_falls_apart():
    assert not hangs_together(Design(np.ones((3, 3), dtype=bool)))


@given(matrices.filter(lambda c: c.shape[0] == c.shape[1]), st.integers(0, 7), st.integers(0, 5), st.integers(0, 5))
def test_canonical_form_invariant_under_equivalences(cells, k, dr, dc):
    d = Design(cells)
    img = cells.T if k >= 4 else cells
    img = np.roll(np.rot90(img, k % 4), (dr, dc), axis=(0, 1))
    assert np.array_equal(canonical_form(d), canonical_form(Design(img)))
    assert equivalent(d, Design(img))


def test_permutation_classes_cover_all_matrices():
    n = 5
    from isoweave.fabric import _perm_orbit

    covered = set()
    for rep in one_per_order_classes(n):
        covered |= _perm_orbit(rep)
    assert covered == set(itertools.permutations(range(n)))


def test_twill_permutations_recognised():
    assert is_twill_permutation((0, 1, 2, 3))
    assert is_twill_permutation((3, 2, 1, 0))
    assert not is_twill_permutation((0, 2, 4, 1, 3))


def test_twillin_is_the_order_six_non_twill():
    found = [d for d in enumerate_one_per_order(6) if "non-twill" in d.label]
    assert len(found) == 1
    assert equivalent(found[0], twillin_611())
    assert equivalent(perm_design((5, 4, 1, 0, 3, 2)), twillin_611())


def test_order_below_two_rejected():
    with pytest.raises(DesignError):
        enumerate_one_per_order(1)
