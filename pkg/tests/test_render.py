import os
import re
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from isoweave.colouring import Pattern, Striping, redundant_cells, thin_satin_colourings
from isoweave.fabric import Design, double, make_satin, make_twill, twillin_611
from isoweave.render import (
    CELL,
    DEFAULT_PALETTE,
    PaletteError,
    RenderOptions,
    load_palette,
    render_design,
    render_pattern,
)
from isoweave.symmetry import enumerate_symmetries, half_turns, quarter_turn_centres

GOLDEN = Path(__file__).parent / "golden"
ELEMENT = re.compile(r"<(\w+)")


def thin_satin_pattern():
    s = make_satin(5, 3)
    return Pattern(s, thin_satin_colourings(s)[0].striping)


def golden_cases():
    s = make_satin(5, 3)
    pat = thin_satin_pattern()
    return {
        "satin53_markers.svg": render_design(s, enumerate_symmetries(s)),
        "satin53_thin_obverse.svg": render_pattern(pat, "obverse", DEFAULT_PALETTE),
        "satin53_thin_reverse.svg": render_pattern(pat, "reverse", DEFAULT_PALETTE),
    }


@pytest.mark.parametrize("name", sorted(golden_cases()))
def test_golden_bytes(name):
    text = golden_cases()[name]
    path = GOLDEN / name
    if os.environ.get("ISOWEAVE_REGEN_GOLDEN"):
        path.write_text(text, encoding="utf-8")
    assert text.encode() == path.read_bytes()


def test_only_allowed_elements():
    for d in [make_satin(5, 3), twillin_611(), double(make_satin(5, 3)), make_twill(4)]:
        text = render_design(d, enumerate_symmetries(d))
        tags = set(ELEMENT.findall(text)) - {"svg", "?xml"}
        assert tags <= {"rect", "line", "path", "polygon"}


def test_deterministic():
    d = twillin_611()
    assert render_design(d, enumerate_symmetries(d)) == render_design(d, enumerate_symmetries(d))


def test_plain_weave_and_bare_grid():
    text = render_design(make_twill(2))
    assert text.count("<rect") == 4
    assert "#6b6b6b" in text and "#ffffff" in text
    assert "<polygon" not in text and "<line" not in text


def _marker_centres(text):
    out = set()
    for x, y, w in re.findall(r'<rect x="([-\d.]+)" y="([-\d.]+)" width="(\d+)" height="\d+" fill="#[0-9a-f]+" stroke', text):
        out.add((Fraction(x) + Fraction(w) / 2, Fraction(y) + Fraction(w) / 2))
    return out


def test_markers_sit_on_group_centres():
    for d in [make_satin(5, 3), make_satin(10, 3), double(make_satin(5, 3))]:
        g = enumerate_symmetries(d)
        text = render_design(d, g, RenderOptions(lattice_unit=False))
        n2 = 2 * d.order
        expected = set()
        for c, _tau in quarter_turn_centres(g):
            for x2, y2 in g.lattice.points_in_box((0, -n2), (n2, 0), c):
                expected.add((Fraction(x2 * CELL, 2), Fraction(-y2 * CELL, 2)))
        assert _marker_centres(text) == expected


def test_half_turn_diamonds_for_axis_species():
    d = twillin_611()
    g = enumerate_symmetries(d)
    text = render_design(d, g)
    assert text.count("<polygon") >= len(half_turns(g))
    assert "stroke-dasharray" in text  # glide axes are broken lines


def test_reverse_shares_redundant_cells():
    pat = thin_satin_pattern()
    front = golden_cases()["satin53_thin_obverse.svg"]
    back = golden_cases()["satin53_thin_reverse.svg"]

    def fills(text):
        cells = re.findall(r'<rect x="(\d+)" y="(\d+)" width="20" height="20" fill="(#[0-9a-f]+)"/>', text)
        grid = {}
        for x, y, f in cells:
            grid[int(y) // CELL, int(x) // CELL] = f
        return grid

    f, b = fills(front), fills(back)
    n = 5
    same = np.array([[f[i, j] == b[i, n - 1 - j] for j in range(n)] for i in range(n)])
    assert np.array_equal(same, redundant_cells(pat).cells)


def test_single_colour_is_monochrome():
    s = make_satin(5, 3)
    text = render_pattern(Pattern(s, Striping(1, "thin", (0,), (0,))), palette=["#123456"])
    assert text.count('fill="#123456"') == 25


def test_palette_too_small():
    with pytest.raises(PaletteError):
        render_pattern(thin_satin_pattern(), palette=["#000000"] * 4)


def test_palette_file(tmp_path, monkeypatch):
    p = tmp_path / "pal.txt"
    p.write_text("; five colours\n#111111\n#222222\n\n#333333\n#444444\n#555555 ; last\n")
    monkeypatch.setenv("ISOWEAVE_PALETTE", str(p))
    assert load_palette() == ("#111111", "#222222", "#333333", "#444444", "#555555")
    assert "#555555" in render_pattern(thin_satin_pattern())
    monkeypatch.delenv("ISOWEAVE_PALETTE")
    assert load_palette() == DEFAULT_PALETTE
