"""Isonemal weave designs: symmetry groups, species, perfect colourings and drawings."""

from .colouring import (
    Mode,
    Pattern,
    RedundancyConfig,
    Side,
    Striping,
    colour_by_redundancy,
    derived_prefabric,
    is_perfect,
    parse_striping,
    pattern_view,
    thick_satin_colourings,
    thin_satin_colourings,
    twillin_colourings,
)
from .fabric import (
    Design,
    DesignError,
    double,
    enumerate_one_per_order,
    hangs_together,
    make_satin,
    make_twill,
    parse_design,
    serialize_design,
    twillin_611,
)
from .lattice import area_spectrum, eligible_corners, level1_orders, level_chain, theorem3_check
from .render import render_design, render_pattern
from .surfaces import TorusSpec, oblique_torus_census, torus_period
from .symmetry import (
    GroupDescription,
    classify_species,
    enumerate_symmetries,
    is_isonemal,
    isometry_projection,
    lattice_unit_of,
    side_preserving_subgroup,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
