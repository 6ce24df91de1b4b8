"""Knot diagrams: parsing, Jones and Alexander polynomials, braid cabling."""

from .alexander import alexander_fox, laurent_det
from .cabling import cable_braid, cable_crossing_count, torus_braid
from .codes import BraidWord, PDCode, braid_to_pd, parse_braid, parse_pd, writhe
from .jones import (
    DEFAULT_MAX_CROSSINGS,
    JONES_CONVENTION,
    bracket_contract,
    bracket_states,
    jones,
    kauffman_bracket,
)

__all__ = [
    "BraidWord",
    "PDCode",
    "parse_braid",
    "parse_pd",
    "braid_to_pd",
    "writhe",
    "jones",
    "kauffman_bracket",
    "bracket_states",
    "bracket_contract",
    "alexander_fox",
    "laurent_det",
    "cable_braid",
    "cable_crossing_count",
    "torus_braid",
    "DEFAULT_MAX_CROSSINGS",
    "JONES_CONVENTION",
]
