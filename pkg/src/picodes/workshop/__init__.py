"""Code catalog, 9-qubit family solvers, no-go evidence and proof traces."""

from .catalog import CatalogEntry, CatalogValidationError, catalog, get_entry
from .families import (
    NineBitFamilyPoint,
    corrected_cubic,
    family_bracket,
    nine_family_point,
    printed_cubic,
    solve_nine_family,
)
from .nogo import (
    engine_search,
    nogo_bracket_positivity,
    nogo_residual_scan,
    oracle_search,
)
from .traces import (
    five_bit_nonexistence,
    phase5_uniqueness_search,
    seven_bit_complex_uniqueness,
)

__all__ = [
    "CatalogEntry",
    "CatalogValidationError",
    "NineBitFamilyPoint",
    "catalog",
    "corrected_cubic",
    "engine_search",
    "family_bracket",
    "five_bit_nonexistence",
    "get_entry",
    "nine_family_point",
    "nogo_bracket_positivity",
    "nogo_residual_scan",
    "oracle_search",
    "phase5_uniqueness_search",
    "printed_cubic",
    "seven_bit_complex_uniqueness",
    "solve_nine_family",
]
