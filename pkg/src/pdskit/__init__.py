"""Construction, verification and classification of partial difference sets."""

from pdskit.construct import latin_square_lines, paley, trivial_pds
from pdskit.errors import HypothesisError, InconsistencyError
from pdskit.existence import classify_order, fourth_power_form, ma84_filter
from pdskit.group import AbelianGroup, abelian_groups, make_group
from pdskit.pds import PdsParameters, SubsetInGroup, character_verify, classify, parse_subset
from pdskit.restrict import paley_nonexistence_witness, predict_restriction, restrict_and_verify
from pdskit.search import exhaustive_paley_search

__all__ = [
    "AbelianGroup",
    "HypothesisError",
    "InconsistencyError",
    "PdsParameters",
    "SubsetInGroup",
    "abelian_groups",
    "character_verify",
    "classify",
    "classify_order",
    "exhaustive_paley_search",
    "fourth_power_form",
    "latin_square_lines",
    "ma84_filter",
    "make_group",
    "paley",
    "paley_nonexistence_witness",
    "parse_subset",
    "predict_restriction",
    "restrict_and_verify",
    "trivial_pds",
]
