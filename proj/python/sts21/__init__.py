from ._core import (
    EXPECTED_CLASSES,
    EXPECTED_RESOLVABLE,
    are_isomorphic,
    canonical_form,
    enumerate_sts9,
    expected_weighted_sum,
    flower_census,
    is_resolvable,
    sts9_with_block_count,
    td36_main_classes,
    total_flower_td_pairs,
    validate,
)

__all__ = [
    "EXPECTED_CLASSES",
    "EXPECTED_RESOLVABLE",
    "are_isomorphic",
    "canonical_form",
    "enumerate_sts9",
    "expected_weighted_sum",
    "flower_census",
    "is_resolvable",
    "sts9_with_block_count",
    "td36_main_classes",
    "total_flower_td_pairs",
    "validate",
]
