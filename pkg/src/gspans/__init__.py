"""Exact-arithmetic engine for finite groupoids and group-ring span matrices."""

from gspans.algebra import (
    AbelianGroup,
    Character,
    CyclotomicNumber,
    GroupRingElement,
    average_idempotent,
    cyclotomic_polynomial,
)
from gspans.constructions import (
    GroupoidFunctor,
    GroupValuedFunctor,
    SetValuedFunctor,
    coset_groupoid,
    delooping_bg,
    discrete_groupoid,
    grothendieck,
    homotopy_pullback,
    left_fibre,
    pullback_euler_check,
    right_fibre,
    trivial_subgroupoid,
    two_sided_fibre,
    two_sided_pullback,
)
from gspans.groupoid import (
    ActionGroupoid,
    DisjointUnion,
    SymmetricGroup,
    TableGroupoid,
    disjoint_union_tables,
    weighting,
)
from gspans.gspan import (
    GSpan,
    SpanMatrix,
    SpanMorphism,
    character_matrix,
    check_main_theorem,
    compose_spans,
    horizontal_compose,
    identity_span,
    labeled_fibre,
    matrix_multiply,
    pushforward_span,
    pullback_span,
    span_matrix,
    vertical_compose,
)
from gspans.examples import (
    StirlingSpanConfig,
    coset_span,
    fin_perm_groupoid,
    fin_rel_groupoid,
    group_square_span,
    stirling_pair,
    stirling_span,
    subset_span,
    universal_span,
)

__all__ = [
    "AbelianGroup",
    "ActionGroupoid",
    "Character",
    "CyclotomicNumber",
    "DisjointUnion",
    "GSpan",
    "GroupRingElement",
    "GroupValuedFunctor",
    "GroupoidFunctor",
    "SetValuedFunctor",
    "SpanMatrix",
    "SpanMorphism",
    "StirlingSpanConfig",
    "SymmetricGroup",
    "TableGroupoid",
    "average_idempotent",
    "character_matrix",
    "check_main_theorem",
    "compose_spans",
    "coset_groupoid",
    "coset_span",
    "cyclotomic_polynomial",
    "delooping_bg",
    "discrete_groupoid",
    "disjoint_union_tables",
    "fin_perm_groupoid",
    "fin_rel_groupoid",
    "grothendieck",
    "group_square_span",
    "homotopy_pullback",
    "horizontal_compose",
    "identity_span",
    "labeled_fibre",
    "left_fibre",
    "matrix_multiply",
    "pullback_euler_check",
    "pullback_span",
    "pushforward_span",
    "right_fibre",
    "span_matrix",
    "stirling_pair",
    "stirling_span",
    "subset_span",
    "trivial_subgroupoid",
    "two_sided_fibre",
    "two_sided_pullback",
    "universal_span",
    "vertical_compose",
    "weighting",
]
