"""Animacy identification for noun phrases.

Thin Python layer over the C++ library. Labels are the strings ``"A"``
(animate), ``"I"`` (inanimate) and ``"U"`` (unknown); label streams are
lists of ``(doc_id, sent_id, np_id, label)`` tuples.
"""

from ._core import (
    AnimacyError,
    Corpus,
    EnrichedTaxonomy,
    InfeasibleError,
    ParseError,
    Taxonomy,
    baseline,
    chi_square,
    chi_square_critical,
    classify_mbl,
    classify_rule,
    cross_validate,
    enrich,
    inject_errors,
    kappa,
    plan_injection,
    score,
    score_streams,
    simulate,
    sweep,
)

__all__ = [
    "AnimacyError",
    "Corpus",
    "EnrichedTaxonomy",
    "InfeasibleError",
    "ParseError",
    "Taxonomy",
    "baseline",
    "chi_square",
    "chi_square_critical",
    "classify_mbl",
    "classify_rule",
    "cross_validate",
    "enrich",
    "inject_errors",
    "kappa",
    "plan_injection",
    "score",
    "score_streams",
    "simulate",
    "sweep",
]
