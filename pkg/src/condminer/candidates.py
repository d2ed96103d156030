"""Candidate condition subtrees.

A candidate is any node whose label and first child's label form one of

    (SBAR|PP) (IN ...      -> SBAR_PP_IN
    SBAR (WHADVP ...       -> SBAR_WHADVP
    PP (TO ...             -> PP_TO

Labels are compared by full string equality, so ``PP-TMP`` is not ``PP``.
Matches nested inside other matches are kept.
"""

from __future__ import annotations

from dataclasses import dataclass

from condminer.errors import InvariantViolation
from condminer.treebank import ParseTree

SBAR_PP_IN = "SBAR_PP_IN"
SBAR_WHADVP = "SBAR_WHADVP"
PP_TO = "PP_TO"
PATTERNS = (SBAR_PP_IN, SBAR_WHADVP, PP_TO)


@dataclass(frozen=True)
class CandidateMatch:
    subtree: ParseTree
    pattern: str
    position: int  # pre-order index of the subtree root in the sentence tree


def match_pattern(tree: ParseTree) -> str | None:
    """Name of the pattern ``tree`` starts with, or None."""
    if tree.is_leaf:
        return None
    head, first = tree.label, tree.children[0].label
    if head in ("SBAR", "PP") and first == "IN":
        return SBAR_PP_IN
    if head == "SBAR" and first == "WHADVP":
        return SBAR_WHADVP
    if head == "PP" and first == "TO":
        return PP_TO
    return None


def find_condition_candidates(tree: ParseTree) -> list[CandidateMatch]:
    matches = []
    for position, n in enumerate(tree.iter_preorder()):
        pattern = match_pattern(n)
        if pattern is not None:
            matches.append(CandidateMatch(n, pattern, position))
    for m in matches:
        if match_pattern(m.subtree) != m.pattern:
            raise InvariantViolation(f"match at {m.position} fails its own pattern {m.pattern}")
    return matches


def is_candidate_sentence(tree: ParseTree) -> bool:
    return any(match_pattern(n) is not None for n in tree.iter_preorder())
