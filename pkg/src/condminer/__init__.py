"""Condition-action sentence mining over constituency parses."""

from condminer.treebank import ParseTree, parse_ptb, preorder_labels, serialize
from condminer.candidates import find_condition_candidates, is_candidate_sentence
from condminer.features import FeatureBag, Vocabulary, build_vocabulary, extract_features, vectorize

__version__ = "0.1.0"

__all__ = [
    "ParseTree",
    "parse_ptb",
    "preorder_labels",
    "serialize",
    "find_condition_candidates",
    "is_candidate_sentence",
    "FeatureBag",
    "Vocabulary",
    "build_vocabulary",
    "extract_features",
    "vectorize",
]
