"""POS-tag feature tokens from candidate subtrees, and binary vectorization.

For each candidate subtree, in sentence pre-order, the bag receives the
subtree's labels one by one, then every window of three consecutive labels
glued together (``PP IN NP`` -> ``PPINNP``), then all of its labels glued
into a single token.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from condminer.candidates import find_condition_candidates
from condminer.treebank import ParseTree, preorder_labels


@dataclass(frozen=True)
class FeatureBag:
    tokens: tuple[str, ...] = ()

    def __iter__(self):
        return iter(self.tokens)

    def __len__(self):
        return len(self.tokens)

    def __str__(self):
        return " ".join(self.tokens)


def candidate_tokens(labels: Sequence[str]) -> list[str]:
    tokens = list(labels)
    tokens.extend("".join(labels[i:i + 3]) for i in range(len(labels) - 2))
    tokens.append("".join(labels))
    return tokens


def extract_features(tree: ParseTree) -> FeatureBag:
    tokens: list[str] = []
    for match in find_condition_candidates(tree):
        tokens.extend(candidate_tokens(preorder_labels(match.subtree, skip_root=False)))
    return FeatureBag(tuple(tokens))


@dataclass
class Vocabulary:
    """Token to column index, in first-seen order."""

    tokens: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.index = {}
        for t in self.tokens:
            if t in self.index:
                raise ValueError(f"duplicate vocabulary token {t!r}")
            self.index[t] = len(self.index)

    def __len__(self):
        return len(self.tokens)

    def __contains__(self, token):
        return token in self.index

    def __eq__(self, other):
        return isinstance(other, Vocabulary) and self.tokens == other.tokens

    def add(self, token: str) -> int:
        if token not in self.index:
            self.index[token] = len(self.tokens)
            self.tokens.append(token)
        return self.index[token]

    def to_json(self) -> str:
        return json.dumps(self.tokens)

    @classmethod
    def from_json(cls, text: str) -> Vocabulary:
        return cls(list(json.loads(text)))


def build_vocabulary(bags: Iterable[FeatureBag]) -> Vocabulary:
    vocab = Vocabulary()
    for bag in bags:
        for token in bag:
            vocab.add(token)
    return vocab


def vectorize(bag: FeatureBag, vocab: Vocabulary) -> np.ndarray:
    """Binary presence vector; tokens outside ``vocab`` are dropped."""
    v = np.zeros(len(vocab), dtype=np.uint8)
    for token in bag:
        j = vocab.index.get(token)
        if j is not None:
            v[j] = 1
    return v


def vectorize_all(bags: Sequence[FeatureBag], vocab: Vocabulary) -> np.ndarray:
    X = np.zeros((len(bags), len(vocab)), dtype=np.uint8)
    for i, bag in enumerate(bags):
        X[i] = vectorize(bag, vocab)
    return X
