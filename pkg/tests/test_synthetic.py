import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from condminer.candidates import is_candidate_sentence
from condminer.corpus import filter_candidates
from condminer.features import extract_features
from condminer.synthetic import generate_synthetic


def test_twenty_sentence_corpus():
    synthetic = generate_synthetic(20, seed=0)
    assert len(synthetic.patternless_ids) == 7
    kept, report = filter_candidates(synthetic.dataset)
    assert (len(kept), report.total_removed) == (13, 7)


def test_deterministic():
    assert generate_synthetic(50, seed=9) == generate_synthetic(50, seed=9)
    assert generate_synthetic(50, seed=9) != generate_synthetic(50, seed=10)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 80))
def test_declared_patternless_are_exactly_the_removed(seed, size):
    synthetic = generate_synthetic(size, seed)
    removed = {s.id for s in synthetic.dataset if not is_candidate_sentence(s.tree)}
    assert removed == synthetic.patternless_ids


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32))
def test_one_token_decides_the_class(seed):
    kept, _ = filter_candidates(generate_synthetic(60, seed).dataset)
    marker = {"CA": "SBAR", "CC": "PPINNP", "NC": "TO"}
    for s in kept:
        tokens = set(extract_features(s.tree))
        label = kept.mapping(s.label)
        assert {c for c, t in marker.items() if t in tokens} == {label}


def test_patternless_bounds():
    with pytest.raises(ValueError):
        generate_synthetic(5, patternless=6)
    assert len(generate_synthetic(5, patternless=0).patternless_ids) == 0
