import random

import pytest
from hypothesis import strategies as st

from condminer.treebank import ParseTree, leaf, node, parse_ptb

WORKED_PARSE = (
    "(ROOT (S (PP (IN In) (NP (NP (NNS adults)) (PP (IN with) (NP (NN hypertension))))) (, ,) "
    "(VP (VBZ does) (S (VP (VBG initiating) (S (NP (NP (JJ antihypertensive) (JJ pharmacologic) "
    "(NN therapy)) (PP (IN at) (NP (JJ specific) (NN BP) (NNS thresholds)))) (VP (VBP improve) "
    "(NP (NN health) (NNS outcomes))))))) (. ?)))"
)

WORKED_FEATURES = (
    "PP IN NP NP NNS PP IN NP NN PPINNP INNPNP NPNPNNS NPNNSPP NNSPPIN PPINNP INNPNN "
    "PPINNPNPNNSPPINNPNN PP IN NP NN PPINNP INNPNN PPINNPNN PP IN NP JJ NN NNS PPINNP "
    "INNPJJ NPJJNN JJNNNNS PPINNPJJNNNNS"
)

LABELS = ["S", "NP", "VP", "PP", "SBAR", "IN", "TO", "WHADVP", "NN", "JJ", "PP-TMP", "ADJP"]
WORDS = ["if", "in", "to", "when", "patients", "x", "-LRB-", "7.0%"]


@pytest.fixture
def worked_tree():
    return parse_ptb(WORKED_PARSE)


label_st = st.sampled_from(LABELS)
leaf_st = st.builds(leaf, label_st, st.sampled_from(WORDS))
tree_st = st.recursive(
    leaf_st,
    lambda kids: st.builds(lambda l, cs: node(l, *cs), label_st, st.lists(kids, min_size=1, max_size=4)),
    max_leaves=25,
)


def random_tree(rng: random.Random, depth: int = 0) -> ParseTree:
    label = rng.choice(LABELS)
    if depth >= 5 or rng.random() < 0.3:
        return leaf(label, rng.choice(WORDS))
    return node(label, *(random_tree(rng, depth + 1) for _ in range(rng.randint(1, 3))))


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and (report.when == "call" or report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        if report.when == "call" or name not in _acceptance:
            _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        status = "PASS" if _acceptance[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
