"""Seeded synthetic guideline corpus with hand-built parses.

Each label class is written with its own construction, so one tag token
decides the class after candidate filtering:

* CA sentences put the condition in an ``SBAR`` clause ("if ...", "when ...");
  ``SBAR`` occurs nowhere else.
* CC sentences use a ``PP`` headed by ``IN`` ("with asthma", "in severe CKD");
  the glued ``PPINNP`` token occurs nowhere else.
* NC sentences that survive filtering use ``PP`` headed by ``TO``; ``TO``
  occurs nowhere else.
* Patternless sentences (ACTION or NC) contain no ``PP``/``SBAR`` node, so the
  candidate filter removes exactly them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from condminer.corpus import AnnotatedSentence, Dataset, LabelMapping, THREE_CLASS

GUIDELINES = ("asthma", "hypertension", "rhinosinusitis")

CONDITIONS = ["hypertension", "asthma", "CKD", "rhinosinusitis", "diabetes", "wheeze", "proteinuria"]
ADJECTIVES = ["severe", "persistent", "uncontrolled", "elevated", "recurrent", "mild"]
VERBS = ["start", "refer", "prescribe", "monitor", "review", "increase"]
OBJECTS = ["therapy", "treatment", "medication", "follow-up", "dosage", "inhaler"]
SYMPTOMS = ["fever", "cough", "congestion", "headache", "fatigue"]


def _cap(word: str) -> str:
    return word[:1].upper() + word[1:]


def _ca(r: random.Random):
    c, a, v, o = r.choice(CONDITIONS), r.choice(ADJECTIVES), r.choice(VERBS), r.choice(OBJECTS)
    k = r.randrange(3)
    if k == 0:
        return (f"If {c} is {a}, {v} {o}.",
                f"(ROOT (S (SBAR (IN If) (S (NP (NN {c})) (VP (VBZ is) (ADJP (JJ {a}))))) (, ,) "
                f"(VP (VB {v}) (NP (NN {o}))) (. .)))")
    if k == 1:
        return (f"{_cap(v)} {o} when {c} persists.",
                f"(ROOT (S (VP (VB {_cap(v)}) (NP (NN {o})) (SBAR (WHADVP (WRB when)) "
                f"(S (NP (NN {c})) (VP (VBZ persists))))) (. .)))")
    return (f"{_cap(o)} should be started if the {c} is {a}.",
            f"(ROOT (S (NP (NN {_cap(o)})) (VP (MD should) (VP (VB be) (VP (VBN started) "
            f"(SBAR (IN if) (S (NP (DT the) (NN {c})) (VP (VBZ is) (ADJP (JJ {a})))))))) (. .)))")


def _cc(r: random.Random):
    c, a, s = r.choice(CONDITIONS), r.choice(ADJECTIVES), r.choice(SYMPTOMS)
    k = r.randrange(3)
    if k == 0:
        return (f"Patients with {c} rarely have {s}.",
                f"(ROOT (S (NP (NP (NNS Patients)) (PP (IN with) (NP (NN {c})))) "
                f"(VP (ADVP (RB rarely)) (VBP have) (NP (NN {s}))) (. .)))")
    if k == 1:
        return (f"In {a} {c}, {s} is common.",
                f"(ROOT (S (PP (IN In) (NP (JJ {a}) (NN {c}))) (, ,) (NP (NN {s})) "
                f"(VP (VBZ is) (ADJP (JJ common))) (. .)))")
    return (f"{_cap(s)} is frequent in patients with {c}.",
            f"(ROOT (S (NP (NN {_cap(s)})) (VP (VBZ is) (ADJP (JJ frequent)) (PP (IN in) "
            f"(NP (NP (NNS patients)) (PP (IN with) (NP (NN {c})))))) (. .)))")


def _nc_to(r: random.Random):
    a, o = r.choice(ADJECTIVES), r.choice(OBJECTS)
    if r.randrange(2) == 0:
        return (f"Access to {o} varies.",
                f"(ROOT (S (NP (NP (NN Access)) (PP (TO to) (NP (NN {o})))) (VP (VBZ varies)) (. .)))")
    return (f"Adherence to {a} {o} remains low.",
            f"(ROOT (S (NP (NP (NN Adherence)) (PP (TO to) (NP (JJ {a}) (NN {o})))) "
            f"(VP (VBZ remains) (ADJP (JJ low))) (. .)))")


def _action(r: random.Random):
    v, o = r.choice(VERBS), r.choice(OBJECTS)
    if r.randrange(2) == 0:
        return (f"{_cap(v)} {o} daily.",
                f"(ROOT (S (VP (VB {_cap(v)}) (NP (NN {o})) (ADVP (RB daily))) (. .)))")
    return (f"Clinicians should {v} {o}.",
            f"(ROOT (S (NP (NNS Clinicians)) (VP (MD should) (VP (VB {v}) (NP (NN {o})))) (. .)))")


def _nc_plain(r: random.Random):
    c, a, o = r.choice(CONDITIONS), r.choice(ADJECTIVES), r.choice(OBJECTS)
    if r.randrange(2) == 0:
        return (f"{_cap(c)} is {a}.",
                f"(ROOT (S (NP (NN {_cap(c)})) (VP (VBZ is) (ADJP (JJ {a}))) (. .)))")
    return (f"The {o} remains {a}.",
            f"(ROOT (S (NP (DT The) (NN {o})) (VP (VBZ remains) (ADJP (JJ {a}))) (. .)))")


_WITH_PATTERN = {"CA": _ca, "CC": _cc, "NC": _nc_to}
_PATTERNLESS = {"ACTION": _action, "NC": _nc_plain}


@dataclass(frozen=True)
class SyntheticCorpus:
    dataset: Dataset
    patternless_ids: frozenset


def generate_synthetic(size: int = 200, seed: int = 0, patternless: int | None = None,
                       mapping: LabelMapping = THREE_CLASS) -> SyntheticCorpus:
    """Build ``size`` sentences, ``patternless`` of which have no candidate subtree.

    ``patternless`` defaults to 35% of ``size`` (7 of 20, 70 of 200).
    """
    if patternless is None:
        patternless = round(0.35 * size)
    if not 0 <= patternless <= size:
        raise ValueError("patternless must lie in [0, size]")
    r = random.Random(seed)
    plain = set(r.sample(range(size), patternless))
    sentences = []
    for i in range(size):
        guideline = r.choice(GUIDELINES)
        table = _PATTERNLESS if i in plain else _WITH_PATTERN
        label = r.choice(sorted(table))
        text, parse = table[label](r)
        sentences.append(AnnotatedSentence(f"syn-{i:04d}", guideline, text, parse, label))
    ids = frozenset(f"syn-{i:04d}" for i in plain)
    return SyntheticCorpus(Dataset(tuple(sentences), mapping), ids)
