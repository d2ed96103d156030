"""Independent re-implementations used to check the library's answers."""

import math
import re
from fractions import Fraction

from condminer.treebank import serialize

# the three string patterns, applied to a node's own serialization; the
# trailing space forces full-label equality on the inner tag
PATTERN_REGEXES = {
    "SBAR_PP_IN": re.compile(r"^\((SBAR|PP) \(IN "),
    "SBAR_WHADVP": re.compile(r"^\(SBAR \(WHADVP "),
    "PP_TO": re.compile(r"^\(PP \(TO "),
}


def all_nodes(tree):
    """Recursive pre-order walk (the library walks iteratively)."""
    out = [tree]
    for c in tree.children:
        out.extend(all_nodes(c))
    return out


def brute_force_candidates(tree):
    found = []
    for pos, n in enumerate(all_nodes(tree)):
        text = serialize(n)
        for name, rx in PATTERN_REGEXES.items():
            if rx.match(text):
                found.append((pos, name))
    return found


def window_tokens(labels):
    uni = list(labels)
    tri = ["".join(t) for t in zip(labels, labels[1:], labels[2:])]
    return uni + tri + ["".join(labels)]


def nb_log_joint(X, y, classes, alpha, x):
    """Bernoulli naive Bayes joint log-probabilities by explicit loops."""
    n = len(y)
    out = []
    for c in classes:
        rows = [X[i] for i in range(n) if y[i] == c]
        n_c = len(rows)
        if n_c == 0:
            out.append(-math.inf)
            continue
        total = math.log(n_c / n)
        for j in range(len(x)):
            p = (sum(r[j] for r in rows) + alpha) / (n_c + 2 * alpha)
            total += math.log(p) if x[j] else math.log(1 - p)
        out.append(total)
    return out


def entropy_bits(labels):
    n = len(labels)
    if n == 0:
        return 0.0
    h = 0.0
    for c in set(labels):
        p = labels.count(c) / n
        h -= p * math.log2(p)
    return h


def gain_and_ratio(column, labels):
    n = len(labels)
    ones = [l for v, l in zip(column, labels) if v]
    zeros = [l for v, l in zip(column, labels) if not v]
    gain = entropy_bits(labels) - len(ones) / n * entropy_bits(ones) - len(zeros) / n * entropy_bits(zeros)
    split = entropy_bits([bool(v) for v in column])
    return gain, (gain / split if split > 0 else 0.0)


def metrics_from_pairs(gold, pred, classes):
    """Precision/recall/F from raw (gold, pred) pairs rather than a matrix."""
    out = {}
    for c in classes:
        tp = sum(1 for g, p in zip(gold, pred) if g == c and p == c)
        npred = sum(1 for p in pred if p == c)
        ngold = sum(1 for g in gold if g == c)
        prec = tp / npred if npred else 0.0
        rec = tp / ngold if ngold else 0.0
        f = 2 * prec * rec / (prec + rec) if prec + rec else 0.0
        out[c] = (prec, rec, f)
    return out


def nb_exact_prediction(X, y, classes, alpha, x):
    """Earliest class with the largest exact joint probability (rational arithmetic)."""
    n = len(y)
    alpha = Fraction(alpha)
    best, best_p = None, None
    for c in classes:
        rows = [X[i] for i in range(n) if y[i] == c]
        if not rows:
            continue
        p = Fraction(len(rows), n)
        for j in range(len(x)):
            q = (sum(r[j] for r in rows) + alpha) / (len(rows) + 2 * alpha)
            p *= q if x[j] else 1 - q
        if best_p is None or p > best_p:
            best, best_p = c, p
    return best
