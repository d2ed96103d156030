"""Annotated guideline corpora: loading, label mappings, filtering, statistics.

Corpus rows carry five fields (``id``, ``guideline``, ``text``, ``parse``,
``label``) as JSON lines or as tab-separated values with a header row.
"""

from __future__ import annotations

import csv
import json
from collections import Counter
from dataclasses import asdict, dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from condminer.candidates import is_candidate_sentence
from condminer.errors import DataError
from condminer.treebank import ParseTree, TreebankError, parse_ptb

RAW_LABELS = ("CA", "CC", "ACTION", "NC")
FIELDS = ("id", "guideline", "text", "parse", "label")


class CorpusError(DataError):
    pass


class MissingField(CorpusError):
    pass


class BadLabel(CorpusError):
    pass


class BadParse(CorpusError):
    def __init__(self, row_id, detail=""):
        super().__init__(f"row {row_id!r}: unparsable tree: {detail}")
        self.row_id = row_id


class DuplicateId(CorpusError):
    pass


@dataclass(frozen=True)
class LabelMapping:
    name: str
    table: dict
    classes: tuple[str, ...]  # fixed class order used for every tie-break
    focus: str  # the class reported in the Condition-Action columns

    def __post_init__(self):
        if set(self.table) != set(RAW_LABELS):
            raise ValueError(f"mapping {self.name} is not total over {RAW_LABELS}")
        if set(self.table.values()) - set(self.classes):
            raise ValueError(f"mapping {self.name} targets undeclared classes")

    def __call__(self, label: str) -> str:
        # task labels map to themselves, which makes applying a mapping twice a no-op
        if label in self.table:
            return self.table[label]
        if label in self.classes:
            return label
        raise BadLabel(label)


RAW4 = LabelMapping("raw4", {l: l for l in RAW_LABELS}, RAW_LABELS, "CA")
THREE_CLASS = LabelMapping(
    "three", {"CA": "CA", "CC": "CC", "ACTION": "NC", "NC": "NC"}, ("CA", "CC", "NC"), "CA")
BINARY_CA = LabelMapping(
    "binary-ca", {"CA": "POS", "CC": "NEG", "ACTION": "NEG", "NC": "NEG"}, ("POS", "NEG"), "POS")
MERGED_COND = LabelMapping(
    "merged-cond", {"CA": "COND", "CC": "COND", "ACTION": "NC", "NC": "NC"}, ("COND", "NC"), "COND")

MAPPINGS = {m.name: m for m in (RAW4, THREE_CLASS, BINARY_CA, MERGED_COND)}


@dataclass(frozen=True)
class AnnotatedSentence:
    id: str
    guideline: str
    text: str
    parse: str
    label: str

    @cached_property
    def tree(self) -> ParseTree:
        return parse_ptb(self.parse)

    def to_dict(self) -> dict:
        return {f: getattr(self, f) for f in FIELDS}


@dataclass(frozen=True)
class Dataset:
    sentences: tuple[AnnotatedSentence, ...] = ()
    mapping: LabelMapping = THREE_CLASS

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        seen = set()
        for s in self.sentences:
            if s.id in seen:
                raise DuplicateId(s.id)
            seen.add(s.id)

    def __len__(self):
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    @property
    def labels(self) -> list[str]:
        return [self.mapping(s.label) for s in self.sentences]

    @property
    def classes(self) -> tuple[str, ...]:
        return self.mapping.classes

    def with_mapping(self, mapping: LabelMapping) -> Dataset:
        return Dataset(self.sentences, mapping)

    def subset(self, keep: Iterable[int]) -> Dataset:
        return Dataset(tuple(self.sentences[i] for i in keep), self.mapping)

    def to_jsonl(self) -> str:
        return "".join(json.dumps(s.to_dict(), ensure_ascii=False) + "\n" for s in self.sentences)


def _check_row(row: dict, where: str) -> AnnotatedSentence:
    # text may be an empty string; the other fields may not
    missing = [f for f in FIELDS if row.get(f) is None or (f != "text" and row[f] == "")]
    if missing:
        raise MissingField(f"{where}: missing field(s) {', '.join(missing)}")
    values = {f: str(row[f]) for f in FIELDS}
    if values["label"] not in RAW_LABELS:
        raise BadLabel(values["label"])
    sentence = AnnotatedSentence(**values)
    try:
        sentence.tree
    except TreebankError as exc:
        raise BadParse(values["id"], str(exc)) from None
    return sentence


def load_corpus(path, format: str | None = None, mapping: LabelMapping = THREE_CLASS) -> Dataset:
    path = Path(path)
    if format is None:
        format = "tsv" if path.suffix.lower() == ".tsv" else "jsonl"
    sentences = []
    with open(path, encoding="utf-8", newline="") as fh:
        if format == "jsonl":
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    row = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise CorpusError(f"{path}:{lineno}: invalid JSON: {exc}") from None
                if not isinstance(row, dict):
                    raise CorpusError(f"{path}:{lineno}: expected an object")
                sentences.append(_check_row(row, f"{path}:{lineno}"))
        elif format == "tsv":
            reader = csv.DictReader(fh, delimiter="\t", quoting=csv.QUOTE_NONE)
            for lineno, row in enumerate(reader, 2):
                sentences.append(_check_row(row, f"{path}:{lineno}"))
        else:
            raise CorpusError(f"unknown corpus format {format!r}")
    return Dataset(tuple(sentences), mapping)


def write_corpus(ds: Dataset | Sequence[AnnotatedSentence], path, format: str = "jsonl") -> None:
    sentences = list(ds)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if format == "jsonl":
            for s in sentences:
                fh.write(json.dumps(s.to_dict(), ensure_ascii=False) + "\n")
        elif format == "tsv":
            writer = csv.writer(fh, delimiter="\t", quoting=csv.QUOTE_NONE, lineterminator="\n")
            writer.writerow(FIELDS)
            for s in sentences:
                writer.writerow([getattr(s, f) for f in FIELDS])
        else:
            raise CorpusError(f"unknown corpus format {format!r}")


@dataclass
class FilterReport:
    kept: dict = field(default_factory=dict)  # guideline -> count
    removed: dict = field(default_factory=dict)  # guideline -> count
    removed_by_label: dict = field(default_factory=dict)  # guideline -> {raw label: count}

    @property
    def total_kept(self) -> int:
        return sum(self.kept.values())

    @property
    def total_removed(self) -> int:
        return sum(self.removed.values())

    def to_dict(self) -> dict:
        return asdict(self) | {"total_kept": self.total_kept, "total_removed": self.total_removed}


def filter_candidates(ds: Dataset) -> tuple[Dataset, FilterReport]:
    """Keep sentences with at least one candidate condition subtree."""
    report = FilterReport()
    keep = []
    for i, s in enumerate(ds):
        report.kept.setdefault(s.guideline, 0)
        report.removed.setdefault(s.guideline, 0)
        if is_candidate_sentence(s.tree):
            keep.append(i)
            report.kept[s.guideline] += 1
        else:
            report.removed[s.guideline] += 1
            by_label = report.removed_by_label.setdefault(s.guideline, {l: 0 for l in RAW_LABELS})
            by_label[s.label] += 1
    for name in (report.kept, report.removed, report.removed_by_label):
        sorted_items = sorted(name.items())
        name.clear()
        name.update(sorted_items)
    return ds.subset(keep), report


@dataclass
class CorpusStats:
    """Guideline x raw-label counts."""

    rows: dict  # guideline -> {label: count}, guidelines sorted

    @property
    def totals(self) -> dict:
        return {l: sum(r[l] for r in self.rows.values()) for l in RAW_LABELS}

    def to_dict(self) -> dict:
        return {
            "labels": list(RAW_LABELS),
            "rows": [{"guideline": g, **counts, "total": sum(counts.values())}
                     for g, counts in self.rows.items()],
            "totals": self.totals | {"total": sum(self.totals.values())},
        }

    def render(self) -> str:
        header = ["Guideline", "Condition-Action", "Condition-Effect", "Action", "No Condition", "Total"]
        body = [[g, *(str(c[l]) for l in RAW_LABELS), str(sum(c.values()))] for g, c in self.rows.items()]
        if body:
            t = self.totals
            body.append(["Total", *(str(t[l]) for l in RAW_LABELS), str(sum(t.values()))])
        widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]
        fmt = lambda r: "  ".join([r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])])
        return "\n".join(fmt(r).rstrip() for r in [header, *body]) + "\n"


def corpus_stats(ds: Iterable[AnnotatedSentence]) -> CorpusStats:
    counts: dict[str, Counter] = {}
    for s in ds:
        counts.setdefault(s.guideline, Counter())[s.label] += 1
    return CorpusStats({g: {l: counts[g][l] for l in RAW_LABELS} for g in sorted(counts)})
