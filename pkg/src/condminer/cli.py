"""Command-line entry point: ``condminer <subcommand> ...``.

Exit codes: 0 success, 1 bad data or configuration, 2 internal error.
The log level comes from the COND_MINER_LOG environment variable.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from importlib import resources
from dataclasses import dataclass
from pathlib import Path

from condminer.candidates import find_condition_candidates
from condminer.corpus import MAPPINGS, Dataset, corpus_stats, filter_candidates, load_corpus, write_corpus
from condminer.errors import DataError, InvariantViolation
from condminer.evaluation import ClassifierConfig, cross_validate, render_table, reports_to_json
from condminer.features import build_vocabulary, extract_features, vectorize_all
from condminer.ml import model_to_json
from condminer.synthetic import generate_synthetic
from condminer.treebank import serialize

log = logging.getLogger("condminer")


def load_schema(name: str) -> dict:
    """JSON schema shipped for one of the output formats, e.g. ``"report"``."""
    return json.loads((resources.files("condminer") / "schemas" / f"{name}.schema.json").read_text())

CLASSIFIERS = ("zeror", "nb", "c45", "rf")


class UsageError(DataError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass
class PipelineConfig:
    input: Path | None = None
    format: str | None = None
    label_map: str = "three"
    classifiers: tuple[str, ...] = ("rf",)
    folds: int = 10
    seed: int = 42
    trees: int = 100
    alpha: float = 1.0
    min_leaf: int | None = None
    features_per_node: int | None = None
    n_jobs: int = 1
    out: Path | None = None
    emit: str = "table"

    def __post_init__(self):
        bad = [c for c in self.classifiers if c not in CLASSIFIERS]
        if bad:
            raise UsageError(f"unknown classifier(s) {', '.join(bad)}")
        if self.folds < 2:
            raise UsageError("--folds must be >= 2")
        if not 0 <= self.seed < 2**64:
            raise UsageError("--seed must be an unsigned 64-bit value")

    @classmethod
    def from_args(cls, args) -> PipelineConfig:
        names = [f for f in cls.__dataclass_fields__ if hasattr(args, f)]
        kwargs = {f: getattr(args, f) for f in names}
        if "classifiers" in kwargs:
            kwargs["classifiers"] = tuple(kwargs["classifiers"])
        return cls(**kwargs)

    def classifier_config(self, name: str) -> ClassifierConfig:
        return ClassifierConfig(name, alpha=self.alpha, min_leaf=self.min_leaf, trees=self.trees,
                                features_per_node=self.features_per_node, seed=self.seed)

    def load(self) -> Dataset:
        if self.input is None:
            raise UsageError("--input is required")
        return load_corpus(self.input, self.format, MAPPINGS[self.label_map])


def _write(config: PipelineConfig, text: str) -> None:
    if config.out is None:
        sys.stdout.write(text)
    else:
        Path(config.out).write_text(text, encoding="utf-8")
        log.info("wrote %s", config.out)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def match_records(ds: Dataset) -> list[dict]:
    return [{"sentence_id": s.id, "pattern": m.pattern, "position": m.position, "subtree": serialize(m.subtree)}
            for s in ds for m in find_condition_candidates(s.tree)]


def cmd_candidates(config: PipelineConfig, matches_out: Path | None = None) -> int:
    ds = config.load()
    kept, report = filter_candidates(ds)
    records = match_records(kept)
    if matches_out is not None:
        with open(matches_out, "w", encoding="utf-8") as fh:
            for r in records:
                fh.write(json.dumps(r, ensure_ascii=False) + "\n")
    if config.emit == "json":
        _write(config, _dump({"summary": report.to_dict(), "matches": records}))
    else:
        rows = [("Guideline", "Kept", "Removed")]
        rows += [(g, str(report.kept[g]), str(report.removed[g])) for g in report.kept]
        rows.append(("Total", str(report.total_kept), str(report.total_removed)))
        w = [max(len(r[i]) for r in rows) for i in range(3)]
        _write(config, "".join(f"{a.ljust(w[0])}  {b.rjust(w[1])}  {c.rjust(w[2])}\n" for a, b, c in rows))
    return 0


def cmd_featurize(config: PipelineConfig, vocab_out: Path | None = None, candidates_only: bool = False) -> int:
    ds = config.load()
    if candidates_only:
        ds, _ = filter_candidates(ds)
    bags = [extract_features(s.tree) for s in ds]
    lines = "".join(json.dumps({"sentence_id": s.id, "tokens": list(b.tokens)}) + "\n" for s, b in zip(ds, bags))
    _write(config, lines)
    if vocab_out is not None:
        Path(vocab_out).write_text(build_vocabulary(bags).to_json() + "\n", encoding="utf-8")
    return 0


def cmd_train(config: PipelineConfig) -> int:
    ds, _ = filter_candidates(config.load())
    if len(config.classifiers) != 1:
        raise UsageError("train takes exactly one classifier")
    bags = [extract_features(s.tree) for s in sorted(ds, key=lambda s: s.id)]
    labels = [ds.mapping(s.label) for s in sorted(ds, key=lambda s: s.id)]
    vocab = build_vocabulary(bags)
    model = config.classifier_config(config.classifiers[0]).train(vectorize_all(bags, vocab), labels, ds.classes)
    model.vocabulary = list(vocab.tokens)
    model.config = model.config | {"label_map": ds.mapping.name}
    text = model_to_json(model) + "\n"
    if config.out is None:
        sys.stdout.write(text)
    else:
        Path(config.out).write_text(text, encoding="utf-8")
        print(f"trained {model.variant} on {len(ds)} sentences, {len(vocab)} features -> {config.out}")
    return 0


def cmd_evaluate(config: PipelineConfig, title: str = "", total: str = "weighted_precision") -> int:
    ds, report = filter_candidates(config.load())
    log.info("kept %d candidate sentences, removed %d", report.total_kept, report.total_removed)
    reports = [cross_validate(ds, config.classifier_config(name), config.folds, config.seed, config.n_jobs)
               for name in config.classifiers]
    table = render_table(reports, title, total)
    if config.emit == "json":
        _write(config, reports_to_json(reports))
        if config.out is not None:
            sys.stdout.write(table)
    else:
        _write(config, table)
        if config.out is not None:
            sys.stdout.write(table)
    return 0


def cmd_stats(config: PipelineConfig) -> int:
    stats = corpus_stats(config.load())
    _write(config, _dump(stats.to_dict()) if config.emit == "json" else stats.render())
    return 0


def cmd_generate(config: PipelineConfig, size: int, patternless: int | None) -> int:
    synthetic = generate_synthetic(size, config.seed, patternless, MAPPINGS[config.label_map])
    if config.out is None:
        sys.stdout.write(synthetic.dataset.to_jsonl())
    else:
        write_corpus(synthetic.dataset, config.out, config.format or "jsonl")
    log.info("%d sentences, %d without candidate patterns", size, len(synthetic.patternless_ids))
    return 0


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit value")
    return value


def _classifiers(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    if "all" in names:
        return list(CLASSIFIERS)
    for n in names:
        if n not in CLASSIFIERS:
            raise argparse.ArgumentTypeError(f"unknown classifier {n!r}")
    return names


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", type=Path)
    common.add_argument("--format", choices=("jsonl", "tsv"))
    common.add_argument("--label-map", dest="label_map", choices=sorted(MAPPINGS), default="three")
    common.add_argument("--out", type=Path)
    common.add_argument("--emit", choices=("json", "table"), default="table")
    common.add_argument("--seed", type=_seed, default=42)

    model = _Parser(add_help=False)
    model.add_argument("--classifier", dest="classifiers", type=_classifiers, default=["rf"],
                       help="zeror, nb, c45, rf, a comma-separated list, or 'all'")
    model.add_argument("--trees", type=int, default=100)
    model.add_argument("--alpha", type=float, default=1.0)
    model.add_argument("--min-leaf", dest="min_leaf", type=int)
    model.add_argument("--features-per-node", dest="features_per_node", type=int)

    parser = _Parser(prog="condminer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("candidates", parents=[common], help="filter candidate sentences, list matches")
    p.add_argument("--matches", type=Path, help="also write one JSON line per match here")

    p = sub.add_parser("featurize", parents=[common], help="emit feature tokens per sentence")
    p.add_argument("--vocab-out", dest="vocab_out", type=Path)
    p.add_argument("--candidates-only", action="store_true")

    sub.add_parser("train", parents=[common, model], help="train one classifier on the whole corpus")

    p = sub.add_parser("evaluate", parents=[common, model], help="stratified k-fold cross-validation")
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--n-jobs", dest="n_jobs", type=int, default=1)
    p.add_argument("--title", default="")
    p.add_argument("--total", choices=("weighted_precision", "accuracy"), default="weighted_precision")

    sub.add_parser("stats", parents=[common], help="per-guideline label counts")

    p = sub.add_parser("generate-synthetic", parents=[common], help="write the seeded synthetic corpus")
    p.add_argument("--size", type=int, default=200)
    p.add_argument("--patternless", type=int)
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = PipelineConfig.from_args(args)
    if args.command == "candidates":
        return cmd_candidates(config, args.matches)
    if args.command == "featurize":
        return cmd_featurize(config, args.vocab_out, args.candidates_only)
    if args.command == "train":
        return cmd_train(config)
    if args.command == "evaluate":
        return cmd_evaluate(config, args.title, args.total)
    if args.command == "stats":
        return cmd_stats(config)
    if args.command == "generate-synthetic":
        return cmd_generate(config, args.size, args.patternless)
    raise InvariantViolation(f"unhandled command {args.command}")


def main(argv=None) -> int:
    level = os.environ.get("COND_MINER_LOG", "WARNING").upper()
    logging.basicConfig(level=level if isinstance(logging.getLevelName(level), int) else "WARNING",
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return run(argv)
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except (DataError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        log.exception("unexpected failure")
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
