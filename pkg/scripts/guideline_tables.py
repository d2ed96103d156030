"""Per-guideline evaluation tables: Table-2-style counts, the candidate filter,
then ZeroR / NaiveBayes / J48 / RandomForest under 10-fold CV for each guideline.

    python scripts/guideline_tables.py data/synthetic200.jsonl --seed 42
"""

import argparse
import json
import time

from condminer.corpus import MAPPINGS, corpus_stats, filter_candidates, load_corpus
from condminer.evaluation import ClassifierConfig, cross_validate, render_table, reports_to_json


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("corpus")
    ap.add_argument("--label-map", default="three", choices=sorted(MAPPINGS))
    ap.add_argument("--folds", type=int, default=10)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--trees", type=int, default=100)
    ap.add_argument("--json", help="write every report to this file")
    args = ap.parse_args()

    ds = load_corpus(args.corpus, mapping=MAPPINGS[args.label_map])
    print(corpus_stats(ds).render())
    kept, report = filter_candidates(ds)
    for g in report.kept:
        print(f"{g}: {report.kept[g]} candidate statements, {report.removed[g]} removed "
              f"({report.removed_by_label[g] if g in report.removed_by_label else {}})")
    print()

    everything = {}
    for g in report.kept:
        subset = kept.subset(i for i, s in enumerate(kept) if s.guideline == g)
        if len(subset) < args.folds:
            print(f"{g}: only {len(subset)} candidates, skipped\n")
            continue
        t0 = time.perf_counter()
        reports = [cross_validate(subset, ClassifierConfig(name, trees=args.trees, seed=args.seed),
                                  args.folds, args.seed)
                   for name in ("zeror", "nb", "c45", "rf")]
        print(render_table(reports, g.capitalize()))
        print(f"({time.perf_counter() - t0:.1f}s)\n")
        everything[g] = json.loads(reports_to_json(reports))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(everything, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
