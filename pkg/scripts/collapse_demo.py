"""Run every worked collapse example and check it on random instances."""

import argparse
from pathlib import Path

from holocollapse import formats
from holocollapse.collapse import verify_collapse
from holocollapse.constructions import all_examples


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=10)
    parser.add_argument("--save", help="directory for collapse JSON files (readable by `holocollapse verify`)")
    args = parser.parse_args()

    failed = 0
    for ex in all_examples(args.seed):
        rep = verify_collapse(ex.original, ex.collapsed, trials=args.trials, seed=args.seed)
        print(f"{ex.name:16s} n={ex.original.n} width {2**ex.original.t:2d} -> {2**ex.collapsed.r}  {rep.summary()}")
        failed += not rep
        if args.save:
            path = Path(args.save) / f"{ex.name}.json"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(formats.write_collapse(ex.collapsed, ex.original, ex.name))
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
