"""Compare the ordering sum, the Pfaffian and the drawn perfect-matching value."""

import argparse
from pathlib import Path

from holocollapse.experiments import constant_experiment


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="reports/constant_experiment.txt")
    args = parser.parse_args()

    report = constant_experiment(trials=args.trials, seed=args.seed)
    text = report.text() + "\n"
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)
    print(text, end="")
    print(f"written to {out}")


if __name__ == "__main__":
    main()
