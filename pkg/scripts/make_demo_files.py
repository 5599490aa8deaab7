"""Write small input files for trying the command-line tool by hand."""

import argparse
import json
from pathlib import Path

from holocollapse import formats
from holocollapse.constructions import symmetric_example
from holocollapse.gadgets import crossover_gadget
from holocollapse.graph import UnderlyingGraph
from holocollapse.scalar import Scalar

TWO_UNARIES = {
    "domain_size": 2,
    "signatures": {"F": ["1", "1"], "H": ["2", "3"]},
    "left": [{"name": "u", "signature": "F", "edges": ["e"]}],
    "right": [{"name": "v", "signature": "H", "edges": ["e"]}],
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="demo")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    (out / "two_unaries.json").write_text(json.dumps(TWO_UNARIES, indent=1) + "\n")
    (out / "edge.txt").write_text(formats.write_graph(UnderlyingGraph(2, {(0, 1): Scalar(3) / 2})))
    (out / "crossover_gadget.json").write_text(formats.write_instance(crossover_gadget()))
    bip = UnderlyingGraph(5, {(0, 4): 2, (0, 3): -1, (1, 3): Scalar(1, 1), (2, 4): 3, (2, 3): 1}, split=3)
    (out / "bipartite.txt").write_text(formats.write_graph(bip))

    ex = symmetric_example(t=2, seed=0)
    p = ex.original
    (out / "base.json").write_text(formats.dump_json(formats.matrix_to_json(p.base)))
    (out / "F.json").write_text(formats.write_signature(p.left[0]))
    for k, h in enumerate(p.right):
        (out / f"H{k + 1}.json").write_text(formats.write_signature(h))
    for path in sorted(out.iterdir()):
        print(path)


if __name__ == "__main__":
    main()
