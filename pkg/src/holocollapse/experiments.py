"""Measuring how the Pfaffian relates to perfect matchings of the planar drawing.

For a weighted graph on ``2n`` vertices three numbers are compared: the
literal sum over all orderings ``(i1, ..., i2n)``, the Pfaffian (each
matching once), and the perfect-matching value of the drawing with a
crossover at every crossing, evaluated as a Holant instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .gadgets import planar_drawing
from .graph import UnderlyingGraph
from .holant import evaluate
from .matchgate import pfaffian, pfaffian_by_permutations
from .sampling import nonzero_scalar, rng_of
from .scalar import Scalar


@dataclass(frozen=True)
class ConstantRow:
    half: int
    trial: int
    crossings: int
    permutation_sum: Scalar
    pfaffian: Scalar
    perfect_matchings: Scalar

    @property
    def literal_ratio(self):
        return self.permutation_sum / self.perfect_matchings if self.perfect_matchings else None

    @property
    def pfaffian_ratio(self):
        return self.pfaffian / self.perfect_matchings if self.perfect_matchings else None


@dataclass(frozen=True)
class ConstantReport:
    rows: tuple[ConstantRow, ...]

    def ratios(self, which: str = "literal") -> dict[int, set]:
        out: dict[int, set] = {}
        for row in self.rows:
            value = row.literal_ratio if which == "literal" else row.pfaffian_ratio
            if value is not None:
                out.setdefault(row.half, set()).add(value)
        return out

    def consistent(self) -> bool:
        """One literal ratio per n, equal to 2^n n! times the (single) Pfaffian ratio."""
        lit, pf = self.ratios("literal"), self.ratios("pfaffian")
        if not lit or any(len(v) != 1 for v in lit.values()) or any(len(v) != 1 for v in pf.values()):
            return False
        scaled = {next(iter(v)) / (2**n * factorial(n)) for n, v in lit.items()}
        return len(scaled) == 1 and len({next(iter(v)) for v in pf.values()}) == 1

    def text(self) -> str:
        lines = ["n  trial  crossings  perm_sum  pfaffian  perfmatch  perm_sum/perfmatch  2^n n!  pfaffian/perfmatch"]
        for row in self.rows:
            lines.append(
                f"{row.half}  {row.trial}  {row.crossings}  {row.permutation_sum.compact()}  "
                f"{row.pfaffian.compact()}  {row.perfect_matchings.compact()}  "
                f"{_show(row.literal_ratio)}  {2**row.half * factorial(row.half)}  {_show(row.pfaffian_ratio)}"
            )
        lines.append(f"consistent: {self.consistent()}")
        return "\n".join(lines)


def _show(x) -> str:
    return "undefined" if x is None else x.compact()


# Fixed test graphs: K4, and an 8-cycle with two crossing diameters.
SHAPES = {
    2: [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
    4: [(k, (k + 1) % 8) for k in range(8)] + [(0, 4), (2, 6)],
}


def constant_experiment(trials: int = 3, seed=0, halves=(2, 4)) -> ConstantReport:
    rng = rng_of(seed)
    rows = []
    for half in halves:
        for trial in range(trials):
            g = UnderlyingGraph(2 * half, {e: nonzero_scalar(rng) for e in SHAPES[half]})
            drawing = planar_drawing(g, seed=int(rng.integers(1 << 30)))
            a = g.skew_matrix()
            rows.append(ConstantRow(
                half, trial, drawing.crossings,
                pfaffian_by_permutations(a), pfaffian(g), evaluate(drawing.instance, max_bits=64),
            ))
    return ConstantReport(tuple(rows))


__all__ = ["ConstantRow", "ConstantReport", "SHAPES", "constant_experiment"]
