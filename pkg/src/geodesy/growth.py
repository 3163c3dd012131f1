"""Geodesic and spherical growth by extending geodesics one letter at a time.

For a geodesic ``u``, ``ux`` is geodesic exactly when ``l(ux) > l(u)``.
Starting from the empty word, layer ``d + 1`` is therefore every ``ux``
with ``u`` in layer ``d`` that a Problem 2 oracle says grows.  Layer ``d``
is the set of geodesic words of length ``d``; its distinct element keys
are the sphere of radius ``d``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .models import GroupModel
from .oracles import P2, CapacityExceeded

DEFAULT_WORD_BUDGET = 10**7


@dataclass(frozen=True)
class GrowthTable:
    geodesics: tuple[int, ...]
    spheres: tuple[int, ...]

    @property
    def balls(self) -> tuple[int, ...]:
        out, total = [], 0
        for s in self.spheres:
            total += s
            out.append(total)
        return tuple(out)

    @property
    def max_len(self) -> int:
        return len(self.geodesics) - 1

    def rows(self):
        return zip(range(len(self.geodesics)), self.geodesics, self.spheres, self.balls)

    def render(self) -> str:
        headers = ("length", "geodesics", "sphere", "ball")
        rows = [tuple(map(str, r)) for r in self.rows()]
        widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)]
        lines = [" ".join(h.rjust(w) for h, w in zip(headers, widths))]
        lines += [" ".join(v.rjust(w) for v, w in zip(r, widths)) for r in rows]
        return "\n".join(lines) + "\n"


def growth_series(
    g: GroupModel, delta_oracle: P2, N: int, word_budget: int = DEFAULT_WORD_BUDGET
) -> GrowthTable:
    if N < 0:
        raise ValueError("N must be non-negative")
    letters = g.alphabet
    layer = [()]
    geodesics, spheres = [1], [1]
    for d in range(1, N + 1):
        nxt = []
        for u in layer:
            for x in letters:
                if delta_oracle(u, x):
                    nxt.append(u + (x,))
            if len(nxt) > word_budget:
                raise CapacityExceeded(
                    f"layer {d} holds more than {word_budget} geodesic words"
                )
        layer = nxt
        geodesics.append(len(layer))
        spheres.append(len({g.eval(w) for w in layer}))
    return GrowthTable(tuple(geodesics), tuple(spheres))


def growth_csv(t: GrowthTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["length", "geodesics", "sphere", "ball"])
    writer.writerows(t.rows())
    return buf.getvalue()
