"""Cross-validation of the reductions against the exact ball oracle.

:func:`reduce_check` runs every reduction on a word corpus (all words up to
some length plus a seeded random sample of longer ones), compares each
answer with the ball oracle and checks each call count against its
budget.  The result renders as a fixed-width table with no timing data, so
two runs with equal arguments print identical bytes.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import ParityClass, Word, format_word, relator_parity
from .models import GroupModel
from .oracles import Ball, bfs_bounded, bfs_delta, bfs_geodesic, bfs_length
from .reductions import (
    bounded_from_length,
    delta_from_bounded,
    geodesic_from_length,
    length_from_bounded,
    length_from_geodesic,
)


@dataclass
class CheckRow:
    name: str
    budget: str
    cases: int = 0
    wrong: int = 0
    over_budget: int = 0
    max_calls: int = 0
    examples: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.wrong == 0 and self.over_budget == 0

    def tally(self, correct: bool, calls: int | None = None, limit: int | None = None, note=""):
        self.cases += 1
        if not correct:
            self.wrong += 1
            if len(self.examples) < 5:
                self.examples.append(note)
        if calls is not None:
            self.max_calls = max(self.max_calls, calls)
            if limit is not None and calls > limit:
                self.over_budget += 1
                if len(self.examples) < 5:
                    self.examples.append(f"{note} used {calls} > {limit} calls")


@dataclass
class CheckReport:
    model: str
    radius: int
    words: int
    rows: list[CheckRow]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def render(self) -> str:
        lines = [
            f"model {self.model}  radius {self.radius}  words {self.words}",
            f"{'check':<28} {'cases':>7} {'wrong':>6} {'over':>5} {'max calls':>9}  {'budget':<14} status",
        ]
        for r in self.rows:
            lines.append(
                f"{r.name:<28} {r.cases:>7} {r.wrong:>6} {r.over_budget:>5} {r.max_calls:>9}  "
                f"{r.budget:<14} {'PASS' if r.ok else 'FAIL'}"
            )
            for ex in r.examples:
                lines.append(f"    {ex}")
        lines.append("overall " + ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines) + "\n"


def all_words(letters: Sequence, max_len: int) -> Iterable[Word]:
    for n in range(max_len + 1):
        yield from itertools.product(letters, repeat=n)


def sample_words(letters: Sequence, count: int, lengths: Sequence[int], seed: int = 0) -> list[Word]:
    rng = random.Random(seed)
    return [
        tuple(rng.choice(letters) for _ in range(rng.choice(lengths)))
        for _ in range(count)
    ]


def reduce_check(
    model: GroupModel,
    ball: Ball,
    words: Iterable[Word],
) -> CheckReport:
    p = model.presentation
    letters = model.alphabet
    k = len(letters)
    corpus = list(words)

    def p4(w):
        return bfs_length(ball, w)

    def p5(w, bound):
        return bfs_bounded(ball, w, bound)

    def p3(w):
        return bfs_geodesic(ball, w)

    def p4_via_p5(w):
        return length_from_bounded(p5, w).answer

    rows = {
        "len": CheckRow("P4 from P5 (length)", "<= |w|"),
        "geo": CheckRow("P3 from P4 (geodesic)", "<= 1 + k*m"),
        "bnd": CheckRow("P5 from P4 (bounded)", "= 1"),
        "l3": CheckRow("P4 from P3 (length)", "= 1"),
        "delta": CheckRow("P1 from P5 (delta)", "<= 2"),
        "chain": CheckRow("P3 from P4 from P5", "<= 1 + k*m"),
    }
    even = relator_parity(p) is ParityClass.ALL_RELATORS_EVEN
    parity = CheckRow("parity: no zero delta", "n/a") if even else None

    for w in corpus:
        label = format_word(w, p) or "ε"
        true_len = p4(w)

        out = length_from_bounded(p5, w)
        rows["len"].tally(out.answer == true_len, out.stats[5], len(w), label)

        m = true_len
        out = geodesic_from_length(p4, w, letters)
        good = len(out.answer) == m and model.eval(out.answer) == model.eval(w)
        rows["geo"].tally(good, out.stats[4], 1 + k * m, label)

        for bound in range(-1, len(w) + 1):
            calls = []

            def counted(x, calls=calls):
                calls.append(x)
                return p4(x)

            got = bounded_from_length(counted, w, bound)
            rows["bnd"].tally(got == p5(w, bound), len(calls), 1, f"{label}, {bound}")

        calls = []

        def counted3(x, calls=calls):
            calls.append(x)
            return p3(x)

        rows["l3"].tally(length_from_geodesic(counted3, w) == true_len, len(calls), 1, label)

        out = geodesic_from_length(p4_via_p5, w, letters)
        good = len(out.answer) == m and model.eval(out.answer) == model.eval(w)
        rows["chain"].tally(good, out.stats[4], 1 + k * m, label)

        if true_len == len(w):
            for x in letters:
                expected = bfs_delta(ball, w, x)
                out = delta_from_bounded(p5, w, x)
                note = f"{label}, {format_word((x,), p)}"
                rows["delta"].tally(out.answer == expected, out.stats[5], 2, note)
                if parity is not None:
                    parity.tally(expected != 0, note=note)

    ordered = list(rows.values()) + ([parity] if parity is not None else [])
    return CheckReport(model.name, ball.radius, len(corpus), ordered)
