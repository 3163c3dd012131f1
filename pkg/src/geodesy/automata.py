"""Deterministic finite automata recognising geodesic languages.

When a group's geodesics form a regular language with a known acceptor,
the question "does appending ``x`` to the geodesic ``u`` make it longer?"
is answered by reading ``ux`` into the acceptor: ``ux`` is accepted
exactly when it is itself geodesic.  :func:`delta_from_dfa` does this with
one extra transition on top of the run over ``u``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .core import GeodesyError, Letter, Presentation, Word, alphabet, format_word
from .models import FreeAbelianModel, FreeGroupModel
from .oracles import Ball, is_geodesic


class NotGeodesicInput(GeodesyError, ValueError):
    pass


@dataclass(frozen=True)
class Dfa:
    """A complete DFA over a tuple of letters.

    ``transitions[state][i]`` is the successor of ``state`` on
    ``alphabet[i]``.
    """

    alphabet: tuple[Letter, ...]
    transitions: tuple[tuple[int, ...], ...]
    start: int
    accepting: frozenset[int]
    dead: int | None = None
    _column: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.transitions)
        if not 0 <= self.start < n:
            raise ValueError("start state out of range")
        if not self.accepting <= frozenset(range(n)):
            raise ValueError("accepting states out of range")
        for row in self.transitions:
            if len(row) != len(self.alphabet) or not all(0 <= s < n for s in row):
                raise ValueError("transition table is not total")
        object.__setattr__(self, "_column", {x: i for i, x in enumerate(self.alphabet)})

    @property
    def state_count(self) -> int:
        return len(self.transitions)

    def step(self, state: int, letter: Letter) -> int:
        return self.transitions[state][self._column[letter]]

    def run_from(self, state: int, w: Sequence[Letter]) -> int:
        for letter in w:
            state = self.step(state, letter)
        return state

    def accepts(self, w: Sequence[Letter]) -> bool:
        return self.run_from(self.start, w) in self.accepting


def run_dfa(d: Dfa, w: Sequence[Letter]) -> bool:
    return d.accepts(w)


def free_geodesic_dfa(k: int) -> Dfa:
    """Acceptor for freely reduced words over ``k`` generators.

    State 0 is the start, state ``1 + i`` means the last letter read was
    ``alphabet[i]``, and the final state is dead.
    """
    letters = alphabet(FreeGroupModel(k).presentation)
    dead = 2 * k + 1
    column = {x: i for i, x in enumerate(letters)}
    rows = [tuple(1 + i for i in range(2 * k))]
    for y in letters:
        rows.append(tuple(dead if x == y.inverse() else 1 + column[x] for x in letters))
    rows.append((dead,) * (2 * k))
    return Dfa(letters, tuple(rows), 0, frozenset(range(dead)), dead)


def abelian_geodesic_dfa(k: int) -> Dfa:
    """Acceptor for geodesics of Z^k with the standard generators.

    A word is geodesic iff no generator occurs with both signs.  States
    record, per generator, which sign has been seen (0 none, 1 positive,
    2 negative) as a base-3 number; state ``3**k`` is dead.
    """
    letters = alphabet(FreeAbelianModel(k).presentation)
    dead = 3**k
    rows = []
    for code in range(dead):
        digits = [(code // 3**i) % 3 for i in range(k)]
        row = []
        for g, s in letters:
            want = 1 if s > 0 else 2
            if digits[g] not in (0, want):
                row.append(dead)
            else:
                row.append(code + (want - digits[g]) * 3**g)
        rows.append(tuple(row))
    rows.append((dead,) * (2 * k))
    return Dfa(letters, tuple(rows), 0, frozenset(range(dead)), dead)


def delta_from_dfa(d: Dfa, u: Sequence[Letter], x: Letter) -> bool:
    """True iff ``l(ux) > l(u)``; ``d`` must accept exactly the geodesics."""
    state = d.run_from(d.start, u)
    if state not in d.accepting:
        raise NotGeodesicInput(f"word of length {len(u)} is rejected by the acceptor")
    return d.step(state, x) in d.accepting


class DfaDeltaOracle:
    """Problem 2 answers from an acceptor, remembering the state after each ``u``.

    Suited to layer-by-layer growth where every query extends a word that
    was itself queried (or is empty).
    """

    def __init__(self, d: Dfa):
        self.dfa = d
        self._states: dict[Word, int] = {(): d.start}

    def __call__(self, u: Word, x: Letter) -> bool:
        d = self.dfa
        state = self._states.get(u)
        if state is None:
            state = d.run_from(d.start, u)
        if state not in d.accepting:
            raise NotGeodesicInput(f"word of length {len(u)} is rejected by the acceptor")
        nxt = d.step(state, x)
        if nxt in d.accepting:
            self._states[u + (x,)] = nxt
            return True
        return False


@dataclass
class ValidationReport:
    max_len: int
    checked: int
    mismatches: list[tuple[Word, bool, bool]]  # (word, accepted, geodesic)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def render(self, p: Presentation) -> str:
        lines = [
            f"checked {self.checked} words of length <= {self.max_len}",
            f"mismatches: {len(self.mismatches)}",
        ]
        for w, accepted, geodesic in self.mismatches:
            lines.append(
                f"  {format_word(w, p) or 'ε'}: acceptor={'accept' if accepted else 'reject'} "
                f"geodesic={'yes' if geodesic else 'no'}"
            )
        return "\n".join(lines)


def validate_dfa_against_ball(d: Dfa, b: Ball, max_len: int) -> ValidationReport:
    """Compare acceptance with ``is_geodesic`` on every word up to ``max_len``."""
    if tuple(d.alphabet) != tuple(b.alphabet):
        raise ValueError("acceptor and ball use different alphabets")
    checked = 0
    mismatches = []
    for n in range(max_len + 1):
        for w in itertools.product(d.alphabet, repeat=n):
            checked += 1
            accepted = run_dfa(d, w)
            geodesic = is_geodesic(b, w)
            if accepted != geodesic:
                mismatches.append((w, accepted, geodesic))
    return ValidationReport(max_len, checked, mismatches)


def dfa_table(d: Dfa, p: Presentation) -> str:
    """Plain-text transition table; ``*`` marks accepting states."""
    header = "state " + " ".join(format_word((x,), p) for x in d.alphabet)
    lines = [header]
    for s, row in enumerate(d.transitions):
        mark = "*" if s in d.accepting else " "
        lines.append(f"{mark}{s} " + " ".join(str(t) for t in row))
    return "\n".join(lines) + "\n"


def dfa_from_selector(selector: str) -> Dfa:
    kind, _, arg = selector.partition(":")
    if kind == "free":
        return free_geodesic_dfa(int(arg))
    if kind == "abelian":
        return abelian_geodesic_dfa(int(arg))
    raise ValueError(
        f"no geodesic acceptor for {selector!r}; only free:k and abelian:k are regular here"
    )
