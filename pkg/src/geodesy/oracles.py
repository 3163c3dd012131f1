"""Exact geodesic oracles over Cayley balls, plus call-count bookkeeping.

A :class:`Ball` is the breadth-first search of the Cayley graph out to a
fixed radius.  Every ``bfs_*`` function answers one of the five geodesic
problems exactly, or raises :class:`RadiusExceeded` when the element in
question lies outside the ball.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .core import GeodesyError, Letter, Word, format_word
from .models import GroupModel

DEFAULT_CAPACITY = 10**7

P1 = Callable[[Word, Letter], int]
P2 = Callable[[Word, Letter], bool]
P3 = Callable[[Word], Word]
P4 = Callable[[Word], int]
P5 = Callable[[Word, int], bool]


class RadiusExceeded(GeodesyError):
    def __init__(self, word: str, radius: int):
        super().__init__(
            f"element of {word or 'ε'!r} lies outside the ball of radius {radius}; "
            "enlarge the radius"
        )
        self.word = word
        self.radius = radius


class CapacityExceeded(GeodesyError):
    pass


class NotGeodesic(GeodesyError, ValueError):
    def __init__(self, word: str, length: int):
        super().__init__(f"{word or 'ε'!r} is not geodesic (geodesic length {length})")
        self.word = word
        self.length = length


@dataclass
class CallStats:
    """Per-problem oracle call counts and the longest word sent to an oracle."""

    calls: Counter = field(default_factory=Counter)
    max_word_length: int = 0

    def record(self, problem: int, word: Sequence[Letter] = ()) -> None:
        self.calls[problem] += 1
        if len(word) > self.max_word_length:
            self.max_word_length = len(word)

    def __getitem__(self, problem: int) -> int:
        return self.calls[problem]

    def total(self) -> int:
        return sum(self.calls.values())

    def merge(self, other: CallStats) -> None:
        self.calls.update(other.calls)
        self.max_word_length = max(self.max_word_length, other.max_word_length)


class Ball:
    """The Cayley ball of radius ``radius`` around the identity of ``model``.

    ``nodes`` maps each element key to ``(distance, parent key, letter)``
    where ``letter`` labels the edge from the parent.  Letters are tried in
    alphabet order and the first discovery of an element fixes its parent,
    so two builds with equal inputs are identical.
    """

    def __init__(self, model: GroupModel, radius: int, capacity: int = DEFAULT_CAPACITY):
        if radius < 0:
            raise ValueError("radius must be non-negative")
        self.model = model
        self.radius = radius
        self.alphabet = model.alphabet
        self.nodes: dict[bytes, tuple[int, bytes | None, Letter | None]] = {}
        self.layers: list[list[bytes]] = []
        self._build(capacity)

    def _build(self, capacity):
        model = self.model
        start = model.identity_state()
        root = model.key(start)
        self.nodes[root] = (0, None, None)
        self.layers.append([root])
        frontier = [(root, start)]
        for dist in range(1, self.radius + 1):
            nxt = []
            for key, state in frontier:
                for letter in self.alphabet:
                    s2 = model.multiply(state, letter)
                    k2 = model.key(s2)
                    if k2 in self.nodes:
                        continue
                    self.nodes[k2] = (dist, key, letter)
                    nxt.append((k2, s2))
                    if len(self.nodes) > capacity:
                        raise CapacityExceeded(
                            f"ball of radius {self.radius} exceeds {capacity} elements "
                            f"(reached while building layer {dist})"
                        )
            if not nxt:
                break
            self.layers.append([k for k, _ in nxt])
            frontier = nxt

    def __len__(self):
        return len(self.nodes)

    def __contains__(self, key):
        return key in self.nodes

    def layer_sizes(self) -> list[int]:
        return [len(layer) for layer in self.layers]

    def distance(self, w: Sequence[Letter]) -> int:
        node = self.nodes.get(self.model.eval(w))
        if node is None:
            raise RadiusExceeded(format_word(w, self.model.presentation), self.radius)
        return node[0]

    def path_to(self, key: bytes) -> Word:
        letters = []
        dist, parent, letter = self.nodes[key]
        while parent is not None:
            letters.append(letter)
            dist, parent, letter = self.nodes[parent]
        return tuple(reversed(letters))


def build_ball(g: GroupModel, R: int, capacity: int = DEFAULT_CAPACITY) -> Ball:
    return Ball(g, R, capacity)


def bfs_length(b: Ball, w: Sequence[Letter]) -> int:
    return b.distance(w)


def bfs_bounded(b: Ball, w: Sequence[Letter], k: int) -> bool:
    if k < 0:
        return False
    return b.distance(w) <= k


def bfs_geodesic(b: Ball, w: Sequence[Letter]) -> Word:
    key = b.model.eval(w)
    if key not in b.nodes:
        raise RadiusExceeded(format_word(w, b.model.presentation), b.radius)
    return b.path_to(key)


def is_geodesic(b: Ball, w: Sequence[Letter]) -> bool:
    return b.distance(w) == len(w)


def bfs_delta(b: Ball, u: Sequence[Letter], x: Letter) -> int:
    """Return ``l(ux) - l(u)`` for a geodesic ``u``; the result is -1, 0 or +1."""
    length = b.distance(u)
    if length != len(u):
        raise NotGeodesic(format_word(u, b.model.presentation), length)
    return b.distance(tuple(u) + (x,)) - length


class OracleSuite:
    """All five problems answered from one ball, with shared call counting."""

    def __init__(self, ball: Ball, stats: CallStats | None = None):
        self.ball = ball
        self.stats = stats if stats is not None else CallStats()

    def p1(self, u: Word, x: Letter) -> int:
        self.stats.record(1, tuple(u) + (x,))
        return bfs_delta(self.ball, u, x)

    def p2(self, u: Word, x: Letter) -> bool:
        self.stats.record(2, tuple(u) + (x,))
        return bfs_delta(self.ball, u, x) == 1

    def p3(self, w: Word) -> Word:
        self.stats.record(3, w)
        return bfs_geodesic(self.ball, w)

    def p4(self, w: Word) -> int:
        self.stats.record(4, w)
        return bfs_length(self.ball, w)

    def p5(self, w: Word, k: int) -> bool:
        self.stats.record(5, w)
        return bfs_bounded(self.ball, w, k)
