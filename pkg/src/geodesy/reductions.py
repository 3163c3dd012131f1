"""Building geodesic-problem solutions out of one another.

Each reduction takes an oracle as a plain callable and counts every call
it makes in a fresh :class:`~geodesy.oracles.CallStats`, so the counts can
be compared against the budgets the constructions guarantee:

* length from a bounded-length oracle: at most ``|u|`` calls;
* geodesic from a length oracle: at most ``1 + k*m`` calls for an
  alphabet of ``k`` letters and geodesic length ``m``;
* length increment from a bounded-length oracle: at most 2 calls.

:func:`geodesic_from_delta` runs the other direction (a geodesic from a
length-increment oracle plus an enumeration of relator-conjugate products)
and is only a semi-decision procedure, so it takes explicit budgets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence

from .core import GeodesyError, Letter, Presentation, Word, alphabet, free_reduce, invert_word
from .oracles import P2, P3, P4, P5, CallStats


class NoDescentLetter(GeodesyError):
    """No letter shortens the word: the length oracle contradicts itself."""


class BudgetExhausted(GeodesyError):
    def __init__(self, position: int, message: str):
        super().__init__(f"budget exhausted at prefix position {position}: {message}")
        self.position = position


@dataclass
class ReductionOutcome:
    answer: Any
    stats: CallStats = field(default_factory=CallStats)


@dataclass(frozen=True)
class EnumeratorConfig:
    max_factors: int = 2
    max_conjugator_length: int = 2
    max_products: int = 10**5
    cyclic_rotations: bool = True

    def __post_init__(self):
        if self.max_factors < 1 or self.max_products < 1:
            raise ValueError("max_factors and max_products must be positive")
        if self.max_conjugator_length < 0:
            raise ValueError("max_conjugator_length must be non-negative")


def length_from_bounded(p5: P5, u: Sequence[Letter]) -> ReductionOutcome:
    """Geodesic length of ``u`` by querying bounds ``|u|-1, |u|-2, ...``.

    The first bound ``k`` answered No gives ``l(u) = k + 1``; if every bound
    down to 0 is answered Yes, ``u`` is trivial.
    """
    u = tuple(u)
    stats = CallStats()
    n = len(u)
    for k in range(n - 1, -1, -1):
        stats.record(5, u)
        if not p5(u, k):
            return ReductionOutcome(k + 1, stats)
    return ReductionOutcome(0, stats)


def geodesic_from_length(p4: P4, u: Sequence[Letter], letters: Sequence[Letter]) -> ReductionOutcome:
    """Geodesic representative of ``u`` from a length oracle.

    Greedily walks ``u`` down to the identity one letter at a time, always
    taking the first letter (in ``letters`` order) that lowers the length
    by one, and returns the inverse of that walk.
    """
    u = tuple(u)
    stats = CallStats()
    stats.record(4, u)
    m = p4(u)
    if m == len(u):
        return ReductionOutcome(u, stats)
    walk: list[Letter] = []
    for i in range(1, m + 1):
        for x in letters:
            w = u + tuple(walk) + (x,)
            stats.record(4, w)
            if p4(w) == m - i:
                walk.append(x)
                break
        else:
            raise NoDescentLetter(
                f"no letter lowers the length below {m - i + 1} after {i - 1} steps"
            )
    return ReductionOutcome(invert_word(walk), stats)


def bounded_from_length(p4: P4, u: Sequence[Letter], k: int) -> bool:
    return p4(tuple(u)) <= k


def length_from_geodesic(p3: P3, u: Sequence[Letter]) -> int:
    return len(p3(tuple(u)))


def delta_from_bounded(p5: P5, u: Sequence[Letter], x: Letter) -> ReductionOutcome:
    """``l(ux) - l(u)`` for a geodesic ``u`` with at most two bound queries."""
    ux = tuple(u) + (x,)
    stats = CallStats()
    stats.record(5, ux)
    if p5(ux, len(u) - 1):
        return ReductionOutcome(-1, stats)
    stats.record(5, ux)
    if p5(ux, len(u)):
        return ReductionOutcome(0, stats)
    return ReductionOutcome(1, stats)


def _reduced_words(letters: Sequence[Letter], max_len: int) -> Iterator[Word]:
    """Freely reduced words of length <= max_len in shortlex order."""
    layer: list[Word] = [()]
    yield ()
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for x in letters:
                if w and w[-1] == x.inverse():
                    continue
                nxt.append(w + (x,))
        yield from nxt
        layer = nxt


def conjugate_choices(
    p: Presentation, max_conjugator_length: int, cyclic_rotations: bool = True
) -> list[Word]:
    """Single conjugates ``w r' w^-1`` with ``|w| <= max_conjugator_length``.

    ``r'`` is a relator or its inverse, or with ``cyclic_rotations`` any
    cyclic rotation of those (a rotation is itself a relator conjugate).
    Order: conjugator in shortlex, then rotation offset, relator index,
    sign.  Conjugators range over freely reduced words only.
    """
    letters = alphabet(p)
    variants = []  # variants[offset] -> list of rotated relator words
    longest = max((len(r) for r in p.relators), default=0)
    for offset in range(longest if cyclic_rotations else 1):
        row = []
        for r in p.relators:
            for rel in (r, invert_word(r)):
                if offset and offset >= len(rel):
                    continue
                rotated = rel[offset:] + rel[:offset]
                if offset and rotated in (rel[o:] + rel[:o] for o in range(offset)):
                    continue
                row.append(rotated)
        variants.append(row)
    out = []
    for w in _reduced_words(letters, max_conjugator_length):
        w_inv = invert_word(w)
        for row in variants:
            for rel in row:
                out.append(free_reduce(w + rel + w_inv))
    return out


def enumerate_conjugate_products(p: Presentation, cfg: EnumeratorConfig) -> Iterator[Word]:
    """Freely reduced products of at most ``cfg.max_factors`` relator conjugates.

    Products come in order of increasing factor count, then
    lexicographically in the factor choices of :func:`conjugate_choices`.
    Duplicates are not removed.  At most ``cfg.max_products`` words are
    produced.
    """
    if not p.relators:
        return
    choices = conjugate_choices(p, cfg.max_conjugator_length, cfg.cyclic_rotations)
    produced = 0
    for j in range(1, cfg.max_factors + 1):
        for combo in itertools.product(choices, repeat=j):
            yield free_reduce(itertools.chain.from_iterable(combo))
            produced += 1
            if produced >= cfg.max_products:
                return


class _LazyProducts:
    """Memoized view of the product stream so repeated scans share work."""

    def __init__(self, stream: Iterator[Word]):
        self._stream = stream
        self._seen: list[Word] = []

    def __iter__(self):
        i = 0
        while True:
            if i < len(self._seen):
                yield self._seen[i]
            else:
                nxt = next(self._stream, None)
                if nxt is None:
                    return
                self._seen.append(nxt)
                yield nxt
            i += 1


def geodesic_from_delta(
    p2: P2,
    p: Presentation,
    w: Sequence[Letter],
    cfg: EnumeratorConfig = EnumeratorConfig(),
    *,
    step_budget: int = 10**6,
    stats: CallStats | None = None,
) -> Word:
    """Geodesic for ``w`` from a Problem 2 oracle and the relators of ``p``.

    Works prefix by prefix.  With a geodesic ``v`` for the current prefix
    and next letter ``x``: if the oracle says ``vx`` grows, ``vx`` is the
    new geodesic.  Otherwise some word of length ``<= |v|`` equals ``vx``,
    and one is found by scanning ``free_reduce(c * v * x)`` over products
    ``c`` of relator conjugates.  A hit of length ``|v| - 1`` is geodesic;
    a hit of length ``|v|`` is shorter than the current input and is
    resolved recursively.

    Raises :class:`BudgetExhausted` when the product stream runs out, or
    when oracle calls plus scanned products exceed ``step_budget``.
    """
    stats = stats if stats is not None else CallStats()
    products = _LazyProducts(enumerate_conjugate_products(p, cfg))
    steps = [0]

    def charge(position):
        steps[0] += 1
        if steps[0] > step_budget:
            raise BudgetExhausted(position, f"more than {step_budget} steps")

    def solve(word: Word, base: int) -> Word:
        v: Word = ()
        for i, x in enumerate(word):
            position = base + i + 1
            charge(position)
            stats.record(2, v + (x,))
            if p2(v, x):
                v = v + (x,)
                continue
            # the empty product first: vx may already shorten by free reduction
            z = free_reduce(v + (x,))
            if len(z) > len(v):
                for c in products:
                    charge(position)
                    z = free_reduce(c + v + (x,))
                    if len(z) <= len(v):
                        break
                else:
                    raise BudgetExhausted(
                        position,
                        "no product of relator conjugates shortens the prefix "
                        f"(scanned {len(products._seen)} products)",
                    )
            if len(z) == len(v) - 1:
                v = z
            else:
                v = solve(z, base)
        return v

    return solve(tuple(w), 0)
