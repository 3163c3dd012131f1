"""Words over an inverse-closed alphabet, presentations and rewriting.

A letter is a ``(generator index, sign)`` pair and a word is a plain tuple
of letters, so words are hashable and cheap to slice and concatenate.  The
text syntax uses lowercase characters for generators and the matching
uppercase characters for their inverses::

    >>> p = Presentation.from_text("gens: a b\\nrels: abAB")
    >>> format_word(free_reduce(parse_word("abBAb", p)), p)
    'b'
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence


class GeodesyError(Exception):
    """Base class for every error raised by this package."""


class UnknownLetter(GeodesyError, ValueError):
    def __init__(self, char: str):
        super().__init__(f"unknown letter {char!r}")
        self.char = char


class RuleError(GeodesyError, ValueError):
    def __init__(self, index: int, message: str):
        super().__init__(f"rule {index}: {message}")
        self.index = index


class PresentationError(GeodesyError, ValueError):
    pass


class Letter(NamedTuple):
    gen: int
    sign: int  # +1 or -1

    def inverse(self) -> Letter:
        return Letter(self.gen, -self.sign)


Word = tuple[Letter, ...]
EMPTY: Word = ()


class ParityClass(enum.Enum):
    ALL_RELATORS_EVEN = "AllRelatorsEven"
    SOME_RELATOR_ODD = "SomeRelatorOdd"


@dataclass(frozen=True)
class Presentation:
    """A finite presentation ``<generators | relators>`` with optional rules.

    Generator names are single lowercase characters.  ``rules`` holds
    ``(lhs, rhs)`` word pairs for :func:`rewrite_to_normal_form`; they are
    checked for bounds here but their length condition is left to
    :func:`validate_rules`.
    """

    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()
    rules: tuple[tuple[Word, Word], ...] = ()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        object.__setattr__(
            self, "rules", tuple((tuple(l), tuple(r)) for l, r in self.rules)
        )
        if len(set(gens)) != len(gens):
            raise PresentationError(f"duplicate generator names in {gens}")
        for g in gens:
            if len(g) != 1 or not g.isalpha() or not g.islower():
                raise PresentationError(
                    f"generator names must be single lowercase letters, got {g!r}"
                )
        words = list(self.relators) + [w for rule in self.rules for w in rule]
        for w in words:
            for letter in w:
                if not 0 <= letter.gen < len(gens) or letter.sign not in (1, -1):
                    raise PresentationError(f"letter {letter} out of range")
        index = {}
        for i, g in enumerate(gens):
            index[g] = Letter(i, 1)
            index[g.upper()] = Letter(i, -1)
        object.__setattr__(self, "_index", index)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @classmethod
    def from_text(cls, text: str) -> Presentation:
        return parse_presentation(text)

    @classmethod
    def load(cls, path: str | Path) -> Presentation:
        return parse_presentation(Path(path).read_text(encoding="utf-8"))


def alphabet(p: Presentation) -> Word:
    """The inverse-closed letter list: generators in order, then inverses."""
    return tuple(Letter(i, 1) for i in range(p.rank)) + tuple(
        Letter(i, -1) for i in range(p.rank)
    )


def parse_word(text: str, p: Presentation) -> Word:
    index = p._index
    try:
        return tuple(index[c] for c in text)
    except KeyError:
        bad = next(c for c in text if c not in index)
        raise UnknownLetter(bad) from None


def format_word(w: Sequence[Letter], p: Presentation) -> str:
    gens = p.generators
    return "".join(gens[g] if s > 0 else gens[g].upper() for g, s in w)


def free_reduce(w: Iterable[Letter]) -> Word:
    stack: list[Letter] = []
    for g, s in w:
        if stack and stack[-1][0] == g and stack[-1][1] == -s:
            stack.pop()
        else:
            stack.append(Letter(g, s))
    return tuple(stack)


def invert_word(w: Sequence[Letter]) -> Word:
    return tuple(Letter(g, -s) for g, s in reversed(w))


def relator_parity(p: Presentation) -> ParityClass:
    if all(len(r) % 2 == 0 for r in p.relators):
        return ParityClass.ALL_RELATORS_EVEN
    return ParityClass.SOME_RELATOR_ODD


def validate_rules(p: Presentation) -> None:
    """Raise :class:`RuleError` unless every rule strictly shortens words."""
    for i, (lhs, rhs) in enumerate(p.rules):
        if not lhs:
            raise RuleError(i, "empty left-hand side")
        if len(rhs) >= len(lhs):
            raise RuleError(
                i, f"not length-reducing ({len(lhs)} -> {len(rhs)} letters)"
            )
        for letter in lhs + rhs:
            if not 0 <= letter.gen < p.rank:
                raise RuleError(i, f"letter {letter} names no generator")


def rewrite_to_normal_form(p: Presentation, w: Sequence[Letter]) -> Word:
    """Rewrite ``w`` with the rules of ``p`` until none applies.

    At each step the leftmost position where some rule matches is rewritten,
    using the first matching rule in declaration order.  Rules are assumed
    length-reducing, so the loop terminates after at most ``len(w)`` steps.
    """
    rules = p.rules
    word = tuple(w)
    while True:
        hit = _leftmost_match(rules, word)
        if hit is None:
            return word
        pos, (lhs, rhs) = hit
        word = word[:pos] + rhs + word[pos + len(lhs):]


def _leftmost_match(rules, word):
    for pos in range(len(word)):
        for rule in rules:
            lhs = rule[0]
            if word[pos:pos + len(lhs)] == lhs:
                return pos, rule
    return None


def parse_presentation(text: str) -> Presentation:
    """Parse the line-oriented presentation format.

    ::

        # comment
        gens: a b
        rels: abAB
        rules: aa -> A ; aA -> ; Aa ->

    ``rels:`` entries are separated by whitespace or commas, ``rules:``
    entries by semicolons.  Both directives may repeat.
    """
    gens: list[str] | None = None
    raw_rels: list[str] = []
    raw_rules: list[tuple[str, str]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep:
            raise PresentationError(f"line {lineno}: expected 'directive: value'")
        if key == "gens":
            if gens is not None:
                raise PresentationError(f"line {lineno}: repeated gens directive")
            gens = value.replace(",", " ").split()
        elif key == "rels":
            raw_rels.extend(value.replace(",", " ").split())
        elif key == "rules":
            for item in value.split(";"):
                if not item.strip():
                    continue
                lhs, arrow, rhs = item.partition("->")
                if not arrow:
                    raise PresentationError(f"line {lineno}: rule {item.strip()!r} lacks '->'")
                raw_rules.append((lhs.strip(), rhs.strip()))
        else:
            raise PresentationError(f"line {lineno}: unknown directive {key!r}")
    if gens is None:
        raise PresentationError("missing gens directive")
    bare = Presentation(tuple(gens))
    rels = tuple(parse_word(r, bare) for r in raw_rels)
    rules = tuple((parse_word(l, bare), parse_word(r, bare)) for l, r in raw_rules)
    return Presentation(tuple(gens), rels, rules)


def format_presentation(p: Presentation) -> str:
    lines = ["gens: " + " ".join(p.generators)]
    if p.relators:
        lines.append("rels: " + " ".join(format_word(r, p) for r in p.relators))
    if p.rules:
        lines.append(
            "rules: "
            + " ; ".join(f"{format_word(l, p)} -> {format_word(r, p)}" for l, r in p.rules)
        )
    return "\n".join(lines) + "\n"
