"""Word-problem solvers mapping words to canonical element keys.

Every model works on an internal *state* (whatever is convenient for the
group) and exposes it through three primitives: ``identity_state``,
``multiply(state, letter)`` and ``key(state)``.  ``eval`` folds a word
through ``multiply``; the Cayley-ball search uses the primitives directly
so it never re-evaluates whole words.
"""

from __future__ import annotations

import random
import string
from typing import Sequence

from .core import (
    GeodesyError,
    Letter,
    Presentation,
    Word,
    alphabet,
    format_word,
    free_reduce,
    rewrite_to_normal_form,
    validate_rules,
)

GENERATOR_NAMES = string.ascii_lowercase


class NotConfluentAsserted(GeodesyError):
    pass


class RelatorNotTrivial(GeodesyError):
    def __init__(self, relator: str, message: str = ""):
        super().__init__(message or f"relator {relator!r} does not rewrite to the identity")
        self.relator = relator


class GroupModel:
    """Base class for word-problem solvers.

    Subclasses set ``self._presentation`` and implement the three state
    primitives.  Keys are ``bytes`` and equal iff the states represent the
    same group element.
    """

    name = "group"
    _presentation: Presentation

    @property
    def presentation(self) -> Presentation:
        return self._presentation

    @property
    def alphabet(self) -> Word:
        return alphabet(self._presentation)

    def identity_state(self):
        raise NotImplementedError

    def multiply(self, state, letter: Letter):
        raise NotImplementedError

    def key(self, state) -> bytes:
        raise NotImplementedError

    def state_of(self, w: Sequence[Letter]):
        state = self.identity_state()
        for letter in w:
            state = self.multiply(state, letter)
        return state

    def eval(self, w: Sequence[Letter]) -> bytes:
        return self.key(self.state_of(w))

    def identity_key(self) -> bytes:
        return self.key(self.identity_state())

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


def _word_key(w: Sequence[Letter]) -> bytes:
    return bytes(2 * g + (s < 0) for g, s in w)


class FreeGroupModel(GroupModel):
    def __init__(self, k: int):
        if k < 1:
            raise ValueError("free group rank must be positive")
        if k > len(GENERATOR_NAMES):
            raise ValueError(f"at most {len(GENERATOR_NAMES)} generators")
        self.k = k
        self.name = f"free:{k}"
        self._presentation = Presentation(tuple(GENERATOR_NAMES[:k]))

    def identity_state(self):
        return ()

    def multiply(self, state, letter):
        if state and state[-1][0] == letter[0] and state[-1][1] == -letter[1]:
            return state[:-1]
        return state + (letter,)

    def key(self, state):
        return _word_key(state)


class FreeAbelianModel(GroupModel):
    def __init__(self, k: int):
        if k < 1:
            raise ValueError("free abelian rank must be positive")
        if k > len(GENERATOR_NAMES):
            raise ValueError(f"at most {len(GENERATOR_NAMES)} generators")
        self.k = k
        self.name = f"abelian:{k}"
        gens = tuple(GENERATOR_NAMES[:k])
        commutators = tuple(
            (Letter(i, 1), Letter(j, 1), Letter(i, -1), Letter(j, -1))
            for i in range(k)
            for j in range(i + 1, k)
        )
        self._presentation = Presentation(gens, commutators)

    def identity_state(self):
        return (0,) * self.k

    def multiply(self, state, letter):
        g, s = letter
        return state[:g] + (state[g] + s,) + state[g + 1:]

    def key(self, state):
        return ",".join(map(str, state)).encode()

    def exponent_vector(self, w: Sequence[Letter]) -> tuple[int, ...]:
        return self.state_of(w)


class BaumslagSolitarModel(GroupModel):
    """BS(1, n) = <a, t | t a t^-1 = a^n> as the semidirect product Z[1/n] x Z.

    A state ``(m, d, e)`` stands for ``(m / |n|^d, e)``: translation part
    in Z[1/n] and t-exponent ``e``.  The product is

        (x1, e1) * (x2, e2) = (x1 + n**e1 * x2, e1 + e2)

    and the pair ``(m, d)`` is kept canonical (``d == 0`` or ``|n|`` does
    not divide ``m``).  Python integers keep the arithmetic exact.
    """

    def __init__(self, n: int):
        if n == 0:
            raise ValueError("BS(1, n) needs |n| >= 1")
        self.n = n
        self.base = abs(n)
        self.name = f"bs:{n}"
        a, t = Letter(0, 1), Letter(1, 1)
        relator = (t, a, t.inverse()) + (a.inverse(),) * abs(n)
        if n < 0:
            relator = (t, a, t.inverse()) + (a,) * abs(n)
        self._presentation = Presentation(("a", "t"), (relator,))

    def identity_state(self):
        return (0, 0, 0)

    def _normalize(self, m, d):
        b = self.base
        if m == 0:
            return 0, 0
        if b == 1:
            return m, 0
        while d > 0 and m % b == 0:
            m //= b
            d -= 1
        return m, d

    def multiply(self, state, letter):
        m, d, e = state
        g, s = letter
        if g == 1:
            return (m, d, e + s)
        # x + n**e * s
        b = self.base
        sign = -1 if (self.n < 0 and e % 2) else 1
        if e >= 0:
            m2, d2 = s * sign * b**e, 0
        else:
            m2, d2 = s * sign, -e if b != 1 else 0
        if d2 > d:
            m = m * b ** (d2 - d) + m2
            d = d2
        else:
            m = m + m2 * b ** (d - d2)
        m, d = self._normalize(m, d)
        return (m, d, e)

    def key(self, state):
        return "{},{},{}".format(*state).encode()


class RewritingModel(GroupModel):
    """Word problem via a user-supplied length-reducing rewriting system.

    Evaluation alternates free reduction and rule application until both
    are stable.  Confluence cannot be checked here, so the caller must
    assert it; construction still verifies that every relator evaluates to
    the identity and that inserting a relator into random words leaves the
    key unchanged.
    """

    smoke_samples = 200
    smoke_max_len = 8

    def __init__(self, p: Presentation, assume_confluent: bool = False, name: str = ""):
        if not assume_confluent:
            raise NotConfluentAsserted(
                "rewriting models need an explicit confluence assertion"
            )
        if not p.rules:
            raise GeodesyError("presentation has no rewrite rules")
        validate_rules(p)
        self._presentation = p
        self.name = name or "rewrite"
        self._cache: dict = {}
        self._check_relators()

    def normal_form(self, w: Sequence[Letter]) -> Word:
        word = free_reduce(w)
        p = self._presentation
        while True:
            rewritten = free_reduce(rewrite_to_normal_form(p, word))
            if rewritten == word:
                return word
            word = rewritten

    def identity_state(self):
        return ()

    def multiply(self, state, letter):
        cache_key = (state, letter)
        hit = self._cache.get(cache_key)
        if hit is None:
            hit = self._cache[cache_key] = self.normal_form(state + (letter,))
        return hit

    def key(self, state):
        return _word_key(state)

    def _check_relators(self):
        p = self._presentation
        ident = self.identity_key()
        for r in p.relators:
            if self.eval(r) != ident:
                raise RelatorNotTrivial(format_word(r, p))
        rng = random.Random(0)
        letters = self.alphabet
        for r in p.relators:
            for _ in range(self.smoke_samples):
                u = tuple(rng.choice(letters) for _ in range(rng.randint(0, self.smoke_max_len)))
                v = tuple(rng.choice(letters) for _ in range(rng.randint(0, self.smoke_max_len)))
                if self.eval(u + r + v) != self.eval(u + v):
                    raise RelatorNotTrivial(
                        format_word(r, p),
                        f"inserting relator {format_word(r, p)!r} between "
                        f"{format_word(u, p)!r} and {format_word(v, p)!r} changes the "
                        "normal form; the rules are not confluent for this presentation",
                    )


def free_group_model(k: int) -> FreeGroupModel:
    return FreeGroupModel(k)


def free_abelian_model(k: int) -> FreeAbelianModel:
    return FreeAbelianModel(k)


def bs_model(n: int) -> BaumslagSolitarModel:
    return BaumslagSolitarModel(n)


def rewriting_model(p: Presentation, assume_confluent: bool = False) -> RewritingModel:
    return RewritingModel(p, assume_confluent=assume_confluent)


def equal(g: GroupModel, u: Sequence[Letter], v: Sequence[Letter]) -> bool:
    return g.eval(u) == g.eval(v)


def is_trivial(g: GroupModel, w: Sequence[Letter]) -> bool:
    return g.eval(w) == g.identity_key()


def model_from_selector(selector: str) -> GroupModel:
    """Build a model from ``free:k``, ``abelian:k``, ``bs:n`` or ``rewrite:PATH``."""
    kind, sep, arg = selector.partition(":")
    if not sep or not arg:
        raise ValueError(f"bad model selector {selector!r}")
    if kind == "rewrite":
        p = Presentation.load(arg)
        model = RewritingModel(p, assume_confluent=True, name=selector)
        return model
    try:
        value = int(arg)
    except ValueError:
        raise ValueError(f"bad model selector {selector!r}") from None
    if kind == "free":
        return FreeGroupModel(value)
    if kind == "abelian":
        return FreeAbelianModel(value)
    if kind == "bs":
        return BaumslagSolitarModel(value)
    raise ValueError(f"unknown model kind {kind!r}")


__all__ = [
    "GroupModel",
    "FreeGroupModel",
    "FreeAbelianModel",
    "BaumslagSolitarModel",
    "RewritingModel",
    "NotConfluentAsserted",
    "RelatorNotTrivial",
    "free_group_model",
    "free_abelian_model",
    "bs_model",
    "rewriting_model",
    "equal",
    "is_trivial",
    "model_from_selector",
]
