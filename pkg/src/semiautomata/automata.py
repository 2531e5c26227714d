"""Deterministic and generalized semiautomata.

Words are sequences of symbols.  All products read a word left to right, so
for ``u = x1 x2`` the map ``delta_word(a, u)`` applies ``x1`` first and
``q_word(a, u) == Q[x1] @ Q[x2]``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import ratmat
from .ratmat import RMatrix

Word = Sequence[str]

GENERALIZED = "generalized"

# strongest first; deterministic and doubly stochastic are incomparable,
# a GSA that is both is already a permutation GSA
_GSA_STRENGTH = (
    ratmat.PERMUTATION,
    ratmat.DETERMINISTIC,
    ratmat.DOUBLY_STOCHASTIC,
    ratmat.STOCHASTIC,
    ratmat.SEMIDETERMINISTIC,
)


class AutomatonError(ValueError):
    """Malformed automaton or a word that does not fit it."""


class MonoidCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class TransformTable:
    """A partial map on ``range(n)``; ``None`` marks an undefined image."""

    images: tuple[int | None, ...]

    @property
    def size(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> TransformTable:
        return cls(tuple(range(n)))

    def __call__(self, i: int) -> int | None:
        return self.images[i]

    def then(self, other: TransformTable) -> TransformTable:
        """Apply ``self`` first, then ``other``."""
        return TransformTable(
            tuple(None if t is None else other.images[t] for t in self.images)
        )

    def is_total(self) -> bool:
        return None not in self.images

    def to_matrix(self) -> RMatrix:
        return ratmat.from_map(self.images)


def _check_names(kind: str, names: Sequence[str]) -> tuple[str, ...]:
    names = tuple(names)
    if len(set(names)) != len(names):
        raise AutomatonError(f"duplicate {kind} names: {list(names)}")
    return names


@dataclass(frozen=True)
class DeterministicSA:
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    transitions: Mapping[str, TransformTable]

    def __init__(self, states, alphabet, transitions):
        states = _check_names("state", states)
        alphabet = _check_names("symbol", alphabet)
        if not states:
            raise AutomatonError("a semiautomaton needs at least one state")
        n = len(states)
        tables = {}
        for x in alphabet:
            if x not in transitions:
                raise AutomatonError(f"no transition table for symbol {x!r}")
            t = transitions[x]
            if not isinstance(t, TransformTable):
                t = TransformTable(tuple(t))
            if t.size != n:
                raise AutomatonError(f"table for {x!r} has size {t.size}, expected {n}")
            for img in t.images:
                if img is not None and not 0 <= img < n:
                    raise AutomatonError(f"table for {x!r} targets invalid state {img}")
            tables[x] = t
        extra = set(transitions) - set(alphabet)
        if extra:
            raise AutomatonError(f"transitions for unknown symbols {sorted(extra)}")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "transitions", tables)

    def __hash__(self):
        return hash((self.states, self.alphabet, tuple(self.transitions[x] for x in self.alphabet)))

    @classmethod
    def from_named(cls, states, alphabet, transitions: Mapping[str, Mapping[str, str]]):
        """Build from ``{symbol: {state: state}}``; a missing state is undefined."""
        states = tuple(states)
        index = {s: i for i, s in enumerate(states)}
        tables = {}
        for x, mapping in transitions.items():
            images = []
            for s in states:
                t = mapping.get(s)
                if t is not None and t not in index:
                    raise AutomatonError(f"unknown target state {t!r} under {x!r}")
                images.append(None if t is None else index[t])
            unknown = set(mapping) - set(index)
            if unknown:
                raise AutomatonError(f"unknown source states {sorted(unknown)} under {x!r}")
            tables[x] = TransformTable(tuple(images))
        return cls(states, alphabet, tables)

    def named_transitions(self) -> dict[str, dict[str, str]]:
        return {
            x: {
                self.states[i]: self.states[t]
                for i, t in enumerate(self.transitions[x].images)
                if t is not None
            }
            for x in self.alphabet
        }

    @property
    def n(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class GeneralizedSA:
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    matrices: Mapping[str, RMatrix]

    def __init__(self, states, alphabet, matrices):
        states = _check_names("state", states)
        alphabet = _check_names("symbol", alphabet)
        if not states:
            raise AutomatonError("a semiautomaton needs at least one state")
        mats = {}
        for x in alphabet:
            if x not in matrices:
                raise AutomatonError(f"no matrix for symbol {x!r}")
            m = matrices[x]
            if not isinstance(m, RMatrix):
                m = ratmat.from_literal(m)
            if m.order != len(states):
                raise AutomatonError(
                    f"matrix for {x!r} has order {m.order}, expected {len(states)}"
                )
            mats[x] = m
        extra = set(matrices) - set(alphabet)
        if extra:
            raise AutomatonError(f"matrices for unknown symbols {sorted(extra)}")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "matrices", mats)

    def __eq__(self, other):
        if not isinstance(other, GeneralizedSA):
            return NotImplemented
        return (
            self.states == other.states
            and self.alphabet == other.alphabet
            and all(self.matrices[x] == other.matrices[x] for x in self.alphabet)
        )

    def __hash__(self):
        return hash((self.states, self.alphabet, tuple(self.matrices[x] for x in self.alphabet)))

    @property
    def n(self) -> int:
        return len(self.states)


def _check_word(alphabet: Sequence[str], u: Word) -> None:
    for x in u:
        if x not in alphabet:
            raise AutomatonError(f"unknown symbol {x!r}")


def delta_word(a: DeterministicSA, u: Word) -> TransformTable:
    _check_word(a.alphabet, u)
    t = TransformTable.identity(a.n)
    for x in u:
        t = t.then(a.transitions[x])
    return t


def transformation_monoid(
    a: DeterministicSA, cap: int = 100_000
) -> dict[TransformTable, tuple[str, ...]]:
    """Enumerate T(A) by breadth-first closure.

    Returns an insertion-ordered mapping from each element to a shortest word
    producing it (ties broken by generator order).  The identity comes first.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    ident = TransformTable.identity(a.n)
    found: dict[TransformTable, tuple[str, ...]] = {ident: ()}
    queue = deque([ident])
    while queue:
        t = queue.popleft()
        word = found[t]
        for x in a.alphabet:
            nxt = t.then(a.transitions[x])
            if nxt not in found:
                if len(found) >= cap:
                    raise MonoidCapExceeded(f"transformation monoid exceeds {cap} elements")
                found[nxt] = word + (x,)
                queue.append(nxt)
    return found


def q_word(a: GeneralizedSA, u: Word) -> RMatrix:
    _check_word(a.alphabet, u)
    if not u:
        return ratmat.identity(a.n)
    m = a.matrices[u[0]]
    for x in u[1:]:
        m = ratmat.multiply(m, a.matrices[x])
    return m


def transition_weight(a: GeneralizedSA, i: int, u: Word, j: int) -> Fraction:
    if not (0 <= i < a.n and 0 <= j < a.n):
        raise IndexError(f"state index out of range for {a.n} states: ({i}, {j})")
    return q_word(a, u)[i, j]


def embed_sa(a: DeterministicSA) -> GeneralizedSA:
    return GeneralizedSA(
        a.states, a.alphabet, {x: a.transitions[x].to_matrix() for x in a.alphabet}
    )


def extract_sa(g: GeneralizedSA) -> DeterministicSA:
    tables = {}
    for x in g.alphabet:
        m = g.matrices[x]
        if not m.is_semideterministic():
            raise AutomatonError(f"matrix for {x!r} is not semideterministic")
        tables[x] = TransformTable(m.support_map())
    return DeterministicSA(g.states, g.alphabet, tables)


def madic_matrix(m: int, x: int) -> RMatrix:
    return RMatrix(
        [
            [Fraction(m - x, m), Fraction(x, m)],
            [Fraction(m - x - 1, m), Fraction(x + 1, m)],
        ]
    )


def madic(m: int) -> GeneralizedSA:
    """The 2-state stochastic GSA over digits ``"0" .. str(m-1)``."""
    if m < 2:
        raise AutomatonError("m-adic semiautomaton needs m >= 2")
    return GeneralizedSA(
        ("s1", "s2"),
        tuple(str(x) for x in range(m)),
        {str(x): madic_matrix(m, x) for x in range(m)},
    )


def classify_gsa(g: GeneralizedSA) -> str:
    """Strongest class shared by every symbol matrix, else ``"generalized"``."""
    common = set(_GSA_STRENGTH)
    for x in g.alphabet:
        common &= ratmat.classify(g.matrices[x])
    for label in _GSA_STRENGTH:
        if label in common:
            return label
    return GENERALIZED
