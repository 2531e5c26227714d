"""Generalized dependent sources, sequential products and factorization."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import decomp, ratmat
from .automata import (
    AutomatonError,
    DeterministicSA,
    GeneralizedSA,
    Word,
    classify_gsa,
    embed_sa,
    extract_sa,
    q_word,
)
from .ratmat import RMatrix


@dataclass(frozen=True)
class DependentSource:
    """Nonnegative weights ``gamma[x][z]`` from input symbols to output symbols.

    Missing entries of the ``gamma`` mapping are zero; the stored table is
    always complete.
    """

    input_alphabet: tuple[str, ...]
    output_alphabet: tuple[str, ...]
    gamma: Mapping[str, Mapping[str, Fraction]]

    def __init__(self, input_alphabet, output_alphabet, gamma):
        ins, outs = tuple(input_alphabet), tuple(output_alphabet)
        if len(set(ins)) != len(ins) or len(set(outs)) != len(outs):
            raise AutomatonError("duplicate symbols in source alphabets")
        unknown_x = set(gamma) - set(ins)
        if unknown_x:
            raise AutomatonError(f"weights for unknown input symbols {sorted(unknown_x)}")
        table = {}
        for x in ins:
            row = gamma.get(x, {})
            unknown_z = set(row) - set(outs)
            if unknown_z:
                raise AutomatonError(f"weights for unknown output symbols {sorted(unknown_z)}")
            table[x] = {}
            for z in outs:
                w = ratmat.parse_rational(row.get(z, 0))
                if w < 0:
                    raise AutomatonError(f"negative weight gamma({z}|{x}) = {w}")
                table[x][z] = w
        object.__setattr__(self, "input_alphabet", ins)
        object.__setattr__(self, "output_alphabet", outs)
        object.__setattr__(self, "gamma", table)

    def __hash__(self):
        return hash((self.input_alphabet, self.output_alphabet,
                     tuple(tuple(self.gamma[x].values()) for x in self.input_alphabet)))

    def weight(self, z: str, x: str) -> Fraction:
        """gamma(z | x)."""
        return self.gamma[x][z]

    def row_total(self, x: str) -> Fraction:
        return sum(self.gamma[x].values(), Fraction(0))

    @property
    def is_probabilistic(self) -> bool:
        return all(self.row_total(x) == 1 for x in self.input_alphabet)

    @classmethod
    def identity(cls, alphabet: Sequence[str]) -> DependentSource:
        return cls(alphabet, alphabet, {x: {x: 1} for x in alphabet})


def gamma_word(s: DependentSource, v: Word, u: Word) -> Fraction:
    """Weight of output word ``v`` given input word ``u``; aligned product."""
    for x in u:
        if x not in s.gamma:
            raise AutomatonError(f"unknown input symbol {x!r}")
    for z in v:
        if z not in s.output_alphabet:
            raise AutomatonError(f"unknown output symbol {z!r}")
    if len(u) != len(v):
        return Fraction(0)
    w = Fraction(1)
    for x, z in zip(u, v):
        w *= s.gamma[x][z]
        if not w:
            break
    return w


def sequential_product(s: DependentSource, b: GeneralizedSA) -> GeneralizedSA:
    if set(s.output_alphabet) != set(b.alphabet):
        raise AutomatonError(
            f"source outputs {list(s.output_alphabet)} do not match machine inputs {list(b.alphabet)}"
        )
    mats = {}
    for x in s.input_alphabet:
        acc = ratmat.zeros(b.n)
        for z in s.output_alphabet:
            acc = ratmat.add_scaled(acc, s.gamma[x][z], b.matrices[z])
        mats[x] = acc
    return GeneralizedSA(b.states, s.input_alphabet, mats)


@dataclass(frozen=True)
class Factorization:
    source: DependentSource
    machine: DeterministicSA
    basis: tuple[RMatrix, ...] = field(default=None)

    def __post_init__(self):
        embedded = embed_sa(self.machine)
        basis = self.basis
        if basis is None:
            basis = tuple(embedded.matrices[z] for z in self.machine.alphabet)
        basis = tuple(basis)
        object.__setattr__(self, "basis", basis)
        if self.source.output_alphabet != self.machine.alphabet:
            raise AutomatonError("source output alphabet must equal the machine alphabet")
        if len(basis) != len(self.machine.alphabet):
            raise AutomatonError("one basis matrix per output symbol required")
        for z, m in zip(self.machine.alphabet, basis):
            if m != embedded.matrices[z]:
                raise AutomatonError(f"basis matrix for {z!r} disagrees with the machine")

    @property
    def output_alphabet(self) -> tuple[str, ...]:
        return self.machine.alphabet

    def basis_gsa(self) -> GeneralizedSA:
        return embed_sa(self.machine)

    def product(self) -> GeneralizedSA:
        return sequential_product(self.source, self.basis_gsa())


def _decompose(m: RMatrix, route: str) -> decomp.Decomposition:
    if route == "birkhoff":
        return decomp.birkhoff_decompose(m)
    if route == "sweep":
        return decomp.det_decompose(m)
    return decomp.semidet_decompose(m)


def choose_route(a: GeneralizedSA, force_greedy: bool = False) -> str:
    if force_greedy:
        return "greedy"
    label = classify_gsa(a)
    if label in (ratmat.PERMUTATION, ratmat.DOUBLY_STOCHASTIC):
        return "birkhoff"
    if label in (ratmat.DETERMINISTIC, ratmat.STOCHASTIC):
        return "sweep"
    return "greedy"


def factorize(a: GeneralizedSA, force_greedy: bool = False, prefix: str = "z") -> Factorization:
    """Split ``a`` into a dependent source and a semideterministic machine.

    Doubly stochastic inputs use Birkhoff peeling, stochastic ones the
    cumulative sweep, anything else the greedy reduction.  Output symbols are
    ``z1, z2, ...`` in order of first appearance.
    """
    route = choose_route(a, force_greedy)
    symbols: dict[RMatrix, str] = {}
    weights: dict[str, dict[str, Fraction]] = {}
    for x in a.alphabet:
        d = decomp.dedup(_decompose(a.matrices[x], route))
        weights[x] = {}
        for c, b in d.terms:
            if b not in symbols:
                symbols[b] = f"{prefix}{len(symbols) + 1}"
            weights[x][symbols[b]] = c
    outputs = tuple(symbols.values())
    basis_gsa = GeneralizedSA(a.states, outputs, {z: b for b, z in symbols.items()})
    machine = extract_sa(basis_gsa)
    source = DependentSource(a.alphabet, outputs, weights)
    return Factorization(source, machine, tuple(symbols))


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    checked_words: int = 0
    stage: str | None = None
    word: tuple[str, ...] | None = None
    expected: RMatrix | None = None
    actual: RMatrix | None = None

    def describe(self) -> str:
        if self.ok:
            return f"pass ({self.checked_words} input words checked)"
        word = " ".join(self.word) if self.word else "<empty>"
        return (
            f"fail at {self.stage} check, word {word}\n"
            f"expected:\n{self.expected}\nfrom factorization:\n{self.actual}"
        )


def check_compatible(a: GeneralizedSA, f: Factorization) -> None:
    if set(f.source.input_alphabet) != set(a.alphabet):
        raise AutomatonError("factorization input alphabet does not match the automaton")
    if f.machine.n != a.n:
        raise AutomatonError(
            f"machine has {f.machine.n} states, automaton has {a.n}"
        )


def verify_factorization(a: GeneralizedSA, f: Factorization, max_word_len: int = 2) -> VerificationReport:
    """Check the symbol identity, then the word identity by brute force.

    For each input word ``u`` with ``|u| <= max_word_len`` the matrix
    ``q_word(a, u)`` is compared with the sum over *all* output words ``v`` of
    equal length of ``gamma_word(v, u) * q_word(B, v)``.
    """
    if max_word_len < 0:
        raise ValueError("max_word_len must be nonnegative")
    check_compatible(a, f)
    b = f.basis_gsa()
    product = sequential_product(f.source, b)
    for x in a.alphabet:
        if product.matrices[x] != a.matrices[x]:
            return VerificationReport(False, 0, "symbol", (x,), a.matrices[x], product.matrices[x])

    cache: dict[tuple[str, ...], RMatrix] = {(): ratmat.identity(b.n)}

    def machine_word(v: tuple[str, ...]) -> RMatrix:
        if v not in cache:
            cache[v] = ratmat.multiply(machine_word(v[:-1]), b.matrices[v[-1]])
        return cache[v]

    checked = 0
    outputs = f.source.output_alphabet
    for k in range(max_word_len + 1):
        for u in itertools.product(a.alphabet, repeat=k):
            total = ratmat.zeros(a.n)
            for v in itertools.product(outputs, repeat=k):
                w = gamma_word(f.source, v, u)
                if w:
                    total = ratmat.add_scaled(total, w, machine_word(v))
            expected = q_word(a, u)
            checked += 1
            if total != expected:
                return VerificationReport(False, checked, "word", u, expected, total)
    return VerificationReport(True, checked)
