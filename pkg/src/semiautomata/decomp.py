"""Conical decompositions of nonnegative matrices into 0/1 bases.

Three routes:

* :func:`semidet_decompose` is the greedy reduction that works on any
  nonnegative matrix and yields semideterministic bases;
* :func:`det_decompose` sweeps the cumulative row distributions of a
  stochastic matrix and yields deterministic bases with weights summing to 1;
* :func:`birkhoff_decompose` peels perfect matchings off a doubly stochastic
  matrix and yields permutation bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from . import ratmat
from .ratmat import MatrixError, RMatrix


class DecompositionError(ValueError):
    pass


class Term(NamedTuple):
    coeff: Fraction
    basis: RMatrix


@dataclass(frozen=True)
class Decomposition:
    order: int
    terms: tuple[Term, ...]

    def __post_init__(self):
        terms = tuple(Term(Fraction(c), b) for c, b in self.terms)
        for c, b in terms:
            if c <= 0:
                raise DecompositionError(f"coefficient must be positive, got {c}")
            if b.order != self.order:
                raise DecompositionError(f"basis of order {b.order} in order-{self.order} decomposition")
            if not b.is_semideterministic():
                raise DecompositionError("basis matrix is not semideterministic")
        object.__setattr__(self, "terms", terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def coefficients(self) -> list[Fraction]:
        return [t.coeff for t in self.terms]

    @property
    def bases(self) -> list[RMatrix]:
        return [t.basis for t in self.terms]

    def total_weight(self) -> Fraction:
        return sum(self.coefficients, Fraction(0))


class GreedyStep(NamedTuple):
    """One reduction: ``current - coeff * basis`` is the next matrix."""

    current: RMatrix
    coeff: Fraction
    basis: RMatrix


def greedy_steps(a: RMatrix) -> Iterator[GreedyStep]:
    """Yield the greedy reduction steps of ``a`` until the remainder is zero.

    Each nonzero row selects its leftmost minimal nonzero entry; the step
    weight is the smallest nonzero entry of the whole matrix.
    """
    n = a.order
    rows = [list(r) for r in a.rows]
    current = a
    while True:
        nonzero = [v for r in rows for v in r if v]
        if not nonzero:
            return
        weight = min(nonzero)
        picks: list[int | None] = []
        for r in rows:
            vals = [v for v in r if v]
            picks.append(r.index(min(vals)) if vals else None)
        basis = ratmat.from_map(picks, n)
        yield GreedyStep(current, weight, basis)
        for r, j in zip(rows, picks):
            if j is not None:
                r[j] -= weight
                # selected entries are row minima >= weight
                assert r[j] >= 0
        current = RMatrix(rows)


def semidet_decompose(a: RMatrix) -> Decomposition:
    """Greedy decomposition of a nonnegative matrix into semideterministic bases.

    The result is not deduplicated, so its terms match the reduction steps
    one for one.
    """
    return Decomposition(a.order, tuple(Term(s.coeff, s.basis) for s in greedy_steps(a)))


def det_decompose(p: RMatrix) -> Decomposition:
    """Convex combination of deterministic matrices for a stochastic matrix.

    Every row's cumulative distribution partitions ``(0, 1]``; the common
    refinement of those partitions gives one deterministic matrix per cell,
    sending row ``i`` to the column whose interval holds that cell.
    """
    if not p.is_stochastic():
        raise DecompositionError("det_decompose needs a stochastic matrix")
    cumulative = []
    for row in p.rows:
        acc, cum = Fraction(0), []
        for v in row:
            acc += v
            cum.append(acc)
        cumulative.append(cum)
    cuts = sorted({c for cum in cumulative for c in cum if c > 0})
    terms = []
    lo = Fraction(0)
    for hi in cuts:
        # first column whose cumulative mass reaches hi; cum[-1] == 1 >= hi
        images = [next(j for j, c in enumerate(cum) if c >= hi) for cum in cumulative]
        terms.append(Term(hi - lo, ratmat.from_map(images)))
        lo = hi
    return Decomposition(p.order, tuple(terms))


def _perfect_matching(support: list[list[bool]]) -> list[int] | None:
    """Row-to-column perfect matching by augmenting paths, or ``None``."""
    n = len(support)
    match_col: list[int | None] = [None] * n

    def augment(i: int, seen: list[bool]) -> bool:
        for j in range(n):
            if support[i][j] and not seen[j]:
                seen[j] = True
                if match_col[j] is None or augment(match_col[j], seen):
                    match_col[j] = i
                    return True
        return False

    # cheap pass first: each row takes its first free column
    unmatched = []
    for i in range(n):
        j = next((j for j in range(n) if support[i][j] and match_col[j] is None), None)
        if j is None:
            unmatched.append(i)
        else:
            match_col[j] = i
    for i in unmatched:
        if not augment(i, [False] * n):
            return None
    row_to_col = [0] * n
    for j, i in enumerate(match_col):
        row_to_col[i] = j
    return row_to_col


def birkhoff_decompose(d: RMatrix) -> Decomposition:
    """Convex combination of permutation matrices for a doubly stochastic matrix."""
    if not d.is_doubly_stochastic():
        raise DecompositionError("birkhoff_decompose needs a doubly stochastic matrix")
    n = d.order
    rows = [list(r) for r in d.rows]
    terms = []
    while any(v for r in rows for v in r):
        perm = _perfect_matching([[v > 0 for v in r] for r in rows])
        if perm is None:
            raise AssertionError("support of a scaled doubly stochastic matrix has no perfect matching")
        weight = min(rows[i][perm[i]] for i in range(n))
        for i in range(n):
            rows[i][perm[i]] -= weight
        terms.append(Term(weight, ratmat.from_map(perm)))
    return Decomposition(n, tuple(terms))


def recompose(d: Decomposition) -> RMatrix:
    acc = ratmat.zeros(d.order)
    for c, b in d.terms:
        acc = ratmat.add_scaled(acc, c, b)
    return acc


def dedup(d: Decomposition) -> Decomposition:
    """Merge repeated bases, keeping the position of the first occurrence."""
    merged: dict[RMatrix, Fraction] = {}
    for c, b in d.terms:
        merged[b] = merged.get(b, Fraction(0)) + c
    return Decomposition(d.order, tuple(Term(c, b) for b, c in merged.items()))


def marcus_ree_bound(n: int) -> int:
    return n * n - 2 * n + 2


__all__ = [
    "Decomposition",
    "DecompositionError",
    "GreedyStep",
    "MatrixError",
    "Term",
    "birkhoff_decompose",
    "dedup",
    "det_decompose",
    "greedy_steps",
    "marcus_ree_bound",
    "recompose",
    "semidet_decompose",
]
