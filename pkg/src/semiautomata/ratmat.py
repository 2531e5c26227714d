"""Exact nonnegative rational matrices.

Entries are :class:`fractions.Fraction` values, which are always kept in
lowest terms with a positive denominator.  Matrices are square, dense and
immutable.
"""

from __future__ import annotations

import re
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
EntryLike = Union[int, str, Fraction]

NONNEGATIVE = "nonnegative"
STOCHASTIC = "stochastic"
DOUBLY_STOCHASTIC = "doubly-stochastic"
DETERMINISTIC = "deterministic"
SEMIDETERMINISTIC = "semideterministic"
PERMUTATION = "permutation"

MATRIX_CLASSES = (
    NONNEGATIVE,
    STOCHASTIC,
    DOUBLY_STOCHASTIC,
    DETERMINISTIC,
    SEMIDETERMINISTIC,
    PERMUTATION,
)

_INT_RE = re.compile(r"^[+-]?\d+$")
_FRAC_RE = re.compile(r"^[+-]?\d+\s*/\s*[+-]?\d+$")
_DEC_RE = re.compile(r"^[+-]?(\d+\.\d*|\.\d+|\d+)$")


class MatrixError(ValueError):
    """Invalid matrix data: bad shape, bad entry or a negative value."""


def parse_rational(value: EntryLike) -> Fraction:
    """Convert an integer, ``"p/q"`` string or finite decimal string exactly.

    Floats are refused; a binary float rarely means what it looks like.

    >>> parse_rational("3/6")
    Fraction(1, 2)
    >>> parse_rational("0.25")
    Fraction(1, 4)
    """
    if isinstance(value, bool):
        raise MatrixError(f"not a rational entry: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if _INT_RE.match(text):
            return Fraction(int(text))
        if _FRAC_RE.match(text):
            num, den = (int(part) for part in text.split("/"))
            if den == 0:
                raise MatrixError(f"zero denominator in {value!r}")
            return Fraction(num, den)
        if _DEC_RE.match(text):
            try:
                return Fraction(Decimal(text))
            except InvalidOperation as exc:
                raise MatrixError(f"bad decimal {value!r}") from exc
        raise MatrixError(f"cannot parse rational entry {value!r}")
    raise MatrixError(f"unsupported entry type {type(value).__name__}: {value!r}")


def format_rational(value: Fraction) -> Union[int, str]:
    """Integers stay integers, everything else becomes ``"p/q"``."""
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


class RMatrix:
    """Immutable square matrix of nonnegative rationals."""

    __slots__ = ("_rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[EntryLike]]):
        parsed = tuple(tuple(parse_rational(v) for v in row) for row in rows)
        n = len(parsed)
        if n == 0:
            raise MatrixError("matrix order must be at least 1")
        for i, row in enumerate(parsed):
            if len(row) != n:
                raise MatrixError(f"row {i} has {len(row)} entries, expected {n}")
            for j, v in enumerate(row):
                if v < 0:
                    raise MatrixError(f"negative entry {v} at ({i}, {j})")
        object.__setattr__(self, "_rows", parsed)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _trusted(cls, rows: tuple[tuple[Fraction, ...], ...]) -> RMatrix:
        # rows already validated: square, nonnegative Fractions
        self = object.__new__(cls)
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "_hash", None)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("RMatrix is immutable")

    @property
    def order(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._rows))
        return self._hash

    def __matmul__(self, other: RMatrix) -> RMatrix:
        return multiply(self, other)

    def __add__(self, other: RMatrix) -> RMatrix:
        return add_scaled(self, Fraction(1), other)

    def __rmul__(self, c) -> RMatrix:
        return add_scaled(zeros(self.order), parse_rational(c), self)

    def __repr__(self):
        body = ", ".join(
            "[" + ", ".join(str(v) for v in row) + "]" for row in self._rows
        )
        return f"RMatrix([{body}])"

    def __str__(self):
        cells = [[str(v) for v in row] for row in self._rows]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)

    def row_sums(self) -> list[Fraction]:
        return [sum(row, Fraction(0)) for row in self._rows]

    def column_sums(self) -> list[Fraction]:
        n = self.order
        return [sum((self._rows[i][j] for i in range(n)), Fraction(0)) for j in range(n)]

    def nnz(self) -> int:
        return sum(1 for row in self._rows for v in row if v != 0)

    def is_zero(self) -> bool:
        return self.nnz() == 0

    def is_stochastic(self) -> bool:
        return all(s == 1 for s in self.row_sums())

    def is_doubly_stochastic(self) -> bool:
        return self.is_stochastic() and all(s == 1 for s in self.column_sums())

    def is_semideterministic(self) -> bool:
        for row in self._rows:
            nonzero = [v for v in row if v != 0]
            if nonzero and (len(nonzero) != 1 or nonzero[0] != 1):
                return False
        return True

    def is_deterministic(self) -> bool:
        return self.is_semideterministic() and all(any(row) for row in self._rows)

    def is_permutation(self) -> bool:
        return self.is_deterministic() and all(s == 1 for s in self.column_sums())

    def support_map(self) -> tuple[int | None, ...]:
        """Column of the single 1 in each row (``None`` for zero rows).

        Only meaningful for semideterministic matrices.
        """
        if not self.is_semideterministic():
            raise MatrixError("support_map needs a semideterministic matrix")
        return tuple(
            next((j for j, v in enumerate(row) if v == 1), None) for row in self._rows
        )

    def to_literal(self) -> list[list[Union[int, str]]]:
        return [[format_rational(v) for v in row] for row in self._rows]


def from_literal(literal: Sequence[Sequence[EntryLike]]) -> RMatrix:
    if not isinstance(literal, (list, tuple)) or not all(
        isinstance(row, (list, tuple)) for row in literal
    ):
        raise MatrixError("matrix literal must be an array of rows")
    return RMatrix(literal)


def identity(n: int) -> RMatrix:
    if n < 1:
        raise MatrixError("identity order must be at least 1")
    return RMatrix([[int(i == j) for j in range(n)] for i in range(n)])


def zeros(n: int) -> RMatrix:
    if n < 1:
        raise MatrixError("matrix order must be at least 1")
    return RMatrix([[0] * n for _ in range(n)])


def from_map(images: Sequence[int | None], n: int | None = None) -> RMatrix:
    """0/1 matrix with a 1 at ``(i, images[i])``; ``None`` gives a zero row."""
    n = len(images) if n is None else n
    rows = []
    for target in images:
        if target is not None and not 0 <= target < n:
            raise MatrixError(f"image {target} out of range for order {n}")
        rows.append([int(j == target) for j in range(n)])
    return RMatrix(rows)


def _check_orders(a: RMatrix, b: RMatrix) -> None:
    if a.order != b.order:
        raise MatrixError(f"dimension mismatch: {a.order} vs {b.order}")


def multiply(a: RMatrix, b: RMatrix) -> RMatrix:
    _check_orders(a, b)
    cols = tuple(zip(*b.rows))
    return RMatrix._trusted(
        tuple(tuple(_dot(row, col) for col in cols) for row in a.rows)
    )


def _dot(row, col) -> Fraction:
    terms = [x * y for x, y in zip(row, col) if x and y]
    if not terms:
        return Fraction(0)
    total = terms[0]
    for t in terms[1:]:
        total += t
    return total


def add_scaled(acc: RMatrix, c: EntryLike, m: RMatrix) -> RMatrix:
    """Return ``acc + c * m``."""
    _check_orders(acc, m)
    c = parse_rational(c)
    if c < 0:
        raise MatrixError(f"negative scale factor {c}")
    if c == 0:
        return acc
    return RMatrix._trusted(
        tuple(
            tuple(x + c * y for x, y in zip(ra, rm)) for ra, rm in zip(acc.rows, m.rows)
        )
    )


def classify(m: RMatrix) -> frozenset[str]:
    """All class labels that hold for ``m``."""
    labels = {NONNEGATIVE}
    if m.is_stochastic():
        labels.add(STOCHASTIC)
        if m.is_doubly_stochastic():
            labels.add(DOUBLY_STOCHASTIC)
    if m.is_semideterministic():
        labels.add(SEMIDETERMINISTIC)
        if m.is_deterministic():
            labels.add(DETERMINISTIC)
            if m.is_permutation():
                labels.add(PERMUTATION)
    return frozenset(labels)
