from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from semiautomata import DeterministicSA, GeneralizedSA, RMatrix

ACCEPTANCE_RESULTS = []

# exact arithmetic makes example timing too uneven for per-example deadlines
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")


@pytest.fixture
def three_state_sa():
    # x sends everything to 1; y sends 1 to 2 and fixes 2, 3
    return DeterministicSA.from_named(
        ["1", "2", "3"],
        ["x", "y"],
        {"x": {"1": "1", "2": "1", "3": "1"}, "y": {"1": "2", "2": "2", "3": "3"}},
    )


@pytest.fixture
def two_state_gsa():
    return GeneralizedSA(
        ["s1", "s2"],
        ["x1", "x2"],
        {"x1": RMatrix([[2, 3], [1, 0]]), "x2": RMatrix([[1, 2], [0, 3]])},
    )


# random generators, independent of anything under test

def random_rational(rng, max_num=20, max_den=10):
    return Fraction(rng.randint(0, max_num), rng.randint(1, max_den))


def random_matrix(rng, n, max_num=20, max_den=10, zero_prob=0.3):
    return RMatrix(
        [[0 if rng.random() < zero_prob else random_rational(rng, max_num, max_den)
          for _ in range(n)] for _ in range(n)]
    )


def random_stochastic(rng, n, max_num=20, max_den=10):
    rows = []
    for _ in range(n):
        row = [random_rational(rng, max_num, max_den) for _ in range(n)]
        if not any(row):
            row[rng.randrange(n)] = Fraction(1)
        total = sum(row)
        rows.append([v / total for v in row])
    return RMatrix(rows)


def random_doubly_stochastic(rng, n, max_terms=None):
    """Convex combination of random permutation matrices."""
    k = rng.randint(1, max_terms or n)
    weights = [Fraction(rng.randint(1, 10)) for _ in range(k)]
    total = sum(weights)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for w in weights:
        perm = list(range(n))
        rng.shuffle(perm)
        for i, j in enumerate(perm):
            rows[i][j] += w / total
    return RMatrix(rows)


def random_gsa(rng, max_n=5, max_symbols=4, kind="general"):
    n = rng.randint(1, max_n)
    k = rng.randint(1, max_symbols)
    alphabet = [f"a{i}" for i in range(k)]
    make = {
        "general": lambda: random_matrix(rng, n),
        "stochastic": lambda: random_stochastic(rng, n),
        "doubly": lambda: random_doubly_stochastic(rng, n),
    }[kind]
    return GeneralizedSA([f"q{i}" for i in range(n)], alphabet, {x: make() for x in alphabet})


small_rationals = st.builds(
    Fraction, st.integers(min_value=0, max_value=20), st.integers(min_value=1, max_value=10)
)


@st.composite
def square_matrices(draw, min_n=1, max_n=4, entries=small_rationals):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    rows = draw(st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n))
    return RMatrix(rows)


@st.composite
def matrix_triples(draw, max_n=3):
    n = draw(st.integers(min_value=1, max_value=max_n))
    return tuple(draw(square_matrices(min_n=n, max_n=n)) for _ in range(3))


@st.composite
def stochastic_matrices(draw, min_n=1, max_n=4):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    rows = []
    for _ in range(n):
        row = draw(st.lists(st.integers(min_value=0, max_value=9), min_size=n, max_size=n))
        if not any(row):
            row[draw(st.integers(min_value=0, max_value=n - 1))] = 1
        rows.append([Fraction(v, sum(row)) for v in row])
    return RMatrix(rows)


@st.composite
def doubly_stochastic_matrices(draw, min_n=1, max_n=4):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    perms = draw(st.lists(st.permutations(range(n)), min_size=1, max_size=n))
    weights = draw(st.lists(st.integers(min_value=1, max_value=9),
                            min_size=len(perms), max_size=len(perms)))
    rows = [[Fraction(0)] * n for _ in range(n)]
    for p, w in zip(perms, weights):
        for i, j in enumerate(p):
            rows[i][j] += Fraction(w, sum(weights))
    return RMatrix(rows)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
