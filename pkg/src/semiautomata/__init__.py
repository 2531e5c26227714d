"""Exact deterministic, stochastic and generalized semiautomata.

A generalized semiautomaton assigns a nonnegative rational matrix to each
input symbol.  :func:`factorize` splits one into a weighted dependent source
and a semideterministic semiautomaton whose sequential product gives it back.
"""

from .automata import (
    DeterministicSA,
    GeneralizedSA,
    TransformTable,
    classify_gsa,
    delta_word,
    embed_sa,
    extract_sa,
    madic,
    q_word,
    transformation_monoid,
    transition_weight,
)
from .decomp import (
    Decomposition,
    birkhoff_decompose,
    dedup,
    det_decompose,
    recompose,
    semidet_decompose,
)
from .ratmat import RMatrix, add_scaled, classify, identity, multiply, zeros
from .source import (
    DependentSource,
    Factorization,
    factorize,
    gamma_word,
    sequential_product,
    verify_factorization,
)

__version__ = "0.1.0"
