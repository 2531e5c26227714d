import json
import random
from fractions import Fraction

import pytest

from semiautomata import formats
from semiautomata.automata import DeterministicSA, GeneralizedSA, madic
from semiautomata.decomp import semidet_decompose
from semiautomata.formats import FormatError
from semiautomata.ratmat import RMatrix
from semiautomata.source import factorize

from conftest import random_gsa


def reparse(obj):
    return json.loads(json.dumps(obj))


def test_gsa_round_trip(two_state_gsa):
    obj = formats.automaton_to_dict(two_state_gsa)
    assert obj == {
        "type": "gsa",
        "states": ["s1", "s2"],
        "alphabet": ["x1", "x2"],
        "matrices": {"x1": [[2, 3], [1, 0]], "x2": [[1, 2], [0, 3]]},
    }
    assert formats.automaton_from_dict(reparse(obj)) == two_state_gsa


def test_madic_literals_are_fractions():
    obj = formats.automaton_to_dict(madic(10))
    assert obj["matrices"]["7"] == [["3/10", "7/10"], ["1/5", "4/5"]]


def test_sa_round_trip_with_undefined(three_state_sa):
    partial = DeterministicSA(["a", "b"], ["x"], {"x": (1, None)})
    for a in (three_state_sa, partial):
        obj = reparse(formats.automaton_to_dict(a))
        assert formats.automaton_from_dict(obj) == a
    assert formats.automaton_to_dict(partial)["transitions"] == {"x": {"a": "b"}}


def test_gsa_accepts_decimal_and_fraction_strings():
    obj = {"type": "gsa", "states": ["a"], "alphabet": ["x"], "matrices": {"x": [["0.5"]]}}
    assert formats.automaton_from_dict(obj).matrices["x"] == RMatrix([[Fraction(1, 2)]])


@pytest.mark.parametrize(
    "obj",
    [
        [],
        {"type": "pda", "states": ["a"], "alphabet": [], "matrices": {}},
        {"type": "gsa", "states": ["a"], "alphabet": ["x"]},
        {"type": "gsa", "states": ["a"], "alphabet": ["x"], "matrices": {"x": [[1]]}, "transitions": {}},
        {"type": "gsa", "states": ["a"], "alphabet": ["x"], "matrices": {"x": [[1, 2]]}},
        {"type": "gsa", "states": ["a"], "alphabet": ["x"], "matrices": {"x": [["-1"]]}},
        {"type": "gsa", "states": ["a"], "alphabet": ["x"], "matrices": {"x": [[0.5]]}},
        {"type": "gsa", "states": ["a", "b"], "alphabet": ["x"], "matrices": {"x": [[1]]}},
        {"type": "sa", "states": ["a"], "alphabet": ["x"], "transitions": {"x": {"a": "nowhere"}}},
        {"type": "sa", "states": ["a"], "alphabet": ["x"], "transitions": {"x": ["a"]}},
        {"type": "sa", "states": ["a"], "alphabet": ["x"], "transitions": {"x": {"a": ["a"]}}},
        {"type": "sa", "states": [1], "alphabet": ["x"], "transitions": {"x": {}}},
    ],
)
def test_rejects_malformed_automata(obj):
    with pytest.raises(FormatError):
        formats.automaton_from_dict(obj)


def test_decomposition_round_trip():
    d = semidet_decompose(RMatrix([[2, 4, 6], [2, 2, 8], [3, 3, 6]]))
    obj = formats.decomposition_to_dict(d)
    assert obj["order"] == 3
    assert obj["terms"][0] == {"coeff": 2, "basis": [[1, 0, 0], [1, 0, 0], [1, 0, 0]]}
    assert formats.decomposition_from_dict(reparse(obj)) == d
    with pytest.raises(FormatError):
        formats.decomposition_from_dict({"order": 2, "terms": [{"coeff": 0, "basis": [[1, 0], [0, 1]]}]})


def test_factorization_round_trip(two_state_gsa):
    f = factorize(two_state_gsa)
    obj = formats.factorization_to_dict(f)
    assert obj["source"]["gamma"] == {"x1": {"z1": 1, "z2": 1, "z3": 3}, "x2": {"z4": 1, "z5": 2}}
    assert obj["source"]["probabilistic"] is False
    assert obj["machine"]["transitions"]["z2"] == {"s1": "s1"}
    assert formats.factorization_from_dict(reparse(obj)) == f


def test_factorization_round_trip_random():
    rng = random.Random(3)
    for kind in ("general", "stochastic", "doubly"):
        for _ in range(10):
            f = factorize(random_gsa(rng, kind=kind))
            assert formats.factorization_from_dict(reparse(formats.factorization_to_dict(f))) == f


def test_factorization_rejects_inconsistent(two_state_gsa):
    obj = formats.factorization_to_dict(factorize(two_state_gsa))
    obj["basis"]["z1"] = [[0, 1], [0, 1]]
    with pytest.raises(FormatError):
        formats.factorization_from_dict(obj)
    obj = formats.factorization_to_dict(factorize(madic(2)))
    obj["source"]["probabilistic"] = False
    with pytest.raises(FormatError):
        formats.factorization_from_dict(obj)


def test_source_accepts_factorization_file(two_state_gsa):
    f = factorize(two_state_gsa)
    obj = reparse(formats.factorization_to_dict(f))
    assert formats.source_from_dict(obj) == f.source
    assert formats.source_from_dict(obj["source"]) == f.source


def test_read_json_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(FormatError):
        formats.read_json(bad)
    with pytest.raises(FormatError):
        formats.read_json(tmp_path / "missing.json")
