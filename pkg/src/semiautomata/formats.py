"""JSON encodings for automata, decompositions, sources and factorizations.

Rationals are written as bare integers or ``"p/q"`` strings, never floats.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from . import ratmat
from .automata import AutomatonError, DeterministicSA, GeneralizedSA
from .decomp import Decomposition, Term
from .ratmat import MatrixError, format_rational
from .source import DependentSource, Factorization

Automaton = Union[DeterministicSA, GeneralizedSA]


class FormatError(ValueError):
    """A file that does not follow the expected schema."""


def _require(obj: dict, key: str, kind: type, where: str):
    if key not in obj:
        raise FormatError(f"{where}: missing key {key!r}")
    value = obj[key]
    if not isinstance(value, kind):
        raise FormatError(f"{where}: {key!r} must be a {kind.__name__}")
    return value


def _names(obj: dict, key: str, where: str) -> list[str]:
    names = _require(obj, key, list, where)
    if not all(isinstance(s, str) for s in names):
        raise FormatError(f"{where}: {key!r} must hold strings")
    return names


def automaton_to_dict(a: Automaton) -> dict[str, Any]:
    if isinstance(a, DeterministicSA):
        return {
            "type": "sa",
            "states": list(a.states),
            "alphabet": list(a.alphabet),
            "transitions": a.named_transitions(),
        }
    return {
        "type": "gsa",
        "states": list(a.states),
        "alphabet": list(a.alphabet),
        "matrices": {x: a.matrices[x].to_literal() for x in a.alphabet},
    }


def automaton_from_dict(obj: Any) -> Automaton:
    where = "automaton"
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected a JSON object")
    kind = obj.get("type")
    if kind not in ("sa", "gsa"):
        raise FormatError(f"{where}: 'type' must be 'sa' or 'gsa'")
    if ("transitions" in obj) == ("matrices" in obj):
        raise FormatError(f"{where}: exactly one of 'transitions' and 'matrices' is required")
    states = _names(obj, "states", where)
    alphabet = _names(obj, "alphabet", where)
    try:
        if kind == "sa":
            transitions = _require(obj, "transitions", dict, where)
            for x, mapping in transitions.items():
                if not isinstance(mapping, dict):
                    raise FormatError(f"{where}: transitions for {x!r} must be an object")
            return DeterministicSA.from_named(states, alphabet, transitions)
        matrices = _require(obj, "matrices", dict, where)
        return GeneralizedSA(
            states, alphabet, {x: ratmat.from_literal(m) for x, m in matrices.items()}
        )
    except (AutomatonError, MatrixError, TypeError) as exc:
        raise FormatError(f"{where}: {exc}") from exc


def decomposition_to_dict(d: Decomposition) -> dict[str, Any]:
    return {
        "order": d.order,
        "terms": [
            {"coeff": format_rational(c), "basis": b.to_literal()} for c, b in d.terms
        ],
    }


def decomposition_from_dict(obj: Any) -> Decomposition:
    where = "decomposition"
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected a JSON object")
    order = _require(obj, "order", int, where)
    terms = _require(obj, "terms", list, where)
    try:
        return Decomposition(
            order,
            tuple(
                Term(ratmat.parse_rational(t["coeff"]), ratmat.from_literal(t["basis"]))
                for t in terms
            ),
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{where}: malformed term") from exc
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def source_to_dict(s: DependentSource) -> dict[str, Any]:
    return {
        "input_alphabet": list(s.input_alphabet),
        "output_alphabet": list(s.output_alphabet),
        "gamma": {
            x: {z: format_rational(w) for z, w in s.gamma[x].items() if w}
            for x in s.input_alphabet
        },
        "probabilistic": s.is_probabilistic,
    }


def source_from_dict(obj: Any) -> DependentSource:
    where = "source"
    if isinstance(obj, dict) and "source" in obj and "machine" in obj:
        obj = obj["source"]
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected a JSON object")
    ins = _names(obj, "input_alphabet", where)
    outs = _names(obj, "output_alphabet", where)
    gamma = _require(obj, "gamma", dict, where)
    try:
        table = {
            x: {z: ratmat.parse_rational(w) for z, w in row.items()}
            for x, row in gamma.items()
        }
        s = DependentSource(ins, outs, table)
    except (AttributeError, AutomatonError, MatrixError) as exc:
        raise FormatError(f"{where}: {exc}") from exc
    declared = obj.get("probabilistic")
    if declared is not None and declared != s.is_probabilistic:
        raise FormatError(f"{where}: 'probabilistic' flag contradicts the weights")
    return s


def factorization_to_dict(f: Factorization) -> dict[str, Any]:
    return {
        "source": source_to_dict(f.source),
        "machine": automaton_to_dict(f.machine),
        "basis": {z: b.to_literal() for z, b in zip(f.output_alphabet, f.basis)},
    }


def factorization_from_dict(obj: Any) -> Factorization:
    where = "factorization"
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected a JSON object")
    source = source_from_dict(_require(obj, "source", dict, where))
    machine = automaton_from_dict(_require(obj, "machine", dict, where))
    if not isinstance(machine, DeterministicSA):
        raise FormatError(f"{where}: machine must be of type 'sa'")
    basis_obj = _require(obj, "basis", dict, where)
    if set(basis_obj) != set(machine.alphabet):
        raise FormatError(f"{where}: basis keys must match the machine alphabet")
    try:
        basis = tuple(ratmat.from_literal(basis_obj[z]) for z in machine.alphabet)
        return Factorization(source, machine, basis)
    except (AutomatonError, MatrixError) as exc:
        raise FormatError(f"{where}: {exc}") from exc


def dumps(obj: dict[str, Any]) -> str:
    return json.dumps(obj, indent=2) + "\n"


def read_json(path: Union[str, Path]) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from exc


def load_automaton(path) -> Automaton:
    return automaton_from_dict(read_json(path))


def load_factorization(path) -> Factorization:
    return factorization_from_dict(read_json(path))


def load_source(path) -> DependentSource:
    return source_from_dict(read_json(path))
