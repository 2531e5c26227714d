"""Command-line front end.

Exit codes: 0 success, 1 failed verification, 2 invalid input, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Any, Sequence

from . import ratmat
from .automata import (
    AutomatonError,
    DeterministicSA,
    GeneralizedSA,
    MonoidCapExceeded,
    classify_gsa,
    delta_word,
    embed_sa,
    extract_sa,
    madic,
    q_word,
    transformation_monoid,
)
from .formats import (
    FormatError,
    automaton_to_dict,
    dumps,
    factorization_to_dict,
    load_automaton,
    load_factorization,
    load_source,
)
from .ratmat import MatrixError, format_rational
from .source import factorize, sequential_product, verify_factorization

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_CAP = 3


class InputError(Exception):
    pass


def _as_gsa(a) -> GeneralizedSA:
    return embed_sa(a) if isinstance(a, DeterministicSA) else a


def parse_word(text: str, alphabet: Sequence[str]) -> tuple[str, ...]:
    """Split a word given on the command line into symbols.

    Whitespace or commas separate symbols.  A single token that is not itself
    a symbol is read one character per symbol.
    """
    tokens = [t for t in re.split(r"[\s,]+", text.strip()) if t]
    if len(tokens) == 1 and tokens[0] not in alphabet:
        tokens = list(tokens[0])
    for t in tokens:
        if t not in alphabet:
            raise InputError(f"unknown symbol {t!r}; alphabet is {list(alphabet)}")
    return tuple(tokens)


def _emit(args, payload: dict[str, Any], text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _write(path: str | None, obj: dict) -> None:
    data = dumps(obj)
    if path is None or path == "-":
        sys.stdout.write(data)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(data)


def cmd_classify(args) -> int:
    a = load_automaton(args.file)
    g = _as_gsa(a)
    label = classify_gsa(g)
    per_symbol = {
        x: sorted(ratmat.classify(g.matrices[x]), key=ratmat.MATRIX_CLASSES.index)
        for x in g.alphabet
    }
    lines = [label] + [f"  {x}: {', '.join(c)}" for x, c in per_symbol.items()]
    _emit(args, {"class": label, "symbols": per_symbol}, "\n".join(lines))
    return EXIT_OK


def cmd_decompose(args) -> int:
    g = _as_gsa(load_automaton(args.file))
    f = factorize(g, force_greedy=args.force_greedy)
    totals = {x: format_rational(f.source.row_total(x)) for x in g.alphabet}
    machine_class = classify_gsa(f.basis_gsa())
    summary = {
        "xi_size": len(f.output_alphabet),
        "weight_totals": totals,
        "machine_class": machine_class,
        "probabilistic": f.source.is_probabilistic,
    }
    fact = factorization_to_dict(f)
    text = "\n".join(
        [f"|Xi| = {len(f.output_alphabet)}"]
        + [f"  sum gamma(.|{x}) = {t}" for x, t in totals.items()]
        + [f"machine: {machine_class}"]
    )
    if args.output:
        _write(args.output, fact)
        _emit(args, summary, text)
    elif args.json:
        print(json.dumps({**summary, "factorization": fact}, indent=2))
    else:
        print(text, file=sys.stderr)
        _write(None, fact)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _as_gsa(load_automaton(args.gsa))
    f = load_factorization(args.factorization)
    if args.max_word_len < 0:
        raise InputError("--max-word-len must be nonnegative")
    try:
        report = verify_factorization(g, f, args.max_word_len)
    except AutomatonError as exc:
        raise InputError(str(exc)) from exc
    payload = {"ok": report.ok, "checked_words": report.checked_words}
    if not report.ok:
        payload.update(
            stage=report.stage,
            word=list(report.word),
            expected=report.expected.to_literal(),
            actual=report.actual.to_literal(),
        )
    _emit(args, payload, report.describe())
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_run(args) -> int:
    a = load_automaton(args.file)
    u = parse_word(args.word, a.alphabet)
    if isinstance(a, DeterministicSA):
        t = delta_word(a, u)
        images = {
            a.states[i]: (None if j is None else a.states[j]) for i, j in enumerate(t.images)
        }
        text = "\n".join(f"{s} -> {'-' if t_ is None else t_}" for s, t_ in images.items())
        _emit(args, {"word": list(u), "map": images}, text)
        return EXIT_OK
    m = q_word(a, u)
    stochastic = m.is_stochastic()
    lines = [str(m)]
    if stochastic:
        word = "".join(u) if all(len(x) == 1 for x in u) else " ".join(u)
        for i, si in enumerate(a.states):
            for j, sj in enumerate(a.states):
                lines.append(f"p({sj} | {word or 'eps'}, {si}) = {m[i, j]}")
    _emit(
        args,
        {"word": list(u), "matrix": m.to_literal(), "stochastic": stochastic},
        "\n".join(lines),
    )
    return EXIT_OK


def cmd_monoid(args) -> int:
    a = load_automaton(args.file)
    if isinstance(a, GeneralizedSA):
        try:
            a = extract_sa(a)
        except AutomatonError as exc:
            raise InputError(f"monoid enumeration needs a semiautomaton: {exc}") from exc
    elements = transformation_monoid(a, args.cap)
    entries = []
    lines = []
    for t, word in elements.items():
        images = [None if j is None else a.states[j] for j in t.images]
        entries.append({"word": list(word), "images": images})
        shown = " ".join(word) if word else "eps"
        lines.append(f"{shown}: " + " ".join("-" if s is None else s for s in images))
    lines.append(f"|T(A)| = {len(elements)}")
    _emit(args, {"states": list(a.states), "size": len(elements), "elements": entries},
          "\n".join(lines))
    return EXIT_OK


def cmd_compose(args) -> int:
    s = load_source(args.source)
    b = _as_gsa(load_automaton(args.machine))
    try:
        g = sequential_product(s, b)
    except AutomatonError as exc:
        raise InputError(str(exc)) from exc
    _write(args.output, automaton_to_dict(g))
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.m < 2:
        raise InputError("m must be at least 2")
    _write(args.output, automaton_to_dict(madic(args.m)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semiautomata",
        description="Exact semiautomata: classify, factorize, verify, run.",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="class of an automaton")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decompose", help="factorize into source and semideterministic machine")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--force-greedy", action="store_true",
                   help="use the greedy reduction even for (doubly) stochastic input")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="check a factorization against an automaton")
    p.add_argument("gsa")
    p.add_argument("factorization")
    p.add_argument("--max-word-len", type=int, default=2)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("run", help="transition matrix or map of a word")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("monoid", help="enumerate the transformation monoid")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=100_000)
    p.set_defaults(func=cmd_monoid)

    p = sub.add_parser("compose", help="sequential product of a source and a machine")
    p.add_argument("source")
    p.add_argument("machine")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("gen", help="generate an example automaton")
    p.add_argument("kind", choices=["madic"])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MonoidCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, FormatError, AutomatonError, MatrixError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
