"""Command-line frontend.

Exit codes: 0 when the query holds (true, SAT, valid, or plain success),
1 when it does not (false, UNSAT, invalid), 2 on usage or input errors,
3 when a search budget ran out.
"""

from __future__ import annotations

import argparse
import json
import sys

from .awareness import AwarenessStructure, parse_lga, print_lga, quasi_ndm_to_awareness
from .errors import DoxaError, ResourceLimitError
from .mab import MAB, eval_mab
from .ndm import NDM, QuasiNDM, cmab_to_ndm, eval_ndm, filtrate, ndm_to_cmab
from .awareness import awareness_to_quasi_ndm, translate
from .solver import (
    DEFAULT_NODE_BUDGET,
    check_axiom_schemas,
    sat_lda,
)
from .syntax import Not, agents, parse_formula, print_formula, subformulas

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_ERROR = 2
EXIT_LIMIT = 3


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_json(path: str) -> dict:
    return json.loads(_read_text(path))


def _formula_text(args) -> str:
    if args.formula is not None:
        return args.formula
    return _read_text(args.input)


def _agent_count(args, text: str) -> int:
    if args.agents is not None:
        return args.agents
    # Default: the largest agent index the formula mentions.
    probe = parse_formula(text, 1_000_000)
    return max(agents(probe), default=1)


def _emit(args, obj: dict) -> None:
    _write_text(getattr(args, "output", None), json.dumps(obj, indent=2))


def cmd_parse(args) -> int:
    text = _formula_text(args)
    f = parse_formula(text, _agent_count(args, text))
    _write_text(args.output, print_formula(f))
    return EXIT_TRUE


def cmd_translate(args) -> int:
    text = _formula_text(args)
    f = parse_formula(text, _agent_count(args, text))
    _write_text(args.output, print_lga(translate(f)))
    return EXIT_TRUE


def cmd_mc(args) -> int:
    obj = _load_json(args.model)
    text = _formula_text(args)
    if "base" in obj:
        model = MAB.from_json(obj)
        f = parse_formula(text, model.n_agents)
        value = eval_mab(model, f)
    elif "worlds" in obj:
        model = QuasiNDM.from_json(obj)
        f = parse_formula(text, model.n_agents)
        world = args.world if args.world is not None else model.worlds[0]
        value = eval_ndm(model, world, f)
    else:
        raise DoxaError("model JSON is neither a belief model nor a notional model")
    _write_text(args.output, "true" if value else "false")
    return EXIT_TRUE if value else EXIT_FALSE


def cmd_sat(args) -> int:
    text = _formula_text(args)
    f = parse_formula(text, _agent_count(args, text))
    result = sat_lda(f, node_budget=args.budget)
    _emit(args, result.to_json())
    return EXIT_TRUE if result.is_sat else EXIT_FALSE


def cmd_valid(args) -> int:
    text = _formula_text(args)
    f = parse_formula(text, _agent_count(args, text))
    counter = sat_lda(Not(f), node_budget=args.budget)
    obj = {"schema": 1, "valid": not counter.is_sat}
    if counter.is_sat:
        obj["countermodel"] = counter.to_json()["model"]
    _emit(args, obj)
    return EXIT_FALSE if counter.is_sat else EXIT_TRUE


def cmd_filtrate(args) -> int:
    model = QuasiNDM.from_json(_load_json(args.model))
    text = _formula_text(args)
    f = parse_formula(text, model.n_agents)
    result = filtrate(model, subformulas(f))
    _emit(args, {"schema": 1, **result.to_json()})
    return EXIT_TRUE


def cmd_convert(args) -> int:
    obj = _load_json(args.model)
    direction = args.direction
    if direction == "mab-ndm":
        ndm, world = cmab_to_ndm(MAB.from_json(obj))
        out = {"schema": 1, "model": ndm.to_json(), "world": world}
    elif direction == "ndm-mab":
        model = NDM.from_json(obj)
        world = args.world if args.world is not None else model.worlds[0]
        out = {"schema": 1, "model": ndm_to_cmab(model, world).to_json()}
    elif direction == "ndm-awareness":
        model = QuasiNDM.from_json(obj)
        out = {"schema": 1, "model": quasi_ndm_to_awareness(model).to_json()}
    elif direction == "awareness-ndm":
        structure = AwarenessStructure.from_json(obj)
        out = {"schema": 1, "model": awareness_to_quasi_ndm(structure).to_json()}
    else:
        raise DoxaError(f"unknown direction {direction!r}")
    _emit(args, out)
    return EXIT_TRUE


def cmd_axioms(args) -> int:
    report = check_axiom_schemas(args.depth, args.trials, args.seed)
    _emit(args, report.to_json())
    return EXIT_TRUE if report.ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doxa",
        description="Reasoner for explicit and implicit beliefs over belief bases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_formula_opts(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("-f", "--formula", help="formula given inline")
        group.add_argument("-i", "--input", help="file containing the formula ('-' for stdin)")

    def add_common(p, budget=False):
        p.add_argument("--agents", type=int, help="declared agent count "
                       "(default: the largest index mentioned)")
        p.add_argument("-o", "--output", help="output file ('-' for stdout)")
        if budget:
            p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET,
                           help="tableau node budget")

    p = sub.add_parser("parse", help="echo the canonical form of a formula")
    add_formula_opts(p)
    add_common(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("mc", help="model-check a formula against a model file")
    p.add_argument("-m", "--model", required=True, help="model JSON file")
    p.add_argument("--world", help="evaluation world for notional models")
    add_formula_opts(p)
    add_common(p)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("sat", help="decide satisfiability")
    add_formula_opts(p)
    add_common(p, budget=True)
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("valid", help="decide validity")
    add_formula_opts(p)
    add_common(p, budget=True)
    p.set_defaults(func=cmd_valid)

    p = sub.add_parser("translate", help="translate into the awareness language")
    add_formula_opts(p)
    add_common(p)
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("filtrate", help="filtrate a notional model by a formula's subformulas")
    p.add_argument("-m", "--model", required=True, help="notional model JSON file")
    add_formula_opts(p)
    add_common(p)
    p.set_defaults(func=cmd_filtrate)

    p = sub.add_parser("convert", help="convert between model formats")
    p.add_argument("-m", "--model", required=True, help="model JSON file")
    p.add_argument(
        "--direction",
        required=True,
        choices=["mab-ndm", "ndm-mab", "ndm-awareness", "awareness-ndm"],
    )
    p.add_argument("--world", help="root world for ndm-mab")
    p.add_argument("-o", "--output", help="output file ('-' for stdout)")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("axioms", help="run the axiom schema harness")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", help="output file ('-' for stdout)")
    p.set_defaults(func=cmd_axioms)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (DoxaError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
