"""The hoopkit command line.

Exit codes: 0 for success / accept / countermodel found, 1 for reject /
unexpected countermodel / invalid, 2 for usage and input errors.  All output
is deterministic given the same inputs and bounds.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import algebra, corpus, formula, proofs, search, semantics


def _read(path: str) -> str:
    return Path(path).read_text()


def _load_model(spec: str):
    if spec == "dyadic":
        return algebra.DYADIC
    alg = algebra.load_algebra(_read(spec))
    result = algebra.validate_pocrim(alg)
    if not result:
        raise ValueError(f"model file {spec}: {result.violation}")
    return alg


def _parse_assignment(text: str, model) -> dict:
    assignment = {}
    if not text:
        return assignment
    for item in text.split(","):
        name, _, value = item.partition("=")
        if not _:
            raise ValueError(f"bad assignment item {item!r}; use NAME=VALUE")
        if model is algebra.DYADIC:
            assignment[name.strip()] = algebra.parse_dyadic(value)
        else:
            assignment[name.strip()] = int(value)
    return assignment


def _print_algebra(alg: algebra.FiniteAlgebra):
    sys.stdout.write(algebra.dump_algebra(alg))


# ---------------------------------------------------------------------------
# Verbs
# ---------------------------------------------------------------------------


def _cmd_parse(args) -> int:
    f = formula.parse(args.formula)
    print(json.dumps(formula.to_record(f)))
    print(formula.pretty(f))
    return 0


def _cmd_prove_check(args) -> int:
    derivation = proofs.load_derivation(_read(args.file))
    result = proofs.check_derivation(derivation, proofs.LOGICS[args.logic])
    if result:
        print(f"accepted in {args.logic}: {derivation.conclusion}")
        return 0
    print(f"rejected in {args.logic} at node {list(result.path)}: {result.message}")
    return 1


def _cmd_check_model(args) -> int:
    alg = algebra.load_algebra(_read(args.file))
    result = algebra.validate_pocrim(alg)
    if result:
        print(f"valid pocrim of size {alg.size}")
        return 0
    print(f"not a pocrim: {result.violation}")
    return 1


def _cmd_classify(args) -> int:
    alg = algebra.load_algebra(_read(args.file))
    result = algebra.validate_pocrim(alg)
    if not result:
        print(f"not a pocrim: {result.violation}")
        return 1
    flags = algebra.classify(alg)
    print(f"size {alg.size}")
    for name in ("bounded", "involutive", "idempotent", "hoop", "wajsberg", "coop", "boolean"):
        print(f"{name}: {'yes' if getattr(flags, name) else 'no'}")
    if flags.bounded:
        print(f"annihilator: {flags.annihilator}")
    return 0


def _cmd_eval(args) -> int:
    model = _load_model(args.model)
    assignment = _parse_assignment(args.assign, model)
    value = semantics.evaluate(formula.parse(args.formula), model, assignment)
    print(value)
    return 0


def _cmd_valid(args) -> int:
    model = _load_model(args.model)
    if model is algebra.DYADIC:
        raise ValueError("validity needs a finite model; the dyadic model is not exhaustible")
    sequent = proofs.parse_sequent(args.sequent)
    result = semantics.valid_in(sequent, model, assignment_cap=args.cap)
    if result:
        print(f"valid in all {model.size}^v assignments")
        return 0
    witness = ", ".join(f"{k}={v}" for k, v in sorted(result.countermodel.items()))
    print(f"invalid; falsified by {witness or '(empty assignment)'}")
    return 1


def _cmd_enumerate(args) -> int:
    config = search.SearchConfig(
        max_size=args.max_size,
        iso_pruning=not args.no_prune,
        node_budget=args.budget,
    )
    class_filter = search.ClassFilter.from_name(args.klass)
    count = 0
    try:
        for alg in search.enumerate_algebras(config, class_filter):
            count += 1
            print(f"# algebra {count} (size {alg.size}, key {search.canonical_key(alg)})")
            _print_algebra(alg)
    except search.BudgetExceeded as e:
        print(f"# incomplete: {e}")
        return 1
    print(f"# total: {count} algebras of size <= {args.max_size} in class {args.klass}")
    return 0


def _cmd_refute(args) -> int:
    assumptions, goals = search.parse_problem_file(_read(args.file))
    if len(goals) != 1:
        raise ValueError(f"expected exactly one goal, found {len(goals)}")
    config = search.SearchConfig(max_size=args.max_size, node_budget=args.budget)
    result = search.refute_clauses(assumptions, goals[0], config)
    if result is None:
        print(f"no countermodel up to size {args.max_size}")
        return 1
    env = ", ".join(f"{k}={v}" for k, v in sorted(result.constants.items()))
    witness = ", ".join(f"{k}={v}" for k, v in sorted(result.goal_witness.items()))
    print(f"countermodel of size {result.algebra.size}")
    if env:
        print(f"constants: {env}")
    print(f"goal fails at: {witness or '(ground)'}")
    _print_algebra(result.algebra)
    return 0


def _cmd_corpus(args) -> int:
    if args.action == "list":
        for problem in corpus.PROBLEMS:
            print(f"{problem.id:18} {problem.expected:18} {problem.title}")
        return 0
    if args.action == "export":
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        problems = corpus.PROBLEMS
        if args.only:
            problems = [corpus.get_problem(pid) for pid in args.only]
        exporter = corpus.export_prover9 if args.format == "prover9" else corpus.export_tptp
        for problem in problems:
            path = out / corpus.export_filename(problem, args.format)
            path.write_text(exporter(problem))
            print(f"wrote {path}")
        return 0
    # run
    rows, reports = corpus.run_corpus(
        max_size=args.max_size,
        hoop_size=args.hoop_size,
        dyadic_exponent=args.dyadic_exponent,
        jobs=args.jobs,
    )
    print(f"{'problem':18} {'expected':18} {'models':>7} {'tuples':>9} violations")
    failed = False
    for row in rows:
        print(
            f"{row.problem_id:18} {row.expected:18} {row.models_checked:>7} "
            f"{row.tuples_checked:>9} {len(row.violations)}"
        )
        for violation in row.violations:
            failed = True
            print(f"  ! {violation}")
    print(f"{'oracle':37} {'models':>7} {'tuples':>9} violations")
    for report in reports:
        print(
            f"{report.name:37} {report.models_checked:>7} "
            f"{report.tuples_checked:>9} {len(report.violations)}"
        )
        for violation in report.violations:
            failed = True
            print(f"  ! {violation}")
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hoopkit",
        description="Substructural logics with halving: proof checking, finite models, countermodel search.",
    )
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for corpus runs")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("parse", help="parse a formula and print its record and minimal-bracket form")
    p.add_argument("formula")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("prove-check", help="check a derivation file against a logic")
    p.add_argument("--logic", required=True, choices=sorted(proofs.LOGICS))
    p.add_argument("file")
    p.set_defaults(func=_cmd_prove_check)

    p = sub.add_parser("check-model", help="validate an algebra file as a pocrim")
    p.add_argument("file")
    p.set_defaults(func=_cmd_check_model)

    p = sub.add_parser("classify", help="print the class flags of an algebra file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("eval", help="evaluate a formula in a model")
    p.add_argument("--model", required=True, help="algebra file, or 'dyadic'")
    p.add_argument("--assign", default="", help="e.g. P=2,Q=0 (indices) or P=1/2 (dyadic)")
    p.add_argument("formula")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("valid", help="decide validity of a sequent in a finite model")
    p.add_argument("--model", required=True)
    p.add_argument("--cap", type=int, default=100_000, help="assignment-space cap")
    p.add_argument("sequent", help="e.g. 'A, B |- C' or '|- A -o A'")
    p.set_defaults(func=_cmd_valid)

    p = sub.add_parser("enumerate", help="enumerate pocrims up to a size bound")
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--class", dest="klass", default="pocrim",
                   help="pocrim|bounded|hoop|wajsberg|involutive|idempotent|coop|boolean")
    p.add_argument("--no-prune", action="store_true", help="keep isomorphic copies")
    p.add_argument("--budget", type=int, default=None, help="cell-assignment budget")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("refute", help="search for a finite countermodel to a problem file")
    p.add_argument("file")
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=_cmd_refute)

    p = sub.add_parser("corpus", help="list, run, or export the problem bank")
    p.add_argument("action", choices=("list", "run", "export"))
    p.add_argument("--format", choices=("prover9", "tptp"), default="prover9")
    p.add_argument("--out", default="corpus_out")
    p.add_argument("--only", nargs="*", default=None, help="restrict export to these problem ids")
    p.add_argument("--max-size", type=int, default=5)
    p.add_argument("--hoop-size", type=int, default=5)
    p.add_argument("--dyadic-exponent", type=int, default=6)
    p.set_defaults(func=_cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        OSError,
        ValueError,
        KeyError,
        json.JSONDecodeError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
