"""Command-line frontend: check, interpret, verify.

Exit codes: 0 pass, 1 property failure, 2 syntax error, 3 rule
violation, 4 configuration error.  Reports are deterministic for a
fixed (input, seed) and serialize infinities and indeterminates as
tagged strings, never as floats.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .config import DEFAULT_SEED
from .errors import (
    GoiError,
    MissingVariableError,
    ProofSyntaxError,
    RuleApplicationError,
)
from .measurement import is_indeterminate
from .verify import CheckRecord, run_suite

SCHEMA = "goi-report/1"

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_SYNTAX = 2
EXIT_RULE = 3
EXIT_CONFIG = 4


def _json_value(x):
    if is_indeterminate(x):
        return "indeterminate"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return x
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, dict):
        return {str(k): _json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_value(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    try:
        import numpy as np

        if isinstance(x, np.floating):
            return _json_value(float(x))
        if isinstance(x, np.integer):
            return int(x)
        if isinstance(x, np.bool_):
            return bool(x)
    except ImportError:  # pragma: no cover
        pass
    return repr(x)


def _emit(report: dict, out: str | None):
    text = json.dumps(_json_value(report), indent=2, sort_keys=True)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _records_to_json(records: list[CheckRecord]) -> list[dict]:
    return [
        {"name": r.name, "status": r.status, "data": r.data, "reproducer": r.reproducer}
        for r in records
    ]


def cmd_check(args) -> int:
    from .logic.syntax import check_proof, fmt, parse_proof

    try:
        text = open(args.proof, encoding="utf-8").read()
    except OSError as exc:
        print(f"cannot read {args.proof}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        proof = parse_proof(text)
    except ProofSyntaxError as exc:
        _emit({"schema": SCHEMA, "command": "check", "status": "syntax-error", "error": str(exc)}, args.out)
        return EXIT_SYNTAX
    try:
        sequent = check_proof(proof)
    except RuleApplicationError as exc:
        _emit(
            {
                "schema": SCHEMA,
                "command": "check",
                "status": "rule-error",
                "error": str(exc),
                "rule": exc.rule,
                "path": list(exc.path),
            },
            args.out,
        )
        return EXIT_RULE
    _emit(
        {
            "schema": SCHEMA,
            "command": "check",
            "status": "ok",
            "sequent": [fmt(f) for f in sequent],
        },
        args.out,
    )
    return EXIT_OK


def cmd_interpret(args) -> int:
    from .logic.goi1 import interpret_mll_goi1
    from .logic.locations import allocate_goi1, allocate_matricial
    from .logic.matricial import default_basis, interpret_mall_matricial, parse_basis, sequent_dual_witnesses
    from .logic.syntax import check_proof, fmt, parse_proof
    from .groupoid import compose, nilpotency
    from .projects import is_promising, orthogonal_witness_suite

    try:
        text = open(args.proof, encoding="utf-8").read()
    except OSError as exc:
        print(f"cannot read {args.proof}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        proof = parse_proof(text)
        sequent = check_proof(proof)
    except ProofSyntaxError as exc:
        _emit({"schema": SCHEMA, "command": "interpret", "status": "syntax-error", "error": str(exc)}, args.out)
        return EXIT_SYNTAX
    except RuleApplicationError as exc:
        _emit({"schema": SCHEMA, "command": "interpret", "status": "rule-error", "error": str(exc)}, args.out)
        return EXIT_RULE

    if args.backend == "goi1":
        try:
            plan = allocate_goi1(proof)
            pi, sigma = interpret_mll_goi1(proof, plan)
        except GoiError as exc:
            _emit({"schema": SCHEMA, "command": "interpret", "status": "error", "error": str(exc)}, args.out)
            return EXIT_CONFIG
        prod = compose(pi, sigma)
        res = nilpotency(prod) if not prod.is_zero() else None
        report = {
            "schema": SCHEMA,
            "command": "interpret",
            "backend": "goi1",
            "status": "ok",
            "sequent": [fmt(f) for f in sequent],
            "addresses": [{"formula": fmt(s.formula), "word": s.word or "e", "slot": s.slot} for s in plan.sites],
            "proof_links": len(pi.cyls) + len(pi.table),
            "cut_links": len(sigma.cyls) + len(sigma.table),
            "cut_product_nilpotency": None if res is None else {"kind": res.kind, "degree": res.degree},
        }
        _emit(report, args.out)
        return EXIT_OK

    # matricial backend
    try:
        if args.basis in (None, "default"):
            basis = default_basis()
        else:
            basis = parse_basis(open(args.basis, encoding="utf-8").read())
    except OSError as exc:
        print(f"cannot read basis: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ProofSyntaxError as exc:
        _emit({"schema": SCHEMA, "command": "interpret", "status": "syntax-error", "error": str(exc)}, args.out)
        return EXIT_SYNTAX
    try:
        plan = allocate_matricial(proof, basis)
        project = interpret_mall_matricial(proof, basis, plan)
    except MissingVariableError as exc:
        _emit({"schema": SCHEMA, "command": "interpret", "status": "config-error", "error": str(exc)}, args.out)
        return EXIT_CONFIG
    except GoiError as exc:
        _emit({"schema": SCHEMA, "command": "interpret", "status": "error", "error": str(exc)}, args.out)
        return EXIT_PROPERTY
    report_p = is_promising(project)
    witnesses = sequent_dual_witnesses(plan, basis)
    rows = orthogonal_witness_suite(project, witnesses)
    support = len(project.op.table) if project.dialectal.is_symbolic else int((abs(project.dialectal.dense_payload().mat) > 1e-12).sum())
    report = {
        "schema": SCHEMA,
        "command": "interpret",
        "backend": "matricial",
        "status": "ok",
        "sequent": [fmt(f) for f in sequent],
        "carrier": list(project.carrier),
        "wager": project.wager,
        "dialect_blocks": list(project.dialect.blocks),
        "pseudo_trace": list(project.pseudo_trace.weights),
        "operator_support": support,
        "promising": {
            "dialect": report_p.dialect_ok,
            "pseudo_trace": report_p.pseudo_trace_ok,
            "wager": report_p.wager_ok,
            "symmetry": report_p.symmetry_ok,
            "traces": report_p.traces_ok,
        },
        "witness_table": [
            {"witness": r.witness, "sca": r.sca, "verdict": r.verdict, "suspicious": r.suspicious} for r in rows
        ],
    }
    _emit(report, args.out)
    all_orth = all(r.verdict == "orthogonal" for r in rows)
    return EXIT_OK if report_p.all_pass and all_orth else EXIT_PROPERTY


def cmd_verify(args) -> int:
    try:
        records = run_suite(args.suite, args.seed, args.trials)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG
    report = {
        "schema": SCHEMA,
        "command": "verify",
        "suite": args.suite,
        "seed": args.seed,
        "trials": args.trials,
        "checks": _records_to_json(records),
        "status": "pass" if all(r.ok for r in records) else "fail",
    }
    _emit(report, args.out)
    return EXIT_OK if all(r.ok for r in records) else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="goi", description="Proof-as-operator engine: check, interpret, verify.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="parse and rule-check a proof file")
    p_check.add_argument("proof")
    p_check.add_argument("--out", default=None, help="write the JSON report here")
    p_check.set_defaults(func=cmd_check)

    p_int = sub.add_parser("interpret", help="interpret a proof against a basis")
    p_int.add_argument("proof")
    p_int.add_argument("basis", nargs="?", default="default", help="basis file, or 'default'")
    p_int.add_argument("--backend", choices=("goi1", "matricial"), default="matricial")
    p_int.add_argument("--out", default=None)
    p_int.set_defaults(func=cmd_interpret)

    p_ver = sub.add_parser("verify", help="run the property suites")
    p_ver.add_argument("--suite", choices=("identities", "coherence", "soundness", "all"), default="all")
    p_ver.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    p_ver.add_argument("--trials", type=int, default=100)
    p_ver.add_argument("--out", default=None)
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
