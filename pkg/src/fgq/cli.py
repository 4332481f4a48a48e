"""``fgq`` command line.

Exit status: 0 when every check passes, 1 when a mathematical check fails,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import quandle as qd
from .endo import (
    Endo,
    InnerCertificate,
    abelianization,
    apply,
    check_inner_certificate,
    endo_power,
    inner_witness_rank2,
)
from .expr import evaluate
from .nil2 import area, area_via_magnus, exponent_vector
from .report import Report
from .suciu import (
    invariant_scan,
    make_fk,
    make_fk_inverse,
    nonconjugacy_certificate,
    verify_lemma,
    xk_closed_form,
)
from .word import parse

DEFAULT_SEED = 1729
FULL_K_MAX = 200
INVARIANT_K_MAX = 10**6

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_json(path: str) -> dict:
    try:
        return json.loads(_read_source(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON ({exc})") from exc


def default_seed() -> int:
    raw = os.environ.get("FGQ_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"FGQ_SEED must be an integer, got {raw!r}") from None


# -- commands ---------------------------------------------------------------


def cmd_word(expr: str, rank: int = 2) -> Report:
    w = evaluate(expr, rank)
    return Report("word", inputs={"expr": expr, "rank": rank}, result=str(w))


def cmd_area(word: Optional[str] = None, xk: Optional[int] = None) -> Report:
    if (word is None) == (xk is None):
        raise UsageError("give either a word or --xk K")
    if xk is not None:
        if xk < 1:
            raise UsageError("--xk needs K >= 1")
        w = xk_closed_form(xk)
    else:
        w = parse(word, 2)
    vec = exponent_vector(w)
    if not vec.is_zero():
        raise UsageError(f"exponent vector {tuple(vec)} is not zero; area needs a commutator-subgroup word")
    value = area(w)
    report = Report("area", inputs={"word": str(w)} if xk is None else {"xk": xk}, result=str(value))
    oracle = area_via_magnus(w)
    report.add("magnus_agrees", oracle == value, f"magnus XY coefficient = {oracle}")
    return report


def cmd_verify_suciu(
    k_max: int, invariant_only: bool = False, seed: int = DEFAULT_SEED, samples: int = 200
) -> Report:
    limit = INVARIANT_K_MAX if invariant_only else FULL_K_MAX
    if not 2 <= k_max <= limit:
        raise UsageError(f"--k-max must lie in [2, {limit}]" + ("" if invariant_only else "; use --invariant-only beyond"))
    report = Report(
        "verify-suciu",
        inputs={"k_max": k_max, "invariant_only": invariant_only, "seed": seed},
    )
    if invariant_only:
        scan = invariant_scan(k_max)
        report.extend(scan, prefix="invariants.")
        report.result = scan.result
        return report
    for k in range(1, k_max + 1):
        report.extend(verify_lemma(k).to_report(), prefix=f"k={k}.lemma.")
        report.extend(qd.type_is_infinite_certificate(k), prefix=f"k={k}.")
    nonconj = nonconjugacy_certificate(k_max)
    report.extend(nonconj, prefix="nonconjugacy.")
    for k in range(1, min(k_max, 3) + 1):
        suite = qd.symbolic_axiom_suite(make_fk(k), make_fk_inverse(k), samples, 20, seed)
        report.extend(suite, prefix=f"k={k}.galex_axioms.")
    report.add(
        "quandles_non_isomorphic",
        report.passed,
        "f_k pairwise non-conjugate => GAlex(F, f_k) pairwise non-isomorphic",
    )
    report.hypotheses.extend(
        h
        for h in (qd.KNOT_QUANDLE_CONNECTED, qd.CONNECTED_GALEX_CRITERION)
        if h not in report.hypotheses
    )
    report.result = nonconj.result
    return report


def cmd_check_report(doc: dict) -> Report:
    """Re-verify every certificate carried by a saved report."""
    try:
        saved = Report.from_dict(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"not a valid report: {exc}") from exc
    report = Report("check-report", inputs={"command": saved.command, "certificates": len(saved.certificates)})
    if not saved.certificates:
        raise UsageError("report carries no certificates")
    for i, obj in enumerate(saved.certificates):
        label = f"k={obj['k']}" if "k" in obj else f"#{i}"
        try:
            cert = InnerCertificate.from_json_obj(obj)
        except (KeyError, TypeError, ValueError) as exc:
            report.add(f"{label}.certificate", False, f"unreadable: {exc}")
            continue
        report.add(f"{label}.certificate", check_inner_certificate(cert), f"e^{cert.m} = I({cert.witness})")
    return report


def cmd_endo(action: str, endo: Endo, argument: Optional[str]) -> Report:
    report = Report("endo", inputs={"action": action, "endo": endo.to_json_obj()})
    if action == "show":
        report.result = endo.to_json_obj()
    elif action == "apply":
        if argument is None:
            raise UsageError("apply needs a word")
        report.inputs["word"] = argument
        report.result = str(apply(endo, parse(argument, endo.rank)))
    elif action == "power":
        if argument is None or not argument.lstrip("-").isdigit() or int(argument) < 0:
            raise UsageError("power needs a nonnegative integer")
        report.inputs["n"] = int(argument)
        report.result = endo_power(endo, int(argument)).to_json_obj()
    elif action == "abelianization":
        report.result = abelianization(endo).tolist()
    elif action == "witness":
        x = inner_witness_rank2(endo)
        report.result = "not inner (nontrivial on the abelianization)" if x is None else str(x)
    return report


def _quandle_arg(path: str) -> qd.FiniteQuandle:
    try:
        return qd.FiniteQuandle.from_json_obj(_load_json(path))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _require_quandle(q: qd.FiniteQuandle, path: str) -> None:
    if not q.axioms.ok:
        raise UsageError(f"{path}: table violates the quandle axioms ({q.axioms})")


def cmd_quandle(args: argparse.Namespace) -> Report:
    sub = args.quandle_command
    if sub == "galex":
        if args.cyclic is not None:
            if args.unit is None:
                raise UsageError("--cyclic needs --unit")
            group = qd.cyclic_group(args.cyclic)
            phi = qd.multiplication_automorphism(args.cyclic, args.unit)
            inputs = {"cyclic": args.cyclic, "unit": args.unit}
        elif args.group is not None:
            try:
                group = qd.FiniteGroup.from_json_obj(_load_json(args.group))
            except ValueError as exc:
                raise UsageError(f"{args.group}: {exc}") from exc
            if args.perm is None:
                raise UsageError("--group needs --perm")
            try:
                phi = tuple(int(v) for v in args.perm.split(","))
            except ValueError:
                raise UsageError(f"--perm must be comma-separated integers, got {args.perm!r}") from None
            inputs = {"group": args.group, "perm": list(phi)}
        else:
            raise UsageError("galex needs --cyclic N --unit U or --group FILE --perm LIST")
        try:
            q = qd.galex_finite(group, phi)
        except qd.NotAnAutomorphismError as exc:
            raise UsageError(str(exc)) from exc
        report = Report("quandle galex", inputs=inputs, result=q.to_json_obj())
        axioms = q.axioms
        report.add("axioms", axioms.ok, str(axioms))
        return report

    q = _quandle_arg(args.files[0])
    if sub == "check":
        axioms = q.axioms
        report = Report("quandle check", inputs={"file": args.files[0]})
        report.add("idempotent", axioms.idempotent)
        report.add("right_invertible", axioms.right_invertible)
        report.add("self_distributive", axioms.self_distributive)
        return report
    _require_quandle(q, args.files[0])
    if sub == "type":
        return Report("quandle type", inputs={"file": args.files[0]}, result=str(q.qtype))
    if sub == "connected":
        return Report("quandle connected", inputs={"file": args.files[0]}, result=str(q.connected).lower())
    if sub == "iso":
        if len(args.files) != 2:
            raise UsageError("iso needs two files")
        q2 = _quandle_arg(args.files[1])
        _require_quandle(q2, args.files[1])
        try:
            found = qd.isomorphic(q, q2)
        except qd.CarrierTooLargeError as exc:
            raise UsageError(str(exc)) from exc
        result = "not isomorphic" if found is None else "isomorphic " + " ".join(f"{x}->{y}" for x, y in enumerate(found))
        return Report("quandle iso", inputs={"files": list(args.files)}, result=result)
    raise UsageError(f"unknown quandle command {sub!r}")


# -- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fgq", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("word", help="evaluate a word expression")
    p.add_argument("expr")
    p.add_argument("--rank", type=int, default=2)

    p = sub.add_parser("area", help="image of a commutator-subgroup word in [F,F]/[[F,F],F]")
    p.add_argument("word", nargs="?")
    p.add_argument("--xk", type=int, help="use the closed-form x_k")

    p = sub.add_parser("verify-suciu", help="run all certificates for k = 1..k_max")
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--invariant-only", action="store_true")
    p.add_argument("--seed", type=int, default=None, help=f"RNG seed (default $FGQ_SEED or {DEFAULT_SEED})")
    p.add_argument("--samples", type=int, default=200, help="random triples per symbolic axiom suite")

    p = sub.add_parser("check-report", help="re-verify the certificates in a saved JSON report")
    p.add_argument("file")

    p = sub.add_parser("endo", help="endomorphisms in the JSON interchange format")
    p.add_argument("action", choices=["show", "apply", "power", "abelianization", "witness"])
    p.add_argument("argument", nargs="?")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", help="endomorphism JSON file, '-' for stdin")
    src.add_argument("--fk", type=int, help="use f_k")

    p = sub.add_parser("quandle", help="finite quandles")
    qsub = p.add_subparsers(dest="quandle_command", required=True)
    for name in ("check", "type", "connected"):
        qp = qsub.add_parser(name)
        qp.add_argument("files", nargs=1, metavar="file")
    qp = qsub.add_parser("iso")
    qp.add_argument("files", nargs=2, metavar="file")
    qp = qsub.add_parser("galex")
    qp.add_argument("--cyclic", type=int)
    qp.add_argument("--unit", type=int)
    qp.add_argument("--group")
    qp.add_argument("--perm")
    for qp in qsub.choices.values():
        qp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    for name, sp in sub.choices.items():
        if name != "quandle":
            sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    return parser


def run(args: argparse.Namespace) -> Report:
    if args.command == "word":
        return cmd_word(args.expr, args.rank)
    if args.command == "area":
        return cmd_area(args.word, args.xk)
    if args.command == "verify-suciu":
        seed = default_seed() if args.seed is None else args.seed
        return cmd_verify_suciu(args.k_max, args.invariant_only, seed, args.samples)
    if args.command == "check-report":
        return cmd_check_report(_load_json(args.file))
    if args.command == "endo":
        if args.fk is not None:
            if args.fk < 1:
                raise UsageError("--fk needs k >= 1")
            endo = make_fk(args.fk)
        else:
            endo = Endo.from_json_obj(_load_json(args.file))
        return cmd_endo(args.action, endo, args.argument)
    if args.command == "quandle":
        return cmd_quandle(args)
    raise UsageError(f"unknown command {args.command!r}")


def render(report: Report, as_json: bool) -> str:
    if as_json:
        return report.to_json()
    if report.command == "quandle galex":
        # bare table so that the output pipes into the other quandle commands
        return json.dumps(report.result)
    if isinstance(report.result, (dict, list)) and not report.checks:
        return json.dumps(report.result)
    return report.to_text()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run(args)
    except (UsageError, ValueError) as exc:
        print(f"fgq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(report, args.json)
    if text:
        print(text)
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
