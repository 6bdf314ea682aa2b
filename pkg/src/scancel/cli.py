"""``scancel`` command line.

Exit codes: 0 success, 1 a checked property failed (or the solver refused
an uncertified presentation), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from fractions import Fraction

from . import randlab
from .cancellation import check_c_prime, format_fraction, parse_fraction
from .constructions import (
    build_independence_family,
    build_sop_cycle_presentation,
    check_family_size,
    verify_independence,
    verify_sop_cycle,
)
from .dehn import VerificationError, is_trivial, verify
from .presentation import PresentationError, load_presentation, serialize_presentation
from .words import WordError

OK, FAILED, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(args, doc: dict, text: str) -> None:
    if args.json:
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _load(path):
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            p = load_presentation(path)
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    except PresentationError as e:
        raise InputError(f"{path}: {e}") from None
    for w in caught:
        print(f"warning: {path}: {w.message}", file=sys.stderr)
    return p


def _lambda(text: str, upper_inclusive: bool = True) -> Fraction:
    try:
        lam = parse_fraction(text)
    except ValueError as e:
        raise InputError(str(e)) from None
    ok = 0 < lam <= 1 if upper_inclusive else 0 < lam < 1
    if not ok:
        raise InputError(f"lambda {text} out of range")
    return lam


def _report_text(report, alphabet) -> str:
    lines = [
        f"C'({format_fraction(report.lam)}): {'holds' if report.holds else 'FAILS'}",
        f"symmetrized members: {report.symmetrized_size}",
        f"max piece: {report.max_piece}, max ratio: {format_fraction(report.max_ratio)}",
    ]
    v = report.violation
    if v is not None:
        lines.append(f"violation: piece {alphabet.format(v.piece)} of length {len(v.piece)} in {alphabet.format(v.member)}")
        lines.append(f"  shared with {alphabet.format(v.partner)}")
    return "\n".join(lines)


def cmd_check(args) -> int:
    p = _load(args.file)
    lam = _lambda(args.lam)
    report = check_c_prime(p, lam)
    _emit(args, report.to_json(p.alphabet), _report_text(report, p.alphabet))
    return OK if report.holds else FAILED


def cmd_solve(args) -> int:
    p = _load(args.file)
    try:
        w = p.alphabet.parse(args.word)
    except WordError as e:
        raise InputError(f"--word: {e}") from None
    try:
        vp = verify(p)
    except VerificationError as e:
        doc = {"refused": True, "certificate": e.report.to_json(p.alphabet)}
        _emit(args, doc, "refused: " + str(e) + "\n" + _report_text(e.report, p.alphabet))
        return FAILED
    trivial, trace = is_trivial(w, vp)
    doc = {"refused": False, "verdict": "trivial" if trivial else "nontrivial",
           "replace_steps": trace.replace_steps, "trace": trace.to_json(p.alphabet)}
    lines = [doc["verdict"], f"relator replacements: {trace.replace_steps}"]
    for s in trace.steps:
        lines.append(f"  {s.kind} @{s.position} -{p.alphabet.format(s.removed)} +{p.alphabet.format(s.inserted)}")
    lines.append(f"final: {p.alphabet.format(trace.final)}")
    _emit(args, doc, "\n".join(lines))
    return OK


def _check_n(kind: str, n: int) -> None:
    try:
        check_family_size(n, 1 if kind == "independence" else 3)
    except ValueError as e:
        raise InputError(str(e)) from None


def cmd_gen(args) -> int:
    _check_n(args.kind, args.n)
    os.makedirs(args.out, exist_ok=True)
    files = {}
    if args.kind == "independence":
        fam = build_independence_family(args.n)
        for label, p in (("R", fam.R), ("S", fam.S)):
            files[label] = (p, f"independence family {label}, n = {args.n}")
    else:
        p = build_sop_cycle_presentation(args.n)
        files["cycle"] = (p, f"cycle family, n = {args.n}")
    written = []
    for label, (p, comment) in files.items():
        name = f"{args.kind}_n{args.n}_{label}.pres"
        path = os.path.join(args.out, name)
        with open(path, "w", encoding="utf-8") as f:
            f.write(serialize_presentation(p, comment))
        written.append({"label": label, "path": path, "relators": len(p.relators)})
    _emit(args, {"kind": args.kind, "n": args.n, "files": written},
          "\n".join(f"wrote {w['path']} ({w['relators']} relators)" for w in written))
    return OK


def cmd_verify(args) -> int:
    _check_n(args.kind, args.n)
    if args.kind == "independence":
        fam, report = verify_independence(args.n)
        alphabet = fam.alphabet
        good = sum(e.matches for e in report.truth_table)
        text = "\n".join([
            f"independence family n = {args.n}",
            "S: " + _report_text(report.c_prime_sixth_on_S, alphabet).replace("\n", "\n   "),
            f"R: C'(1/6) {'holds' if report.c_prime_sixth_on_R.holds else 'FAILS'}",
            f"singular asphericity preconditions: {report.singular_asphericity.to_json()}",
            f"truth table: {good}/{len(report.truth_table)} entries match i in sigma",
            "OK" if report.ok else "FAILED",
        ])
    else:
        p, report = verify_sop_cycle(args.n)
        alphabet = p.alphabet
        true_entries = [(e.i, e.j) for e in report.truth_table if e.trivial]
        text = "\n".join([
            f"cycle family n = {args.n}",
            _report_text(report.c_prime_sixth, alphabet),
            f"trivial entries (i, j): {true_entries}",
            "OK" if report.ok else "FAILED",
        ])
    _emit(args, report.to_json(alphabet), text)
    return OK if report.ok else FAILED


def cmd_randlab(args) -> int:
    lam = _lambda(args.lam, upper_inclusive=False)
    try:
        cfg = randlab.RandConfig(args.n, lam, args.trials, args.seed, args.family_n)
    except ValueError as e:
        raise InputError(str(e)) from None
    est = randlab.estimate_probability(cfg)
    doc = {"estimate": est.to_json()}
    ok = est.meets_bound and not est.implication_failures
    if args.exact_54:
        exact = randlab.exhaustive_length6_overlap_count()
        doc["exact_54"] = exact.to_json()
        ok = ok and exact.within_bound
    doc["ok"] = ok
    if args.csv:
        est.write_csv(args.csv)
    e = doc["estimate"]
    lines = [
        f"n = {cfg.n}, lambda = {args.lam}, trials = {cfg.trials}, seed = {cfg.seed}",
        f"empirical success rate: {e['empirical_success_rate']:.6f}",
        f"bound: {e['paper_bound']:.6g}",
        f"event rates: {e['per_event_rates']}",
    ]
    if args.exact_54:
        x = doc["exact_54"]
        lines.append(f"length-6 overlap count: {x['bad']}/{x['total']} = {x['ratio']} (<= 1/54: {x['within_bound']})")
    lines.append("OK" if ok else "FAILED")
    _emit(args, doc, "\n".join(lines))
    return OK if ok else FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scancel", description="Small-cancellation toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check C'(lambda) for a presentation file")
    p.add_argument("file")
    p.add_argument("--lambda", dest="lam", required=True, help="rational p/q")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="decide a word with Dehn's algorithm")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="write a family's presentation files")
    p.add_argument("kind", choices=["independence", "sop"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run a family's verification pipeline")
    p.add_argument("kind", choices=["independence", "sop"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("randlab", help="random-word experiments")
    p.add_argument("--n", type=int, required=True, help="word length")
    p.add_argument("--lambda", dest="lam", required=True, help="rational p/q")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--family-n", type=int, default=2)
    p.add_argument("--csv")
    p.add_argument("--exact-54", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_randlab)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        if args.json:
            json.dump({"error": str(e)}, sys.stdout)
            sys.stdout.write("\n")
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
