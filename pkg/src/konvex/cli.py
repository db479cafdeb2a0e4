"""Command-line workbench.

Exit codes: 0 success, 2 bad input, 3 a theorem-guaranteed property failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .carrier import MultiplierSet, Semigroup, Subset, load_cayley, parse_carrier, to_json
from .convexity import decide_convex, decide_konvex, is_n_convex, is_n_konvex
from .errors import InputError, InvariantViolation, KonvexError
from .hull import hull_fixedpoint, hull_formula, quotient, quotient_json
from .separation import stone_separate, verify_certificate
from .setalg import need_n, preimage, run_op, scale, sumset_power

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VIOLATION = 3


@dataclass
class RunReport:
    command: str
    inputs: dict
    outcome: dict = field(default_factory=dict)
    checks: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "outcome": self.outcome,
            "checks": self.checks,
            "exit_code": self.exit_code,
        }

    def render(self) -> str:
        lines = [f"{self.command}: exit {self.exit_code}"]
        for key, value in self.inputs.items():
            lines.append(f"  input {key}: {_fmt(value)}")
        for key, value in self.outcome.items():
            if key == "lines":
                lines.extend(f"  {v}" for v in value)
            else:
                lines.append(f"  {key}: {_fmt(value)}")
        if self.checks:
            lines.append("  checks: " + ", ".join(self.checks))
        return "\n".join(lines)


def _fmt(value) -> str:
    if isinstance(value, list) and all(isinstance(v, str) for v in value):
        return "{" + ", ".join(value) + "}"
    if isinstance(value, (dict, list)):
        return json.dumps(value, ensure_ascii=False)
    return str(value)


def split_labels(text: str) -> list[str]:
    """Split on commas outside brackets, so ``{1,2},(0,1)`` gives two labels."""
    text = text.strip()
    if text in ("", "none"):
        return []
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur).strip())
    return out


def parse_set(S: Semigroup, text: str) -> Subset:
    return S.subset(split_labels(text))


def _labels(A: Subset) -> list[str]:
    return A.labels()


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> RunReport:
    report = RunReport("validate", {"file": args.file})
    S = load_cayley(args.file)
    report.outcome = {"order": S.order, "elements": list(S.labels), "valid": True}
    return report


def cmd_op(args) -> RunReport:
    S = parse_carrier(args.carrier)
    A = parse_set(S, args.set)
    B = parse_set(S, args.other) if args.other is not None else None
    report = RunReport("op", {"carrier": args.carrier, "op": args.op, "n": args.n,
                              "A": _labels(A)})
    if B is not None:
        report.inputs["B"] = _labels(B)
    if args.op != "sumset" and args.n is None:
        raise InputError(f"{args.op} needs -n")
    res = run_op(S, args.op, args.n, A, B)
    report.outcome = {"result": _labels(res.result)}
    if S.cap is not None:
        report.outcome["saturated"] = res.saturated
    return report


def _fixed_witness(S, mode, n, A) -> list[str]:
    if mode == "convex":
        bad = preimage(S, n, sumset_power(S, n, A)) - A
    else:
        bad = sumset_power(S, n, A) - scale(S, n, A)
    return bad.labels()


def cmd_check(args) -> RunReport:
    S = parse_carrier(args.carrier)
    A = parse_set(S, args.set)
    F = MultiplierSet.parse(args.multipliers)
    report = RunReport("check", {"carrier": args.carrier, "A": _labels(A), "mode": args.mode})
    pred = is_n_convex if args.mode == "convex" else is_n_konvex
    if args.all_n:
        decide = decide_convex if args.mode == "convex" else decide_konvex
        d = decide(S, A, F)
        report.inputs["multipliers"] = str(F)
        report.outcome = {"verdict": d.verdict, "tail": d.tail_length,
                          "cycle": d.cycle_length, "states": d.states}
        if not d.holds:
            report.outcome["witness_n"] = d.witness_n
            report.outcome["witness_element"] = S.label(d.witness_element)
    elif args.n_max is not None:
        need_n(args.n_max)
        report.inputs["n_max"] = args.n_max
        failing = [n for n in range(1, args.n_max + 1) if not pred(S, n, A)]
        report.outcome = {
            "verdict": "all pass" if not failing else "fails",
            "failing_n": failing,
            "note": "bounded evidence only",
        }
    else:
        n = need_n(args.n if args.n is not None else 2)
        report.inputs["n"] = n
        ok = pred(S, n, A)
        report.outcome = {"verdict": "holds" if ok else "fails"}
        if not ok:
            report.outcome["witness"] = _fixed_witness(S, args.mode, n, A)
    return report


def cmd_hull(args) -> RunReport:
    S = parse_carrier(args.carrier)
    A = parse_set(S, args.set)
    F = MultiplierSet.parse(args.multipliers)
    report = RunReport("hull", {"carrier": args.carrier, "A": _labels(A),
                                "multipliers": str(F), "method": args.method})
    if args.method in ("fixpoint", "both"):
        fp = hull_fixedpoint(S, F, A)
        report.outcome["fixpoint"] = _labels(fp.hull)
        report.outcome["rounds"] = fp.rounds
    if args.method in ("formula", "both"):
        fo = hull_formula(S, F, A)
        report.outcome["formula"] = _labels(fo.hull)
        report.outcome["contributing_n"] = list(fo.contributing_ns)
    if args.method == "both":
        report.checks.append("formula = fixed point")
        if report.outcome["fixpoint"] != report.outcome["formula"]:
            report.outcome["error"] = "hull methods disagree"
            report.exit_code = EXIT_VIOLATION
    report.outcome["hull"] = report.outcome.get("formula", report.outcome.get("fixpoint"))
    return report


def cmd_quotient(args) -> RunReport:
    S = parse_carrier(args.carrier)
    F = MultiplierSet.parse(args.multipliers)
    qm = quotient(S, F)
    report = RunReport("quotient", {"carrier": args.carrier, "multipliers": str(F)})
    report.outcome = quotient_json(qm)
    report.checks.append("compatibility")
    report.checks.append("cancellation")
    if qm.cancellation_violations:
        report.outcome["violations"] = qm.cancellation_violations
        report.exit_code = EXIT_VIOLATION
    if args.out:
        _write_json(args.out, quotient_json(qm))
    return report


def cmd_separate(args) -> RunReport:
    S = parse_carrier(args.carrier)
    A0, B0 = parse_set(S, args.a), parse_set(S, args.b)
    report = RunReport("separate", {"carrier": args.carrier, "A0": _labels(A0),
                                    "B0": _labels(B0)})
    cert = stone_separate(S, A0, B0)
    problems = verify_certificate(S, cert, A0, B0)
    report.outcome = {"certificate": cert.to_json()}
    report.checks.append("certificate re-verification")
    if problems:
        report.outcome["problems"] = problems
        report.exit_code = EXIT_VIOLATION
    if args.out:
        _write_json(args.out, cert.to_json())
    return report


def cmd_verify(args) -> RunReport:
    from .suite import run_suite

    seed = args.seed if args.seed is not None else int(os.environ.get("KONVEX_SEED", "0"))
    report = RunReport("verify", {"order_cap": args.order_cap, "seed": seed,
                                  "scale": args.scale})
    results = run_suite(args.order_cap, seed, args.scale, corrupt=args.corrupt_fixture)
    lines, details = [], []
    for c, r in sorted(results, key=lambda cr: cr[0].number):
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"[{status}] {c.number:2d} {r.name}: {c.title} ({r.stats.get('seconds')}s)")
        details.append(r.to_dict())
        report.checks.append(r.name)
        if not r.passed:
            report.exit_code = EXIT_VIOLATION
            lines.extend(f"       {v}" for v in r.violations[:5])
    report.outcome = {"lines": lines, "results": details} if args.json else {"lines": lines}
    return report


def _write_json(path, data):
    try:
        with open(path, "w") as fh:
            json.dump(data, fh, indent=2, ensure_ascii=False)
            fh.write("\n")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="konvex", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    def carrier_arg(sp):
        sp.add_argument("--carrier", "-c", required=True,
                        help="e.g. cyclic(4), capped-add(3), int-additive, or a Cayley JSON file")

    sp = sub.add_parser("validate", help="load and validate a Cayley JSON carrier")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("op", help="nA, n^-1 A, A+B or [n]A")
    carrier_arg(sp)
    sp.add_argument("op", choices=["scale", "preimage", "sumset", "power"])
    sp.add_argument("-n", type=int)
    sp.add_argument("--set", "-A", required=True, help="comma-separated element labels")
    sp.add_argument("--other", "-B", help="second set (sumset)")
    sp.set_defaults(func=cmd_op)

    sp = sub.add_parser("check", help="n-convexity / n-konvexity")
    carrier_arg(sp)
    sp.add_argument("--set", "-A", required=True)
    sp.add_argument("--mode", choices=["convex", "konvex"], default="convex")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("-n", type=int)
    g.add_argument("--all-n", action="store_true")
    g.add_argument("--n-max", type=int)
    sp.add_argument("--multipliers", default="ALL", help="for --all-n: ALL or g1,g2,...")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("hull", help="F-convex hull")
    carrier_arg(sp)
    sp.add_argument("--set", "-A", required=True)
    sp.add_argument("--multipliers", default="ALL")
    sp.add_argument("--method", choices=["fixpoint", "formula", "both"], default="both")
    sp.set_defaults(func=cmd_hull)

    sp = sub.add_parser("quotient", help="quotient by the singleton-hull equivalence")
    carrier_arg(sp)
    sp.add_argument("--multipliers", default="ALL")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("separate", help="separate N-disjoint sets by complementary convex sets")
    carrier_arg(sp)
    sp.add_argument("--a", "-a", default="")
    sp.add_argument("--b", "-b", default="")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_separate)

    sp = sub.add_parser("verify", help="run the full verification suite")
    sp.add_argument("--order-cap", type=int, default=8)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--scale", type=float, default=1.0, help="instance-count multiplier")
    sp.add_argument("--corrupt-fixture", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify)

    for sp in sub.choices.values():
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except InputError as exc:
        report = RunReport(args.command, {}, {"error": f"{type(exc).__name__}: {exc}"},
                           exit_code=EXIT_INPUT)
        ev = getattr(exc, "evidence", None)
        if ev is not None:
            report.outcome["collision_n"] = ev.collision_n
    except InvariantViolation as exc:
        report = RunReport(args.command, {}, {"error": f"{type(exc).__name__}: {exc}"},
                           exit_code=EXIT_VIOLATION)
    except KonvexError as exc:
        report = RunReport(args.command, {}, {"error": str(exc)}, exit_code=EXIT_INPUT)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2, ensure_ascii=False))
    else:
        print(report.render())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
