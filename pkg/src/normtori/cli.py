"""Command-line front end: ``normtori verify|count|snf``.

Exit status is 0 when every check passes, 1 when some check fails and 2 on
bad arguments or input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from . import __version__
from .intlin import IntMatrix, MatrixFormatError, snf
from .oracle.counting import BudgetExceeded, count_split
from .oracle.fields import UnsupportedField
from .oracle.quadratic import SYSTEMS, equivalence_report, solutions_quad
from .torus import (
    analyze_s0,
    lattice_point_count,
    predicted_point_count,
    verify_lemma21,
    verify_obvious_lemma,
    verify_sharp1_2,
    verify_sharp3,
    verify_sharp5,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
# the diagram procedures grow quickly with p; "verify all" stops them here
DIAGRAM_PMAX = 5


class UsageError(ValueError):
    pass


def _primes_upto(n: int) -> list[int]:
    return [k for k in range(2, n + 1) if all(k % d for d in range(2, int(k ** 0.5) + 1))]


def _require_prime(p: int) -> int:
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise UsageError(f"p must be prime, got {p}")
    return p


# -- tasks ------------------------------------------------------------------------
# Each task is a picklable (kind, args) pair returning a list of check dicts,
# so --jobs can farm them out to worker processes.


def _prefixed(prefix: str, checks) -> list[dict]:
    out = []
    for c in checks:
        d = c.to_dict()
        d["name"] = f"{prefix}.{d['name']}"
        out.append(d)
    return out


def _task_prop(p: int) -> list[dict]:
    return [c.to_dict() for c in analyze_s0(p).to_checks()]


def _task_lemma21() -> list[dict]:
    return _prefixed("lemma21", verify_lemma21().checks)


def _task_diagram(which: int, p: int) -> list[dict]:
    fn = {1: verify_sharp1_2, 3: verify_sharp3, 5: verify_sharp5}[which]
    return _prefixed(f"sharp{which}[p={p}]", fn(p).checks)


def _task_obvious(p: int, instance: int) -> list[dict]:
    return _prefixed(f"obvious{instance}[p={p}]", verify_obvious_lemma(p, instance).checks)


TASKS: dict[str, Callable[..., list[dict]]] = {
    "prop": _task_prop,
    "lemma21": _task_lemma21,
    "diagram": _task_diagram,
    "obvious": _task_obvious,
}


def _run_task(task: tuple) -> list[dict]:
    kind, args = task
    return TASKS[kind](*args)


def run_tasks(tasks: list[tuple], jobs: int = 1) -> list[dict]:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_run_task, tasks))
    else:
        parts = [_run_task(t) for t in tasks]
    checks = [c for part in parts for c in part]
    return sorted(checks, key=lambda c: c["name"])


def verify_tasks(args) -> list[tuple]:
    target = args.target
    if target == "prop":
        return [("prop", (_require_prime(args.p),))]
    if target == "lemma21":
        return [("lemma21", ())]
    if target == "diagram":
        return [("diagram", (args.which, _require_prime(args.p)))]
    if target == "obvious":
        return [("obvious", (_require_prime(args.p), args.instance))]
    if target == "all":
        if args.pmax < 2:
            raise UsageError(f"pmax must be at least 2, got {args.pmax}")
        primes = _primes_upto(args.pmax)
        tasks: list[tuple] = [("lemma21", ())]
        tasks += [("prop", (p,)) for p in primes]
        for p in primes:
            if p > DIAGRAM_PMAX:
                break
            tasks += [("diagram", (w, p)) for w in (1, 3, 5)]
            tasks += [("obvious", (p, i)) for i in (1, 2)]
        return tasks
    raise UsageError(f"unknown verify target {target!r}")


# -- count ------------------------------------------------------------------------


def _check(name: str, anchor: str, passed: bool, **witness) -> dict:
    return {"name": name, "anchor": anchor, "pass": bool(passed), "witness": witness}


def count_checks(args) -> list[dict]:
    q = args.q
    if args.quad:
        if (args.a is None) != (args.b is None):
            raise UsageError("--a and --b go together")
        if args.a is not None:
            sets = {s: solutions_quad(q, args.a, args.b, s) for s in SYSTEMS}
            counts = {s: len(v) for s, v in sets.items()}
            same = sets["star"] == sets["star2"] == sets["star3"]
            return [
                _check(f"quad[q={q},a={args.a},b={args.b}].equal", "the three systems have the same solutions",
                       same, counts=counts),
                _check(f"quad[q={q},a={args.a},b={args.b}].count", "common solution count is (q-1)^2",
                       all(c == (q - 1) ** 2 for c in counts.values()), counts=counts,
                       expected=(q - 1) ** 2),
            ]
        rep = equivalence_report(q)
        return [_check(f"quad[q={q}].all_pairs", "for every (a, b) the three systems agree, with (q-1)^2 solutions",
                       rep.passed, pairs=rep.pairs, common_count=rep.common_count,
                       mismatches=[list(m) for m in rep.mismatches])]
    if args.p is None:
        raise UsageError("count needs --p (or --quad)")
    p = _require_prime(args.p)
    which = args.which
    n = count_split(p, q, which, jobs=args.jobs)
    tag = f"count[p={p},q={q}].{which}"
    if which == "T":
        exp = (q - 1) ** (p * p - 1)
        return [_check(tag, "split norm-one torus has (q-1)^(p^2-1) points", n == exp, count=n, expected=exp)]
    if which == "S":
        exp = (q - 1) ** (p * p + p - 1)
        return [_check(tag, "split norm-product torus has (q-1)^(p^2+p-1) points", n == exp, count=n, expected=exp)]
    pred = predicted_point_count(p, q)
    lat = lattice_point_count(p, q)
    return [
        _check(f"{tag}.lattice", "enumeration agrees with Hom(Coker(alpha_hat), F_q^*)",
               n == lat, count=n, lattice=lat),
        _check(f"{tag}.predicted", "enumeration agrees with (q-1)^p gcd(p,q-1)^(p-2)",
               n == pred, count=n, predicted=pred),
    ]


# -- snf --------------------------------------------------------------------------


def read_matrix(path: str) -> IntMatrix:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return IntMatrix.from_text(text)
    except MatrixFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_snf(args, out) -> int:
    A = read_matrix(args.input)
    form = snf(A)
    if args.json:
        witness = {"D": form.D.to_text(), "invariant_factors": list(form.invariant_factors())}
        if args.transforms:
            witness.update(U=form.U.to_text(), V=form.V.to_text())
        ok = form.U @ A @ form.V == form.D
        checks = [_check("snf", "U A V = D with a divisibility chain", ok, **witness)]
        _emit_json(out, echo_command(args), checks, None)
        return EXIT_OK if ok else EXIT_FAIL
    out.write(form.D.to_text())
    if args.transforms:
        out.write(form.U.to_text())
        out.write(form.V.to_text())
    return EXIT_OK


def echo_command(args) -> str:
    """The command line minus flags that only change how it runs."""
    skip = {"json", "quiet", "jobs", "timing", "command", "target"}
    words = [args.command] + ([args.target] if getattr(args, "target", None) else [])
    for k, v in vars(args).items():
        if k in skip or v is None or v is False:
            continue
        words.append(f"--{k}" if v is True else f"--{k} {v}")
    return " ".join(words)


# -- output -----------------------------------------------------------------------


def _emit_json(out, command: str, checks: list[dict], duration_ms: int | None) -> None:
    doc = {"version": __version__, "command": command, "checks": checks, "duration_ms": duration_ms}
    json.dump(doc, out, indent=2, sort_keys=True)
    out.write("\n")


def _summary(checks: list[dict]) -> str:
    failed = sum(not c["pass"] for c in checks)
    noun = "check" if len(checks) == 1 else "checks"
    if failed:
        return f"FAIL: {failed} of {len(checks)} {noun} failed"
    return f"ok: {len(checks)} {noun} passed"


def _short(v) -> str:
    if isinstance(v, str) and "\n" in v:
        return f"<{v.split(chr(10), 1)[0]} matrix>"
    return json.dumps(v, sort_keys=True)


def _emit_table(out, checks: list[dict]) -> None:
    width = max((len(c["name"]) for c in checks), default=0)
    for c in checks:
        mark = "PASS" if c["pass"] else "FAIL"
        out.write(f"{mark}  {c['name']:<{width}}  {c['anchor']}\n")
        if not c["pass"]:
            for k in sorted(c["witness"]):
                out.write(f"      {k} = {_short(c['witness'][k])}\n")
    out.write(_summary(checks) + "\n")


def report(out, args, command: str, checks: list[dict], started: float) -> int:
    duration = round((time.perf_counter() - started) * 1000) if args.timing else None
    if args.json:
        _emit_json(out, command, checks, duration)
    elif args.quiet:
        out.write(_summary(checks) + "\n")
    else:
        _emit_table(out, checks)
    return EXIT_OK if all(c["pass"] for c in checks) else EXIT_FAIL


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--quiet", action="store_true", help="print only the status line")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    common.add_argument("--timing", action="store_true", help="record wall-clock duration in the report")

    parser = argparse.ArgumentParser(prog="normtori", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    ver = sub.add_parser("verify", help="run structural checks")
    vsub = ver.add_subparsers(dest="target", required=True)
    sp = vsub.add_parser("prop", parents=[common], help="rank and component group of S0")
    sp.add_argument("--p", type=int, required=True)
    vsub.add_parser("lemma21", parents=[common], help="the p = 2 exact sequence")
    sp = vsub.add_parser("diagram", parents=[common], help="one of the diagrams 1, 3, 5")
    sp.add_argument("--which", type=int, choices=(1, 3, 5), required=True)
    sp.add_argument("--p", type=int, required=True)
    sp = vsub.add_parser("obvious", parents=[common], help="R/IJ -> R/I x R/J -> R/(I+J) -> 0")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--instance", type=int, choices=(1, 2), required=True)
    sp = vsub.add_parser("all", parents=[common], help="everything up to --pmax")
    sp.add_argument("--pmax", type=int, default=13)

    cnt = sub.add_parser("count", parents=[common], help="finite-field point counts")
    cnt.add_argument("--p", type=int)
    cnt.add_argument("--q", type=int, required=True)
    cnt.add_argument("--which", choices=("T", "S", "S0"), default="S0")
    cnt.add_argument("--quad", action="store_true", help="compare the three quadratic systems")
    cnt.add_argument("--a", type=int)
    cnt.add_argument("--b", type=int)

    sn = sub.add_parser("snf", parents=[common], help="Smith normal form of a matrix file")
    sn.add_argument("--input", required=True)
    sn.add_argument("--transforms", action="store_true")
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.perf_counter()
    try:
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        if args.command == "snf":
            return cmd_snf(args, out)
        if args.command == "verify":
            checks = run_tasks(verify_tasks(args), args.jobs)
        else:
            checks = count_checks(args)
        command = echo_command(args)
        return report(out, args, command, checks, started)
    except (UsageError, UnsupportedField, BudgetExceeded, ValueError) as exc:
        print(f"normtori: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
