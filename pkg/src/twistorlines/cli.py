"""``twistor`` command line: fibers, nu tables, surface construction, analysis, verification.

Exit codes: 0 success, 2 parse or validation error, 3 mathematical refusal,
4 internal invariant violation or failed verification.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

from .analysis import analyze_surface
from .geometry import PLUCKER_ORDER
from .linefinder import LineFinderOptions
from .linsys import (
    Configuration,
    Refusal,
    cohomology,
    general_member,
    j_invariant_member,
    linear_system,
    nu,
    nu_closed_form,
)
from .manifest import RunManifest, dump_json
from .plucker import is_twistor
from .polyring import MONOMIAL_ORDER, PolyForm, j_form, restrict_to_line
from .quaternion import HPoint
from .scalars import parse_complex_literal
from .twistor import pi_project, sample_twistor_lines, twistor_fiber

EXIT_OK, EXIT_USAGE, EXIT_REFUSED, EXIT_INVARIANT = 0, 2, 3, 4

log = logging.getLogger("twistorlines")


class InvariantViolation(RuntimeError):
    pass


def _default_seed() -> int:
    raw = os.environ.get("TWISTOR_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"TWISTOR_SEED must be an integer, got {raw!r}")


def _literal(text: str):
    try:
        return parse_complex_literal(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _emit(doc: dict, out: str | None):
    text = dump_json(doc)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# commands -------------------------------------------------------------------------

def cmd_fiber(args) -> int:
    man = RunManifest("fiber", inputs={"q1": str(args.q1), "q2": str(args.q2)})
    h = HPoint.chart(args.q1, args.q2)
    L = twistor_fiber(h)
    if not (pi_project(L.a) == h and pi_project(L.b) == h and is_twistor(L)):
        raise InvariantViolation("fiber does not project to its base point")
    if args.out:
        man.outputs.append(args.out)
    doc = {
        "manifest": man.finish().to_json(),
        "base_point": h.to_json(),
        "line": L.to_json(),
        "plucker": L.plucker.to_json(),
        "is_twistor": is_twistor(L),
    }
    _emit(doc, args.out)
    return EXIT_OK


def cmd_nu(args) -> int:
    rows = []
    for d in range(1, args.max_d + 1):
        v = nu("plain", d)
        closed = nu_closed_form("plain", d)
        rows.append({"d": d, "nu": v, "nu_n": nu("normal", d), "nu_s": nu("smooth", d),
                     "nu_j": nu("jinv", d), "closed_form": closed, "closed_form_ok": v == closed})
    if not all(r["closed_form_ok"] for r in rows):
        raise InvariantViolation("floor formula and closed form disagree")
    if args.format == "json":
        man = RunManifest("nu", inputs={"max_d": args.max_d}).finish()
        _emit({"manifest": man.to_json(), "rows": rows}, args.out)
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        if args.out:
            Path(args.out).write_text(buf.getvalue(), encoding="utf-8")
        else:
            sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_build(args) -> int:
    man = RunManifest("build", seed=args.seed,
                      inputs={"k": args.k, "d": args.d, "j_invariant": args.j_invariant,
                              "symmetrize": args.symmetrize, "height": args.height})
    lines = tuple(sample_twistor_lines(args.k, args.seed, args.height))
    config = Configuration(lines)
    rep = cohomology(config, args.d)
    if rep.h0 == 0:
        raise Refusal(f"h0 = 0: no surface of degree {args.d} contains {args.k} general twistor lines "
                      f"(C({args.d}+3,3) = {rep.cols} coefficients, {rep.rows} conditions, rank {rep.rank})")
    if args.j_invariant:
        if args.d % 2:
            raise Refusal(f"d = {args.d} is odd: j^2 = -1 on forms of odd degree, so no j-invariant form exists")
        if rep.h0 % 2 == 0 and not args.symmetrize:
            raise Refusal(f"h0 = C({args.d}+3,3) - {args.k}*({args.d}+1) = {rep.cols} - {rep.rows} = {rep.h0} is even; "
                          "augmentation by j-pairs needs h0 odd (pass --symmetrize to use f + j(f) instead)")
        strategy = "symmetrize" if args.symmetrize else "augment"
        f = j_invariant_member(config, args.d, args.seed, strategy=strategy, height=args.height)
    else:
        f = general_member(linear_system(config, args.d), args.seed, args.height)
    for L in lines:
        if not restrict_to_line(f, L).is_zero():
            raise InvariantViolation("built surface misses an input line")
    if args.out:
        man.outputs.append(args.out)
    doc = {
        "manifest": man.finish().to_json(),
        "configuration": config.to_json(),
        "cohomology": rep.to_json(),
        "surface": f.to_json(),
        "j_invariant": j_form(f).proportionality(f) is not None if args.d % 2 == 0 else False,
        "containment_verified": True,
    }
    _emit(doc, args.out)
    return EXIT_OK


def _load_surface(path: str):
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read surface file {path}: {exc}")
    surf = obj.get("surface", obj)
    if surf.get("order") != MONOMIAL_ORDER:
        raise ValueError(f"surface file must declare order {MONOMIAL_ORDER!r}")
    f = PolyForm.from_json(surf)
    lines = ()
    if "configuration" in obj:
        lines = Configuration.from_json(obj["configuration"]).lines
    return f, lines


def cmd_analyze(args) -> int:
    f, lines = _load_surface(args.surface)
    opts = LineFinderOptions(n_starts=args.n_starts, accept_tol=args.accept_tol,
                             dedup_tol=args.dedup_tol, seed=args.seed)
    man = RunManifest("analyze", seed=args.seed,
                      tolerances={"accept_tol": args.accept_tol, "dedup_tol": args.dedup_tol,
                                  "twistor_tol": opts.twistor_tol},
                      inputs={"surface": args.surface, "n_starts_per_chart": opts.n_starts or 200 * f.degree})
    rep = analyze_surface(f, lines, args.seed, opts, args.probe_starts)
    if not rep.twistor_bound_ok:
        raise InvariantViolation(f"{rep.n_twistor} twistor lines exceed the bound for degree {f.degree}")
    if args.out:
        man.outputs.append(args.out)
    _emit({"manifest": man.finish().to_json(), "plucker_order": PLUCKER_ORDER, "report": rep.to_json()}, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .acceptance import run_checks

    results = run_checks(args.level)
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"first failing check: {failed[0].number} {failed[0].name}", file=sys.stderr)
        return EXIT_INVARIANT
    print(f"all {len(results)} checks passed")
    return EXIT_OK


# parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twistor", description="Twistor lines on surfaces of CP^3.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fiber", help="the twistor fiber over [1, q1 + q2 j]")
    f.add_argument("--q1", type=_literal, required=True, help="exact literal such as 1/2+1/3i")
    f.add_argument("--q2", type=_literal, required=True)
    f.add_argument("--out")
    f.set_defaults(func=cmd_fiber)

    n = sub.add_parser("nu", help="table of the lower bounds nu, nu_n, nu_s, nu_j")
    n.add_argument("--max-d", type=_positive, required=True)
    n.add_argument("--format", choices=("csv", "json"), default="csv")
    n.add_argument("--out")
    n.set_defaults(func=cmd_nu)

    b = sub.add_parser("build", help="a degree-d surface through k general twistor lines")
    b.add_argument("--k", type=_positive, required=True)
    b.add_argument("--d", type=_positive, required=True)
    b.add_argument("--j-invariant", action="store_true")
    b.add_argument("--symmetrize", action="store_true", help="use f + j(f) when h0 is even")
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--height", type=_positive, default=10)
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("analyze", help="lines, smoothness and irreducibility of a surface file")
    a.add_argument("--surface", required=True)
    a.add_argument("--seed", type=int, default=None)
    a.add_argument("--n-starts", type=_positive, default=None, help="starts per chart (default 200*d)")
    a.add_argument("--probe-starts", type=_positive, default=None)
    a.add_argument("--accept-tol", type=float, default=1e-8)
    a.add_argument("--dedup-tol", type=float, default=1e-6)
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run the acceptance checks")
    v.add_argument("--level", choices=("quick", "full"), default="quick")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "seed", "absent") is None:
            args.seed = _default_seed()
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    except argparse.ArgumentTypeError as exc:
        print(f"twistor: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except Refusal as exc:
        print(f"twistor: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (InvariantViolation, AssertionError) as exc:
        print(f"twistor: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"twistor: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
