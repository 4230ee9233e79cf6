"""Command-line front end.

Every command funnels through the scenario engine, so the JSON printed
on stdout is the same deterministic report format whether the request
came from a scenario file or from command-line flags.  Human-readable
summaries, citations, and timing go to stderr; stdout carries nothing
but the report.

Exit codes: 0 all checks passed, 1 at least one expected value did not
match, 2 malformed input (bad JSON, bad flags, failed preconditions).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import scenarios as sc
from .scenarios import Check, Scenario, ScenarioError


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def _rat_str(f):
    f = Fraction(f)
    return int(f) if f.denominator == 1 else str(f)


def _coords(text):
    """Parse "x=1,y12=-3/2" into an argument dict."""
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise argparse.ArgumentTypeError(
                f"coordinate {part!r} is not of the form name=value"
            )
        name, _, value = part.partition("=")
        out[name.strip()] = _rat_str(_fraction(value.strip()))
    return out


def _summarize(report, file=None):
    file = file if file is not None else sys.stderr
    status = "pass" if report.passed else "FAIL"
    print(
        f"{report.scenario} ({report.kind}): {len(report.checks)} checks, "
        f"{status} [{report.elapsed:.3f}s]",
        file=file,
    )
    for c in report.checks:
        mark = "ok  " if c.passed else "FAIL"
        cite = f"  -- {c.cite}" if c.cite else ""
        print(f"  [{mark}] {c.op}{cite}", file=file)
        if c.note:
            print(f"         note: {c.note}", file=file)
        for m in c.mismatches:
            print(f"         mismatch: {m}", file=file)
    if report.error:
        print(f"  error: {report.error}", file=file)


def _emit(report):
    sys.stdout.write(report.to_json())
    _summarize(report)
    return 0 if report.passed else 1


def _run_checks(name, kind, checks):
    scenario = Scenario(name, kind, tuple(checks))
    return _emit(sc.run_scenario_obj(scenario))


# -- subcommand implementations -------------------------------------------


def _cmd_run(ns):
    return _emit(sc.run_scenario(ns.file))


def _cmd_run_all(ns):
    directory = ns.directory if ns.directory else sc.bundled_dir()
    agg = sc.run_all(directory)
    sys.stdout.write(agg.to_json())
    if agg.warning:
        print(f"warning: {agg.warning}", file=sys.stderr)
    for r in agg.reports:
        _summarize(r)
    total = len(agg.reports)
    good = sum(1 for r in agg.reports if r.passed)
    print(
        f"{good}/{total} scenarios passed [{agg.elapsed:.3f}s]",
        file=sys.stderr,
    )
    return 0 if agg.passed else 1


def _cmd_kuranishi(ns):
    if ns.action == "ob2":
        if ns.coords:
            checks = [Check("ob2_at", {"coords": ns.coords})]
        else:
            checks = [Check("ob2_symbolic", {},
                            {"involves_trace_vars": False})]
        return _run_checks("cli:ob2", "kuranishi", checks)
    if ns.action == "segre":
        if ns.xi is None and ns.lam is None:
            args = {"symbolic": True}
        elif ns.xi is None or ns.lam is None:
            raise ScenarioError("segre needs both --xi and --lam, or neither")
        else:
            if len(ns.xi) != 3 or len(ns.lam) != 2:
                raise ScenarioError(
                    "--xi takes three rationals and --lam takes two"
                )
            args = {
                "xi": [_rat_str(v) for v in ns.xi],
                "lam": [_rat_str(v) for v in ns.lam],
            }
        return _run_checks(
            "cli:segre", "kuranishi",
            [Check("segre", args, {"on_locus": True})],
        )
    if ns.action == "count":
        if ns.prime is None:
            raise ScenarioError("count needs --prime")
        return _run_checks(
            "cli:count", "kuranishi",
            [Check("count_points", {"prime": ns.prime})],
        )
    raise ScenarioError(f"unknown kuranishi action {ns.action!r}")


def _cmd_git(ns):
    if ns.action == "psi":
        if not ns.coords:
            raise ScenarioError("psi needs --coords")
        return _run_checks(
            "cli:psi", "git", [Check("psi", {"coords": ns.coords})]
        )
    if ns.action == "orbits":
        if ns.z1 is None or ns.z2 is None:
            raise ScenarioError("orbits needs --z1 and --z2")
        args = {"z1": _rat_str(ns.z1), "z2": _rat_str(ns.z2)}
        return _run_checks("cli:orbits", "git", [Check("orbits", args)])
    if ns.action == "fiber":
        return _run_checks(
            "cli:fiber", "git", [Check("fiber", {"along": ns.along})]
        )
    raise ScenarioError(f"unknown git action {ns.action!r}")


def _cmd_deform(ns):
    ztrunc = ns.ztrunc if ns.ztrunc is not None else ns.order + 4
    args = {
        "order": ns.order,
        "ztrunc": ztrunc,
        "g2": _rat_str(ns.g2),
        "g3": _rat_str(ns.g3),
    }
    return _run_checks(
        "cli:deform", "deform", [Check("congruence", args, {"ok": True})]
    )


def _cmd_scenario_of_kind(kind):
    def run(ns):
        scenario = sc.load_scenario(ns.scenario)
        if scenario.kind != kind:
            raise ScenarioError(
                f"scenario {scenario.name!r} has kind {scenario.kind!r}; "
                f"this command runs {kind!r} scenarios"
            )
        return _emit(sc.run_scenario_obj(scenario))

    return run


def _cmd_diffop(ns):
    if ns.action == "normalize":
        return _run_checks(
            "cli:normalize", "diffop",
            [Check("normalize", {"expr": ns.expr})],
        )
    if ns.action == "member":
        if ns.logarithmic:
            variant = {"kind": "logarithmic"}
        else:
            variant = {"kind": "meromorphic", "pole_mult": ns.pole_mult}
        return _run_checks(
            "cli:member", "diffop",
            [Check("membership", {"expr": ns.expr, "variant": variant})],
        )
    raise ScenarioError(f"unknown diffop action {ns.action!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="conngerm",
        description="Exact local models for germs of connection moduli.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("run", help="run one scenario file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_run)

    p = subs.add_parser(
        "run-all",
        help="run every scenario in a directory (default: bundled suite)",
    )
    p.add_argument("directory", nargs="?", default=None)
    p.set_defaults(func=_cmd_run_all)

    p = subs.add_parser("kuranishi", help="obstruction map computations")
    p.add_argument("action", choices=("ob2", "segre", "count"))
    p.add_argument("--coords", type=_coords, default=None,
                   help="point as name=value pairs, e.g. x=1,y12=-3/2")
    p.add_argument("--xi", type=_fraction, nargs=3, default=None,
                   metavar="Q", help="three rationals for the conic direction")
    p.add_argument("--lam", type=_fraction, nargs=2, default=None,
                   metavar="Q", help="two rationals for the line direction")
    p.add_argument("--prime", type=int, default=None)
    p.set_defaults(func=_cmd_kuranishi)

    p = subs.add_parser("git", help="invariants and quotient geometry")
    p.add_argument("action", choices=("psi", "orbits", "fiber"))
    p.add_argument("--coords", type=_coords, default=None)
    p.add_argument("--z1", type=_fraction, default=None)
    p.add_argument("--z2", type=_fraction, default=None)
    p.add_argument("--along", choices=("z1", "z2"), default="z2")
    p.set_defaults(func=_cmd_git)

    p = subs.add_parser(
        "deform", help="order-by-order glueing congruence check"
    )
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--ztrunc", type=int, default=None,
                   help="series truncation (default: order + 4)")
    p.add_argument("--g2", type=_fraction, default=Fraction(4))
    p.add_argument("--g3", type=_fraction, default=Fraction(0))
    p.set_defaults(func=_cmd_deform)

    p = subs.add_parser("cohomology", help="run a cohomology scenario")
    p.add_argument("--scenario", required=True)
    p.set_defaults(func=_cmd_scenario_of_kind("cohomology"))

    p = subs.add_parser(
        "stability",
        help="run a stability scenario",
        description="Run a stability scenario file. Verdicts are always "
        "relative to the subobject family the scenario supplies; no "
        "enumeration of subsheaves is attempted.",
    )
    p.add_argument("--scenario", required=True)
    p.set_defaults(func=_cmd_scenario_of_kind("stability"))

    p = subs.add_parser("diffop", help="operator rewriting and membership")
    p.add_argument("action", choices=("normalize", "member"))
    p.add_argument("expr", help="operator expression, e.g. \"(z^2*d)^2\"")
    p.add_argument("--pole-mult", type=int, default=1, dest="pole_mult")
    p.add_argument("--logarithmic", action="store_true")
    p.set_defaults(func=_cmd_diffop)

    return parser


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except ScenarioError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
