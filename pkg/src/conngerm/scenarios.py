"""Scenario files and reports: the data layer behind the CLI.

A scenario is a JSON document:

    {
      "version": 1,
      "name": "most_degenerate",
      "kind": "cohomology",
      "checks": [
        {"op": "hypercoh_dims",
         "args": {"h00": 4, "h01": 4, "h10": 4, "h11": 4, "r0": 0, "r1": 0},
         "expect": {"H0": 4, "H1": 8, "H2": 4},
         "cite": "split bundle, vanishing differentials"},
        ...
      ]
    }

Exactness rules: every number is an integer or a rational written as the
string "p/q"; floats are rejected at parse time.  ``kind`` names the
scenario's home module family; individual checks may call any operation
whose name is unambiguous (or qualify it as "family.op"), so one
scenario can bundle the handful of facts that belong to one geometric
situation.  ``expect`` lists the outputs to pin; comparison is exact
equality on the canonical JSON encoding.  Reports are deterministic:
two runs of one scenario produce byte-identical JSON (timing lives
outside the serialized report).
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import cohomology, deformation, diffop, kuranishi, stability
from .kuranishi import MatPair
from .poly import MPoly
from .series import TruncationExhausted, TruncLaurent

SCENARIO_VERSION = 1
KINDS = ("stability", "diffop", "cohomology", "kuranishi", "git", "deform")


class ScenarioError(Exception):
    """Malformed scenario input: parse failure, schema or precondition
    violation.  Maps to CLI exit code 2."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)
        self.position = position


def _reject_float(_):
    raise ScenarioError("floats are forbidden in scenario files; "
                        "write rationals as \"p/q\" strings")


def parse_json_exact(text):
    try:
        return json.loads(
            text, parse_float=_reject_float, parse_constant=_reject_float
        )
    except json.JSONDecodeError as e:
        raise ScenarioError(
            f"JSON parse error: {e.msg}", f"line {e.lineno} column {e.colno}"
        ) from e


# -- value decoding -------------------------------------------------------


def _rat(v, path):
    if isinstance(v, bool):
        raise ScenarioError(f"expected a rational, got a boolean", path)
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as e:
            raise ScenarioError(f"bad rational {v!r}: {e}", path)
    raise ScenarioError(f"expected a rational, got {type(v).__name__}", path)


def _int(v, path):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ScenarioError(f"expected an integer, got {v!r}", path)
    return v


def _bool(v, path):
    if not isinstance(v, bool):
        raise ScenarioError(f"expected a boolean, got {v!r}", path)
    return v


def _str(v, path):
    if not isinstance(v, str):
        raise ScenarioError(f"expected a string, got {v!r}", path)
    return v


def _dict(v, path):
    if not isinstance(v, dict):
        raise ScenarioError(f"expected an object, got {type(v).__name__}", path)
    return v


def _list(v, path):
    if not isinstance(v, list):
        raise ScenarioError(f"expected a list, got {type(v).__name__}", path)
    return v


def _only_keys(d, allowed, path):
    extra = set(d) - set(allowed)
    if extra:
        raise ScenarioError(f"unknown keys {sorted(extra)}", path)


def _matrix2(v, path):
    rows = _list(v, path)
    if len(rows) != 2 or any(len(_list(r, path)) != 2 for r in rows):
        raise ScenarioError("expected a 2x2 matrix", path)
    return tuple(
        tuple(_rat(rows[i][j], f"{path}[{i}][{j}]") for j in range(2))
        for i in range(2)
    )


def _descriptor(v, path):
    d = _dict(v, path)
    if set(d) == {"leaf"}:
        leaf = _dict(d["leaf"], path + ".leaf")
        _only_keys(leaf, ("degree", "trivial"), path + ".leaf")
        return cohomology.Leaf(
            _int(leaf["degree"], path + ".leaf.degree"),
            _bool(leaf.get("trivial", False), path + ".leaf.trivial"),
        )
    if set(d) == {"ext"}:
        ext = _dict(d["ext"], path + ".ext")
        _only_keys(ext, ("left", "right", "boundary_rank"), path + ".ext")
        return cohomology.Extension(
            _descriptor(ext["left"], path + ".ext.left"),
            _descriptor(ext["right"], path + ".ext.right"),
            _int(ext["boundary_rank"], path + ".ext.boundary_rank"),
        )
    if set(d) == {"sum"}:
        parts = _list(d["sum"], path + ".sum")
        return cohomology.Sum(
            [_descriptor(p, f"{path}.sum[{i}]") for i, p in enumerate(parts)]
        )
    raise ScenarioError(
        "descriptor must be exactly one of {\"leaf\": ...}, {\"ext\": ...}, "
        "{\"sum\": [...]}", path
    )


def _numerics(v, path):
    d = _dict(v, path)
    _only_keys(d, ("rank", "degree", "genus", "h"), path)
    try:
        return stability.SheafNumerics(
            _int(d["rank"], path + ".rank"),
            _rat(d["degree"], path + ".degree"),
            _int(d["genus"], path + ".genus"),
            _int(d["h"], path + ".h"),
        )
    except KeyError as e:
        raise ScenarioError(f"missing field {e.args[0]!r}", path)


# -- value encoding -------------------------------------------------------


def canonical(v):
    """Canonical JSON-ready form: Fractions become ints or "p/q" strings,
    symbolic values become their deterministic string rendering."""
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    if isinstance(v, MPoly):
        return canonical(v.const_value()) if v.is_const() else str(v)
    if isinstance(v, TruncLaurent):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [canonical(x) for x in v]
    if isinstance(v, dict):
        return {str(k): canonical(x) for k, x in v.items()}
    raise TypeError(f"cannot encode {type(v).__name__}")


def _mat_json(m):
    return [[canonical(m[i][j]) for j in range(2)] for i in range(2)]


# -- operation handlers ---------------------------------------------------

_HANDLERS = {}


def _handler(family, op):
    def deco(fn):
        _HANDLERS[(family, op)] = fn
        return fn

    return deco


@_handler("cohomology", "rr_line")
def _h_rr_line(args, path):
    _only_keys(args, ("degree", "trivial"), path)
    dims = cohomology.rr_line(
        _int(args["degree"], path + ".degree"),
        _bool(args.get("trivial", False), path + ".trivial"),
    )
    return {"h0": dims.h0, "h1": dims.h1, "chi": dims.chi}


@_handler("cohomology", "chase")
def _h_chase(args, path):
    _only_keys(args, ("descriptor",), path)
    dims = cohomology.chase(_descriptor(args["descriptor"], path + ".descriptor"))
    return {"h0": dims.h0, "h1": dims.h1, "chi": dims.chi}


@_handler("cohomology", "hypercoh_dims")
def _h_hypercoh(args, path):
    keys = ("h00", "h01", "h10", "h11", "r0", "r1")
    _only_keys(args, keys, path)
    vals = [_int(args[k], f"{path}.{k}") for k in keys]
    inp = cohomology.HyperCohInput(*vals)
    h0, h1, h2 = cohomology.hypercoh_dims(inp)
    return {"H0": h0, "H1": h1, "H2": h2}


@_handler("cohomology", "d1_rank")
def _h_d1_rank(args, path):
    _only_keys(args, ("matrix", "domain"), path)
    a = _matrix2(args["matrix"], path + ".matrix")
    domain = args.get("domain", "m2")
    if domain == "m2":
        basis = cohomology.M2_BASIS
    elif domain == "upper":
        basis = cohomology.UPPER_TRIANGULAR_BASIS
    else:
        basis = tuple(
            _matrix2(b, f"{path}.domain[{i}]")
            for i, b in enumerate(_list(domain, path + ".domain"))
        )
    return {"rank": cohomology.d1_rank(a, basis)}


@_handler("cohomology", "fiber_dimension")
def _h_fiber_dimension(args, path):
    _only_keys(args, ("r", "g", "degD"), path)
    return {
        "dimension": cohomology.fiber_dimension(
            _int(args["r"], path + ".r"),
            _int(args["g"], path + ".g"),
            _int(args["degD"], path + ".degD"),
        )
    }


@_handler("cohomology", "connection_exists")
def _h_connection_exists(args, path):
    _only_keys(args, ("r", "d", "degD", "semistable"), path)
    return {
        "exists": cohomology.connection_exists(
            _int(args["r"], path + ".r"),
            _int(args["d"], path + ".d"),
            _int(args["degD"], path + ".degD"),
            _bool(args["semistable"], path + ".semistable"),
        )
    }


@_handler("kuranishi", "ob2_symbolic")
def _h_ob2_symbolic(args, path):
    _only_keys(args, (), path)
    result = kuranishi.ob2(kuranishi.symbolic_pair())
    involves_trace = any(
        e.involves("x0") or e.involves("y0")
        for e in (result.commutator[0][0], result.commutator[0][1],
                  result.commutator[1][0], result.commutator[1][1])
    )
    return {
        "commutator": _mat_json(result.commutator),
        "q": [canonical(q) for q in result.q_values],
        "involves_trace_vars": involves_trace,
    }


@_handler("kuranishi", "ob2_at")
def _h_ob2_at(args, path):
    _only_keys(args, ("coords",), path)
    coords = _dict(args["coords"], path + ".coords")
    _only_keys(coords, kuranishi.COORDS, path + ".coords")
    pair = MatPair.from_coords(
        **{k: _rat(v, f"{path}.coords.{k}") for k, v in coords.items()}
    )
    result = kuranishi.ob2(pair)
    return {
        "commutator": _mat_json(result.commutator),
        "q": [canonical(q) for q in result.q_values],
    }


@_handler("kuranishi", "segre")
def _h_segre(args, path):
    _only_keys(args, ("xi", "lam", "symbolic"), path)
    if args.get("symbolic", False):
        point = kuranishi.segre_check_symbolic()
    else:
        xi = [_rat(v, f"{path}.xi[{i}]") for i, v in
              enumerate(_list(args["xi"], path + ".xi"))]
        lam = [_rat(v, f"{path}.lam[{i}]") for i, v in
               enumerate(_list(args["lam"], path + ".lam"))]
        point = kuranishi.segre_check(xi, lam)
    return {
        "s": [canonical(c) for c in point.s],
        "t": [canonical(c) for c in point.t],
        "q_values": [canonical(q) for q in point.q_values],
        "on_locus": point.on_locus,
    }


@_handler("kuranishi", "count_points")
def _h_count_points(args, path):
    _only_keys(args, ("prime",), path)
    p = _int(args["prime"], path + ".prime")
    return {
        "prime": p,
        "count": kuranishi.count_points_mod_p(p),
        "closed_form": kuranishi.closed_form_count(p),
    }


@_handler("kuranishi", "relation_certificate")
def _h_relation_certificate(args, path):
    _only_keys(args, (), path)
    cert = kuranishi.relation_certificate()
    return {
        "identity_holds": cert.identity_holds,
        "normal_form_zero": cert.normal_form_zero,
        "lhs": canonical(cert.lhs),
        "rhs": canonical(cert.rhs),
        "certificate": "z^2 - z1*z2 = q1^2 + q2*q3",
        "basis": [canonical(g) for g in cert.basis],
    }


@_handler("git", "psi")
def _h_psi(args, path):
    _only_keys(args, ("coords",), path)
    coords = _dict(args["coords"], path + ".coords")
    _only_keys(coords, kuranishi.COORDS, path + ".coords")
    pair = MatPair.from_coords(
        **{k: _rat(v, f"{path}.coords.{k}") for k, v in coords.items()}
    )
    inv = kuranishi.psi(pair)
    return {
        "z": canonical(inv.z),
        "z1": canonical(inv.z1),
        "z2": canonical(inv.z2),
        "on_cone": inv.z * inv.z == inv.z1 * inv.z2,
    }


@_handler("git", "orbits")
def _h_orbits(args, path):
    _only_keys(args, ("z1", "z2"), path)
    sep = kuranishi.orbit_separation(
        _rat(args["z1"], path + ".z1"), _rat(args["z2"], path + ".z2")
    )
    return {
        "count": sep.count,
        "z_values": [canonical(z) for z in sep.z_values],
        "extension": [[sym, canonical(c)] for sym, c in sep.extension],
        "representatives": [
            {"T": _mat_json(rep.T), "Y": _mat_json(rep.Y)}
            for rep in sep.representatives
        ],
    }


@_handler("git", "fiber")
def _h_fiber(args, path):
    _only_keys(args, ("along",), path)
    along = args.get("along", "z2")
    restriction = kuranishi.fiber_multiplicity(_str(along, path + ".along"))
    return {
        "cone": canonical(restriction.cone),
        "restricted_along": list(restriction.restricted_along),
        "generators": [canonical(g) for g in restriction.generators],
        "multiplicity": restriction.multiplicity,
        "reduced_fiber": restriction.reduced_fiber,
    }


@_handler("deform", "congruence")
def _h_congruence(args, path):
    _only_keys(args, ("order", "ztrunc", "g2", "g3"), path)
    k = _int(args["order"], path + ".order")
    n = _int(args["ztrunc"], path + ".ztrunc")
    wp = deformation.wp_series(
        _rat(args["g2"], path + ".g2"), _rat(args["g3"], path + ".g3"), n
    )
    cocycle = deformation.build_cocycle(k, n, wp)
    report = deformation.congruence_check(cocycle, k)
    return {
        "order": k,
        "ztrunc": n,
        "ok": report.ok,
        "degrees": [
            {
                "degree": d.degree,
                "ok": d.ok,
                "reliable_through": d.reliable_through,
            }
            for d in report.degrees
        ],
        "first_failure": report.first_failure(),
    }


@_handler("deform", "wp_coeffs")
def _h_wp_coeffs(args, path):
    _only_keys(args, ("g2", "g3", "ztrunc", "exponents"), path)
    wp = deformation.wp_series(
        _rat(args["g2"], path + ".g2"),
        _rat(args["g3"], path + ".g3"),
        _int(args["ztrunc"], path + ".ztrunc"),
    )
    exps = [_int(e, f"{path}.exponents[{i}]")
            for i, e in enumerate(_list(args["exponents"], path + ".exponents"))]
    return {"coeffs": {str(e): canonical(wp.series.coeff(e)) for e in exps}}


@_handler("deform", "phi_cochain")
def _h_phi_cochain(args, path):
    _only_keys(args, ("k", "g2", "g3", "ztrunc"), path)
    wp = deformation.wp_series(
        _rat(args["g2"], path + ".g2"),
        _rat(args["g3"], path + ".g3"),
        _int(args["ztrunc"], path + ".ztrunc"),
    )
    k = _int(args["k"], path + ".k")
    cochain = deformation.phi_cochain(k, wp)
    diff = cochain.phi_beta - cochain.phi_alpha
    return {
        "k": k,
        "difference": canonical(diff),
        "difference_is_single_pole": diff.coeffs == {-k: Fraction(1)},
        "alpha_regular": all(e >= 0 for e in cochain.phi_alpha.coeffs),
    }


@_handler("diffop", "normalize")
def _h_normalize(args, path):
    _only_keys(args, ("expr",), path)
    try:
        op = diffop.parse_diffop(_str(args["expr"], path + ".expr"))
    except diffop.DiffOpParseError as e:
        raise ScenarioError(str(e), path + ".expr")
    order = op.order()
    return {
        "normal_form": diffop.render(op),
        "order": None if order == diffop.NEG_INF else order,
    }


@_handler("diffop", "membership")
def _h_membership(args, path):
    _only_keys(args, ("expr", "variant"), path)
    try:
        op = diffop.parse_diffop(_str(args["expr"], path + ".expr"))
    except diffop.DiffOpParseError as e:
        raise ScenarioError(str(e), path + ".expr")
    vd = _dict(args["variant"], path + ".variant")
    _only_keys(vd, ("kind", "pole_mult"), path + ".variant")
    try:
        variant = diffop.LambdaVariant(
            _str(vd["kind"], path + ".variant.kind"),
            _int(vd.get("pole_mult", 1), path + ".variant.pole_mult"),
        )
        result = diffop.lambda_membership(op, variant)
    except ValueError as e:
        raise ScenarioError(str(e), path + ".variant")
    return {
        "member": result.member,
        "certificate": result.certificate_str(),
        "failing_order": result.failing_order,
    }


@_handler("stability", "verdict")
def _h_verdict(args, path):
    _only_keys(args, ("E", "subs"), path)
    ambient = _numerics(args["E"], path + ".E")
    subs = [
        _numerics(s, f"{path}.subs[{i}]")
        for i, s in enumerate(_list(args["subs"], path + ".subs"))
    ]
    try:
        v = stability.stability_verdict(ambient, subs)
    except ValueError as e:
        raise ScenarioError(str(e), path)
    return {
        "hilbert": v.hilbert,
        "hilbert_witness": v.hilbert_witness,
        "slope": v.slope,
        "slope_witness": v.slope_witness,
        "vacuous": v.vacuous,
    }


@_handler("stability", "chain")
def _h_chain(args, path):
    _only_keys(args, ("E", "subs"), path)
    ambient = _numerics(args["E"], path + ".E")
    subs = [
        _numerics(s, f"{path}.subs[{i}]")
        for i, s in enumerate(_list(args["subs"], path + ".subs"))
    ]
    report = stability.implication_chain_check(ambient, subs)
    return {
        "mu_stable": report.mu_stable,
        "stable": report.stable,
        "semistable": report.semistable,
        "mu_semistable": report.mu_semistable,
        "ok": report.ok,
        "violations": list(report.violations),
    }


@_handler("stability", "hilbert_poly")
def _h_hilbert_poly(args, path):
    _only_keys(args, ("rank", "degree", "genus", "h"), path)
    p = stability.hilbert_poly_curve(
        _int(args["rank"], path + ".rank"),
        _rat(args["degree"], path + ".degree"),
        _int(args["genus"], path + ".genus"),
        _int(args["h"], path + ".h"),
    )
    return {
        "poly": str(p),
        "reduced": str(stability.reduced_poly(p)),
        "alphas": [canonical(a) for a in p.alphas],
    }


def resolve_op(kind, op, path):
    if "." in op:
        family, bare = op.split(".", 1)
        if (family, bare) not in _HANDLERS:
            raise ScenarioError(f"unknown operation {op!r}", path)
        return _HANDLERS[(family, bare)]
    if (kind, op) in _HANDLERS:
        return _HANDLERS[(kind, op)]
    matches = [key for key in _HANDLERS if key[1] == op]
    if len(matches) == 1:
        return _HANDLERS[matches[0]]
    if not matches:
        raise ScenarioError(f"unknown operation {op!r}", path)
    raise ScenarioError(
        f"ambiguous operation {op!r}; qualify as one of "
        f"{sorted(f'{f}.{o}' for f, o in matches)}", path
    )


# -- scenario and report objects ------------------------------------------


@dataclass(frozen=True)
class Check:
    op: str
    args: dict
    expect: dict | None = None
    cite: str | None = None
    note: str | None = None


@dataclass(frozen=True)
class Scenario:
    name: str
    kind: str
    checks: tuple
    version: int = SCENARIO_VERSION


def scenario_from_obj(obj, source="<memory>"):
    doc = _dict(obj, source)
    _only_keys(doc, ("version", "name", "kind", "checks"), source)
    version = _int(doc.get("version", 0), source + ".version")
    if version != SCENARIO_VERSION:
        raise ScenarioError(
            f"unsupported scenario version {version}", source + ".version"
        )
    name = _str(doc.get("name", ""), source + ".name")
    if not name:
        raise ScenarioError("scenario needs a nonempty name", source + ".name")
    kind = _str(doc.get("kind", ""), source + ".kind")
    if kind not in KINDS:
        raise ScenarioError(
            f"kind must be one of {', '.join(KINDS)}; got {kind!r}",
            source + ".kind",
        )
    checks_raw = _list(doc.get("checks", []), source + ".checks")
    if not checks_raw:
        raise ScenarioError("scenario needs at least one check", source + ".checks")
    checks = []
    for i, c in enumerate(checks_raw):
        path = f"{source}.checks[{i}]"
        c = _dict(c, path)
        _only_keys(c, ("op", "args", "expect", "cite", "note"), path)
        op = _str(c.get("op", ""), path + ".op")
        resolve_op(kind, op, path + ".op")  # fail fast on unknown ops
        args = _dict(c.get("args", {}), path + ".args")
        expect = c.get("expect")
        if expect is not None:
            expect = _dict(expect, path + ".expect")
        cite = c.get("cite")
        if cite is not None:
            cite = _str(cite, path + ".cite")
        note = c.get("note")
        if note is not None:
            note = _str(note, path + ".note")
        checks.append(Check(op, args, expect, cite, note))
    return Scenario(name, kind, tuple(checks), version)


def load_scenario(path):
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise ScenarioError(f"cannot read {p}: {e.strerror}")
    return scenario_from_obj(parse_json_exact(text), source=p.name)


@dataclass(frozen=True)
class CheckResult:
    op: str
    args: dict
    computed: dict
    expected: dict | None
    passed: bool
    mismatches: tuple
    cite: str | None
    note: str | None


@dataclass(frozen=True)
class Report:
    scenario: str
    kind: str
    passed: bool
    checks: tuple
    error: str | None = None
    elapsed: float = field(default=0.0, compare=False)

    def to_obj(self):
        obj = {
            "scenario": self.scenario,
            "kind": self.kind,
            "pass": self.passed,
            "checks": [
                {
                    "op": c.op,
                    "args": canonical(c.args),
                    "computed": canonical(c.computed),
                    "expected": canonical(c.expected),
                    "pass": c.passed,
                    "mismatches": list(c.mismatches),
                    "cite": c.cite,
                    "note": c.note,
                }
                for c in self.checks
            ],
        }
        if self.error is not None:
            obj["error"] = self.error
        return obj

    def to_json(self):
        return json.dumps(self.to_obj(), sort_keys=True, indent=2) + "\n"


def report_from_obj(obj):
    checks = tuple(
        CheckResult(
            c["op"],
            c["args"],
            c["computed"],
            c["expected"],
            c["pass"],
            tuple(c["mismatches"]),
            c["cite"],
            c["note"],
        )
        for c in obj.get("checks", [])
    )
    return Report(
        obj["scenario"], obj["kind"], obj["pass"], checks, obj.get("error")
    )


def report_from_json(text):
    return report_from_obj(parse_json_exact(text))


def _compare(computed, expect, path):
    """Exact comparison of expected keys against computed values, on the
    canonical encoding.  Returns a list of mismatch descriptions."""
    mismatches = []
    for key, want in expect.items():
        if key not in computed:
            mismatches.append(f"{path}.{key}: no such output")
            continue
        got = canonical(computed[key])
        want_c = canonical(want)
        if isinstance(want_c, dict) and isinstance(got, dict):
            mismatches.extend(_compare(got, want_c, f"{path}.{key}"))
        elif got != want_c:
            mismatches.append(f"{path}.{key}: expected {want_c!r}, got {got!r}")
    return mismatches


def run_scenario_obj(scenario):
    start = time.perf_counter()
    results = []
    passed = True
    for i, check in enumerate(scenario.checks):
        path = f"checks[{i}]"
        handler = resolve_op(scenario.kind, check.op, path + ".op")
        try:
            computed = handler(check.args, path + ".args")
        except ScenarioError:
            raise
        except (ValueError, TypeError, KeyError, TruncationExhausted) as e:
            raise ScenarioError(f"{type(e).__name__}: {e}", path)
        mismatches = tuple(
            _compare(computed, check.expect, path + ".expect")
        ) if check.expect is not None else ()
        ok = not mismatches
        passed = passed and ok
        results.append(
            CheckResult(
                check.op, check.args, computed, check.expect, ok,
                mismatches, check.cite, check.note,
            )
        )
    elapsed = time.perf_counter() - start
    return Report(scenario.name, scenario.kind, passed, tuple(results),
                  None, elapsed)


def run_scenario(path):
    return run_scenario_obj(load_scenario(path))


@dataclass(frozen=True)
class AggregateReport:
    passed: bool
    reports: tuple
    warning: str | None = None
    elapsed: float = field(default=0.0, compare=False)

    def to_obj(self):
        obj = {
            "pass": self.passed,
            "scenarios": [r.to_obj() for r in self.reports],
        }
        if self.warning is not None:
            obj["warning"] = self.warning
        return obj

    def to_json(self):
        return json.dumps(self.to_obj(), sort_keys=True, indent=2) + "\n"


def run_all(directory):
    """Run every *.json scenario in the directory, isolating failures:
    a broken file fails its own entry without stopping the suite."""
    start = time.perf_counter()
    d = Path(directory)
    if not d.is_dir():
        raise ScenarioError(f"not a directory: {d}")
    files = sorted(d.glob("*.json"), key=lambda p: p.name)
    if not files:
        return AggregateReport(
            True, (), f"no scenario files in {d}", time.perf_counter() - start
        )
    reports = []
    for f in files:
        try:
            reports.append(run_scenario(f))
        except ScenarioError as e:
            reports.append(Report(f.name, "error", False, (), str(e)))
    reports.sort(key=lambda r: r.scenario)
    return AggregateReport(
        all(r.passed for r in reports), tuple(reports), None,
        time.perf_counter() - start,
    )


def bundled_dir():
    return Path(__file__).parent / "data"
