"""Analysis pipeline, deterministic report assembly and report re-verification.

A report is a JSON tree.  Every identity stored in it can be re-derived from
the ``system`` section alone, which is what :func:`verify_report` does.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .cofactors import curve_cofactor, quasipolynomial_cofactor
from .errors import DarbouxError, NotInvariant, ParseError, PreconditionFailed
from .field import as_gr
from .numeric import EvaluableInvariant, check_conserved, integrate
from .parser import parse_polynomial
from .phi import PhiInvariant, epsilon_minimal_polynomial, synthesize_exponential_factor, verify_phi
from .poly import BivarPoly, divides
from .puiseux import SeriesPoly, is_particular_solution, linear_factor_product, minimal_polynomial, newton_puiseux
from .rational import RationalFunction
from .search import (
    DarbouxFunction,
    ExponentialFactor,
    find_exponential_factors,
    find_first_integral,
    find_invariant_curves,
    find_inverse_integrating_factor,
)
from .series import PuiseuxSeries, polydromy
from .system import PlanarSystem

SECTIONS = ("curves", "exponential_factors", "first_integrals", "inverse_integrating_factors", "puiseux", "phi", "numeric_checks")


@dataclass
class Options:
    max_degree: int = 4
    exp_degree: int = None
    exp_power: int = 2
    order: int = 24
    orbits: list = field(default_factory=list)
    precision: int = 53
    phi: dict = None

    def to_dict(self):
        return {
            "max_degree": self.max_degree,
            "exp_degree": self.exp_degree,
            "exp_power": self.exp_power,
            "order": self.order,
            "orbits": [list(o) for o in self.orbits],
            "precision": self.precision,
        }


def _poly_key(p: BivarPoly):
    return (p.degree, p.to_text())


def emit_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def empty_report(sys: PlanarSystem, opts: Options) -> dict:
    return {
        "system": {"dx": sys.P.to_text(), "dy": sys.Q.to_text(), "d": sys.d, "m": sys.m},
        "options": opts.to_dict(),
        "curves": [],
        "exponential_factors": [],
        "first_integrals": [],
        "puiseux": [],
        "diagnostics": [],
    }


# --- pipeline stages ------------------------------------------------------------


def run_curves(sys, opts, report):
    diags = []
    curves = find_invariant_curves(sys, opts.max_degree, diags)
    curves.sort(key=lambda c: _poly_key(c.f))
    report["curves"] = [{**c.to_dict(), "degree": c.f.degree, "verified": True} for c in curves]
    report["diagnostics"].extend(diags)
    return curves


def run_expfactors(sys, opts, report, curves):
    H = opts.exp_degree if opts.exp_degree is not None else sys.d
    found = []
    bases = [(BivarPoly.const(1), None, 0)]
    for c in curves:
        for e in range(1, opts.exp_power + 1):
            bases.append((c.f**e, c.f, e))
    for f0, base, e in bases:
        try:
            for ef in find_exponential_factors(sys, f0, H):
                # h divisible by the base curve reduces to a lower power
                if e >= 2 and divides(base, ef.h):
                    continue
                found.append(ef)
        except DarbouxError as exc:
            report["diagnostics"].append(f"exponential factors over {f0.to_text()}: {exc}")
    found.sort(key=lambda ef: (_poly_key(ef.f0), _poly_key(ef.h)))
    report["exponential_factors"] = [{**ef.to_dict(), "verified": ef.verify(sys)} for ef in found]
    return found


def run_integrals(sys, report, curves, exps):
    members = list(curves) + list(exps)
    fis, iifs = [], []
    if members:
        fis = find_first_integral(sys, members)
    iifs = find_inverse_integrating_factor(sys, members)
    key = lambda d: d.to_text()
    report["first_integrals"] = [{**d.to_dict(), "verified": d.verify(sys)} for d in sorted(fis, key=key)]
    report["inverse_integrating_factors"] = [
        {**d.to_dict(), "verified": d.verify(sys)} for d in sorted(iifs, key=key)
    ]
    return fis


def puiseux_entry(sys, f, T):
    roots = newton_puiseux(f, T)
    entry = {"curve": f.to_text(), "order": T, "roots": []}
    for g in roots:
        r = {"series": g.to_text(), "polydromy": polydromy(g) if not g.is_zero() else 1}
        try:
            ok = is_particular_solution(g, sys).ok
            r["particular_solution"] = ok
            if ok:
                r["quasicofactor"] = quasipolynomial_cofactor(g, sys).to_dict()
        except DarbouxError as exc:
            r["particular_solution"] = f"{type(exc).__name__}: {exc}"
        entry["roots"].append(r)
    try:
        back = minimal_polynomial(roots[0], f.deg_x, f.deg_y, T) if roots else None
        entry["minimal_polynomial"] = back.to_text() if back is not None else None
        entry["roundtrip"] = back is not None and back == f.canonical()
    except DarbouxError as exc:
        entry["minimal_polynomial"] = None
        entry["roundtrip"] = f"{type(exc).__name__}: {exc}"
    return entry


def run_puiseux(sys, opts, report, curves):
    report["puiseux"] = [puiseux_entry(sys, c.f, opts.order) for c in curves]


def build_phi(spec: dict, order: int) -> PhiInvariant:
    """Phi = exp{h2 * x^radical * A1 / A0} from polynomial texts."""
    h2 = parse_polynomial(spec.get("h2", "1"))
    A1 = parse_polynomial(spec.get("A1", "1"))
    A0 = parse_polynomial(spec["A0"])
    if h2.deg_y > 0:
        raise ParseError("phi.h2 must depend on x only")
    lc = A0.y_coeff(A0.deg_y)
    if A0.deg_y < 1 or not lc.is_constant():
        raise ParseError("phi.A0 must have a constant leading coefficient in y")
    rad = Fraction(spec.get("radical", "0"))
    lead = PuiseuxSeries.monomial(lc.constant_value().inverse(), rad.numerator, rad.denominator)
    roots = newton_puiseux(A0, order)
    return PhiInvariant(RationalFunction(h2), SeriesPoly.from_poly(A1) * lead, roots, None, order,
                        A0=linear_factor_product(roots))


def run_phi(sys, opts, report):
    spec = opts.phi
    H = opts.exp_degree if opts.exp_degree is not None else sys.d
    out = {"input": dict(sorted(spec.items()))}
    report["phi"] = out
    phi = build_phi(spec, opts.order)
    out["phi"] = phi.to_text()
    try:
        M = verify_phi(phi, sys)
    except NotInvariant as exc:
        out["verdict"] = f"NotInvariant ({exc.clause}): {exc}"
        return False
    out["M"] = M.to_dict()
    out["verdict"] = "invariant"
    try:
        eps = epsilon_minimal_polynomial(phi)
        res = synthesize_exponential_factor(phi, sys, H, eps)
        out.update(res.to_dict())
    except DarbouxError as exc:
        out["synthesis"] = f"{type(exc).__name__}: {exc}"
    return True


def run_numeric(sys, opts, report, fis):
    checks = []
    for fi in fis[:1]:
        H = EvaluableInvariant(fi)
        for x0, y0, tend, h in opts.orbits:
            entry = {"invariant": fi.to_text(), "start": [x0, y0], "t_end": tend, "h": h, "precision": opts.precision}
            try:
                orbit = integrate(sys, (x0, y0), tend, h, precision=opts.precision)
                entry["drift"] = check_conserved(H, orbit)
                entry["aborted"] = orbit.aborted
            except DarbouxError as exc:
                entry["error"] = f"{type(exc).__name__}: {exc}"
            checks.append(entry)
    report["numeric_checks"] = checks


def analyze(sys: PlanarSystem, opts: Options, stages) -> dict:
    report = empty_report(sys, opts)
    curves = run_curves(sys, opts, report) if "curves" in stages else []
    exps = run_expfactors(sys, opts, report, curves) if "expfactors" in stages else []
    fis = run_integrals(sys, report, curves, exps) if "integral" in stages else []
    if "puiseux" in stages:
        run_puiseux(sys, opts, report, curves)
    if "phi" in stages and opts.phi:
        run_phi(sys, opts, report)
    if "numeric" in stages:
        run_numeric(sys, opts, report, fis)
    return report


# --- verification ------------------------------------------------------------------


def _gr(text):
    return parse_polynomial(text).constant_value() if text != "0" else as_gr(0)


def _darboux_from(entry, sys) -> DarbouxFunction:
    factors = [(parse_polynomial(f["curve"]), _gr(f["exponent"])) for f in entry["factors"]]
    exps = []
    for e in entry["exponential_factors"]:
        f0 = parse_polynomial(e["f0"])
        k0 = BivarPoly.const(0) if f0.is_constant() else curve_cofactor(f0, sys).k
        ef = ExponentialFactor(parse_polynomial(e["h"]), f0, parse_polynomial(e["cofactor"]), k0)
        exps.append((ef, _gr(e["exponent"])))
    cof = parse_polynomial(entry["cofactor"]) if entry["cofactor"] is not None else None
    return DarbouxFunction(factors, exps, entry["role"], cof, entry["rational"])


def verify_report(report: dict):
    """Re-derive every identity of the report; returns a list of failures."""
    failures = []
    sysd = report["system"]
    sys = PlanarSystem(parse_polynomial(sysd["dx"]), parse_polynomial(sysd["dy"]))
    opts = report.get("options", {})

    def check(label, fn):
        try:
            if not fn():
                failures.append(label)
        except DarbouxError as exc:
            failures.append(f"{label}: {type(exc).__name__}: {exc}")

    for c in report.get("curves", []):
        f = parse_polynomial(c["curve"])
        k = parse_polynomial(c["cofactor"])
        check(f"curve {c['curve']}", lambda f=f, k=k: curve_cofactor(f, sys).k == k)
    for e in report.get("exponential_factors", []):
        def exp_ok(e=e):
            f0 = parse_polynomial(e["f0"])
            k0 = BivarPoly.const(0) if f0.is_constant() else curve_cofactor(f0, sys).k
            return ExponentialFactor(parse_polynomial(e["h"]), f0, parse_polynomial(e["cofactor"]), k0).verify(sys)
        check(f"exponential factor exp(({e['h']})/({e['f0']}))", exp_ok)
    for sec in ("first_integrals", "inverse_integrating_factors"):
        for d in report.get(sec, []):
            check(f"{sec} {d['expression']}", lambda d=d: _darboux_from(d, sys).verify(sys))
    for p in report.get("puiseux", []):
        check(f"puiseux {p['curve']}", lambda p=p: puiseux_entry(sys, parse_polynomial(p["curve"]), p["order"]) == p)
    if report.get("phi"):
        def phi_ok():
            fresh = {"phi": None}
            o = Options(order=opts.get("order", 24), exp_degree=opts.get("exp_degree"), phi=report["phi"]["input"])
            run_phi(sys, o, fresh)
            return fresh["phi"] == report["phi"]
        check("phi", phi_ok)
    for n in report.get("numeric_checks", []):
        def drift_ok(n=n):
            fi = _darboux_from(next(d for d in report["first_integrals"] if d["expression"] == n["invariant"]), sys)
            orbit = integrate(sys, tuple(n["start"]), n["t_end"], n["h"], precision=n["precision"])
            return check_conserved(EvaluableInvariant(fi), orbit) == n["drift"]
        check(f"numeric check from {n['start']}", drift_ok)
    return failures


def read_options(spec_options: dict, base: Options) -> Options:
    """Merge ``option.*`` lines of a system file into ``base``."""
    opts = Options(**{k: getattr(base, k) for k in base.__dataclass_fields__})
    phi = {}
    for name, values in sorted(spec_options.items()):
        value = values[-1]
        if name.startswith("phi."):
            phi[name[4:]] = value
        elif name in ("max_degree", "exp_degree", "exp_power", "order", "precision"):
            setattr(opts, name, int(value))
        elif name == "orbit":
            opts.orbits = opts.orbits + [tuple(float(v) for v in val.split(",")) for val in values]
        else:
            raise PreconditionFailed(f"unknown option {name!r}")
    if phi:
        if "A0" not in phi:
            raise PreconditionFailed("option.phi.A0 is required")
        opts.phi = phi
    return opts
