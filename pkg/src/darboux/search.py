"""Invariant algebraic curves, exponential factors and Darboux functions."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import upoly
from .bilinear import Solver
from .cofactors import curve_cofactor
from .errors import NotInvariant, PreconditionFailed
from .field import ONE, ZERO
from .linalg import canonical_basis, nullspace, solve_affine
from .poly import BivarPoly, divide_exact, divide_with_remainder, divides, grlex_key
from .system import PlanarSystem, divergence


def monomials(deg: int, low: int = 0):
    """Monomials of total degree in [low, deg], descending grlex."""
    out = [(i, t - i) for t in range(low, deg + 1) for i in range(t + 1)]
    out.sort(key=grlex_key, reverse=True)
    return out


# --- invariant curves ---------------------------------------------------------


def _homogenize(u, e):
    """y^e u(x/y) for a univariate u of degree <= e."""
    return BivarPoly({(k, e - k): c for k, c in enumerate(u) if c})


def _top_factors(sys: PlanarSystem):
    """Irreducible factors of x Q_d - y P_d over Q(i), or None if it vanishes."""
    d = sys.d
    F = BivarPoly.x() * sys.Q.homogeneous_part(d) - BivarPoly.y() * sys.P.homogeneous_part(d)
    if not F:
        return None, F
    dehom = [ZERO] * (d + 2)
    for (i, j), c in F.terms.items():
        dehom[i] = c
    dehom = upoly.strip(dehom)
    out = []
    for u, m in upoly.irreducible_factors(dehom):
        out.append((_homogenize(u, len(u) - 1), m))
    deficit = d + 1 - (len(dehom) - 1)
    if deficit:
        out.append((BivarPoly.y(), deficit))
    return out, F


def _top_candidates(factors, n):
    """Products of the given homogeneous factors with total degree n."""
    degs = [f.degree for f, _ in factors]

    def rec(k, left):
        if left == 0:
            yield BivarPoly.const(1)
            return
        if k == len(factors):
            return
        for e in range(left // degs[k], -1, -1):
            for rest in rec(k + 1, left - e * degs[k]):
                yield factors[k][0] ** e * rest

    yield from rec(0, n)


class _Ansatz:
    """f = known + sum f_v m_v and k = known + sum k_v m_v as affine forms."""

    def __init__(self):
        self.nvars = 0
        self.f = {}
        self.k = {}

    def new(self):
        self.nvars += 1
        return self.nvars - 1

    def add_known(self, target, poly: BivarPoly):
        for m, c in poly.terms.items():
            target.setdefault(m, {})[()] = c

    def add_unknowns(self, target, monos):
        for m in monos:
            target.setdefault(m, {})[(self.new(),)] = ONE

    def equations(self, sys: PlanarSystem):
        eqs = {}

        def put(mono, key, c):
            e = eqs.setdefault(mono, {})
            v = e.get(key, ZERO) + c
            if v:
                e[key] = v
            else:
                e.pop(key, None)

        for m, form in self.f.items():
            Xm = sys.apply(BivarPoly.monomial(*m))
            for mono, c in Xm.terms.items():
                for key, a in form.items():
                    put(mono, key, c * a)
        for mk, fk in self.k.items():
            for mf, ff in self.f.items():
                mono = (mk[0] + mf[0], mk[1] + mf[1])
                for k1, a in fk.items():
                    for k2, b in ff.items():
                        put(mono, tuple(sorted(k1 + k2)), -(a * b))
        return [e for e in eqs.values() if e]

    def realize(self, target, values):
        terms = {}
        for m, form in target.items():
            c = ZERO
            for key, a in form.items():
                t = a
                for v in key:
                    t = t * values.get(v, ZERO)
                c = c + t
            if c:
                terms[m] = c
        return BivarPoly(terms)


def _search_degree(sys: PlanarSystem, n: int, notices: list):
    d = sys.d
    factors, F = _top_factors(sys)
    branches = []
    if factors is not None:
        for fn in _top_candidates(factors, n):
            kd = divide_exact(sys.apply(fn).homogeneous_part(n + d - 1), fn)
            branches.append((fn, kd, None))
    else:
        # x Q_d - y P_d = 0: P_d = x R, Q_d = y R and k_{d-1} = n R
        R = divide_exact(sys.P.homogeneous_part(d), BivarPoly.x()) if sys.P.homogeneous_part(d) else \
            divide_exact(sys.Q.homogeneous_part(d), BivarPoly.y())
        top = monomials(n, n)
        for idx, lead in enumerate(top):
            branches.append((None, R.scale(n), (lead, top[idx + 1:])))
    found = []
    for fn, kd, lead_info in branches:
        A = _Ansatz()
        if fn is not None:
            A.add_known(A.f, fn)
        else:
            lead, rest = lead_info
            A.add_known(A.f, BivarPoly.monomial(*lead))
            A.add_unknowns(A.f, rest)
        A.add_unknowns(A.f, monomials(n - 1))
        A.add_known(A.k, kd)
        if d >= 2:
            A.add_unknowns(A.k, monomials(d - 2))
        solver = Solver()
        for sol in solver.solve(A.equations(sys)):
            f = A.realize(A.f, sol)
            found.append(f)
        notices.extend(f"degree {n}: {msg}" for msg in solver.notices)
    return found


def find_invariant_curves(sys: PlanarSystem, N: int, diagnostics=None):
    """Invariant algebraic curves of degree <= N (sound, possibly incomplete).

    Reducible curves whose factors were already found are dropped.
    """
    if N < 1:
        raise ValueError("maximum degree must be at least 1")
    notices = [] if diagnostics is None else diagnostics
    curves = {}
    for n in range(1, N + 1):
        for f in _search_degree(sys, n, notices):
            if f.is_constant():
                continue
            f = f.canonical()
            if f in curves or any(g.degree < f.degree and divides(g, f) for g in curves):
                continue
            try:
                curves[f] = curve_cofactor(f, sys)
            except NotInvariant:
                notices.append(f"discarded unverified candidate {f}")
    seen = []
    for v in sorted(curves.values(), key=lambda c: (c.f.degree, c.f.to_text())):
        if any(g.f.degree < v.f.degree and divides(g.f, v.f) for g in seen):
            continue
        seen.append(v)
    return seen


# --- exponential factors ------------------------------------------------------


@dataclass(frozen=True)
class ExponentialFactor:
    """exp{h/f0} with X(h) = k0 h + kt f0."""

    h: BivarPoly
    f0: BivarPoly
    cofactor: BivarPoly
    k0: BivarPoly

    def verify(self, sys: PlanarSystem) -> bool:
        k0 = BivarPoly.const(0) if self.f0.is_constant() else curve_cofactor(self.f0, sys).k
        return k0 == self.k0 and sys.apply(self.h) == self.k0 * self.h + self.cofactor * self.f0

    def to_dict(self):
        return {"h": self.h.to_text(), "f0": self.f0.to_text(), "cofactor": self.cofactor.to_text()}


def find_exponential_factors(sys: PlanarSystem, f0: BivarPoly, H: int):
    """Exponential factors exp{h/f0} with deg h <= H, modulo h in f0*C[x,y]."""
    if not f0:
        raise PreconditionFailed("f0 must be nonzero")
    k0 = BivarPoly.const(0) if f0.is_constant() else curve_cofactor(f0, sys).k
    hm = monomials(H)
    km = monomials(max(sys.d - 1, 0))
    ncols = len(hm) + len(km)
    eqs = {}
    for c, m in enumerate(hm):
        mono = BivarPoly.monomial(*m)
        for key, v in (sys.apply(mono) - k0 * mono).terms.items():
            eqs.setdefault(key, {})[c] = eqs.get(key, {}).get(c, ZERO) + v
    for c, m in enumerate(km):
        for key, v in (BivarPoly.monomial(*m) * f0).terms.items():
            eqs.setdefault(key, {})[len(hm) + c] = -v
    kernel = nullspace([{c: v for c, v in r.items() if v} for r in eqs.values()], ncols)
    remainders = []
    for vec in kernel:
        h = BivarPoly({hm[c]: v for c, v in vec.items() if c < len(hm)})
        if f0.is_constant():
            h = h - BivarPoly.const(h.coeff(0, 0))
        else:
            h = divide_with_remainder(h, f0)[1]
        if h:
            remainders.append(h)
    if not remainders:
        return []
    allm = sorted({m for h in remainders for m in h.terms}, key=grlex_key, reverse=True)
    col = {m: i for i, m in enumerate(allm)}
    basis = canonical_basis([{col[m]: c for m, c in h.terms.items()} for h in remainders], len(allm))
    out = []
    for vec in basis:
        h = BivarPoly({allm[i]: c for i, c in vec.items()})
        kt = divide_exact(sys.apply(h) - k0 * h, f0)
        out.append(ExponentialFactor(h, f0, kt, k0))
    out.sort(key=lambda e: (e.h.degree, e.h.to_text()))
    return out


# --- Darboux functions ----------------------------------------------------------


@dataclass
class DarbouxFunction:
    """prod f_i^lambda_i * prod exp{h_j/f0_j}^mu_j."""

    factors: list
    exp_parts: list = field(default_factory=list)
    role: str = "GeneralInvariant"
    cofactor: BivarPoly = None
    rational: bool = False

    def verify(self, sys: PlanarSystem) -> bool:
        total = BivarPoly.const(0)
        for f, lam in self.factors:
            total = total + curve_cofactor(f, sys).k.scale(lam)
        for e, mu in self.exp_parts:
            if not e.verify(sys):
                return False
            total = total + e.cofactor.scale(mu)
        if total != self.cofactor:
            return False
        if self.role == "FirstIntegral":
            return not total
        if self.role == "IntegratingFactorInverse":
            return total == divergence(sys)
        return True

    def to_text(self) -> str:
        parts = []
        for f, lam in self.factors:
            if not lam:
                continue
            parts.append(f"({f.to_text()})" + ("" if lam == 1 else f"^({lam})"))
        for e, mu in self.exp_parts:
            if mu:
                parts.append(f"exp(({e.h.to_text()})/({e.f0.to_text()}))" + ("" if mu == 1 else f"^({mu})"))
        return "*".join(parts) if parts else "1"

    def labels(self):
        """Integrability labels implied by the role and the exponents."""
        out = []
        if self.role == "FirstIntegral":
            out.append("darboux-first-integral")
            out.append("rational-first-integral" if self.rational else "rational-inverse-integrating-factor-exists")
        elif self.role == "IntegratingFactorInverse":
            out.append("darboux-inverse-integrating-factor")
            if self.rational:
                out.append("rational-inverse-integrating-factor")
            out.append("liouvillian-integrable")
        return out

    def to_dict(self):
        return {
            "expression": self.to_text(),
            "labels": self.labels(),
            "factors": [{"curve": f.to_text(), "exponent": str(l)} for f, l in self.factors],
            "exponential_factors": [{**e.to_dict(), "exponent": str(mu)} for e, mu in self.exp_parts],
            "role": self.role,
            "cofactor": self.cofactor.to_text() if self.cofactor is not None else None,
            "rational": self.rational,
        }


def _member_cofactors(members):
    curves, exps = [], []
    for m in members:
        (exps if isinstance(m, ExponentialFactor) else curves).append(m)
    return curves, exps


def _cofactor_rows(cofs, target=None):
    monos = sorted({m for k in cofs for m in k.terms} | set(target.terms if target else ()), key=grlex_key)
    rows, rhs = [], []
    for m in monos:
        rows.append({i: k.coeff(*m) for i, k in enumerate(cofs) if k.coeff(*m)})
        rhs.append(target.coeff(*m) if target else ZERO)
    return rows, rhs


def _assemble(curves, exps, vec, role, target):
    lam = [vec.get(i, ZERO) for i in range(len(curves))]
    mu = [vec.get(len(curves) + j, ZERO) for j in range(len(exps))]
    factors = [(c.f, l) for c, l in zip(curves, lam)]
    ex = [(e, m) for e, m in zip(exps, mu)]
    rational = all(l.is_integer() for l in lam) and not any(mu)
    return DarbouxFunction(factors, ex, role, target, rational)


def find_first_integral(sys: PlanarSystem, members):
    """Solutions of sum lambda_i k_i + sum mu_j kt_j = 0 as Darboux first integrals."""
    if not members:
        raise PreconditionFailed("at least one member is required")
    curves, exps = _member_cofactors(members)
    cofs = [c.k for c in curves] + [e.cofactor for e in exps]
    rows, _ = _cofactor_rows(cofs)
    kernel = nullspace(rows, len(cofs))
    basis = canonical_basis(kernel, len(cofs)) if kernel else []
    zero = BivarPoly.const(0)
    return [_assemble(curves, exps, v, "FirstIntegral", zero) for v in basis]


def find_inverse_integrating_factor(sys: PlanarSystem, members):
    """Solutions of sum lambda_i k_i + sum mu_j kt_j = div(P, Q)."""
    curves, exps = _member_cofactors(members)
    div = divergence(sys)
    cofs = [c.k for c in curves] + [e.cofactor for e in exps]
    if not cofs:
        return [DarbouxFunction([], [], "IntegratingFactorInverse", div, True)] if not div else []
    rows, rhs = _cofactor_rows(cofs, div)
    res = solve_affine(rows, rhs, len(cofs))
    if res is None:
        return []
    part, kernel = res
    out = [_assemble(curves, exps, part, "IntegratingFactorInverse", div)]
    for v in (canonical_basis(kernel, len(cofs)) if kernel else []):
        combo = dict(part)
        for i, c in v.items():
            combo[i] = combo.get(i, ZERO) + c
        combo = {i: c for i, c in combo.items() if c}
        out.append(_assemble(curves, exps, combo, "IntegratingFactorInverse", div))
    return out


def realify(f: BivarPoly) -> BivarPoly:
    """f times its complex conjugate."""
    return (f * f.conjugate()).canonical()
