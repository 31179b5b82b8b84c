"""Invariants of the form exp{h2 A1/A0} with algebraic data, the exponential
factors they induce, and recognition of root-product invariants as Darboux
functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cofactors import QuasiCofactor, SigmaTable, _pad, cofactor_formula_I, curve_cofactor, quasipolynomial_cofactor
from .errors import (
    AmbiguousKernel,
    Inconsistent,
    NoFactorFound,
    NotDivisible,
    NotFound,
    NotInvariant,
    PreconditionFailed,
    TopDegreeViolation,
)
from .field import ZERO, as_gr
from .linalg import nullspace
from .poly import BivarPoly, divide_exact, lcm_poly
from .puiseux import SeriesPoly, is_particular_solution, linear_factor_product, minimal_polynomial
from .rational import LogDerivativeSpec, RationalFunction, integrate_log_derivative
from .search import DarbouxFunction, ExponentialFactor, find_exponential_factors
from .series import INF, PuiseuxSeries, lcm_all
from .system import PlanarSystem, divergence

DEFAULT_ORDER = 24


def apply_field(F: SeriesPoly, sys: PlanarSystem) -> SeriesPoly:
    """X(F) = P F_x + Q F_y for F polynomial in y over series."""
    return SeriesPoly.from_poly(sys.P) * F.diff_x() + SeriesPoly.from_poly(sys.Q) * F.diff_y()


def _spoly_zero(F: SeriesPoly) -> bool:
    return all(c.is_zero() for c in F.coeffs)


# --- Phi invariants -----------------------------------------------------------


@dataclass
class PhiInvariant:
    """exp{h2(x) A1(x, y) / A0(x, y)} with ``A0 = prod (y - gt_j)``.

    ``A1`` is any polynomial in y with series coefficients; ``A1_roots`` is
    kept when it was built from roots.
    """

    h2: RationalFunction
    A1: SeriesPoly
    A0_roots: list
    A1_roots: list = None
    order: int = DEFAULT_ORDER
    A0: SeriesPoly = field(default=None)
    M: QuasiCofactor = field(default=None, repr=False)

    def __post_init__(self):
        if self.h2.depends_on_y():
            raise PreconditionFailed("h2 must depend on x only")
        self.A0_roots = list(self.A0_roots)
        if self.A0 is None:
            self.A0 = linear_factor_product(self.A0_roots)
        if self.A1.coeffs == self.A0.coeffs:
            # common factor: Phi reduces to exp{h2}
            self.A1 = SeriesPoly([PuiseuxSeries.const(1)])
            self.A0 = SeriesPoly([PuiseuxSeries.const(1)])
            self.A0_roots, self.A1_roots = [], []
            return
        for g in self.A0_roots:
            if self.A1.evaluate(g).is_zero():
                raise PreconditionFailed(f"A1 and A0 share the root {g.to_text()}")

    @classmethod
    def from_roots(cls, h2, A1_roots, A0_roots, lead=1, order=DEFAULT_ORDER) -> "PhiInvariant":
        lead = lead if isinstance(lead, PuiseuxSeries) else PuiseuxSeries.const(lead)
        A1 = linear_factor_product(A1_roots) * lead
        return cls(_as_rf(h2), A1, list(A0_roots), list(A1_roots), order)

    def h2_series(self) -> PuiseuxSeries:
        return self.h2.to_series(self.order)

    def numerator(self) -> SeriesPoly:
        """h2 A1."""
        return self.A1 * self.h2_series()

    def to_text(self) -> str:
        num = self.numerator().to_text()
        if self.A0.degree <= 0:
            return f"exp({num})"
        return f"exp(({num})/({self.A0.to_text()}))"


def _as_rf(v) -> RationalFunction:
    return v if isinstance(v, RationalFunction) else RationalFunction(BivarPoly.const(v))


def verify_phi(phi: PhiInvariant, sys: PlanarSystem, T=None) -> QuasiCofactor:
    """Quasipolynomial cofactor M of Phi, or NotInvariant naming the failed clause."""
    Ms = []
    for g in phi.A0_roots:
        g = g.truncate(T) if T is not None else g
        try:
            ok = is_particular_solution(g, sys, T).ok
        except PreconditionFailed:
            ok = False
        if not ok:
            raise NotInvariant(f"{g.to_text()} is not a particular solution", None, "(i)")
        Ms.append(quasipolynomial_cofactor(g, sys, T))
    B = phi.numerator()
    sumM = SeriesPoly([])
    for Mj in Ms:
        sumM = sumM + Mj.poly
    num = apply_field(B, sys) - sumM * B
    quot, rem = num.divmod(phi.A0)
    if not _spoly_zero(rem):
        raise NotInvariant(
            f"cofactor has a pole along A0 = 0: remainder {rem.to_text()}", rem, "finiteness"
        )
    bound = sys.m - 1 if phi.A0.degree >= 1 else sys.m
    if quot.degree > bound:
        raise NotInvariant(f"cofactor has y-degree {quot.degree} > {bound}", None, "degree")
    M = QuasiCofactor(_pad(quot.coeffs, bound + 1))
    # X(B) A0 - B X(A0) - M A0^2 must vanish on every known coefficient
    check = apply_field(B, sys) * phi.A0 - B * apply_field(phi.A0, sys) - M.poly * phi.A0 * phi.A0
    if not _spoly_zero(check):
        raise NotInvariant("cofactor identity fails to truncation", check, "finiteness")
    inputs = [c for c in phi.numerator().coeffs + list(phi.A0_roots) if not c.is_zero()]
    nu = lcm_all(c.n for c in inputs)
    if nu % M.polydromy():
        raise NotInvariant(f"cofactor polydromy {M.polydromy()} does not divide {nu}", None, "polydromy")
    phi.M = M
    return M


# --- epsilon-minimal polynomial -------------------------------------------------


@dataclass
class EpsilonPolynomial:
    """``sum_i R_i(x, y) eps^i``, normalised so that R_0 is canonical."""

    R: list

    def __post_init__(self):
        if not self.R or not self.R[0]:
            raise PreconditionFailed("R_0 must be nonzero")

    @property
    def R0(self) -> BivarPoly:
        return self.R[0]

    def first_nonzero(self):
        """(i, R_i) for the first nonzero R_i with i > 0, or None."""
        for i, r in enumerate(self.R[1:], start=1):
            if r:
                return i, r
        return None

    def to_text(self) -> str:
        parts = []
        for i, r in enumerate(self.R):
            if not r:
                continue
            e = "" if i == 0 else ("*eps" if i == 1 else f"*eps^{i}")
            parts.append(f"({r.to_text()}){e}")
        return " + ".join(parts)

    def to_dict(self):
        return {f"R{i}": r.to_text() for i, r in enumerate(self.R)}


def _emul(a, b, E):
    out = [PuiseuxSeries.zero() for _ in range(E + 1)]
    for i, u in enumerate(a):
        if u.is_zero() and u.is_exact():
            continue
        for j in range(E + 1 - i):
            out[i + j] = out[i + j] + u * b[j]
    return out


def _eeval(F: SeriesPoly, y, E):
    acc = [PuiseuxSeries.zero() for _ in range(E + 1)]
    for c in reversed(F.coeffs):
        acc = _emul(acc, y, E)
        acc[0] = acc[0] + c
    return acc


def _perturbed_root(g, A0: SeriesPoly, B: SeriesPoly, E: int, order):
    """Root of A0 + eps B near the simple root g, as a list of eps-coefficients."""
    D = A0.diff_y().evaluate(g)
    if D.is_zero():
        raise PreconditionFailed(f"{g.to_text()} is a multiple root of A0")
    Dinv = D.reciprocal(Fraction(order) if D.is_exact() and len(D.coeffs) > 1 else None)
    y = [g] + [PuiseuxSeries.zero() for _ in range(E)]
    for k in range(1, E + 1):
        val = _eeval(A0, y, k)
        bval = _eeval(B, y, k - 1)
        resid = val[k] + bval[k - 1]
        y[k] = -(resid * Dinv)
    return y


def epsilon_minimal_polynomial(
    phi: PhiInvariant, T=None, max_deg_x: int = 4, max_deg_y: int = None, max_deg_eps: int = None,
    margin: int = 4,
) -> EpsilonPolynomial:
    """Least-degree P(x, y, eps) vanishing on every y-root of A0 + eps h2 A1."""
    if phi.M is None:
        raise PreconditionFailed("verify_phi must succeed first")
    if not phi.A0_roots:
        raise PreconditionFailed("A0 has no roots")
    order = T if T is not None else phi.order
    B = phi.numerator()
    ny = len(phi.A0_roots)
    probe = [_perturbed_root(g, phi.A0, B, 1, order) for g in phi.A0_roots]
    n0 = lcm_all(c.n for r in probe for c in r if not c.is_zero())
    Dy = max_deg_y if max_deg_y is not None else ny * n0
    De = max_deg_eps if max_deg_eps is not None else Dy
    # headroom so that eps^De * (anything) is not annihilated by the truncation
    E = De + Dy + 1
    roots = [_perturbed_root(g, phi.A0, B, E, order) for g in phi.A0_roots]
    if T is not None:
        roots = [[c.truncate(T) for c in r] for r in roots]
    # powers[j][b][s] = [eps^s] y_j^b
    powers = []
    for r in roots:
        pw = [[PuiseuxSeries.const(1)] + [PuiseuxSeries.zero() for _ in range(E)]]
        for _ in range(Dy):
            pw.append(_emul(pw[-1], r, E))
        powers.append(pw)
    n = lcm_all(c.n for pw in powers for row in pw for c in row if not c.is_zero())
    grids = []
    for pw in powers:
        g = [[c.with_n(n) for c in row] for row in pw]
        grids.append(g)
    for dy in range(1, Dy + 1):
        for de in range(0, De + 1):
            for dx in range(0, max_deg_x + 1):
                cols = [(i, a, b) for i in range(de + 1) for b in range(dy + 1) for a in range(dx + 1)]
                rows, nslots = _eps_rows(grids, cols, E, dy, n)
                if nslots is not None and nslots < len(cols) + margin:
                    raise AmbiguousKernel(
                        f"truncation too short for degree bounds ({dx}, {dy}, {de}); raise the order"
                    )
                kernel = nullspace(rows, len(cols))
                if not kernel:
                    continue
                if len(kernel) > 1:
                    raise AmbiguousKernel(f"kernel of dimension {len(kernel)} at bounds ({dx}, {dy}, {de})")
                vec = kernel[0]
                R = [dict() for _ in range(de + 1)]
                for k, v in vec.items():
                    i, a, b = cols[k]
                    R[i][(a, b)] = v
                R = [BivarPoly(t) for t in R]
                if not R[0] or max(r.deg_y for r in R if r) < dy or not R[-1]:
                    continue
                out = _normalise(R)
                _certify_r0(out.R0, phi, max_deg_x, Dy, T)
                return out
    raise NotFound("no eps-polynomial within the degree bounds")


def _eps_rows(grids, cols, E, dy, n):
    rows = {}
    finite = True
    nslots = 0
    for j, g in enumerate(grids):
        bound = min(t for b in range(dy + 1) for _, t in g[b])
        lows = [min(cs) for b in range(dy + 1) for cs, _ in g[b] if cs]
        low = min(lows) if lows else 0
        if bound == INF:
            finite = False
        else:
            nslots += (bound - low) * (E + 1)
        for k, (i, a, b) in enumerate(cols):
            for s in range(E + 1 - i):
                cs, _ = g[b][s]
                for e, c in cs.items():
                    e2 = e + a * n
                    if e2 < bound:
                        key = (j, i + s, e2)
                        row = rows.setdefault(key, {})
                        row[k] = row.get(k, ZERO) + c
    rows = [{k: v for k, v in r.items() if v} for r in rows.values()]
    return [r for r in rows if r], (nslots if finite else None)


def _normalise(R) -> EpsilonPolynomial:
    r0 = R[0]
    c = r0.canonical().leading_coefficient() / r0.leading_coefficient()
    return EpsilonPolynomial([r.scale(c) for r in R])


def _certify_r0(R0: BivarPoly, phi: PhiInvariant, dx: int, dy: int, T):
    """R_0 must be a power of the least polynomial vanishing on every gt_j."""
    L = None
    for g in phi.A0_roots:
        f = minimal_polynomial(g, dx, dy, T)
        L = f if L is None else lcm_poly(L, f)
    L = L.canonical()
    k = R0.deg_y // max(L.deg_y, 1)
    if k < 1 or (L**k).canonical() != R0.canonical():
        raise Inconsistent(f"R_0 = {R0.to_text()} is not a power of {L.to_text()}")


# --- exponential-factor synthesis -------------------------------------------------


@dataclass
class SynthesisResult:
    factor: ExponentialFactor
    path: str
    eps_polynomial: EpsilonPolynomial
    raw_candidate: object
    raw_candidate_ok: bool
    psi_numerator: SeriesPoly
    psi_denominator: object
    psi_cofactor: QuasiCofactor
    multiplicative_ok: bool

    def psi_text(self) -> str:
        if self.psi_denominator is None:
            return f"exp({self.psi_numerator.to_text()}) (denominator R0*A0)"
        return f"exp(({self.psi_numerator.to_text()})/({self.psi_denominator.to_text()}))"

    def to_dict(self):
        raw = None
        if self.raw_candidate is not None:
            i, r = self.raw_candidate
            raw = {"index": i, "numerator": r.to_text(), "exact_check": self.raw_candidate_ok}
        return {
            "R0": self.eps_polynomial.R0.to_text(),
            "R_list": [r.to_text() for r in self.eps_polynomial.R],
            "raw_candidate": raw,
            "path": self.path,
            "exponential_factor": self.factor.to_dict(),
            "psi": self.psi_text(),
            "psi_cofactor": self.psi_cofactor.to_dict(),
            "multiplicative_ok": self.multiplicative_ok,
        }


def _checked_exp_factor(h: BivarPoly, f0: BivarPoly, sys: PlanarSystem):
    """exp{h/f0} as an ExponentialFactor when the exact check passes, else None."""
    try:
        k0 = BivarPoly.const(0) if f0.is_constant() else curve_cofactor(f0, sys).k
        kt = divide_exact(sys.apply(h) - k0 * h, f0)
    except (NotInvariant, NotDivisible):
        return None
    if kt and kt.degree > sys.d - 1:
        return None
    return ExponentialFactor(h, f0, kt, k0)


def _exp_cofactor(N: SeriesPoly, D: SeriesPoly, sys: PlanarSystem) -> SeriesPoly:
    """Cofactor (X(N) D - N X(D)) / D^2 of exp{N/D}; NotInvariant if it has a pole."""
    num = apply_field(N, sys) * D - N * apply_field(D, sys)
    quot, rem = num.divmod(D * D)
    if not _spoly_zero(rem):
        raise NotInvariant("cofactor of the companion is not polynomial in y", rem, "finiteness")
    return quot


def synthesize_exponential_factor(phi: PhiInvariant, sys: PlanarSystem, H: int, eps=None) -> SynthesisResult:
    """exp{h/R_0} from the eps-construction, plus the companion Psi = exp{h/R_0 - h2 A1/A0}."""
    if phi.M is None:
        verify_phi(phi, sys)
    eps = eps or epsilon_minimal_polynomial(phi)
    R0 = eps.R0
    raw = eps.first_nonzero()
    raw_factor = _checked_exp_factor(raw[1], R0, sys) if raw else None
    if raw_factor is not None:
        factor, path = raw_factor, "construction"
    else:
        try:
            found = find_exponential_factors(sys, R0, H)
        except NotInvariant:
            found = []
        if not found:
            raise NoFactorFound(f"no exponential factor exp{{h/({R0.to_text()})}} with deg h <= {H}")
        factor, path = found[0], "search"
    B = phi.numerator()
    B0, rem = SeriesPoly.from_poly(R0).divmod(phi.A0)
    h = SeriesPoly.from_poly(factor.h)
    if _spoly_zero(rem):
        psi_num, psi_den = h - B * B0, R0
        den = SeriesPoly.from_poly(R0)
    else:
        den = SeriesPoly.from_poly(R0) * phi.A0
        psi_num, psi_den = h * phi.A0 - B * SeriesPoly.from_poly(R0), None
    quot = _exp_cofactor(psi_num, den, sys)
    if quot.degree > sys.m - 1:
        raise NotInvariant(f"companion cofactor has y-degree {quot.degree}", None, "degree")
    psi_cof = QuasiCofactor(_pad(quot.coeffs, sys.m))
    kt = QuasiCofactor(_pad(SeriesPoly.from_poly(factor.cofactor).coeffs, sys.m))
    mult = (phi.M + psi_cof).equal_to_truncation(kt)
    return SynthesisResult(factor, path, eps, raw, raw_factor is not None, psi_num, psi_den, psi_cof, mult)


# --- Darboux recognition ----------------------------------------------------------


@dataclass
class RootProductInvariant:
    """h(x) prod (y - g_i)^alpha_i, optionally times a Phi invariant."""

    h: LogDerivativeSpec
    roots: list
    phi: PhiInvariant = None

    def __post_init__(self):
        self.roots = [(g, as_gr(a)) for g, a in self.roots]
        if self.h is None:
            self.h = LogDerivativeSpec.one()


@dataclass
class RecognitionResult:
    verdict: str
    function: DarbouxFunction = None
    groups: list = field(default_factory=list)
    cofactor: BivarPoly = None
    identity_ok: bool = None
    synthesis: SynthesisResult = None
    detail: str = ""

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "function": self.function.to_dict() if self.function else None,
            "groups": [{"curve": f.to_text(), "exponent": str(b), "size": k} for f, b, k in self.groups],
            "cofactor": self.cofactor.to_text() if self.cofactor is not None else None,
            "identity_ok": self.identity_ok,
            "detail": self.detail,
        }


def invariant_cofactor(inv: RootProductInvariant, sys: PlanarSystem, order=DEFAULT_ORDER) -> QuasiCofactor:
    """Quasipolynomial cofactor of the invariant, as the sum of its parts."""
    m = sys.m
    L = inv.h.logderiv.to_series(order)
    total = QuasiCofactor(_pad(SeriesPoly.from_poly(sys.P).coeffs, m + 1)).scale(0)
    total = total + QuasiCofactor(_pad((SeriesPoly.from_poly(sys.P) * L).coeffs, m + 1))
    for g, a in inv.roots:
        total = total + quasipolynomial_cofactor(g, sys).scale(a)
    if inv.phi is not None:
        total = total + (inv.phi.M or verify_phi(inv.phi, sys))
    return total


def darboux_recognition(
    inv: RootProductInvariant, sys: PlanarSystem, T=None, max_deg_x: int = 4, max_deg_y: int = 4, H: int = None
) -> RecognitionResult:
    """Decide whether the invariant is a Darboux function."""
    groups = {}
    for g, a in inv.roots:
        try:
            f = minimal_polynomial(g, max_deg_x, max_deg_y, T)
        except (AmbiguousKernel, NotFound) as exc:
            return RecognitionResult("Undetermined", detail=f"cannot group {g.to_text()}: {exc}")
        groups.setdefault(f, []).append(a)
    summary = []
    for f, alphas in groups.items():
        if any(a != alphas[0] for a in alphas):
            return RecognitionResult(
                "NotDarboux",
                groups=[(f, alphas[0], len(alphas)) for f, alphas in groups.items()],
                detail=f"unequal exponents on the roots of {f.to_text()}",
            )
        if len(alphas) != f.deg_y:
            return RecognitionResult(
                "NotDarboux",
                groups=[(f, alphas[0], len(alphas)) for f, alphas in groups.items()],
                detail=f"only {len(alphas)} of {f.deg_y} roots of {f.to_text()} are present",
            )
        summary.append((f, alphas[0], len(alphas)))
    qc = invariant_cofactor(inv, sys, T if T is not None else DEFAULT_ORDER)
    if inv.phi is None:
        try:
            table = SigmaTable([a for _, a in inv.roots], [g for g, _ in inv.roots], inv.h)
            if not cofactor_formula_I(table, sys).cofactor.equal_to_truncation(qc):
                raise Inconsistent("closed-form cofactor disagrees with the sum of parts")
        except TopDegreeViolation:
            pass
    if not qc.is_polynomial_to_truncation():
        raise PreconditionFailed(f"cofactor {qc.to_text()} is not polynomial")
    k = qc.to_poly()
    # h~ = h * prod lc_j^(-beta_j)
    ld = inv.h.logderiv
    for f, beta, _ in summary:
        lc = f.y_coeff(f.deg_y)
        if not lc.is_constant():
            ld = ld - RationalFunction(lc.diff("x"), lc) * RationalFunction(BivarPoly.const(beta))
    spec = integrate_log_derivative(ld)
    factors = [(f, beta) for f, beta, _ in summary]
    factors += [(u, c) for u, c in spec.closed_form if not u.is_constant() and c]
    exps = []
    if spec.exp_part is not None:
        e = _checked_exp_factor(spec.exp_part.num, spec.exp_part.den, sys)
        if e is None:
            raise PreconditionFailed(f"exp({spec.exp_part.to_text()}) is not an exponential factor")
        exps.append((e, as_gr(1)))
    synth = None
    if inv.phi is not None:
        synth = synthesize_exponential_factor(inv.phi, sys, H if H is not None else sys.d)
        exps.append((synth.factor, as_gr(1)))
    total = BivarPoly.const(0)
    for f, lam in factors:
        total = total + curve_cofactor(f, sys).k.scale(lam)
    for e, mu in exps:
        total = total + e.cofactor.scale(mu)
    if not total:
        role = "FirstIntegral"
    elif total == divergence(sys):
        role = "IntegratingFactorInverse"
    else:
        role = "GeneralInvariant"
    rational = all(lam.is_integer() for _, lam in factors) and not exps
    fn = DarbouxFunction(factors, exps, role, total, rational)
    return RecognitionResult("Darboux", fn, summary, k, total == k, synth)
