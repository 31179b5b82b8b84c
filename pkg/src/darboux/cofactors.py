"""Polynomial and quasipolynomial cofactors, closed-form cofactor formulas,
the y = 1/z change of variable and rational-solution diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import upoly
from .errors import (
    Inconsistent,
    NotAParticularSolution,
    NotDivisible,
    NotInvariant,
    PreconditionFailed,
    RSMismatch,
    TopDegreeViolation,
)
from .field import as_gr
from .poly import BivarPoly, divide_exact
from .puiseux import SeriesPoly, is_particular_solution
from .rational import LogDerivativeSpec, RationalFunction
from .series import PuiseuxSeries, lcm_all
from .system import PlanarSystem

DEFAULT_ORDER = 24


@dataclass(frozen=True)
class CurveWithCofactor:
    f: BivarPoly
    k: BivarPoly

    def to_dict(self):
        return {"curve": self.f.to_text(), "cofactor": self.k.to_text()}


def curve_cofactor(f: BivarPoly, sys: PlanarSystem) -> CurveWithCofactor:
    """The polynomial k with X(f) = k f, or NotInvariant."""
    if f.is_constant():
        raise PreconditionFailed("curve must be nonconstant")
    Xf = sys.apply(f)
    try:
        k = divide_exact(Xf, f)
    except NotDivisible as exc:
        raise NotInvariant(f"{f} is not invariant", exc.remainder, "division") from None
    if k and k.degree > sys.d - 1:
        raise NotInvariant(f"cofactor of {f} exceeds degree d-1", None, "degree")
    return CurveWithCofactor(f, k)


# --- quasipolynomial cofactors --------------------------------------------------


@dataclass
class QuasiCofactor:
    """``k_0(x) + k_1(x) y + ... + k_{m-1}(x) y^{m-1}`` with series coefficients."""

    coeffs: list

    @property
    def poly(self) -> SeriesPoly:
        return SeriesPoly(self.coeffs)

    @property
    def degree(self) -> int:
        return self.poly.degree

    def polydromy(self) -> int:
        return lcm_all(c.n for c in self.coeffs if not c.is_zero())

    def is_polynomial_to_truncation(self) -> bool:
        return all(c.is_polynomial_to_truncation() for c in self.coeffs)

    def to_poly(self) -> BivarPoly:
        """The cofactor as a polynomial, when every known term is one."""
        if not self.is_polynomial_to_truncation():
            raise PreconditionFailed("cofactor is not polynomial")
        terms = {}
        for j, c in enumerate(self.coeffs):
            for i, v in c.coeffs.items():
                terms[(i // c.n, j)] = v
        return BivarPoly(terms)

    def evaluate(self, g: PuiseuxSeries) -> PuiseuxSeries:
        return self.poly.evaluate(g)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        pad = lambda cs, j: cs[j] if j < len(cs) else PuiseuxSeries.zero()
        return QuasiCofactor([pad(self.coeffs, j) + pad(other.coeffs, j) for j in range(n)])

    def scale(self, c) -> "QuasiCofactor":
        return QuasiCofactor([s.scale(c) for s in self.coeffs])

    def equal_to_truncation(self, other) -> bool:
        diff = self + other.scale(-1)
        return all(c.is_zero() for c in diff.coeffs)

    def to_text(self) -> str:
        return self.poly.to_text()

    def to_dict(self):
        return {f"k{j}": c.to_text() for j, c in enumerate(self.coeffs)}


def _pad(coeffs, m):
    cs = list(coeffs)[:m]
    while len(cs) < m:
        cs.append(PuiseuxSeries.zero())
    return cs


def quasipolynomial_cofactor(g: PuiseuxSeries, sys: PlanarSystem, T=None) -> QuasiCofactor:
    """M = (Q - g' P) / (y - g) by synthetic division over series."""
    if T is not None:
        g = g.truncate(T)
    verdict = is_particular_solution(g, sys, T)
    if not verdict.ok:
        raise NotAParticularSolution(f"residual {verdict.residual.to_text()}")
    num = SeriesPoly.from_poly(sys.Q) - SeriesPoly.from_poly(sys.P) * g.derivative()
    quot, rem = num.divide_linear(g)
    if not rem.is_zero():
        raise NotAParticularSolution(f"division remainder {rem.to_text()}")
    return QuasiCofactor(_pad(quot.coeffs, sys.m))


# --- closed-form cofactors ----------------------------------------------------


@dataclass
class SigmaTable:
    """Data of an invariant ``h(x) prod (y - g_nu)^alpha_nu`` times an
    optional ``exp{h2 A1/A0}`` with ``A1 = prod (y - a_k)``,
    ``A0 = prod (y - gt_j)``."""

    alphas: list
    roots: list
    h: LogDerivativeSpec = None
    h2: RationalFunction = None
    a_roots: list = field(default_factory=list)
    gt_roots: list = field(default_factory=list)
    order: int = DEFAULT_ORDER

    def __post_init__(self):
        self.alphas = [as_gr(a) for a in self.alphas]
        if len(self.alphas) != len(self.roots):
            raise ValueError("one exponent per root is required")

    def logderiv_series(self) -> PuiseuxSeries:
        if self.h is None:
            return PuiseuxSeries.zero()
        return self.h.logderiv.to_series(self.order)

    def h2_series(self) -> PuiseuxSeries:
        if self.h2 is None:
            return PuiseuxSeries.zero()
        return self.h2.to_series(self.order)

    def sigma(self, kappa: int) -> PuiseuxSeries:
        """``sum_nu alpha_nu g_nu^kappa``."""
        total = PuiseuxSeries.zero()
        for a, g in zip(self.alphas, self.roots):
            total = total + (g**kappa).scale(a)
        return total


def _complete_homogeneous(values, k: int) -> PuiseuxSeries:
    """Sum over all monomials of degree k in ``values``."""
    if k == 0:
        return PuiseuxSeries.const(1)
    if not values:
        return PuiseuxSeries.zero()
    head, rest = values[0], values[1:]
    total = PuiseuxSeries.zero()
    power = PuiseuxSeries.const(1)
    for i in range(k + 1):
        total = total + power * _complete_homogeneous(rest, k - i)
        power = power * head
    return total


def sigma_tilde(kappa: int, table: SigmaTable) -> PuiseuxSeries:
    r = len(table.a_roots)
    if r != len(table.gt_roots):
        raise RSMismatch(f"r = {r} differs from s = {len(table.gt_roots)}; apply invert_y first")
    base = table.sigma(kappa)
    if kappa == 0 or r == 0 or table.h2 is None:
        return base
    extra = PuiseuxSeries.zero()
    for mask in range(1 << r):
        eps = [(mask >> k) & 1 for k in range(r)]
        e = sum(eps)
        if e > kappa:
            continue
        term = PuiseuxSeries.const(-1 if e % 2 == 0 else 1)
        for k, bit in enumerate(eps):
            if bit:
                term = term * table.a_roots[k]
        extra = extra + term * _complete_homogeneous(table.gt_roots, kappa - e)
    return base + (table.h2_series() * extra).scale(kappa)


@dataclass
class FormulaResult:
    cofactor: QuasiCofactor
    top_degree_term: PuiseuxSeries

    @property
    def top_degree_ok(self) -> bool:
        return self.top_degree_term.is_zero()


def _series_coeffs(sys: PlanarSystem):
    p = [PuiseuxSeries.from_upoly(c) for c in sys.p]
    q = [PuiseuxSeries.from_upoly(c) for c in sys.q]
    return p, q


def _formula(L, sigmas, sys: PlanarSystem) -> FormulaResult:
    m = sys.m
    p, q = _series_coeffs(sys)
    top = p[m] * L
    if not top.is_zero():
        raise TopDegreeViolation(f"p_m times the log-derivative is {top.to_text()}, not zero")
    dsig = [s.derivative() for s in sigmas]
    ks = []
    for j in range(m):
        kj = p[j] * L
        for s in range(j + 1, m + 1):
            kj = kj + sigmas[s - j - 1] * q[s] - (dsig[s - j] * p[s]).scale(as_gr(1) / (s - j))
        ks.append(kj)
    return FormulaResult(QuasiCofactor(ks), top)


def cofactor_formula_I(table: SigmaTable, sys: PlanarSystem) -> FormulaResult:
    """Cofactor of ``h prod (y - g_nu)^alpha_nu`` from the power sums sigma."""
    sigmas = [table.sigma(k) for k in range(sys.m + 1)]
    return _formula(table.logderiv_series(), sigmas, sys)


def cofactor_formula_II(table: SigmaTable, sys: PlanarSystem) -> FormulaResult:
    """Cofactor when an ``exp{h2 A1/A0}`` part is present (r = s)."""
    if len(table.a_roots) != len(table.gt_roots):
        raise RSMismatch("r must equal s; apply invert_y first")
    L = table.logderiv_series() + table.h2_series().derivative()
    sigmas = [sigma_tilde(k, table) for k in range(sys.m + 1)]
    return _formula(L, sigmas, sys)


# --- y = 1/z ------------------------------------------------------------------


@dataclass(frozen=True)
class InvertedSystem:
    system: PlanarSystem
    e: int

    def to_dict(self):
        return {"dx": self.system.P.to_text("x", "z"), "dz": self.system.Q.to_text("x", "z"), "e": self.e}


def invert_y(sys: PlanarSystem) -> InvertedSystem:
    """Substitute y = 1/z and multiply by the least z^e making both parts polynomial."""
    P_terms = {(i, -j): c for (i, j), c in sys.P.terms.items()}
    Q_terms = {(i, 2 - j): -c for (i, j), c in sys.Q.terms.items()}
    lows = [j for (_, j) in P_terms] + [j for (_, j) in Q_terms]
    e = max(0, -min(lows))
    P = BivarPoly({(i, j + e): c for (i, j), c in P_terms.items()})
    Q = BivarPoly({(i, j + e): c for (i, j), c in Q_terms.items()})
    return InvertedSystem(PlanarSystem(P, Q, check_coprime=False), e)


# --- rational solutions --------------------------------------------------------


@dataclass(frozen=True)
class LinearEquation:
    """dy/dx = m1(x) y + m0(x)."""

    m1: RationalFunction
    m0: RationalFunction

    def to_text(self):
        return f"dy/dx = ({self.m1.to_text()})*y + ({self.m0.to_text()})"


def _x(p) -> BivarPoly:
    return BivarPoly.from_x_upoly(p)


def _validates(a: BivarPoly, b: BivarPoly, M: BivarPoly, sys: PlanarSystem) -> bool:
    # b^2 Q - (a'b - ab') P == b M (b y - a)
    da = a.diff("x") * b - a * b.diff("x")
    lhs = b * b * sys.Q - da * sys.P
    rhs = b * M * (b * BivarPoly.y() - a)
    return lhs == rhs


def rational_solution_from_cofactor(M: BivarPoly, sys: PlanarSystem):
    """Recover g from a polynomial cofactor M by eliminating g' between the
    coefficient equations of ``Q - g'P = M (y - g)``.

    Returns a RationalFunction, or LinearEquation when every elimination
    degenerates and the equation is linear; raises Inconsistent otherwise.
    """
    m = sys.m
    if M.deg_y > m - 1:
        raise PreconditionFailed("cofactor degree in y must be at most m - 1")
    p, q = sys.p, sys.q
    k = [c for c in M.y_coeffs()] + [()] * m
    k = k[:m]
    mul, sub, add = upoly.mul, upoly.sub, upoly.add
    candidates = []
    for j in range(1, m):
        den = sub(mul(k[0], p[j]), mul(p[0], k[j]))
        num = sub(sub(mul(p[0], q[j]), mul(q[0], p[j])), mul(p[0], k[j - 1]))
        candidates.append((num, den))
    candidates.append((sub(mul(p[0], sub(q[m], k[m - 1])), mul(p[m], q[0])), mul(p[m], k[0])))
    for j in range(1, m):
        den = mul(p[m], k[j])
        num = add(sub(mul(q[m], p[j]), mul(p[m], q[j])), sub(mul(p[m], k[j - 1]), mul(k[m - 1], p[j])))
        candidates.append((num, den))
    for num, den in candidates:
        if not upoly.strip(den):
            continue
        a, b = _x(num), _x(den)
        if _validates(a, b, M, sys):
            return RationalFunction(a, b)
    if sys.is_linear_equation():
        p0 = RationalFunction(_x(p[0]))
        if not p0:
            raise Inconsistent("P vanishes identically")
        return LinearEquation(RationalFunction(_x(q[1]) if m >= 1 else 0) / p0, RationalFunction(_x(q[0])) / p0)
    raise Inconsistent("no candidate solves the equation and the equation is not linear")


@dataclass(frozen=True)
class PolydromyVerdict:
    ok: bool
    nu_g: int
    nu_M: int
    label: str


def polydromy_consistency(g: PuiseuxSeries, M: QuasiCofactor, sys: PlanarSystem) -> PolydromyVerdict:
    nu_g = g.n
    nu_M = M.polydromy()
    if sys.is_linear_equation():
        ok = nu_g % nu_M == 0
        label = "equal" if nu_g == nu_M else ("linear exemption" if ok else "mismatch")
        return PolydromyVerdict(ok, nu_g, nu_M, label)
    ok = nu_g == nu_M
    return PolydromyVerdict(ok, nu_g, nu_M, "equal" if ok else "mismatch")
