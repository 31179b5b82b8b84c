"""Newton-Puiseux expansion of the y-roots of f(x, y) and related checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import upoly
from .errors import (
    AmbiguousKernel,
    InconclusiveTruncation,
    NotFound,
    PreconditionFailed,
    SeriesError,
)
from .field import GR, ONE, ZERO
from .linalg import nullspace
from .poly import BivarPoly, divide_exact, gcd_poly
from .series import INF, PuiseuxSeries, lcm_all
from .system import PlanarSystem

DEFAULT_ORDER = 24


# --- polynomials in y over series ----------------------------------------------


class SeriesPoly:
    """Polynomial in y whose coefficients are :class:`PuiseuxSeries`."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [c if isinstance(c, PuiseuxSeries) else PuiseuxSeries.const(c) for c in coeffs]
        while cs and cs[-1].is_zero() and cs[-1].is_exact():
            cs.pop()
        self.coeffs = cs

    @classmethod
    def from_poly(cls, f: BivarPoly) -> "SeriesPoly":
        return cls([PuiseuxSeries.from_upoly(c) for c in f.y_coeffs()])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def trunc(self):
        """Shared truncation bound as an exponent of x."""
        return min((c.exponent_bound() for c in self.coeffs), default=INF)

    def coeff(self, j: int) -> PuiseuxSeries:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else PuiseuxSeries.zero()

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other):
        other = _as_spoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return SeriesPoly([self.coeff(j) + other.coeff(j) for j in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return SeriesPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_spoly(other))

    def __rsub__(self, other):
        return _as_spoly(other) - self

    def __mul__(self, other):
        if isinstance(other, PuiseuxSeries):
            return SeriesPoly([c * other for c in self.coeffs])
        other = _as_spoly(other)
        if not self.coeffs or not other.coeffs:
            return SeriesPoly([])
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                t = a * b
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        return SeriesPoly(out)

    __rmul__ = __mul__

    def diff_x(self) -> "SeriesPoly":
        return SeriesPoly([c.derivative() for c in self.coeffs])

    def diff_y(self) -> "SeriesPoly":
        return SeriesPoly([c.scale(j) for j, c in enumerate(self.coeffs)][1:])

    def evaluate(self, g: PuiseuxSeries) -> PuiseuxSeries:
        acc = PuiseuxSeries.zero()
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def divide_linear(self, g: PuiseuxSeries):
        """Synthetic division by ``y - g``: returns (quotient, remainder)."""
        if not self.coeffs:
            return SeriesPoly([]), PuiseuxSeries.zero()
        acc = self.coeffs[-1]
        quot = [acc]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * g + c
            quot.append(acc)
        rem = quot.pop()
        return SeriesPoly(list(reversed(quot))), rem

    def divmod(self, other: "SeriesPoly"):
        """Division by a polynomial whose leading y-coefficient is invertible."""
        num = list(self.coeffs)
        dq = other.degree
        if dq < 0:
            raise SeriesError("division by the zero polynomial")
        lead = other.coeffs[-1]
        if len(num) - 1 < dq:
            return SeriesPoly([]), SeriesPoly(num)
        order = None
        if lead.is_exact() and len(lead.coeffs) > 1:
            bound = min((c.exponent_bound() for c in num), default=INF)
            order = bound if bound != INF else Fraction(DEFAULT_ORDER)
        inv = lead.reciprocal(order)
        quot = [PuiseuxSeries.zero()] * (len(num) - dq)
        for k in range(len(num) - 1, dq - 1, -1):
            c = num[k] * inv
            quot[k - dq] = c
            for j, b in enumerate(other.coeffs):
                num[k - dq + j] = num[k - dq + j] - c * b
        return SeriesPoly(quot), SeriesPoly(num[:dq])

    def conjugate(self):
        return SeriesPoly([c.conjugate() for c in self.coeffs])

    def to_text(self) -> str:
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if c.is_zero() and c.is_exact():
                continue
            mono = "" if j == 0 else ("y" if j == 1 else f"y^{j}")
            parts.append(f"({c.to_text()})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) if parts else "0"

    __str__ = to_text

    def __repr__(self):
        return f"SeriesPoly({self.to_text()!r})"


def _as_spoly(v) -> SeriesPoly:
    if isinstance(v, SeriesPoly):
        return v
    if isinstance(v, BivarPoly):
        return SeriesPoly.from_poly(v)
    return SeriesPoly([v])


def linear_factor_product(roots) -> SeriesPoly:
    out = SeriesPoly([PuiseuxSeries.const(1)])
    for g in roots:
        out = out * SeriesPoly([-g, PuiseuxSeries.const(1)])
    return out


# --- substitution -----------------------------------------------------------


def series_substitute(f: BivarPoly, g: PuiseuxSeries, T=None) -> PuiseuxSeries:
    """f(x, g(x)); optionally cut at exponent ``T`` (an exponent of x)."""
    acc = PuiseuxSeries.zero()
    for c in reversed(f.y_coeffs()):
        acc = acc * g + PuiseuxSeries.from_upoly(c)
    if T is not None:
        acc = acc.truncate(T)
    return acc


# --- Newton-Puiseux -------------------------------------------------------------


def _lower_hull(points):
    hull = []
    for p in sorted(points):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _valuations(G: BivarPoly):
    vals = {}
    for (a, j) in G.terms:
        if j not in vals or a < vals[j]:
            vals[j] = a
    return vals


def _edges(G: BivarPoly, positive_only: bool):
    vals = _valuations(G)
    hull = _lower_hull(list(vals.items()))
    out = []
    for (ja, va), (jb, vb) in zip(hull, hull[1:]):
        gamma = Fraction(va - vb, jb - ja)
        if positive_only and gamma <= 0:
            continue
        out.append((ja, va, jb, gamma, vals))
    return out


def _substitute_edge(G: BivarPoly, p: int, q: int, c: GR, w: int) -> BivarPoly:
    """``sigma^-w G(sigma^q, sigma^p (c + y))``."""
    deg = G.deg_y
    binoms = []
    cp = [ONE]
    for _ in range(deg):
        cp.append(cp[-1] * c)
    for j in range(deg + 1):
        binoms.append([(k, cp[j - k] * comb(j, k)) for k in range(j + 1)])
    out = {}
    for (a, j), v in G.terms.items():
        e = q * a + p * j - w
        if e < 0:
            raise SeriesError("internal: negative exponent after edge substitution")
        for k, b in binoms[j]:
            key = (e, k)
            out[key] = out.get(key, ZERO) + v * b
    return BivarPoly(out)


def _tmul(a, b, K):
    out = [ZERO] * K
    for i, ai in enumerate(a[:K]):
        if not ai:
            continue
        for j in range(min(len(b), K - i)):
            if b[j]:
                out[i + j] = out[i + j] + ai * b[j]
    return out


def _tinv(a, K):
    inv0 = a[0].inverse()
    out = [ZERO] * K
    out[0] = inv0
    for k in range(1, K):
        acc = ZERO
        for j in range(1, min(k, len(a) - 1) + 1):
            if a[j] and out[k - j]:
                acc = acc + a[j] * out[k - j]
        out[k] = -acc * inv0
    return out


def _lift_simple_root(G: BivarPoly, K: int):
    """Power series Y(sigma) with Y(0) = 0 and G(sigma, Y) = 0 mod sigma^K."""
    if K <= 1:
        return [ZERO] * max(K, 0)
    rows = []
    for c in G.y_coeffs():
        rows.append(list(c[:K]) + [ZERO] * max(0, K - len(c)))
    drows = [[v * j for v in rows[j]] for j in range(1, len(rows))]
    y = [ZERO] * K
    prec = 1
    while prec < K:
        prec = min(2 * prec, K)

        def horner(cs):
            acc = [ZERO] * prec
            for c in reversed(cs):
                acc = _tmul(acc, y, prec)
                acc = [u + v for u, v in zip(acc, c[:prec])]
            return acc

        F = horner(rows)
        D = horner(drows)
        step = _tmul(F, _tinv(D, prec), prec)
        y = [u - v for u, v in zip(y[:prec], step)] + [ZERO] * (K - prec)
    return y


@dataclass
class _Frame:
    G: BivarPoly
    N: int
    prefix: dict
    e: int


def _expand(frame: _Frame, T: int, top: bool, out: list):
    G = frame.G
    vals = _valuations(G)
    if not top and 0 not in vals:
        out.append(PuiseuxSeries(frame.prefix, frame.N))
        G = divide_exact(G, BivarPoly.y())
        if G.deg_y <= 0:
            return
    for ja, va, jb, gamma, vals in _edges(G, positive_only=not top):
        p, q = gamma.numerator, gamma.denominator
        phi = [ZERO] * (jb - ja + 1)
        for j, v in vals.items():
            if ja <= j <= jb and v + gamma * j == va + gamma * ja:
                phi[j - ja] = G.coeff(v, j)
        w = q * va + p * ja
        for c, r in upoly.gaussian_roots(upoly.strip(phi)):
            if not c:
                continue
            G1 = _substitute_edge(G, p, q, c, w)
            N1 = frame.N * q
            e1 = q * frame.e + p
            prefix = {q * k: v for k, v in frame.prefix.items()}
            prefix[e1] = prefix.get(e1, ZERO) + c
            if r > 1:
                _expand(_Frame(G1, N1, prefix, e1), T, False, out)
                continue
            K = T - e1
            tail = _lift_simple_root(G1, K)
            coeffs = dict(prefix)
            for k, v in enumerate(tail):
                if v:
                    coeffs[e1 + k] = coeffs.get(e1 + k, ZERO) + v
            out.append(PuiseuxSeries(coeffs, N1, max(T, e1 + 1)))


def _yun(f: BivarPoly):
    """Square-free decomposition in y: list of (factor, multiplicity)."""
    fy = f.diff("y")
    b = gcd_poly(f, fy)
    c = divide_exact(f, b)
    d = divide_exact(fy, b) - c.diff("y")
    out = []
    k = 1
    while c.deg_y > 0:
        a = gcd_poly(c, d)
        if a.deg_y > 0:
            out.append((a, k))
        c = divide_exact(c, a)
        d = divide_exact(d, a) - c.diff("y")
        k += 1
    return out


def _try_exact(f: BivarPoly, s: PuiseuxSeries) -> PuiseuxSeries:
    if s.is_exact() or s.is_zero():
        return s
    top = max(s.coeffs)
    if 2 * (top - min(min(s.coeffs), 0)) >= s.trunc - min(min(s.coeffs), 0):
        return s
    finite = PuiseuxSeries(s.coeffs, s.n)
    if series_substitute(f, finite).is_zero():
        return finite
    return s


def newton_puiseux(f: BivarPoly, T: int = DEFAULT_ORDER):
    """All y-roots of ``f`` with multiplicity, as truncated Puiseux series.

    Each root ``g`` with polydromy ``n`` is known for exponents below
    ``T/n``; roots that are finite sums are returned exact.
    """
    if f.deg_y <= 0:
        return []
    roots = []
    for factor, mult in _yun(f):
        found = []
        G = factor
        if 0 not in _valuations(G):
            found.append(PuiseuxSeries.zero())
            G = divide_exact(G, BivarPoly.y())
        if G.deg_y > 0:
            _expand(_Frame(G, 1, {}, 0), T, True, found)
        if len(found) != factor.deg_y:
            raise SeriesError("internal: root count mismatch in Newton-Puiseux")
        found = [_try_exact(factor, s) for s in found]
        roots.extend(s for s in found for _ in range(mult))
    roots.sort(key=lambda s: s.sort_key())
    return roots


# --- particular solutions -----------------------------------------------------


@dataclass
class Verdict:
    ok: bool
    residual_order: object
    checked: int
    residual: PuiseuxSeries


def is_particular_solution(g: PuiseuxSeries, sys: PlanarSystem, T=None, min_checks: int = 4) -> Verdict:
    """Check ``g' P(x, g) - Q(x, g) = 0`` on every certified coefficient."""
    Pg = series_substitute(sys.P, g)
    Qg = series_substitute(sys.Q, g)
    if Pg.is_zero() and Pg.is_exact():
        raise PreconditionFailed("P(x, g(x)) vanishes identically")
    dg = g.derivative()
    res = dg * Pg - Qg
    if T is not None:
        res = res.truncate(T)
    if res.trunc == INF:
        return Verdict(res.is_zero(), INF, len(res.coeffs), res)
    n = lcm_all([res.n, dg.n, Pg.n, Qg.n])
    low = min(Fraction(dg.valuation, dg.n) + Fraction(Pg.valuation, Pg.n) if dg.valuation != INF and Pg.valuation != INF else INF,
              Fraction(Qg.valuation, Qg.n) if Qg.valuation != INF else INF)
    bound = res.exponent_bound()
    checked = int((bound - low) * n) if low != INF else 0
    if checked < min_checks:
        raise InconclusiveTruncation(f"only {max(checked, 0)} coefficients are checkable")
    return Verdict(res.is_zero(), bound, checked, res)


# --- minimal polynomial -------------------------------------------------------


def minimal_polynomial(g: PuiseuxSeries, max_deg_x: int, max_deg_y: int, T=None, margin: int = 4) -> BivarPoly:
    """Least-degree f with f(x, g(x)) = 0 on all certified coefficients."""
    if T is not None:
        g = g.truncate(T)
    powers = [PuiseuxSeries.const(1)]
    for _ in range(max_deg_y):
        powers.append(powers[-1] * g)
    n = lcm_all(p.n for p in powers)
    grids = []
    for p in powers:
        cs, t = p.with_n(n)
        grids.append((cs, t))
    for dy in range(1, max_deg_y + 1):
        bound = min(t for _, t in grids[: dy + 1])
        low = min(min(cs) if cs else 0 for cs, _ in grids[: dy + 1])
        for dx in range(0, max_deg_x + 1):
            cols = [(a, b) for b in range(dy + 1) for a in range(dx + 1)]
            rows = {}
            for k, (a, b) in enumerate(cols):
                cs, _ = grids[b]
                for i, c in cs.items():
                    e = i + a * n
                    if e < bound:
                        rows.setdefault(e, {})[k] = c
            if bound != INF and bound - low < len(cols) + margin:
                raise AmbiguousKernel(
                    f"truncation too short for degree bounds ({dx}, {dy}); raise the order"
                )
            kernel = nullspace(list(rows.values()), len(cols))
            if not kernel:
                continue
            if len(kernel) > 1:
                raise AmbiguousKernel(f"kernel of dimension {len(kernel)} at degree bounds ({dx}, {dy})")
            vec = kernel[0]
            f = BivarPoly({cols[k]: v for k, v in vec.items()})
            if f.deg_y < dy:
                continue
            return f.canonical()
    raise NotFound("no annihilating polynomial within the degree bounds")
