"""Floating-point checks: RK4 orbits and drift of Darboux functions along them.

Double precision is the default.  Orbits that run into a node lying on the
invariant curves lose all relative accuracy in the curve values, so a
``precision`` above 53 bits switches to gmpy2 multiple-precision floats.
"""

from __future__ import annotations

import cmath
import math
from contextlib import nullcontext
from dataclasses import dataclass, field

import gmpy2

from .errors import ExcludedRegion, SingularStart, StepUnderflow
from .field import GR
from .poly import BivarPoly
from .search import DarbouxFunction
from .system import PlanarSystem

MIN_STEP = 1e-12
DOUBLE = 53


def working_precision(bits: int):
    """Context manager setting the mpfr precision (no-op for doubles)."""
    if bits <= DOUBLE:
        return nullcontext()
    return gmpy2.context(gmpy2.get_context(), precision=bits)


def _number(c: GR, bits: int):
    if bits <= DOUBLE:
        return float(c.re) if not c.im else complex(c)
    if not c.im:
        return gmpy2.mpfr(c.re)
    return gmpy2.mpc(gmpy2.mpfr(c.re), gmpy2.mpfr(c.im))


def compile_poly(f: BivarPoly, bits: int = DOUBLE):
    """Evaluator (x, y) -> number; call it inside ``working_precision(bits)``."""
    with working_precision(bits):
        terms = [(i, j, _number(c, bits)) for (i, j), c in f.terms.items()]

    def ev(x, y):
        return sum(c * x**i * y**j for i, j, c in terms)

    return ev


def _log_abs(v) -> float:
    if isinstance(v, (float, int, complex)):
        return math.log(abs(v))
    return float(gmpy2.log(abs(v)))


def _arg(v) -> float:
    if isinstance(v, complex):
        return cmath.phase(v)
    if isinstance(v, type(gmpy2.mpc())):
        return float(gmpy2.phase(v))
    return 0.0 if v >= 0 else math.pi


@dataclass
class Orbit:
    samples: list
    h: float
    method: str = "rk4"
    aborted: str = None
    precision: int = DOUBLE

    @property
    def end(self):
        return self.samples[-1]

    def to_dict(self):
        _, x, y = self.samples[0]
        te, _, _ = self.end
        return {
            "start": [_float(x), _float(y)],
            "t_end": te,
            "h": self.h,
            "samples": len(self.samples),
            "precision": self.precision,
            "aborted": self.aborted,
        }


def _float(v):
    return float(v.real) if isinstance(v, (complex, type(gmpy2.mpc()))) else float(v)


def integrate(
    sys: PlanarSystem, start, t_end: float, h: float, singular: float = 1e-12, every: int = 1,
    precision: int = DOUBLE,
) -> Orbit:
    """Classic fixed-step RK4 from ``start`` up to time ``t_end``.

    Stops early (with ``aborted`` set) at a singular point or on overflow.
    """
    if not h > MIN_STEP:
        raise StepUnderflow(f"step {h} is below {MIN_STEP}")
    P, Q = compile_poly(sys.P, precision), compile_poly(sys.Q, precision)
    with working_precision(precision):
        if precision > DOUBLE:
            x, y = gmpy2.mpfr(start[0]), gmpy2.mpfr(start[1])
        else:
            x, y = float(start[0]), float(start[1])
        if abs(P(x, y)) + abs(Q(x, y)) <= singular:
            raise SingularStart(f"({start[0]}, {start[1]}) is a singular point")
        nsteps = max(1, math.ceil(t_end / h - 1e-9))
        samples = [(0.0, x, y)]
        aborted = None
        t = 0.0
        for k in range(nsteps):
            step = min(h, t_end - t)
            p1, q1 = P(x, y), Q(x, y)
            p2, q2 = P(x + step / 2 * p1, y + step / 2 * q1), Q(x + step / 2 * p1, y + step / 2 * q1)
            p3, q3 = P(x + step / 2 * p2, y + step / 2 * q2), Q(x + step / 2 * p2, y + step / 2 * q2)
            p4, q4 = P(x + step * p3, y + step * q3), Q(x + step * p3, y + step * q3)
            x = x + step / 6 * (p1 + 2 * p2 + 2 * p3 + p4)
            y = y + step / 6 * (q1 + 2 * q2 + 2 * q3 + q4)
            t = (k + 1) * h if k + 1 < nsteps else t_end
            if not (gmpy2.is_finite(x) and gmpy2.is_finite(y)):
                aborted = "overflow"
                break
            if abs(P(x, y)) + abs(Q(x, y)) <= singular:
                samples.append((t, x, y))
                aborted = "singular point"
                break
            if (k + 1) % every == 0 or k + 1 == nsteps:
                samples.append((t, x, y))
    return Orbit(samples, h, "rk4", aborted, precision)


@dataclass
class EvaluableInvariant:
    """log|H| for a Darboux function H, with arguments unwrapped along a path."""

    function: DarbouxFunction
    margin: float = 1e-30
    _compiled: dict = field(default_factory=dict, repr=False)

    def _parts(self, bits):
        if bits not in self._compiled:
            parts = []
            for f, lam in self.function.factors:
                parts.append(("pow", compile_poly(f, bits), complex(lam)))
            for e, mu in self.function.exp_parts:
                parts.append(("exp", (compile_poly(e.h, bits), compile_poly(e.f0, bits)), complex(mu)))
            self._compiled[bits] = parts
        return self._compiled[bits]

    def values(self, points, bits: int = DOUBLE):
        """log-magnitudes at consecutive points of a connected path."""
        parts = self._parts(bits)
        out = []
        prev = [None] * len(parts)
        with working_precision(bits):
            for x, y in points:
                total = 0.0
                for k, (kind, ev, c) in enumerate(parts):
                    if kind == "pow":
                        v = ev(x, y)
                        if abs(v) <= self.margin:
                            raise ExcludedRegion(f"factor {k} vanishes near ({_float(x)}, {_float(y)})")
                        arg = _arg(v)
                        if prev[k] is not None:
                            arg += 2 * math.pi * round((prev[k] - arg) / (2 * math.pi))
                        prev[k] = arg
                        total += c.real * _log_abs(v) - c.imag * arg
                    else:
                        hv, fv = ev[0](x, y), ev[1](x, y)
                        if abs(fv) <= self.margin:
                            raise ExcludedRegion(f"exponential denominator vanishes near ({_float(x)}, {_float(y)})")
                        q = complex(hv / fv)
                        total += (c * q).real
                out.append(total)
        return out

    def value(self, x, y, bits: int = DOUBLE) -> float:
        return self.values([(x, y)], bits)[0]


def check_conserved(H: EvaluableInvariant, orbit: Orbit) -> float:
    """max |H(t) - H(0)| / (1 + |H(0)|) over the orbit, on log-magnitudes."""
    vals = H.values([(x, y) for _, x, y in orbit.samples], orbit.precision)
    h0 = vals[0]
    return max(abs(v - h0) for v in vals) / (1 + abs(h0))


def check_direct(fn: DarbouxFunction, orbit: Orbit) -> float:
    """Same drift measure on H itself; integer exponents and no exp parts only."""
    if fn.exp_parts or not all(lam.is_real() and lam.is_integer() for _, lam in fn.factors):
        raise ValueError("direct evaluation needs integer exponents and no exponential parts")
    evs = [(compile_poly(f, orbit.precision), int(lam.re)) for f, lam in fn.factors]
    vals = []
    with working_precision(orbit.precision):
        for _, x, y in orbit.samples:
            v = 1.0
            for ev, k in evs:
                v = v * ev(x, y) ** k
            vals.append(complex(v))
    h0 = vals[0]
    return max(abs(v - h0) for v in vals) / (1 + abs(h0))
