"""Planar polynomial vector fields."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CoprimalityViolation
from .poly import BivarPoly, gcd_poly


@dataclass(frozen=True)
class PlanarSystem:
    """The system ``x' = P(x, y)``, ``y' = Q(x, y)`` with coprime P, Q."""

    P: BivarPoly
    Q: BivarPoly
    check_coprime: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if not self.P and not self.Q:
            raise CoprimalityViolation(BivarPoly.const(0))
        if self.check_coprime:
            g = gcd_poly(self.P, self.Q)
            if not g.is_constant():
                raise CoprimalityViolation(g)

    @property
    def d(self) -> int:
        return max(self.P.degree, self.Q.degree)

    @property
    def m(self) -> int:
        return max(self.P.deg_y, self.Q.deg_y)

    @property
    def p(self):
        """y-coefficients p_0..p_m of P (univariate in x)."""
        return _pad(self.P.y_coeffs(), self.m + 1)

    @property
    def q(self):
        return _pad(self.Q.y_coeffs(), self.m + 1)

    def apply(self, f: BivarPoly) -> BivarPoly:
        """The derivation ``P df/dx + Q df/dy``."""
        return self.P * f.diff("x") + self.Q * f.diff("y")

    def divergence(self) -> BivarPoly:
        return divergence(self)

    def is_real(self) -> bool:
        return self.P.is_real() and self.Q.is_real()

    def is_linear_equation(self) -> bool:
        """True when dy/dx = Q/P has the form m1(x) y + m0(x)."""
        return self.P.deg_y <= 0 and self.Q.deg_y <= 1

    def to_dict(self):
        return {"dx": self.P.to_text(), "dy": self.Q.to_text(), "d": self.d, "m": self.m}


def _pad(rows, n):
    rows = list(rows)
    while len(rows) < n:
        rows.append(())
    return rows


def divergence(sys: PlanarSystem) -> BivarPoly:
    return sys.P.diff("x") + sys.Q.diff("y")
