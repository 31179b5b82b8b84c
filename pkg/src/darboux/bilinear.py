"""Solver for small systems of polynomial equations of degree at most two.

An equation is a dict from a sorted tuple of variable ids to a coefficient:
``()`` is the constant term, ``(v,)`` a linear term and ``(v, w)`` a
product.  Linear equations are eliminated first.  Quadratic leftovers are
split on univariate or factorable equations where possible, otherwise a
grevlex Groebner basis supplies, when zero-dimensional, the eliminant of
one variable to branch on.  Branches needing roots outside Q(i) are
pruned with a notice.
"""

from __future__ import annotations

import sympy

from . import upoly
from .errors import ExtensionRequired, Inconsistent
from .field import GR, ZERO
from .linalg import nullspace, rref
from .upoly import _from_sympy, _to_sympy


def _add(out, key, c):
    v = out.get(key)
    v = c if v is None else v + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def substitute(eq: dict, var: int, expr: dict) -> dict:
    """Replace ``var`` by the affine form ``expr`` (keys ``()`` / ``(u,)``)."""
    out = {}
    for key, c in eq.items():
        if var not in key:
            _add(out, key, c)
            continue
        rest = list(key)
        rest.remove(var)
        if var in rest:
            rest.remove(var)
            for k1, c1 in expr.items():
                for k2, c2 in expr.items():
                    _add(out, tuple(sorted(k1 + k2)), c * c1 * c2)
            continue
        for k1, c1 in expr.items():
            _add(out, tuple(sorted(k1 + tuple(rest))), c * c1)
    return out


def _is_linear(eq):
    return all(len(k) <= 1 for k in eq)


def _variables(eqs):
    return sorted({v for eq in eqs for k in eq for v in k})


class Solver:
    def __init__(self, max_branches: int = 256):
        self.notices = []
        self.max_branches = max_branches
        self.branches = 0

    def solve(self, eqs, assignment=None):
        """All solutions found as dicts var -> GR (free variables set to 0).

        Unassigned variables never mentioned are left out.
        """
        assignment = dict(assignment or {})
        eqs = [dict(e) for e in eqs if e]
        while True:
            if any(set(e) == {()} for e in eqs):
                return []
            linear = [e for e in eqs if _is_linear(e)]
            if not linear:
                break
            vars_ = _variables(linear)
            col = {v: i for i, v in enumerate(vars_)}
            nc = len(vars_)
            rows = []
            for e in linear:
                rows.append({(col[k[0]] if k else nc): c for k, c in e.items()})
            red, pivots = rref(rows, nc + 1)
            if nc in pivots:
                return []
            eqs = [e for e in eqs if not _is_linear(e)]
            for row, p in zip(red, pivots):
                v = vars_[p]
                expr = {}
                for c, val in row.items():
                    if c == p:
                        continue
                    expr[() if c == nc else (vars_[c],)] = -val
                assignment = {u: substitute(ex, v, expr) for u, ex in assignment.items()}
                assignment[v] = expr
                eqs = [substitute(e, v, expr) for e in eqs]
            eqs = [e for e in eqs if e]
        if not eqs:
            return [self._finish(assignment)]
        return self._branch(eqs, assignment)

    def _finish(self, assignment):
        free = {v for ex in assignment.values() for k in ex for v in k}
        if free:
            self.notices.append(f"solution family with {len(free)} free parameter(s); parameters set to 0")
        out = {}
        for v, ex in assignment.items():
            out[v] = ex.get((), ZERO)
        for v in free:
            out.setdefault(v, ZERO)
        return out

    def _branch(self, eqs, assignment):
        self.branches += 1
        if self.branches > self.max_branches:
            self.notices.append("branch limit reached; search truncated")
            return []
        split = self._split(eqs)
        if split is not None:
            out = []
            for extra in split:
                out.extend(self.solve(eqs + [extra], assignment))
            return out
        return self._groebner(eqs, assignment)

    def _split(self, eqs):
        """Cheap case splits: univariate equations, then factorable ones."""
        for e in sorted(eqs, key=len):
            vs = {v for k in e for v in k}
            if len(vs) == 1:
                (v,) = vs
                up = upoly.strip([e.get(()), e.get((v,)), e.get((v, v))])
                up = upoly.strip([c if c is not None else ZERO for c in up])
                return [{(v,): GR(1), (): -r} for r, _ in self._roots(up)]
        for e in sorted(eqs, key=len):
            if len(e) == 1:
                (key,) = e
                return [{(v,): GR(1)} for v in sorted(set(key))]
        for e in sorted(eqs, key=len):
            factors = _affine_factors(e)
            if factors is not None:
                return factors
        return None

    def _roots(self, up):
        try:
            return upoly.gaussian_roots(up)
        except ExtensionRequired as exc:
            self.notices.append(f"branch pruned: {exc}")
            return _rational_part(up)

    def _groebner(self, eqs, assignment):
        vars_ = _variables(eqs)
        syms = sympy.symbols(f"u0:{len(vars_)}")
        polys = [_to_expr(e, dict(zip(vars_, syms))) for e in eqs]
        G = sympy.groebner(polys, *syms, order="grevlex", domain="QQ_I")
        if list(G.exprs) == [1]:
            return []
        if G.is_zero_dimensional:
            v, s = vars_[-1], syms[-1]
            up = _eliminant(G, s, syms)
            out = []
            for r, _ in self._roots(up):
                out.extend(self.solve(eqs + [{(v,): GR(1), (): -r}], assignment))
            return out
        # positive-dimensional: fix a parameter not led by any basis element
        leading = set()
        for g in G.exprs:
            mono = sympy.Poly(g, *syms).monoms(order="grevlex")[0]
            leading.update(i for i, e in enumerate(mono) if e)
        free = [v for i, v in enumerate(vars_) if i not in leading] or vars_[-1:]
        self.notices.append("positive-dimensional branch; one parameter set to 0")
        return self.solve(eqs + [{(free[-1],): GR(1)}], assignment)


def _eliminant(G, s, syms, limit: int = 64):
    """Minimal polynomial of ``s`` modulo the zero-dimensional ideal of G."""
    forms = []
    for k in range(limit):
        r = sympy.Poly(G.reduce(s**k)[1], *syms, domain="QQ_I")
        forms.append({m: _from_sympy(c) for m, c in zip(r.monoms(), r.coeffs())})
        monos = sorted({m for f in forms for m in f})
        rows = [{j: f[m] for j, f in enumerate(forms) if m in f} for m in monos]
        kernel = nullspace(rows, len(forms))
        if kernel:
            vec = kernel[0]
            return upoly.strip([vec.get(j, ZERO) for j in range(len(forms))])
    raise Inconsistent("eliminant degree exceeds the limit")


def _to_expr(e, sym):
    expr = 0
    for k, c in e.items():
        term = _to_sympy(c)
        for v in k:
            term = term * sym[v]
        expr += term
    return expr


def _quadric_rank(e, vars_):
    """Rank of the symmetric matrix of the homogenised quadratic ``e``."""
    idx = {v: i for i, v in enumerate(vars_)}
    h = len(vars_)
    half = GR(1, 0) / 2
    rows = [dict() for _ in range(h + 1)]

    def put(a, b, c):
        rows[a][b] = rows[a].get(b, ZERO) + c

    for key, c in e.items():
        ix = [idx[v] for v in key] + [h] * (2 - len(key))
        if ix[0] == ix[1]:
            put(ix[0], ix[0], c)
        else:
            put(ix[0], ix[1], c * half)
            put(ix[1], ix[0], c * half)
    _, pivots = rref([{k: v for k, v in r.items() if v} for r in rows], h + 1)
    return len(pivots)


def _affine_factors(e):
    """Split ``e = l1 * l2`` into the equations ``l1 = 0`` / ``l2 = 0``."""
    if _is_linear(e):
        return None
    vars_ = _variables([e])
    if len(vars_) > 8 or _quadric_rank(e, vars_) > 2:
        return None
    syms = sympy.symbols(f"u0:{len(vars_)}")
    _, factors = sympy.factor_list(_to_expr(e, dict(zip(vars_, syms))), *syms, domain="QQ_I")
    if sum(m for _, m in factors) < 2:
        return None
    out = []
    for fac, _ in factors:
        poly = sympy.Poly(fac, *syms, domain="QQ_I")
        eq = {}
        for mono, c in zip(poly.monoms(), poly.coeffs()):
            eq[tuple(vars_[i] for i, k in enumerate(mono) for _ in range(k))] = _from_sympy(c)
        out.append(eq)
    return out


def _rational_part(up):
    """Roots of ``up`` that do lie in Q(i), ignoring the others."""
    out = []
    for u, m in upoly.irreducible_factors(up):
        if len(u) == 2:
            out.append((-u[0] / u[1], m))
    return out
