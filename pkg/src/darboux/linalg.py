"""Exact sparse Gaussian elimination over Q(i).

Rows are dicts ``column -> GaussianRational``.
"""

from __future__ import annotations

from math import gcd as igcd

from .field import GR, ZERO


def rref(rows, ncols=None):
    """Reduced row echelon form.  Returns ``(rows, pivots)`` where
    ``pivots[k]`` is the pivot column of ``rows[k]``."""
    work = [dict(r) for r in rows if r]
    pivots = []
    reduced = []
    cols = sorted({c for r in work for c in r}) if ncols is None else range(ncols)
    for col in cols:
        piv = None
        for k, r in enumerate(work):
            if r.get(col):
                piv = k
                break
        if piv is None:
            continue
        row = work.pop(piv)
        inv = row[col].inverse()
        row = {c: v * inv for c, v in row.items()}
        new_work = []
        for r in work:
            f = r.get(col)
            if f:
                r = _axpy(r, row, -f)
            if r:
                new_work.append(r)
        work = new_work
        for k, r in enumerate(reduced):
            f = r.get(col)
            if f:
                reduced[k] = _axpy(r, row, -f)
        reduced.append(row)
        pivots.append(col)
    return reduced, pivots


def _axpy(r, row, f):
    out = dict(r)
    for c, v in row.items():
        nv = out.get(c, ZERO) + f * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    return out


def nullspace(rows, ncols: int):
    """Basis of ``{v : rows . v = 0}``, one vector per free column, as dicts."""
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = {free: GR(1)}
        for row, p in zip(red, pivots):
            v = row.get(free)
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis


def solve_affine(rows, rhs, ncols: int):
    """Solve ``rows . v = rhs``.  Returns ``(particular, kernel_basis)`` or
    ``None`` when inconsistent.  The particular solution sets free
    variables to zero."""
    aug = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[ncols] = b
        aug.append(row)
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    part = {}
    for row, p in zip(red, pivots):
        v = row.get(ncols)
        if v:
            part[p] = v
    return part, nullspace(rows, ncols)


def integer_normalize(vec: dict) -> dict:
    """Scale a vector to Gaussian-integer entries with content 1 and a
    positive leading (lowest-index) entry."""
    if not vec:
        return vec
    lead = vec[min(vec)]
    v = {k: c / lead for k, c in vec.items()}
    den = 1
    for c in v.values():
        d = c.denominator_lcm()
        den = den * d // igcd(den, d)
    v = {k: c * den for k, c in v.items()}
    g = 0
    for c in v.values():
        g = igcd(igcd(g, int(c.re.numerator)), int(c.im.numerator))
    if g > 1:
        v = {k: c / g for k, c in v.items()}
    return v


def canonical_basis(vectors, ncols: int):
    """Row-reduced, integer-normalised basis spanning ``vectors``."""
    red, _ = rref(vectors, ncols)
    return [integer_normalize(r) for r in red]
