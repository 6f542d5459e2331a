"""Closed-form Lax operator for rectangular nilpotents in so_N and sp_N.

For the partition (p, ..., p) with r parts, the quasideterminant defining L
is taken of a block lower-Hessenberg matrix, so every entry of L is a finite
alternating sum over increasing chains.  This module evaluates that sum
directly in U(g) and compares it with the series pipeline.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from ._scalar import Q, ZERO, HALF
from . import ratmat
from .errors import ConstructionFailed, InvalidFamily, InvalidRectangle
from .liealg import (
    Family,
    LieAlgebraFamily,
    _orthosymplectic_basis,
    _sorted_setup,
    _validate_skew,
    adjoint,
)
from .series import SeriesMatrix, TruncatedSeries
from .uea import UEA, reduce_mod_J


class SignCase(str, enum.Enum):
    CASE1 = "case1"
    CASE2 = "case2"


@dataclass(frozen=True, eq=False)
class RectSetup:
    family: LieAlgebraFamily
    r: int
    p: int
    case: SignCase
    eps_signs: dict
    setup: object

    @property
    def N(self):
        return self.r * self.p

    @property
    def epsilon(self):
        return self.family.epsilon

    def pos(self, i, h):
        """Position of v_(i,h) in V, 1-based labels."""
        return (i - 1) * self.p + (h - 1)

    def prime(self, i, h):
        return (self.r + 1 - i, self.p + 1 - h)

    def shift(self, h):
        """Diagonal scalar of the shift matrix on the h-th row of each block."""
        eps = self.epsilon
        extra = eps if 2 * h >= self.p + 2 else 0
        return Q(self.r * (1 - h) + extra, 2)


def _signs(case, r, p):
    N = r * p
    out = {}
    for i in range(1, r + 1):
        for h in range(1, p + 1):
            q = h + (i - 1) * p
            if case is SignCase.CASE1 or q <= N // 2:
                out[(i, h)] = (-1) ** q
            else:
                out[(i, h)] = (-1) ** (1 - h + (r + 1 - i) * p)
    return out


def build_rect(family, r, p):
    """(RectSetup, GradedSetup) for the rectangular partition (p^r)."""
    if not isinstance(family, LieAlgebraFamily):
        try:
            family = LieAlgebraFamily(family, r * p)
        except InvalidFamily as exc:
            raise InvalidRectangle(str(exc)) from None
    fam = family.family
    if fam not in (Family.SO, Family.SP):
        raise InvalidRectangle("rectangular oracle covers so and sp only")
    if r < 1 or p < 1 or family.n != r * p:
        raise InvalidRectangle(f"need N = r p with positive r, p (got r={r}, p={p}, N={family.n})")
    N = r * p
    if N < 2:
        raise InvalidRectangle("N must be at least 2")
    eps = family.epsilon
    if eps == 1 and p % 2 == 0 and r % 2:
        raise InvalidRectangle("for so with p even, r must be even")
    # case 1 yields epsilon = (-1)^(N+1); case 2 is symmetric for even N
    case = SignCase.CASE1 if (-1) ** (N + 1) == eps else SignCase.CASE2
    signs = _signs(case, r, p)
    vlabels = [(i, h) for i in range(1, r + 1) for h in range(1, p + 1)]
    index = {lab: a for a, lab in enumerate(vlabels)}
    star = [index[(r + 1 - i, p + 1 - h)] for (i, h) in vlabels]
    form = tuple(
        tuple(Q(-signs[vlabels[a]]) if b == star[a] else ZERO for b in range(N)) for a in range(N)
    )
    if ratmat.transpose(form) != ratmat.scale(eps, form):
        raise ConstructionFailed("sign scheme gives the wrong symmetry")
    parts = (p,) * r
    weights = [p + 1 - 2 * h for (_, h) in vlabels]
    labels, mats = _orthosymplectic_basis(form, star, vlabels, normalize=True)
    setup = _sorted_setup(labels, mats, weights, family, form, eps, parts, vlabels)
    _validate_skew(setup.algebra)
    if not ratmat.is_zero(ratmat.add(setup.F, adjoint(setup.F, form))):
        raise ConstructionFailed("f is not in the algebra")
    return RectSetup(family, r, p, case, signs, setup), setup


def f_matrix(rect, a, b):
    """f_{a,b} = E_ab - eps_a eps_b E_{b'a'} as a matrix; a, b are (i,h) pairs."""
    N = rect.N
    s = rect.eps_signs
    E = ratmat.unit(N, N, rect.pos(*a), rect.pos(*b))
    bp, ap = rect.prime(*b), rect.prime(*a)
    E2 = ratmat.unit(N, N, rect.pos(*bp), rect.pos(*ap))
    return ratmat.sub(E, ratmat.scale(s[a] * s[b], E2))


class _Entries:
    """Cache of f-tilde elements in U(g)."""

    def __init__(self, rect, uea):
        self.rect, self.uea = rect, uea
        self.model = rect.setup.algebra
        self._cache = {}

    def tilde(self, a, b):
        key = (a, b)
        got = self._cache.get(key)
        if got is not None:
            return got
        M = f_matrix(self.rect, a, b)
        el = self.uea.from_combo(self.model.coords(M)).scale(HALF)
        if a == b:
            el = el + self.rect.shift(a[1])
        self._cache[key] = el
        return el


def explicit_L(rect, uea=None):
    """r x r matrix of polynomials in z with coefficients in U(g)."""
    uea = uea or UEA(rect.setup)
    ent = _Entries(rect, uea)
    r, p = rect.r, rect.p
    z = TruncatedSeries({2: uea.one})

    def factor(with_z, a, b):
        t = TruncatedSeries({0: ent.tilde(a, b)})
        return t + z if with_z else t

    rows = []
    for i in range(1, r + 1):
        # chains start at (i, 1); states[(b, h)] holds the signed partial sum
        states = {(i, 1): TruncatedSeries({0: uea.one})}
        for h in range(2, p + 1):
            new = {}
            for b in range(1, r + 1):
                acc = TruncatedSeries()
                for (a, g), val in states.items():
                    if g >= h:
                        continue
                    fac = factor(b == a and h - 1 == g, (b, h - 1), (a, g))
                    acc = acc - val * fac
                if acc.coeffs:
                    new[(b, h)] = acc
            states.update(new)
        row = []
        for j in range(1, r + 1):
            acc = TruncatedSeries()
            for (a, g), val in states.items():
                acc = acc + val * factor(a == j and g == p, (j, p), (a, g))
            row.append(acc)
        rows.append(row)
    return SeriesMatrix(rows)


def cross_check(rect, floor=None, uea=None, result=None):
    """Compare the closed form, reduced mod J, with the pipeline's L."""
    from .laxop import lax

    uea = uea or UEA(rect.setup)
    res = result or lax(rect.setup, floor, uea)
    ex = explicit_L(rect, uea).map_coeffs(reduce_mod_J)
    st = rect.setup
    top = [st.v_labels.index((i, 1)) for i in range(1, rect.r + 1)]
    bot = [st.v_labels.index((i, rect.p)) for i in range(1, rect.r + 1)]
    if list(st.top) != top or list(st.bottom) != bot:
        raise ConstructionFailed("unexpected ordering of the extreme weight spaces")
    report = []
    for i in range(rect.r):
        for j in range(rect.r):
            a, b = ex.entries[i][j], res.L.entries[i][j]
            mismatch = None
            for e in sorted(set(a.coeffs) | set(b.coeffs), reverse=True):
                if res.L.floor is not None and e < res.L.floor:
                    continue
                diff = a.coeff(e, uea.zero) - b.coeff(e, uea.zero)
                if diff:
                    mismatch = {"exp": e, "term": str(diff)}
                    break
            report.append({
                "entry": (i + 1, j + 1),
                "status": "ok" if mismatch is None else "mismatch",
                "first_mismatch": mismatch,
            })
    return report
