"""Truncated Laurent series in z^{-1/2} and matrices of them.

Exponents are doubled integers.  Every series carries a floor: coefficients
at exponents >= floor are exact, those below are unknown.  A floor of None
means the series is known exactly (a Laurent polynomial).  Products
propagate floors conservatively, so a reported coefficient is always exact.

Coefficients may be rationals or UEAElement/MElement values; the code only
relies on +, -, * and truthiness.
"""
from __future__ import annotations

from dataclasses import dataclass

from ._scalar import Q, ZERO, ONE
from . import ratmat
from .errors import (
    CompressionNotInvertible,
    DegenerateForm,
    NonScalarLeading,
    PivotNotInvertible,
    ShapeMismatch,
    SingularLeading,
)


def _fmax(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def scalar_of(c):
    """Rational value of a coefficient if it is a scalar, else None."""
    if hasattr(c, "scalar_value"):
        return c.scalar_value()
    return Q(c)


class TruncatedSeries:
    __slots__ = ("coeffs", "floor")

    def __init__(self, coeffs=None, floor=None):
        coeffs = coeffs or {}
        if floor is None:
            self.coeffs = {e: v for e, v in coeffs.items() if v}
        else:
            self.coeffs = {e: v for e, v in coeffs.items() if v and e >= floor}
        self.floor = floor

    @classmethod
    def const(cls, c, exp=0):
        return cls({exp: c})

    def top(self):
        return max(self.coeffs) if self.coeffs else None

    def top_bound(self):
        """Upper bound for the exponent of any nonzero term, None if zero."""
        if self.coeffs:
            return max(self.coeffs)
        return None if self.floor is None else self.floor - 1

    def is_exact_zero(self):
        return not self.coeffs and self.floor is None

    def coeff(self, e, zero=ZERO):
        if self.floor is not None and e < self.floor:
            raise ValueError(f"coefficient at {e} is below the floor {self.floor}")
        return self.coeffs.get(e, zero)

    def __add__(self, other):
        f = _fmax(self.floor, other.floor)
        out = dict(self.coeffs)
        for e, v in other.coeffs.items():
            w = out.get(e)
            out[e] = v if w is None else w + v
        return TruncatedSeries(out, f)

    def __neg__(self):
        return TruncatedSeries({e: -v for e, v in self.coeffs.items()}, self.floor)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries({e: v * other for e, v in self.coeffs.items()}, self.floor)
        return series_mul(self, other)

    def __rmul__(self, other):
        return TruncatedSeries({e: other * v for e, v in self.coeffs.items()}, self.floor)

    def shift(self, k2):
        """Multiply by z^{k2/2}."""
        return TruncatedSeries(
            {e + k2: v for e, v in self.coeffs.items()},
            None if self.floor is None else self.floor + k2,
        )

    def truncate(self, floor):
        if floor is None:
            return self
        return TruncatedSeries(self.coeffs, _fmax(self.floor, floor))

    def map_coeffs(self, fn):
        return TruncatedSeries({e: fn(v) for e, v in self.coeffs.items()}, self.floor)

    def negate_z(self):
        """Substitute z -> -z; exponents must be integers."""
        out = {}
        for e, v in self.coeffs.items():
            if e % 2:
                raise ValueError("z -> -z needs integer exponents")
            out[e] = -v if (e // 2) % 2 else v
        return TruncatedSeries(out, self.floor)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.floor == other.floor and self.coeffs == other.coeffs

    def agrees_with(self, other, floor=None):
        """Equality of coefficients above the joint floor (and ``floor``)."""
        f = _fmax(_fmax(self.floor, other.floor), floor)
        exps = set(self.coeffs) | set(other.coeffs)
        for e in exps:
            if f is not None and e < f:
                continue
            if self.coeffs.get(e, ZERO) - other.coeffs.get(e, ZERO):
                return False
        return True

    def __repr__(self):
        body = ", ".join(f"z^{e}/2: {v}" for e, v in sorted(self.coeffs.items(), reverse=True))
        return f"TruncatedSeries({{{body}}}, floor={self.floor})"


def series_mul(a, b):
    if a.is_exact_zero() or b.is_exact_zero():
        return TruncatedSeries()
    ta, tb = a.top_bound(), b.top_bound()
    f = None
    if a.floor is not None:
        f = a.floor + tb
    if b.floor is not None:
        f = _fmax(f, b.floor + ta)
    out = {}
    bs = sorted(b.coeffs.items(), reverse=True)
    for ea, ca in a.coeffs.items():
        for eb, cb in bs:
            e = ea + eb
            if f is not None and e < f:
                break
            v = ca * cb
            w = out.get(e)
            out[e] = v if w is None else w + v
    return TruncatedSeries(out, f)


class SeriesMatrix:
    """Matrix of truncated series sharing one precision floor."""

    __slots__ = ("entries", "rows", "cols", "floor")

    def __init__(self, entries, rows=None, cols=None):
        entries = [list(r) for r in entries]
        self.rows = len(entries) if rows is None else rows
        self.cols = (len(entries[0]) if entries else 0) if cols is None else cols
        f = None
        for r in entries:
            for s in r:
                f = _fmax(f, s.floor)
        if f is not None:
            entries = [[s.truncate(f) for s in r] for r in entries]
        self.entries = tuple(tuple(r) for r in entries)
        self.floor = f

    @classmethod
    def zeros(cls, m, n, floor=None):
        return cls([[TruncatedSeries(None, floor) for _ in range(n)] for _ in range(m)], m, n)

    @classmethod
    def from_scalar(cls, A, exp=0):
        A = ratmat.mat(A)
        m, n = ratmat.shape(A)
        return cls([[TruncatedSeries({exp: v}) for v in r] for r in A], m, n)

    @classmethod
    def identity(cls, n, exp=0):
        return cls.from_scalar(ratmat.identity(n), exp)

    @classmethod
    def from_coeff_matrices(cls, mats, floor=None):
        """Build from {exp2: matrix of coefficients}."""
        mats = dict(mats)
        some = next(iter(mats.values()))
        m, n = len(some), len(some[0])
        ent = [[TruncatedSeries({e: M[i][j] for e, M in mats.items()}, floor) for j in range(n)] for i in range(m)]
        return cls(ent, m, n)

    def __eq__(self, other):
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        return self.shape == other.shape and self.floor == other.floor and self.entries == other.entries

    __hash__ = None

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def shape(self):
        return self.rows, self.cols

    def top(self):
        tops = [s.top() for r in self.entries for s in r if s.coeffs]
        return max(tops) if tops else None

    def top_bound(self):
        t = self.top()
        if t is not None:
            return t
        return None if self.floor is None else self.floor - 1

    def is_zero(self):
        return all(not s.coeffs for r in self.entries for s in r)

    def coeff_matrix(self, e, zero=ZERO):
        return [[s.coeffs.get(e, zero) for s in r] for r in self.entries]

    def exponents(self):
        return sorted({e for r in self.entries for s in r for e in s.coeffs}, reverse=True)

    def _zip(self, other, op):
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")
        return SeriesMatrix(
            [[op(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            self.rows,
            self.cols,
        )

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return self.map_entries(lambda s: -s)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def scale(self, c):
        return self.map_entries(lambda s: s * c)

    def map_entries(self, fn):
        return SeriesMatrix([[fn(s) for s in r] for r in self.entries], self.rows, self.cols)

    def map_coeffs(self, fn):
        return self.map_entries(lambda s: s.map_coeffs(fn))

    def shift(self, k2):
        return self.map_entries(lambda s: s.shift(k2))

    def truncate(self, floor):
        return self.map_entries(lambda s: s.truncate(floor))

    def with_floor(self, floor):
        """Force the floor of every entry (exact entries become truncated)."""
        return SeriesMatrix(
            [[TruncatedSeries(s.coeffs, _fmax(s.floor, floor)) for s in r] for r in self.entries],
            self.rows,
            self.cols,
        )

    def select(self, rows, cols):
        return SeriesMatrix(
            [[self.entries[i][j] for j in cols] for i in rows], len(rows), len(cols)
        )

    def transpose(self):
        return SeriesMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.cols,
            self.rows,
        )

    def agrees_with(self, other, floor=None):
        if self.shape != other.shape:
            return False
        return all(
            a.agrees_with(b, floor)
            for ra, rb in zip(self.entries, other.entries)
            for a, b in zip(ra, rb)
        )

    def differences(self, other, floor=None):
        """List of (row, col, exp2, difference) above the joint floor."""
        f = _fmax(_fmax(self.floor, other.floor), floor)
        out = []
        for i in range(self.rows):
            for j in range(self.cols):
                a, b = self.entries[i][j], other.entries[i][j]
                for e in sorted(set(a.coeffs) | set(b.coeffs), reverse=True):
                    if f is not None and e < f:
                        continue
                    d = a.coeffs.get(e, ZERO) - b.coeffs.get(e, ZERO)
                    if d:
                        out.append((i, j, e, d))
        return out

    def __repr__(self):
        return f"SeriesMatrix({self.rows}x{self.cols}, floor={self.floor}, top={self.top()})"


def mat_mul(A, B):
    """Product of series matrices with conservative floor propagation."""
    if A.cols != B.rows:
        raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
    out = []
    for i in range(A.rows):
        row = []
        Ai = A.entries[i]
        for k in range(B.cols):
            acc = None
            for j in range(A.cols):
                a, b = Ai[j], B.entries[j][k]
                if a.is_exact_zero() or b.is_exact_zero():
                    continue
                p = series_mul(a, b)
                acc = p if acc is None else acc + p
            row.append(acc if acc is not None else TruncatedSeries())
        out.append(row)
    C = SeriesMatrix(out, A.rows, B.cols)
    # matrix-level rule, so zero entries also carry the right precision
    f = None
    ta, tb = A.top_bound(), B.top_bound()
    if A.floor is not None and tb is not None:
        f = A.floor + tb
    if B.floor is not None and ta is not None:
        f = _fmax(f, B.floor + ta)
    return C.with_floor(f) if f is not None else C


def scalar_mul_left(S, M):
    """Rational matrix S times series matrix M."""
    return mat_mul(SeriesMatrix.from_scalar(S), M)


def scalar_mul_right(M, S):
    return mat_mul(M, SeriesMatrix.from_scalar(S))


def leading(M):
    """(m, C): top exponent and its scalar coefficient matrix.

    Raises NonScalarLeading when a top coefficient is not scalar.
    """
    m = M.top()
    if m is None:
        raise SingularLeading("matrix has no known nonzero coefficient")
    C = []
    for r in M.entries:
        row = []
        for s in r:
            c = s.coeffs.get(m)
            if c is None:
                row.append(ZERO)
                continue
            v = scalar_of(c)
            if v is None:
                raise NonScalarLeading(f"coefficient at z^{m}/2 is not scalar: {c}")
            row.append(v)
        C.append(tuple(row))
    return m, tuple(C)


@dataclass(frozen=True)
class CompressionMaps:
    """psi: N x m injection, pi: m' x N projection (0/1 coordinate maps)."""

    psi: tuple
    pi: tuple

    def __post_init__(self):
        object.__setattr__(self, "psi", ratmat.mat(self.psi))
        object.__setattr__(self, "pi", ratmat.mat(self.pi))
        cols = _coordinates(ratmat.transpose(self.psi))
        rows = _coordinates(self.pi)
        if cols is None or rows is None:
            raise ValueError("compression maps must be 0/1 coordinate maps")

    @classmethod
    def select(cls, N, psi_idx, pi_idx):
        psi = tuple(tuple(ONE if a == i else ZERO for i in psi_idx) for a in range(N))
        pi = tuple(tuple(ONE if a == i else ZERO for a in range(N)) for i in pi_idx)
        return cls(psi, pi)

    @property
    def psi_idx(self):
        return _coordinates(ratmat.transpose(self.psi))

    @property
    def pi_idx(self):
        return _coordinates(self.pi)


def _coordinates(rows):
    """Positions of the single 1 in each row, or None if not a selection."""
    out = []
    for r in rows:
        nz = [j for j, v in enumerate(r) if v]
        if len(nz) != 1 or r[nz[0]] != 1:
            return None
        out.append(nz[0])
    if len(set(out)) != len(out):
        return None
    return tuple(out)


def compressed_inverse(M, pi, psi, floor=None, max_terms=256):
    """pi M^{-1} psi by a Neumann series.

    M = C z^m (1 - R) with C scalar invertible.  With ``floor`` the result is
    computed down to that exponent; otherwise M must be exact with R
    nilpotent, or truncated (the floor then follows from M's).
    """
    n = M.rows
    if M.cols != n:
        raise ShapeMismatch("inverse of a non-square matrix")
    m, C = leading(M)
    try:
        Cinv = ratmat.inverse(C)
    except DegenerateForm:
        raise SingularLeading("leading coefficient is singular") from None
    R = SeriesMatrix.identity(n) - scalar_mul_left(Cinv, M).shift(-m)
    if M.floor is not None:
        natural = M.floor - 2 * m
        floor = natural if floor is None else max(floor, natural)
    Y = SeriesMatrix.from_scalar(pi)
    total = Y
    cut = None if floor is None else floor + m
    for _ in range(max_terms if floor is None else 10**9):
        Y = mat_mul(Y, R)
        if cut is not None:
            Y = Y.truncate(cut)
        if Y.is_zero():
            break
        total = total + Y
    else:
        raise ValueError("inverse is an infinite series; a floor is required")
    if cut is not None:
        total = total.with_floor(cut)
    return scalar_mul_right(total, ratmat.mul(Cinv, psi)).shift(-m)


def invert(M, floor=None):
    """M^{-1} for a scalar-leading square series matrix."""
    I = ratmat.identity(M.rows)
    return compressed_inverse(M, I, I, floor)


def quasideterminant(M, maps, floor=None, inner_floor=None):
    """(pi M^{-1} psi)^{-1}.

    ``inner_floor`` is the precision used for the compression; by default it
    is chosen from the leading exponents so the result reaches ``floor``.
    """
    if floor is None:
        floor = M.floor
    if floor is None:
        raise ValueError("quasideterminant needs a floor")
    mM = M.top()
    if inner_floor is None:
        inner_floor = floor - 2 * mM if mM is not None else floor
    P = compressed_inverse(M, maps.pi, maps.psi, inner_floor)
    mP = P.top()
    if mP is None:
        raise CompressionNotInvertible("compression vanishes to the working precision")
    needed = floor + 2 * mP
    if needed < P.floor:
        P = compressed_inverse(M, maps.pi, maps.psi, needed)
    try:
        return invert(P, floor)
    except (NonScalarLeading, SingularLeading) as exc:
        raise CompressionNotInvertible(str(exc)) from None


def complementary_maps(maps, N):
    """Dirac data (chi1, chi2) equivalent to quasidet maps (psi=Psi2, pi=Pi1)."""
    S = maps.psi_idx
    T = maps.pi_idx
    Tc = [a for a in range(N) if a not in T]
    Sc = [a for a in range(N) if a not in S]
    chi1 = CompressionMaps.select(N, Tc, T)
    chi2 = CompressionMaps.select(N, S, Sc)
    return chi1, chi2


def _eliminate(M, pivot_rows, pivot_cols, work_floor):
    """Schur complement of the (pivot_rows, pivot_cols) block, pivot by pivot.

    Pivots are chosen among entries whose leading coefficient is a nonzero
    scalar, preferring exact constants and then the highest top exponent.
    """
    E = [list(r) for r in M.entries]
    rows = list(range(M.rows))
    cols = list(range(M.cols))
    prow, pcol = set(pivot_rows), set(pivot_cols)
    while prow:
        best = None
        for i in prow:
            for j in pcol:
                s = E[i][j]
                t = s.top()
                if t is None:
                    continue
                v = scalar_of(s.coeffs[t])
                if not v:
                    continue
                exact_const = s.floor is None and len(s.coeffs) == 1
                key = (exact_const, t, -i, -j)
                if best is None or key > best[0]:
                    best = (key, i, j)
        if best is None:
            raise PivotNotInvertible("no pivot with an invertible scalar leading coefficient")
        _, i, j = best
        p = E[i][j]
        if p.floor is None and len(p.coeffs) == 1:
            (e, c), = p.coeffs.items()
            pinv = TruncatedSeries({-e: ONE / scalar_of(c)})
        else:
            pinv = invert(SeriesMatrix([[p]]), work_floor)[0, 0]
        rows.remove(i)
        cols.remove(j)
        prow.discard(i)
        pcol.discard(j)
        left = {r: series_mul(E[r][j], pinv) for r in rows if not E[r][j].is_exact_zero()}
        for r, lr in left.items():
            for c in cols:
                b = E[i][c]
                if b.is_exact_zero():
                    continue
                new = E[r][c] - series_mul(lr, b)
                E[r][c] = new if new.floor is None else new.truncate(work_floor)
    return E, rows, cols


def dirac_reduction(M, chi1, chi2, floor=None, max_rounds=12):
    """Psi2^{-1} (M - M Psi1 (Pi2 M Psi1)^{-1} Pi2 M) Pi1^{-1}.

    chi1 = (Psi1, Pi1) on the source, chi2 = (Psi2, Pi2) on the target, all
    coordinate maps.  The pivot block is eliminated entry by entry; when a
    pivot needs a genuine series inverse the working floor is deepened until
    the result reaches ``floor``.
    """
    piv_cols = chi1.psi_idx
    keep_cols = chi1.pi_idx
    keep_rows = chi2.psi_idx
    piv_rows = chi2.pi_idx
    if len(piv_rows) != len(piv_cols):
        raise PivotNotInvertible("pivot block is not square")
    target = floor if floor is not None else M.floor
    work = target if target is not None else -8
    for _ in range(max_rounds):
        E, rows, cols = _eliminate(M, piv_rows, piv_cols, work)
        out = SeriesMatrix([[E[i][j] for j in keep_cols] for i in keep_rows], len(keep_rows), len(keep_cols))
        if target is None:
            if out.floor is None:
                return out
        elif out.floor is None or out.floor <= target:
            return out.truncate(target)
        work -= (out.floor - target) if target is not None else 8
    raise PivotNotInvertible("precision did not reach the requested floor")


def dirac_for_quasidet(M, maps, floor=None):
    """Dirac reduction matching quasideterminant(M, maps)."""
    chi1, chi2 = complementary_maps(maps, M.rows)
    return dirac_reduction(M, chi1, chi2, floor)


def series_to_json(s):
    from .uea import UEAElement
    from ._scalar import fmt_q

    def val(v):
        return v.to_json() if isinstance(v, UEAElement) else fmt_q(v)

    return {
        "floor": s.floor,
        "terms": [{"exp": e, "value": val(v)} for e, v in sorted(s.coeffs.items(), reverse=True)],
    }


def matrix_to_json(M):
    return {"floor": M.floor, "entries": [[series_to_json(s) for s in r] for r in M.entries]}
