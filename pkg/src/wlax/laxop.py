"""The Lax operator of a finite W-algebra.

Pipeline: U = sum u_i U^i, A = z + U, A_rho = z + F + pi_{<=1/2} U, the
shift matrix D = -sum_{delta(i)>=1} U^i U_i, the quasideterminant
L~ = |A_rho + D| over the top and bottom X-weight spaces, and L = L~ . 1bar.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ._scalar import Q, ZERO, ONE, HALF
from . import ratmat
from .errors import UnsupportedFamily
from .liealg import Family
from .series import (
    CompressionMaps,
    SeriesMatrix,
    TruncatedSeries,
    compressed_inverse,
    dirac_for_quasidet,
    invert,
)
from .uea import UEA, epsilon0, kazhdan_weight, reduce_mod_J


def default_floor(setup):
    return -(2 * setup.d2 + 6)


def _uea_of(setup, uea):
    return uea if uea is not None else UEA(setup)


def _U_entries(setup, keep=None):
    """Entry (a, b) as {basis index: (U^i)_{ab}}."""
    alg = setup.algebra
    N = alg.N
    ent = [[{} for _ in range(N)] for _ in range(N)]
    for i in range(alg.dim):
        if keep is not None and not keep(i):
            continue
        for (a, b), v in alg._dual_sp[i].items():
            ent[a][b][i] = v
    return ent


def build_U(setup, uea=None):
    uea = _uea_of(setup, uea)
    ent = _U_entries(setup)
    return SeriesMatrix([[TruncatedSeries({0: uea.from_combo(c)}) for c in r] for r in ent])


def build_A(setup, uea=None):
    uea = _uea_of(setup, uea)
    return build_U(setup, uea) + SeriesMatrix.identity(setup.N, 2)


def build_Arho(setup, uea=None):
    """z + F + pi_{<=1/2} U."""
    uea = _uea_of(setup, uea)
    delta = setup.delta
    ent = _U_entries(setup, keep=lambda i: delta[i] <= 1)
    N = setup.N
    rows = []
    for a in range(N):
        row = []
        for b in range(N):
            coeffs = {}
            c = uea.from_combo(ent[a][b])
            if setup.F[a][b]:
                c = c + setup.F[a][b]
            if c:
                coeffs[0] = c
            if a == b:
                coeffs[2] = uea.one
            row.append(TruncatedSeries(coeffs))
        rows.append(row)
    return SeriesMatrix(rows)


def shift_matrix(setup):
    """D = -sum over delta(i) >= 1 of U^i U_i, from the actual dual basis."""
    alg = setup.algebra
    N = alg.N
    D = [[ZERO] * N for _ in range(N)]
    for i in range(alg.dim):
        if setup.delta[i] < 2:
            continue
        P = ratmat.mul(alg.dual_matrix(i), alg.rep[i])
        for a in range(N):
            for b in range(N):
                if P[a][b]:
                    D[a][b] -= P[a][b]
    return tuple(map(tuple, D))


def shift_matrix_closed_form(setup):
    """Diagonal closed forms for gl/sl, so and sp in the standard representation."""
    fam = setup.family
    if fam is None:
        raise UnsupportedFamily("closed form needs a classical family")
    w = setup.v_weights
    N = len(w)
    vals = []
    for a in range(N):
        above = sum(1 for b in range(N) if w[b] >= w[a] + 2)
        if fam.family in (Family.GL, Family.SL):
            vals.append(Q(-above))
        else:
            sign = 1 if fam.family is Family.SO else -1
            vals.append(Q(-above, 2) + (sign * HALF if w[a] <= -1 else ZERO))
    return ratmat.diag(vals)


def grading_count_identity(setup):
    """(dim g_{>=1}, sum_k dim V[k] dim V[>=k+1]); equal for gl via the trace of D."""
    lhs = sum(1 for d in setup.delta if d >= 2)
    w = setup.v_weights
    rhs = sum(1 for a in w for b in w if b >= a + 2)
    return lhs, rhs


def sl2_irreducible_closed_form(N):
    c = Q(-6, N ** 3 - N)
    return ratmat.diag([c * (i - 1) * (N + 1 - i) for i in range(1, N + 1)])


def lax_maps(setup):
    """Psi onto V[d/2] (columns) and Pi onto V[-d/2] (rows)."""
    return CompressionMaps.select(setup.N, setup.top, setup.bottom)


@dataclass(eq=False)
class LaxResult:
    setup: object
    d: int
    r1: int
    L_tilde: SeriesMatrix
    L: SeriesMatrix
    D_matrix: tuple
    floor: int
    uea: UEA
    matrix: SeriesMatrix = None
    compressed: SeriesMatrix = None
    maps: CompressionMaps = None
    extra: dict = field(default_factory=dict)


def lax(setup, floor=None, uea=None):
    """Quasideterminant L~ of A_rho + D and its image L in M."""
    uea = _uea_of(setup, uea)
    floor = default_floor(setup) if floor is None else floor
    d = setup.d2
    D = shift_matrix(setup)
    M = build_Arho(setup, uea) + SeriesMatrix.from_scalar(D)
    maps = lax_maps(setup)
    inner = floor - 4 * (d + 1)
    P = compressed_inverse(M, maps.pi, maps.psi, inner)
    Lt = invert(P, floor).map_coeffs(uea.lift)
    L = Lt.map_coeffs(reduce_mod_J)
    return LaxResult(setup, d, setup.r1, Lt, L, D, floor, uea, M, P, maps)


def leading_term_check(result):
    """Compressed Neumann coefficients: zero for l < d, Pi F^d Psi at l = d.

    Returns a list of violations.  The coefficient of z^{-l-1} in
    Pi (A_rho + D)^{-1} Psi must vanish for l < d and equal (-1)^d Pi F^d Psi.
    """
    setup, P, maps = result.setup, result.compressed, result.maps
    d = result.d
    out = []
    expect = ratmat.mul(ratmat.mul(maps.pi, _mat_pow(setup.F, d)), maps.psi)
    sign = (-1) ** d
    for l in range(d + 1):
        e = -2 * (l + 1)
        C = P.coeff_matrix(e)
        for i, r in enumerate(C):
            for j, c in enumerate(r):
                want = sign * expect[i][j] if l == d else ZERO
                if c != want and (c - want):
                    out.append({"exp": e, "row": i, "col": j, "got": str(c), "want": str(want)})
    top = P.top()
    if top is not None and top > -2 * (d + 1):
        out.append({"exp": top, "row": None, "col": None, "got": "nonzero", "want": "0"})
    return out


def _mat_pow(A, k):
    R = ratmat.identity(len(A))
    for _ in range(k):
        R = ratmat.mul(R, A)
    return R


def check_membership(result):
    """[a, l~] . 1bar = 0 for all a in g_{>=1/2} and every exact coefficient."""
    setup, uea = result.setup, result.uea
    residues = []
    gens = [i for i, dl in enumerate(setup.delta) if dl >= 1]
    for i in gens:
        a = uea.gen(i)
        for r, row in enumerate(result.L_tilde.entries):
            for c, s in enumerate(row):
                for e, coeff in s.coeffs.items():
                    res = reduce_mod_J(a * coeff - coeff * a)
                    if res:
                        residues.append({
                            "generator": setup.algebra.label_str(i),
                            "entry": [r, c],
                            "exp": e,
                            "residue": str(res),
                        })
    return residues


def kazhdan_profile(result):
    """Violations of weight(coefficient of z^m in L) <= d + 1 - m."""
    bound = 2 * (result.d + 1)
    out = []
    for r, row in enumerate(result.L.entries):
        for c, s in enumerate(row):
            for e, coeff in s.coeffs.items():
                w = kazhdan_weight(coeff)
                if w > bound - e:
                    out.append({"entry": [r, c], "exp": e, "weight": w, "bound": bound - e})
    return out


def check_dirac(result):
    """Dirac reduction of A_rho + D agrees with L~ above the floor."""
    Ld = dirac_for_quasidet(result.matrix, result.maps, result.floor).map_coeffs(result.uea.lift)
    return result.L_tilde.differences(Ld, result.floor)


def check_Arho(setup, uea=None):
    """(A - A_rho) . 1bar = 0 entrywise."""
    uea = _uea_of(setup, uea)
    diff = build_A(setup, uea) - build_Arho(setup, uea)
    bad = []
    for r, row in enumerate(diff.entries):
        for c, s in enumerate(row):
            for e, v in s.coeffs.items():
                if reduce_mod_J(v):
                    bad.append((r, c, e))
    return bad


# main lemma -----------------------------------------------------------------

def build_one_plus_T(setup, uea=None):
    """1 + z^{-Delta} U, entry (a,b) = delta_ab + sum z^{delta(i)-1} u_i (U^i)_ab."""
    uea = _uea_of(setup, uea)
    N = setup.N
    ent = _U_entries(setup)
    rows = []
    for a in range(N):
        row = []
        for b in range(N):
            coeffs = {}
            for i, v in ent[a][b].items():
                e = setup.delta[i] - 2
                coeffs[e] = coeffs.get(e, uea.zero) + uea.gen(i).scale(v)
            if a == b:
                coeffs[0] = coeffs.get(0, uea.zero) + 1
            row.append(TruncatedSeries(coeffs))
        rows.append(row)
    return SeriesMatrix(rows)


def check_lemma_X(setup, uea=None):
    """1 + z^{-Delta}U = z^{-1-X} (z + U) z^X, entrywise."""
    uea = _uea_of(setup, uea)
    lhs = build_one_plus_T(setup, uea)
    A = build_A(setup, uea)
    w = setup.v_weights
    rhs = SeriesMatrix([
        [A[a, b].shift(-2 - w[a] + w[b]) for b in range(setup.N)] for a in range(setup.N)
    ])
    return lhs.differences(rhs)


def epsilon_leading_check(setup, uea=None):
    """epsilon0 of the z^0 part of Pi T^l Psi equals Pi F^l Psi for l <= d."""
    uea = _uea_of(setup, uea)
    T = build_one_plus_T(setup, uea) - SeriesMatrix.identity(setup.N)
    maps = lax_maps(setup)
    bad = []
    P = SeriesMatrix.from_scalar(maps.pi)
    Fp = maps.pi
    for l in range(setup.d2 + 1):
        C = (P @ SeriesMatrix.from_scalar(maps.psi)).coeff_matrix(0, uea.zero)
        want = ratmat.mul(Fp, maps.psi)
        for i, r in enumerate(C):
            for j, c in enumerate(r):
                val = epsilon0(c) if hasattr(c, "terms") else Q(c)
                if val != want[i][j]:
                    bad.append({"power": l, "row": i, "col": j})
        P = P @ T
        Fp = ratmat.mul(Fp, setup.F)
    return bad


class _ReesSolver:
    """Vectors over the M-valued series ring, stored as
    {position: {(n2, monomial): coeff}} for the term z^{-n2/2} . monomial.
    """

    def __init__(self, setup, uea, nf2):
        self.setup = setup
        self.uea = uea
        self.nf2 = nf2
        self.d2 = setup.d2
        ent = _U_entries(setup)
        N = setup.N
        # columns of T: for b, list of (a, i, coeff)
        self.T_cols = [[(a, i, v) for a in range(N) for i, v in ent[a][b].items()] for b in range(N)]
        self.F = setup.F
        self.weight_cache = {}

    def weight2(self, mono):
        w = self.weight_cache.get(mono)
        if w is None:
            w = sum(2 - self.uea.delta[g] for g in mono)
            self.weight_cache[mono] = w
        return w

    def prune(self, vec):
        out = {}
        for pos, terms in vec.items():
            t = {k: c for k, c in terms.items() if c and self._keep(*k)}
            if t:
                out[pos] = t
        return out

    def _keep(self, n2, mono):
        p2 = n2 - self.weight2(mono)
        if p2 > self.nf2:
            return False
        steps = (self.nf2 - p2) // 2  # defect is raised in whole units
        drop = max(2 * self.d2 - 2, 0)  # a step lowers n2 by at most 2(d - 1)
        return n2 - drop * steps <= self.nf2

    def apply_T(self, vec, minus_F=False):
        """T acting on an M-valued vector; with minus_F, T - F."""
        uea = self.uea
        delta = uea.delta
        fp = uea.fpair
        out = {}
        for b, terms in vec.items():
            col = self.T_cols[b]
            if not col:
                continue
            for (n2, mono), c in terms.items():
                rep = {mono: c}
                for a, i, v in col:
                    n2n = n2 + 2 - delta[i]
                    prod = uea.kernel.mul({(i,): ONE}, rep)
                    red = reduce_mod_J(type(uea.one)(uea, prod)).terms
                    dest = out.setdefault(a, {})
                    for m2, c2 in red.items():
                        key = (n2n, m2)
                        dest[key] = dest.get(key, ZERO) + v * c2
                    if minus_F and delta[i] == 2 and fp[i]:
                        key = (n2n, mono)
                        dest[key] = dest.get(key, ZERO) - v * fp[i] * c
        return self.prune(out)

    def apply_scalar(self, S, vec, rows, cols):
        """Rational matrix S (indexed rows x cols) applied to a vector on cols."""
        out = {}
        for r_idx, a in enumerate(rows):
            dest = {}
            for c_idx, b in enumerate(cols):
                s = S[r_idx][c_idx]
                if not s or b not in vec:
                    continue
                for k, c in vec[b].items():
                    dest[k] = dest.get(k, ZERO) + s * c
            dest = {k: c for k, c in dest.items() if c}
            if dest:
                out[a] = dest
        return out

    @staticmethod
    def add(u, v, sign=1):
        out = {p: dict(t) for p, t in u.items()}
        for p, t in v.items():
            dest = out.setdefault(p, {})
            for k, c in t.items():
                val = dest.get(k, ZERO) + sign * c
                if val:
                    dest[k] = val
                else:
                    dest.pop(k, None)
        return {p: t for p, t in out.items() if t}

    @staticmethod
    def restrict(vec, positions):
        ps = set(positions)
        return {p: t for p, t in vec.items() if p in ps}


def main_lemma_check(setup, floor=None, uea=None, result=None):
    """|1 + z^{-Delta}U| . 1bar against z^{-d-1} L~ . 1bar.

    The left side is evaluated as the Dirac reduction applied to 1bar: solve
    K Y' = -(1+T)_{S^c, t} 1bar over M-valued series by fixed-point
    iteration with the scalar part K0 = (1+F)_{S^c, T^c}, truncating
    terms that provably cannot reach the compared range.
    """
    uea = _uea_of(setup, uea)
    if result is None:
        result = lax(setup, floor, uea)
    floor = result.floor
    d2 = setup.d2
    N = setup.N
    S = list(setup.top)
    T = list(setup.bottom)
    Sc = [a for a in range(N) if a not in S]
    Tc = [a for a in range(N) if a not in T]
    nf2 = 2 * (d2 + 1) - floor
    solver = _ReesSolver(setup, uea, nf2)
    report = {"lemma_X": check_lemma_X(setup, uea), "epsilon": epsilon_leading_check(setup, uea)}
    oneF = ratmat.add(ratmat.identity(N), setup.F)
    K0 = tuple(tuple(oneF[a][b] for b in Tc) for a in Sc)
    K0inv = ratmat.inverse(K0) if Sc else ()
    mismatches = []
    for t_idx, t in enumerate(T):
        e_t = {t: {(0, ()): ONE}}
        # b = -(1+T)_{S^c, t} 1bar
        full = _ReesSolver.add(e_t, solver.apply_T(e_t))
        b = {p: {k: -c for k, c in v.items()} for p, v in _ReesSolver.restrict(full, Sc).items()}
        Yp = {}
        corr = solver.apply_scalar(K0inv, b, Tc, Sc)
        while corr:
            Yp = _ReesSolver.add(Yp, corr)
            k1 = _ReesSolver.restrict(solver.apply_T(corr, minus_F=True), Sc)
            # (1+T) - (1+F) on columns T^c restricted to rows S^c
            corr = solver.apply_scalar(K0inv, k1, Tc, Sc)
            corr = {p: {k: -c for k, c in v.items()} for p, v in corr.items()}
            corr = solver.prune(corr)
        Y = _ReesSolver.add(e_t, Yp)
        W = _ReesSolver.restrict(_ReesSolver.add(Y, solver.apply_T(Y)), S)
        for s_idx, s in enumerate(S):
            got = {}
            for (n2, mono), c in W.get(s, {}).items():
                if n2 <= nf2:
                    got.setdefault(n2, {})[mono] = c
            ser = result.L[s_idx, t_idx]
            for n2 in range(0, nf2 + 1):
                e = 2 * (d2 + 1) - n2
                want = ser.coeffs.get(e)
                want_terms = want.terms if want is not None else {}
                have = {m: c for m, c in got.get(n2, {}).items() if c}
                if have != want_terms:
                    mismatches.append({"entry": [s_idx, t_idx], "exp": e})
    report["mismatches"] = mismatches
    return report
