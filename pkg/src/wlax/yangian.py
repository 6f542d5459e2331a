"""Generalized (alpha, beta, gamma)-Yangian identities.

Tensor convention, used everywhere below: the basis of X (x) Y is ordered
row-major, (a, b) -> a * dim Y + b, and (A (x) B)[(a,b),(c,d)] = A[a][c] B[b][d]
with the A factor multiplied first when coefficients do not commute.
"""
from __future__ import annotations

from dataclasses import dataclass

from ._scalar import Q, ZERO, ONE, HALF, fmt_q, to_q
from . import ratmat
from .errors import DegenerateForm, FormMissing, OrthogonalityViolation, ShapeMismatch
from .liealg import Family, adjoint
from .series import TruncatedSeries
from .uea import UEAElement, reduce_mod_J


@dataclass(frozen=True)
class YangianParams:
    alpha: object
    beta: object
    gamma: object
    epsilon: int | None = None

    def __post_init__(self):
        for k in ("alpha", "beta", "gamma"):
            object.__setattr__(self, k, to_q(getattr(self, k)))
        if self.beta and self.epsilon not in (1, -1):
            raise FormMissing("beta != 0 requires epsilon = +1 or -1")

    def to_json(self):
        return {
            "alpha": fmt_q(self.alpha),
            "beta": fmt_q(self.beta),
            "gamma": fmt_q(self.gamma),
            "epsilon": self.epsilon,
        }


def params_for_A(family):
    """(alpha, beta, gamma) satisfied by A(z) for the defining representation."""
    fam = family.family
    if fam in (Family.GL, Family.SL):
        return YangianParams(1, 0, 0)
    eps = family.epsilon
    return YangianParams(HALF, HALF, Q(eps, 2), eps)


def params_for_L(setup):
    """Parameters for the Lax operator; gamma depends on N and r1 for so and sp."""
    fam = setup.family
    if fam.family in (Family.GL, Family.SL):
        return YangianParams(1, 0, 0)
    eps = fam.epsilon
    return YangianParams(HALF, HALF, Q(eps - setup.N + setup.r1, 2), eps)


# Omega operators -------------------------------------------------------------

def omega(m):
    """The flip v1 (x) v2 -> v2 (x) v1 on an m-dimensional space."""
    return tuple(
        tuple(ONE if (a == d and b == c) else ZERO for c in range(m) for d in range(m))
        for a in range(m) for b in range(m)
    )


def omega_dagger(G, first="W"):
    """Omega-dagger for the pairing G[a][b] = <w_a|u_b>.

    first="W": the operator on W (x) U, w (x) u -> <w|u> sum_k w^k (x) u_k.
    first="U": the operator on U (x) W, u (x) w -> <w|u> sum_k u_k (x) w^k.
    For a form on one space V (G = Gram matrix) both agree.
    """
    G = ratmat.mat(G)
    m = len(G)
    if ratmat.shape(G) != (m, m):
        raise ShapeMismatch("pairing must be square")
    try:
        Gi = ratmat.inverse(G)
    except DegenerateForm:
        raise DegenerateForm("pairing is degenerate") from None
    out = [[ZERO] * (m * m) for _ in range(m * m)]
    for a in range(m):
        for b in range(m):
            g = G[a][b]
            if not g:
                continue
            for k in range(m):
                for ap in range(m):
                    c = Gi[k][ap]
                    if not c:
                        continue
                    if first == "W":
                        out[ap * m + k][a * m + b] += c * g
                    else:
                        out[k * m + ap][b * m + a] += g * c
    return tuple(map(tuple, out))


def adjoint_hom(D, G):
    """Adjoint of D in Hom(W, U) w.r.t. G = <w|u>: <w|D^dagger w1> = <w1|D w>."""
    G = ratmat.mat(G)
    return ratmat.mul(ratmat.mul(ratmat.inverse(G), ratmat.transpose(D)), ratmat.transpose(G))


def adjoint_end(A, G):
    """Adjoint on a single space: <v1|A^dagger v2> = <A v1|v2>."""
    return adjoint(A, G)


def nullspace(A):
    """Basis (list of vectors) of {x : A x = 0}."""
    A = [list(r) for r in ratmat.mat(A)]
    m = len(A)
    n = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = ONE / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * n
        v[fc] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fc]
        basis.append(tuple(v))
    return basis


def induced_pairing(psi, pi, form):
    """<w|u> = <Pi^{-1} w | Psi u>, after checking im Psi = (ker Pi)^perp."""
    psi, pi, form = ratmat.mat(psi), ratmat.mat(pi), ratmat.mat(form)
    N = len(form)
    kerPi = nullspace(pi)
    img = ratmat.transpose(psi)
    for k in kerPi:
        for u in img:
            if sum((k[a] * form[a][b] * u[b] for a in range(N) for b in range(N)), ZERO):
                raise OrthogonalityViolation("im Psi is not orthogonal to ker Pi")
    if len(img) != N - len(kerPi):
        raise OrthogonalityViolation("im Psi and (ker Pi)^perp differ in dimension")
    # a right inverse of Pi
    PPt = ratmat.mul(pi, ratmat.transpose(pi))
    right = ratmat.mul(ratmat.transpose(pi), ratmat.inverse(PPt))
    return ratmat.mul(ratmat.mul(ratmat.transpose(right), form), psi)


def omega_g(model):
    """sum_i U_i (x) U^i."""
    N = model.N
    out = ratmat.zeros(N * N)
    for i in range(model.dim):
        out = ratmat.add(out, ratmat.kron(model.rep[i], model.dual_matrix(i)))
    return out


def omega_g_expected(model):
    fam = model.family.family
    N = model.N
    Om = omega(N)
    if fam is Family.GL:
        return Om
    if fam is Family.SL:
        return ratmat.sub(Om, ratmat.scale(Q(1, N), ratmat.identity(N * N)))
    return ratmat.scale(HALF, ratmat.sub(Om, omega_dagger(model.form)))


# bivariate tensors -----------------------------------------------------------

class BivariateSeriesTensor:
    """Sparse matrix of bivariate Laurent polynomials in z, w.

    entries: {(row, col): {(ez2, ew2): coeff}} with doubled exponents.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        self.rows, self.cols = rows, cols
        self.entries = {k: v for k, v in entries.items() if v}

    @classmethod
    def from_scalar(cls, S, poly=((0, 0),)):
        """Scalar matrix S times a monomial z^a w^b (default 1)."""
        m, n = ratmat.shape(S)
        ent = {}
        for i in range(m):
            for j in range(n):
                if S[i][j]:
                    ent[(i, j)] = {e: S[i][j] for e in poly}
        return cls(m, n, ent)

    @classmethod
    def linear(cls, n, cz, cw, const, extra=None, extra_coeff=ZERO):
        """cz z + cw w + const, times identity, plus extra_coeff * extra."""
        ent = {}
        for i in range(n):
            d = {}
            if cz:
                d[(2, 0)] = Q(cz)
            if cw:
                d[(0, 2)] = Q(cw)
            if const:
                d[(0, 0)] = Q(const)
            ent[(i, i)] = d
        if extra is not None and extra_coeff:
            for i in range(n):
                for j in range(n):
                    v = extra[i][j]
                    if v:
                        d = ent.setdefault((i, j), {})
                        w = d.get((0, 0), ZERO) + extra_coeff * v
                        if w:
                            d[(0, 0)] = w
                        else:
                            d.pop((0, 0), None)
        return cls(n, n, ent)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ShapeMismatch("bivariate tensor shapes do not match")
        byrow = {}
        for (k, j), v in other.entries.items():
            byrow.setdefault(k, []).append((j, v))
        out = {}
        for (i, k), a in self.entries.items():
            for j, b in byrow.get(k, ()):
                dest = out.setdefault((i, j), {})
                for ea, ca in a.items():
                    for eb, cb in b.items():
                        e = (ea[0] + eb[0], ea[1] + eb[1])
                        p = ca * cb
                        w = dest.get(e)
                        dest[e] = p if w is None else w + p
        for key in list(out):
            out[key] = {e: c for e, c in out[key].items() if c}
        return BivariateSeriesTensor(self.rows, other.cols, out)

    def __sub__(self, other):
        out = {k: dict(v) for k, v in self.entries.items()}
        for k, v in other.entries.items():
            dest = out.setdefault(k, {})
            for e, c in v.items():
                w = dest.get(e)
                dest[e] = -c if w is None else w - c
        for key in list(out):
            out[key] = {e: c for e, c in out[key].items() if c}
        return BivariateSeriesTensor(self.rows, self.cols, out)

    def map_coeffs(self, fn):
        return BivariateSeriesTensor(
            self.rows, self.cols,
            {k: {e: fn(c) for e, c in v.items()} for k, v in self.entries.items()},
        )

    def nonzero(self, fz=None, fw=None):
        """(row, col, ez2, ew2, coeff) for nonzero coefficients above floors."""
        out = []
        for (i, j), v in sorted(self.entries.items()):
            for (ez, ew), c in sorted(v.items(), reverse=True):
                if fz is not None and ez < fz:
                    continue
                if fw is not None and ew < fw:
                    continue
                if c:
                    out.append((i, j, ez, ew, c))
        return out


def _tensor_left(A, other_dim, var):
    """A(var) (x) 1 as a bivariate tensor."""
    m, n = A.rows, A.cols
    q = other_dim
    ent = {}
    for a in range(m):
        for c in range(n):
            s = A.entries[a][c]
            if not s.coeffs:
                continue
            d = {(e, 0) if var == "z" else (0, e): v for e, v in s.coeffs.items()}
            for b in range(q):
                ent[(a * q + b, c * q + b)] = d
    return BivariateSeriesTensor(m * q, n * q, ent)


def _tensor_right(A, other_dim, var):
    """1 (x) A(var) as a bivariate tensor."""
    m, n = A.rows, A.cols
    p = other_dim
    ent = {}
    for b in range(m):
        for d_ in range(n):
            s = A.entries[b][d_]
            if not s.coeffs:
                continue
            d = {(e, 0) if var == "z" else (0, e): v for e, v in s.coeffs.items()}
            for a in range(p):
                ent[(a * m + b, a * n + d_)] = d
    return BivariateSeriesTensor(p * m, p * n, ent)


def yangian_residual(A, params, pairing=None, source="W"):
    """LHS - RHS of the generalized Yangian identity for A: X -> Y.

    ``source`` says whether the source X is the W side of ``pairing``
    (pairing[a][b] = <w_a|u_b>) or the U side.
    """
    al, be, ga = params.alpha, params.beta, params.gamma
    dy, dx = A.rows, A.cols
    if be:
        if pairing is None:
            raise FormMissing("beta != 0 needs a pairing")
        G = ratmat.mat(pairing)
        if source == "W":
            Odag_xy = omega_dagger(G, "W")
            Odag_yx = omega_dagger(G, "U")
        else:
            Odag_xy = omega_dagger(G, "U")
            Odag_yx = omega_dagger(G, "W")
    else:
        Odag_xy = Odag_yx = None
    P1 = BivariateSeriesTensor.linear(dy * dy, 1, -1, 0, omega(dy), al)
    P2 = BivariateSeriesTensor.linear(dx * dy, 1, 1, ga, Odag_xy, -be)
    P3 = BivariateSeriesTensor.linear(dy * dx, 1, 1, ga, Odag_yx, -be)
    P4 = BivariateSeriesTensor.linear(dx * dx, 1, -1, 0, omega(dx), al)
    lhs = P1 @ (_tensor_left(A, dy, "z") @ (P2 @ _tensor_right(A, dx, "w")))
    rhs = _tensor_right(A, dy, "w") @ (P3 @ (_tensor_left(A, dx, "z") @ P4))
    return lhs - rhs


def adler_residual(A, params, form=None):
    """The commutator form, denominators cleared, for A in End V."""
    al, be, ga = params.alpha, params.beta, params.gamma
    eps = params.epsilon
    n = A.rows
    nn = n * n
    Az1 = _tensor_left(A, n, "z")
    Aw1 = _tensor_left(A, n, "w")
    one_Aw = _tensor_right(A, n, "w")
    one_Az = _tensor_right(A, n, "z")
    Om = BivariateSeriesTensor.from_scalar(omega(n))
    lhs = BivariateSeriesTensor.linear(nn, 1, -1, 0) @ BivariateSeriesTensor.linear(nn, 1, 1, ga)
    lhs = lhs @ (Az1 @ one_Aw - one_Aw @ Az1)
    rhs = BivariateSeriesTensor.linear(nn, al, al, al * ga) @ (Om @ (Aw1 @ one_Az - Az1 @ one_Aw))
    if be:
        if form is None:
            raise FormMissing("beta != 0 needs a form")
        Od = BivariateSeriesTensor.from_scalar(omega_dagger(form))
        t2 = one_Aw @ (Od @ Az1) - Az1 @ (Od @ one_Aw)
        rhs = rhs - BivariateSeriesTensor.linear(nn, be, -be, 0) @ t2
        t3 = one_Aw @ (Od @ one_Az) - one_Az @ (Od @ one_Aw)
        rhs = rhs - BivariateSeriesTensor.linear(nn, 0, 0, eps * al * be) @ t3
    return lhs - rhs


def joint_floor(A, d=0):
    """Per-variable doubled floor above which residual coefficients are exact."""
    if A.floor is None:
        return None
    return A.floor + 2 * max(2, d + 1)


def check_identity(A, params, pairing=None, source="W", mode="exact", floor=None, d=0):
    """Report of the generalized Yangian identity.

    mode="exact" compares coefficients in the coefficient ring; "mod_J"
    multiplies representatives in U(g) and reduces only at the end.
    """
    res = yangian_residual(A, params, pairing, source)
    if mode == "mod_J":
        res = res.map_coeffs(lambda c: reduce_mod_J(c) if isinstance(c, UEAElement) else c)
    f = floor if floor is not None else joint_floor(A, d)
    viol = res.nonzero(f, f)
    return {
        "identity": "gener-yangian",
        "params": params.to_json(),
        "mode": mode,
        "floor": f,
        "violations": [
            {"zexp": ez, "wexp": ew, "row": i, "col": j, "term": str(c)} for i, j, ez, ew, c in viol
        ],
    }


def check_skewadjoint(L, pairing, epsilon, kind="hom"):
    """Entries where L^dagger(-z) and -epsilon L(z) differ.

    kind="hom": L in Hom(W, U), pairing[a][b] = <w_a|u_b>, adjoint
    G^{-1} L^T G^T.  kind="end": L in End V with the Gram matrix of V,
    adjoint G^{-1} L^T G, compared with -L(z) whatever the symmetry.
    """
    if kind == "end":
        epsilon = 1
    G = ratmat.mat(pairing)
    Gi = ratmat.inverse(G)
    GT = ratmat.transpose(G) if kind == "hom" else G
    m = L.rows
    # (G^{-1} L^T G^T)_{ij} = sum_{k,l} Gi[i][k] L[l][k] GT[l][j]
    out = []
    for i in range(m):
        for j in range(m):
            acc = TruncatedSeries()
            for k in range(m):
                if not Gi[i][k]:
                    continue
                for l in range(m):
                    c = Gi[i][k] * GT[l][j]
                    if c:
                        acc = acc + L.entries[l][k].negate_z() * c
            rhs = L.entries[i][j] * (-epsilon)
            for e in sorted(set(acc.coeffs) | set(rhs.coeffs), reverse=True):
                if L.floor is not None and e < L.floor:
                    continue
                diff = acc.coeffs.get(e, ZERO) - rhs.coeffs.get(e, ZERO)
                if diff:
                    out.append({"row": i, "col": j, "exp": e, "term": str(diff)})
    return out


def transform_checks():
    """Parameter changes under substitution, compression and inversion.

    Returns {name: identity report}; every report should be empty.
    """
    from .liealg import LieAlgebraFamily, build_graded_setup
    from .laxop import build_A
    from .series import CompressionMaps, invert, quasideterminant
    from .uea import UEA

    out = {}
    gl2 = build_graded_setup(LieAlgebraFamily("gl", 2), (1, 1))
    A = build_A(gl2, UEA(gl2))
    out["substitute gl2 A(2z+3)"] = check_identity(substitute_affine(A, 2, 3), YangianParams(HALF, 0, 3))
    inv = invert(A, -12)
    out["inverse gl2"] = check_identity(inv, YangianParams(-1, 0, 0))

    so3 = build_graded_setup(LieAlgebraFamily("so", 3), (1, 1, 1))
    A3 = build_A(so3, UEA(so3))
    p3 = params_for_A(so3.family)
    out["inverse so3"] = check_identity(
        invert(A3, -12),
        YangianParams(-p3.alpha, -p3.beta, p3.gamma - p3.beta * 3, p3.epsilon),
        so3.form,
    )

    so4 = build_graded_setup(LieAlgebraFamily("so", 4), (1, 1, 1, 1))
    A4 = build_A(so4, UEA(so4))
    psi_idx, pi_idx = (0, 1), (2, 3)
    maps = CompressionMaps.select(4, psi_idx, pi_idx)
    G = induced_pairing(maps.psi, maps.pi, so4.form)
    B = A4.select(list(pi_idx), list(psi_idx))
    out["compression so4"] = check_identity(B, params_for_A(so4.family), G, source="U")

    gl3 = build_graded_setup(LieAlgebraFamily("gl", 3), (1, 1, 1))
    A3g = build_A(gl3, UEA(gl3))
    qd = quasideterminant(A3g, CompressionMaps.select(3, (0, 1), (0, 1)), -12)
    out["quasideterminant gl3"] = check_identity(qd, YangianParams(1, 0, 0))
    return out


def substitute_affine(A, a, b):
    """A(az + b) for a polynomial (exact) series matrix A."""
    a, b = Q(a), Q(b)
    if A.floor is not None:
        raise ValueError("affine substitution needs an exact polynomial")

    def sub(s):
        out = {}
        for e, c in s.coeffs.items():
            if e % 2 or e < 0:
                raise ValueError("affine substitution needs a polynomial in z")
            n = e // 2
            # (a z + b)^n
            for k in range(n + 1):
                coef = Q(_binom(n, k)) * a ** k * b ** (n - k)
                if coef:
                    key = 2 * k
                    out[key] = out[key] + c * coef if key in out else c * coef
        return TruncatedSeries(out)

    return A.map_entries(sub)


def _binom(n, k):
    from math import comb
    return comb(n, k)
