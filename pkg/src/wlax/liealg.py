"""Classical Lie algebras in their standard representations.

Models carry the representation matrices U_i, the trace form, the dual basis
and (lazily) the structure constants.  Graded setups add an sl2-triple built
from a Jordan type and reorder the basis by ascending ad-x eigenvalue.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations

from ._scalar import Q, ZERO, ONE, HALF
from . import ratmat
from .errors import (
    ConstructionFailed,
    DegenerateForm,
    InvalidFamily,
    InvalidPartition,
)


class Family(str, enum.Enum):
    GL = "gl"
    SL = "sl"
    SO = "so"
    SP = "sp"


@dataclass(frozen=True)
class LieAlgebraFamily:
    family: Family
    n: int

    def __post_init__(self):
        try:
            fam = Family(self.family.lower() if isinstance(self.family, str) else self.family)
        except ValueError:
            raise InvalidFamily(f"unknown family {self.family!r}") from None
        object.__setattr__(self, "family", fam)
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidFamily(f"n must be a positive integer, got {self.n!r}")
        if fam is Family.SP and self.n % 2:
            raise InvalidFamily("sp requires even n")
        if fam is Family.SL and self.n < 2:
            raise InvalidFamily("sl requires n >= 2")
        if fam is Family.SO and self.n < 2:
            raise InvalidFamily("so requires n >= 2")

    @property
    def epsilon(self):
        return {Family.SO: 1, Family.SP: -1}.get(self.family)

    @property
    def dimension(self):
        n = self.n
        return {
            Family.GL: n * n,
            Family.SL: n * n - 1,
            Family.SO: n * (n - 1) // 2,
            Family.SP: n * (n + 1) // 2,
        }[self.family]


def _fmt_index(a):
    if isinstance(a, tuple):
        return "(" + ",".join(map(str, a)) + ")"
    return str(a)


def render_label(label):
    kind, *idx = label
    return f"{kind}[{','.join(_fmt_index(a) for a in idx)}]"


def _sparse(A):
    return {(i, j): v for i, r in enumerate(A) for j, v in enumerate(r) if v}


def _sp_mul(A, B):
    byrow = {}
    for (k, j), v in B.items():
        byrow.setdefault(k, []).append((j, v))
    out = {}
    for (i, k), a in A.items():
        for j, b in byrow.get(k, ()):
            out[(i, j)] = out.get((i, j), ZERO) + a * b
    return {key: v for key, v in out.items() if v}


def _sp_trace_mul(A, B):
    s = ZERO
    for (i, k), a in A.items():
        b = B.get((k, i))
        if b:
            s += a * b
    return s


class LieAlgebraModel:
    """A Lie algebra given by a faithful matrix representation.

    ``rep[i]`` is the N x N matrix of the i-th basis element, ``gram`` the
    trace form tr(U_i U_j) and ``dual[i]`` the coefficient row of u^i.
    Structure constants are computed on first use.
    """

    def __init__(self, labels, rep, family=None, form=None, epsilon=None):
        self.labels = tuple(labels)
        self.rep = tuple(ratmat.mat(m) for m in rep)
        if len(self.labels) != len(self.rep):
            raise ConstructionFailed("labels and matrices differ in length")
        self.family = family
        self.form = None if form is None else ratmat.mat(form)
        self.epsilon = epsilon
        self._sp = [_sparse(m) for m in self.rep]
        n = len(self.rep)
        self.gram = tuple(
            tuple(_sp_trace_mul(self._sp[i], self._sp[j]) for j in range(n)) for i in range(n)
        )
        try:
            self.gram_inv = ratmat.inverse(self.gram) if n else ()
        except DegenerateForm:
            raise DegenerateForm("trace form is degenerate on this basis") from None
        self.dual = self.gram_inv
        self._dual_sp = []
        for i in range(n):
            acc = {}
            for k, c in enumerate(self.dual[i]):
                if c:
                    for key, v in self._sp[k].items():
                        acc[key] = acc.get(key, ZERO) + c * v
            self._dual_sp.append({k: v for k, v in acc.items() if v})
        self._structure = None
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def dim(self):
        return len(self.labels)

    @property
    def N(self):
        return len(self.rep[0]) if self.rep else 0

    def index(self, label):
        if isinstance(label, str):
            for i, lab in enumerate(self.labels):
                if render_label(lab) == label:
                    return i
            raise KeyError(label)
        return self._index[label]

    def label_str(self, i):
        return render_label(self.labels[i])

    def dual_matrix(self, i):
        """The matrix U^i of the dual basis element."""
        N = self.N
        out = [[ZERO] * N for _ in range(N)]
        for (a, b), v in self._dual_sp[i].items():
            out[a][b] = v
        return tuple(map(tuple, out))

    def dual_element(self, i):
        """u^i as a sparse combination {basis index: coefficient}."""
        return {k: c for k, c in enumerate(self.dual[i]) if c}

    def form_value(self, a, b):
        """Trace form on two sparse combinations."""
        s = ZERO
        for i, ca in a.items():
            for j, cb in b.items():
                g = self.gram[i][j]
                if g:
                    s += ca * cb * g
        return s

    def _coords_sparse(self, X):
        coords = {}
        for k in range(self.dim):
            c = _sp_trace_mul(X, self._dual_sp[k])
            if c:
                coords[k] = c
        back = {}
        for k, c in coords.items():
            for key, v in self._sp[k].items():
                back[key] = back.get(key, ZERO) + c * v
        if {k: v for k, v in back.items() if v} != X:
            raise ConstructionFailed("matrix does not lie in the span of the basis")
        return coords

    def coords(self, X):
        """Coordinates of a matrix in the basis; raises if X is not in g."""
        return self._coords_sparse(_sparse(ratmat.mat(X)))

    def element_matrix(self, combo):
        N = self.N
        out = [[ZERO] * N for _ in range(N)]
        for k, c in combo.items():
            for (a, b), v in self._sp[k].items():
                out[a][b] += c * v
        return tuple(map(tuple, out))

    @property
    def structure(self):
        """Sparse map (i, j) -> ((k, c), ...) with [u_i, u_j] = sum c u_k."""
        if self._structure is None:
            st = {}
            for i, j in combinations(range(self.dim), 2):
                A, B = self._sp[i], self._sp[j]
                C = _sp_mul(A, B)
                for key, v in _sp_mul(B, A).items():
                    C[key] = C.get(key, ZERO) - v
                C = {k: v for k, v in C.items() if v}
                if not C:
                    continue
                co = self._coords_sparse(C)
                st[(i, j)] = tuple(sorted(co.items()))
                st[(j, i)] = tuple((k, -c) for k, c in st[(i, j)])
            self._structure = st
        return self._structure

    def bracket(self, i, j):
        return dict(self.structure.get((i, j), ()))

    def bracket_elements(self, a, b):
        out = {}
        for i, ca in a.items():
            for j, cb in b.items():
                for k, c in self.structure.get((i, j), ()):
                    out[k] = out.get(k, ZERO) + ca * cb * c
        return {k: v for k, v in out.items() if v}

    def adjoint_matrix(self, A):
        """A^dagger with respect to form_on_V: <Au|v> = <u|A^dagger v>."""
        if self.form is None:
            raise ConstructionFailed("no bilinear form on V")
        return adjoint(A, self.form)

    def rescaled(self, scales):
        """Same algebra with u_i replaced by scales[i] * u_i."""
        return LieAlgebraModel(
            self.labels,
            [ratmat.scale(s, m) for s, m in zip(scales, self.rep)],
            self.family,
            self.form,
            self.epsilon,
        )

    def __repr__(self):
        fam = self.family
        name = f"{fam.family.value}{fam.n}" if fam else "generic"
        return f"LieAlgebraModel({name}, dim={self.dim})"


def adjoint(A, G):
    """Adjoint for <u|v> = u^T G v: A^dagger = G^{-1} A^T G."""
    return ratmat.mul(ratmat.mul(ratmat.inverse(G), ratmat.transpose(A)), G)


def _gl_basis(N):
    labels, mats = [], []
    for a in range(N):
        for b in range(N):
            labels.append(("e", a + 1, b + 1))
            mats.append(ratmat.unit(N, N, a, b))
    return labels, mats


def _sl_basis(N):
    labels, mats = [], []
    for a in range(N):
        for b in range(N):
            if a != b:
                labels.append(("e", a + 1, b + 1))
                mats.append(ratmat.unit(N, N, a, b))
    for a in range(N - 1):
        labels.append(("h", a + 1))
        mats.append(ratmat.sub(ratmat.unit(N, N, a, a), ratmat.unit(N, N, a + 1, a + 1)))
    return labels, mats


def _orthosymplectic_basis(form, star, vlabels, normalize):
    """Basis E_ab - E_ab^dagger over orbit representatives (a,b) <= (b*,a*).

    With ``normalize`` the singleton orbits b = a* are divided by 2, which is
    the normalization used for the graded so/sp realizations.
    """
    N = len(form)
    labels, mats = [], []
    for a in range(N):
        for b in range(N):
            if (a, b) > (star[b], star[a]):
                continue
            E = ratmat.unit(N, N, a, b)
            F = ratmat.sub(E, adjoint(E, form))
            if ratmat.is_zero(F):
                continue
            if normalize and b == star[a]:
                F = ratmat.scale(HALF, F)
            labels.append(("F", vlabels[a], vlabels[b]))
            mats.append(F)
    return labels, mats


def _antidiagonal_form(N, signs):
    """<v_a|v_{a*}> = -signs[a] with a* = N-1-a (0-based)."""
    return tuple(
        tuple(Q(-signs[a]) if b == N - 1 - a else ZERO for b in range(N)) for a in range(N)
    )


def build_algebra(family):
    """Standard-representation model of gl_n, sl_n, so_n or sp_n.

    so/sp use the anti-diagonal realization with F_ij = E_ij - E_{j*i*} (so)
    and F_ij = E_ij - (-1)^{i+j} E_{j*i*} (sp), j* = n+1-j.
    """
    if not isinstance(family, LieAlgebraFamily):
        family = LieAlgebraFamily(*family)
    N = family.n
    fam = family.family
    if fam is Family.GL:
        labels, mats = _gl_basis(N)
        return LieAlgebraModel(labels, mats, family)
    if fam is Family.SL:
        labels, mats = _sl_basis(N)
        return LieAlgebraModel(labels, mats, family)
    signs = [1] * N if fam is Family.SO else [(-1) ** (a + 1) for a in range(N)]
    form = _antidiagonal_form(N, signs)
    star = [N - 1 - a for a in range(N)]
    labels, mats = _orthosymplectic_basis(form, star, list(range(1, N + 1)), normalize=False)
    model = LieAlgebraModel(labels, mats, family, form, family.epsilon)
    _validate_skew(model)
    return model


def _validate_skew(model):
    for i, m in enumerate(model.rep):
        if not ratmat.is_zero(ratmat.add(m, adjoint(m, model.form))):
            raise ConstructionFailed(f"{model.label_str(i)} is not skew-adjoint")


def parse_partition(text):
    if isinstance(text, str):
        try:
            parts = tuple(int(t) for t in text.replace(" ", "").split(",") if t)
        except ValueError:
            raise InvalidPartition(f"cannot parse partition {text!r}") from None
    else:
        parts = tuple(int(t) for t in text)
    if not parts or any(p < 1 for p in parts):
        raise InvalidPartition(f"partition parts must be positive: {text!r}")
    return tuple(sorted(parts, reverse=True))


def partitions(n, maxpart=None):
    """All partitions of n as nonincreasing tuples."""
    maxpart = n if maxpart is None else maxpart
    if n == 0:
        yield ()
        return
    for p in range(min(n, maxpart), 0, -1):
        for rest in partitions(n - p, p):
            yield (p,) + rest


def partition_valid(family, parts):
    """so: even parts have even multiplicity; sp: odd parts do."""
    fam = Family(family)
    if fam in (Family.GL, Family.SL):
        return True
    bad_parity = 0 if fam is Family.SO else 1
    return all(parts.count(p) % 2 == 0 for p in set(parts) if p % 2 == bad_parity)


def valid_partitions(family, n):
    return [p for p in partitions(n) if partition_valid(family, p)]


@dataclass(frozen=True, eq=False)
class GradedSetup:
    """An sl2-triple (f, 2x, e) inside a model, with the induced gradings.

    ``delta`` and ``v_weights`` are doubled; ``d2`` is twice the top
    X-weight of V, i.e. the integer d.  Basis indices are sorted by
    ascending delta with ties broken by label.
    """

    algebra: LieAlgebraModel
    partition: tuple | None
    f_elem: dict
    x_elem: dict
    e_elem: dict
    delta: tuple
    v_weights: tuple
    d2: int
    F: tuple
    X: tuple
    v_labels: tuple = ()

    @property
    def d(self):
        return self.d2

    @property
    def N(self):
        return self.algebra.N

    @property
    def family(self):
        return self.algebra.family

    @property
    def epsilon(self):
        return self.algebra.epsilon

    @property
    def form(self):
        return self.algebra.form

    def v_indices(self, w2):
        """Positions of the V basis vectors of doubled weight w2."""
        return tuple(a for a, w in enumerate(self.v_weights) if w == w2)

    @property
    def top(self):
        return self.v_indices(self.d2)

    @property
    def bottom(self):
        return self.v_indices(-self.d2)

    @property
    def r1(self):
        return len(self.top)

    def f_pair(self, i):
        """(f | u_i)."""
        return self.algebra.form_value(self.f_elem, {i: ONE})

    def __repr__(self):
        return f"GradedSetup({self.algebra!r}, partition={self.partition}, d={self.d2})"


def _block_layout(parts):
    vlabels, weights = [], []
    for b, p in enumerate(parts, start=1):
        for h in range(1, p + 1):
            vlabels.append((b, h))
            weights.append(p + 1 - 2 * h)
    return vlabels, weights


def _jordan_matrices(parts):
    N = sum(parts)
    F = [[ZERO] * N for _ in range(N)]
    X = [[ZERO] * N for _ in range(N)]
    E = [[ZERO] * N for _ in range(N)]
    off = 0
    for p in parts:
        for h in range(1, p + 1):
            a = off + h - 1
            X[a][a] = Q(p + 1 - 2 * h, 2)
            if h < p:
                F[a + 1][a] = ONE
                E[a][a + 1] = Q(h * (p - h))
        off += p
    return tuple(map(tuple, F)), tuple(map(tuple, X)), tuple(map(tuple, E))


def _block_signs(family, parts):
    """epsilon_(b,h) = s_b (-1)^h with partner blocks of equal size.

    Block t of a given size is paired with block r_p + 1 - t; a self-paired
    middle block is allowed exactly when the parity rule permits it.
    Returns (signs per V position, star involution on V positions).
    """
    eps = 1 if family is Family.SO else -1
    N = sum(parts)
    offsets, off = [], 0
    for p in parts:
        offsets.append(off)
        off += p
    by_size = {}
    for b, p in enumerate(parts):
        by_size.setdefault(p, []).append(b)
    s = [0] * len(parts)
    partner = [0] * len(parts)
    for p, blocks in by_size.items():
        r = len(blocks)
        for t in range(r):
            b, bp = blocks[t], blocks[r - 1 - t]
            partner[b] = bp
            if t < r - 1 - t:
                s[b] = (-1) ** (t * p)
                s[bp] = eps * (-1) ** (p + 1) * s[b]
            elif t == r - 1 - t:
                if (-1) ** (p + 1) != eps:
                    raise ConstructionFailed(f"block of size {p} cannot be self-paired")
                s[b] = 1
    signs, star = [0] * N, [0] * N
    for b, p in enumerate(parts):
        for h in range(1, p + 1):
            a = offsets[b] + h - 1
            signs[a] = s[b] * (-1) ** h
            star[a] = offsets[partner[b]] + p - h
    return signs, star


def _sorted_setup(labels, mats, weights, family, form, eps, parts, vlabels):
    N = len(weights)
    F, X, E = _jordan_matrices(parts)

    def delta_of(m):
        for a in range(N):
            for b in range(N):
                if m[a][b]:
                    return weights[a] - weights[b]
        return 0

    deltas = [delta_of(m) for m in mats]
    order = sorted(range(len(mats)), key=lambda i: (deltas[i], labels[i]))
    model = LieAlgebraModel([labels[i] for i in order], [mats[i] for i in order], family, form, eps)
    delta = tuple(deltas[i] for i in order)
    try:
        f_elem, x_elem, e_elem = (model.coords(M) for M in (F, X, E))
    except ConstructionFailed:
        raise ConstructionFailed("sl2-triple does not lie in the algebra") from None
    setup = GradedSetup(
        algebra=model,
        partition=parts,
        f_elem=f_elem,
        x_elem=x_elem,
        e_elem=e_elem,
        delta=delta,
        v_weights=tuple(weights),
        d2=max(weights) if weights else 0,
        F=F,
        X=X,
        v_labels=tuple(vlabels),
    )
    _check_triple(setup, E)
    return setup


def _check_triple(setup, E):
    F, X = setup.F, setup.X
    def br(A, B):
        return ratmat.sub(ratmat.mul(A, B), ratmat.mul(B, A))
    if br(X, E) != E or br(X, F) != ratmat.scale(-1, F) or br(E, F) != ratmat.scale(2, X):
        raise ConstructionFailed("sl2 relations fail")
    for i, m in enumerate(setup.algebra.rep):
        if br(X, m) != ratmat.scale(Q(setup.delta[i], 2), m):
            raise ConstructionFailed(f"basis element {i} is not an ad x eigenvector")


def build_graded_setup(algebra, partition):
    """Graded setup for the nilpotent of Jordan type ``partition``.

    ``algebra`` is either a family model or a LieAlgebraFamily.  The V basis
    is block adapted, ordered by blocks of descending size then position h,
    so the returned setup carries its own re-realized model; for gl/sl this
    coincides with the standard elementary basis.
    """
    family = algebra.family if isinstance(algebra, LieAlgebraModel) else algebra
    if not isinstance(family, LieAlgebraFamily):
        family = LieAlgebraFamily(*family)
    parts = parse_partition(partition)
    N = family.n
    if sum(parts) != N:
        raise InvalidPartition(f"partition {parts} does not sum to {N}")
    fam = family.family
    if not partition_valid(fam, parts):
        raise InvalidPartition(f"partition {parts} violates the {fam.value} parity rule")
    vlabels, weights = _block_layout(parts)
    if fam in (Family.GL, Family.SL):
        labels, mats = _gl_basis(N) if fam is Family.GL else _sl_basis(N)
        return _sorted_setup(labels, mats, weights, family, None, None, parts, vlabels)
    signs, star = _block_signs(fam, parts)
    form = tuple(
        tuple(Q(-signs[a]) if b == star[a] else ZERO for b in range(N)) for a in range(N)
    )
    eps = family.epsilon
    if ratmat.transpose(form) != ratmat.scale(eps, form):
        raise ConstructionFailed("assembled form has the wrong symmetry")
    labels, mats = _orthosymplectic_basis(form, star, vlabels, normalize=True)
    setup = _sorted_setup(labels, mats, weights, family, form, eps, parts, vlabels)
    _validate_skew(setup.algebra)
    for M in (setup.F, setup.X):
        if not ratmat.is_zero(ratmat.add(M, adjoint(M, form))):
            raise ConstructionFailed("sl2-triple is not skew-adjoint")
    if len(setup.algebra.labels) != family.dimension:
        raise ConstructionFailed("wrong dimension")
    return setup


def generic_setup(matrices, delta2, labels=None, x=None, f=None, e=None, form=None, epsilon=None):
    """Graded setup from user-supplied representation matrices.

    ``delta2`` gives the doubled grading of each basis element.  ``x`` and
    ``f`` are optional matrices; without ``x`` the V weights are unknown and
    recorded as zeros.
    """
    n = len(matrices)
    labels = list(labels) if labels is not None else [("u", i + 1) for i in range(n)]
    order = sorted(range(n), key=lambda i: (delta2[i], labels[i]))
    model = LieAlgebraModel([labels[i] for i in order], [matrices[i] for i in order], None, form, epsilon)
    delta = tuple(int(delta2[i]) for i in order)
    N = model.N
    X = ratmat.mat(x) if x is not None else ratmat.zeros(N)
    F = ratmat.mat(f) if f is not None else ratmat.zeros(N)
    weights = tuple(int(2 * X[a][a]) for a in range(N))
    setup = GradedSetup(
        algebra=model,
        partition=None,
        f_elem=model.coords(F),
        x_elem=model.coords(X) if x is not None else {},
        e_elem=model.coords(e) if e is not None else {},
        delta=delta,
        v_weights=weights,
        d2=max(weights) if weights else 0,
        F=F,
        X=X,
    )
    if x is not None:
        for i, m in enumerate(model.rep):
            br = ratmat.sub(ratmat.mul(X, m), ratmat.mul(m, X))
            if br != ratmat.scale(Q(delta[i], 2), m):
                raise ConstructionFailed(f"basis element {i} is not an ad x eigenvector")
    return setup


def sl2_irreducible(N):
    """The N-dimensional irreducible sl2 module with principal grading."""
    E = [[ZERO] * N for _ in range(N)]
    F = [[ZERO] * N for _ in range(N)]
    X = [[ZERO] * N for _ in range(N)]
    for h in range(1, N + 1):
        X[h - 1][h - 1] = Q(N + 1 - 2 * h, 2)
        if h < N:
            F[h][h - 1] = ONE
            E[h - 1][h] = Q(h * (N - h))
    H = ratmat.scale(2, X)
    return generic_setup(
        [E, H, F], [2, 0, -2], labels=[("e",), ("h",), ("f",)], x=X, f=F, e=E
    )


def sl2_adjoint():
    """Adjoint representation of sl2 on the ordered basis (e, h, f)."""
    E = ratmat.mat([[0, -2, 0], [0, 0, 1], [0, 0, 0]])
    H = ratmat.mat([[2, 0, 0], [0, 0, 0], [0, 0, -2]])
    F = ratmat.mat([[0, 0, 0], [-1, 0, 0], [0, 2, 0]])
    X = ratmat.scale(HALF, H)
    return generic_setup(
        [E, H, F], [2, 0, -2], labels=[("e",), ("h",), ("f",)], x=X, f=F, e=E
    )
