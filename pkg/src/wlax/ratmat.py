"""Dense exact rational matrices as tuples of tuples."""
from ._scalar import Q, ZERO, ONE
from .errors import ShapeMismatch, DegenerateForm


def mat(rows):
    return tuple(tuple(Q(v) for v in r) for r in rows)


def zeros(m, n=None):
    n = m if n is None else n
    return tuple((ZERO,) * n for _ in range(m))


def identity(n):
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def unit(m, n, i, j, v=ONE):
    return tuple(tuple(Q(v) if (a, b) == (i, j) else ZERO for b in range(n)) for a in range(m))


def shape(A):
    return len(A), (len(A[0]) if A else 0)


def add(A, B):
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def sub(A, B):
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def scale(c, A):
    c = Q(c)
    return tuple(tuple(c * a for a in r) for r in A)


def mul(A, B):
    if shape(A)[1] != len(B):
        raise ShapeMismatch(f"cannot multiply {shape(A)} by {shape(B)}")
    n = shape(B)[1]
    out = []
    for ra in A:
        row = [ZERO] * n
        for k, a in enumerate(ra):
            if a:
                rb = B[k]
                for j in range(n):
                    if rb[j]:
                        row[j] += a * rb[j]
        out.append(tuple(row))
    return tuple(out)


def transpose(A):
    return tuple(zip(*A)) if A else ()


def trace(A):
    return sum((A[i][i] for i in range(len(A))), ZERO)


def trace_mul(A, B):
    """tr(AB) without forming the product."""
    s = ZERO
    for i, ra in enumerate(A):
        for k, a in enumerate(ra):
            if a:
                b = B[k][i]
                if b:
                    s += a * b
    return s


def kron(A, B):
    """Row-major Kronecker product: entry ((a,b),(c,d)) = A[a][c]*B[b][d]."""
    ma, na = shape(A)
    mb, nb = shape(B)
    return tuple(
        tuple(A[a][c] * B[b][d] for c in range(na) for d in range(nb))
        for a in range(ma) for b in range(mb)
    )


def is_zero(A):
    return all(not v for r in A for v in r)


def inverse(A):
    """Gauss-Jordan inverse; raises DegenerateForm when singular."""
    n = len(A)
    if shape(A) != (n, n):
        raise ShapeMismatch("inverse of a non-square matrix")
    M = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise DegenerateForm("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = ONE / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                c = M[r][col]
                M[r] = [a - c * b for a, b in zip(M[r], M[col])]
    return tuple(tuple(r[n:]) for r in M)


def det(A):
    n = len(A)
    M = [list(r) for r in A]
    d = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            d = -d
        d *= M[col][col]
        for r in range(col + 1, n):
            if M[r][col]:
                c = M[r][col] / M[col][col]
                M[r] = [a - c * b for a, b in zip(M[r], M[col])]
    return d


def diag(vals):
    n = len(vals)
    return tuple(tuple(Q(vals[i]) if i == j else ZERO for j in range(n)) for i in range(n))


def to_str_rows(A):
    from ._scalar import fmt_q
    return [[fmt_q(v) for v in r] for r in A]


def submatrix(A, rows, cols):
    return tuple(tuple(A[r][c] for c in cols) for r in rows)


def quasideterminant(A, psi_idx, pi_idx):
    """(Pi A^{-1} Psi)^{-1} for coordinate maps Psi (columns) and Pi (rows)."""
    return inverse(submatrix(inverse(A), pi_idx, psi_idx))


def schur_complement(A, psi_idx, pi_idx):
    """The same operator computed without inverting A, by a Schur complement."""
    n = len(A)
    Sc = [a for a in range(n) if a not in psi_idx]
    Tc = [a for a in range(n) if a not in pi_idx]
    K = inverse(submatrix(A, Sc, Tc)) if Sc else ()
    base = submatrix(A, psi_idx, pi_idx)
    if not Sc:
        return base
    corr = mul(mul(submatrix(A, psi_idx, Tc), K), submatrix(A, Sc, pi_idx))
    return sub(base, corr)
