import pytest

from wlax import ratmat
from wlax._scalar import Q, HALF
from wlax.errors import DegenerateForm, FormMissing, OrthogonalityViolation
from wlax.laxop import build_A
from wlax.liealg import LieAlgebraFamily, adjoint, build_algebra
from wlax.series import CompressionMaps
from wlax.uea import UEA
from wlax.yangian import (
    YangianParams,
    adjoint_hom,
    adler_residual,
    check_identity,
    check_skewadjoint,
    induced_pairing,
    omega,
    omega_dagger,
    omega_g,
    omega_g_expected,
    params_for_A,
    params_for_L,
    transform_checks,
    yangian_residual,
)

from conftest import lax_for, setup_for


def rand_mat(rng, n):
    return ratmat.mat([[Q(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)])


def test_omega_small():
    assert omega(1) == ((1,),)
    O = omega(2)
    e12 = ratmat.kron(((1,), (0,)), ((0,), (1,)))  # e1 (x) e2
    e21 = ratmat.kron(((0,), (1,)), ((1,), (0,)))
    assert ratmat.mul(O, e12) == e21


@pytest.mark.parametrize("m", [2, 3])
def test_omega_relations(m, rng):
    O = omega(m)
    assert ratmat.mul(O, O) == ratmat.identity(m * m)
    A, B = rand_mat(rng, m), rand_mat(rng, m)
    assert ratmat.mul(ratmat.mul(O, ratmat.kron(A, B)), O) == ratmat.kron(B, A)


@pytest.mark.parametrize("form,eps", [
    (((1, 0), (0, 1)), 1),
    (((0, 1), (-1, 0)), -1),
    (((0, 0, 1), (0, 1, 0), (1, 0, 0)), 1),
])
def test_omega_dagger_relations(form, eps, rng):
    m = len(form)
    O, Od = omega(m), omega_dagger(form)
    assert ratmat.mul(Od, Od) == ratmat.scale(m, Od)
    assert ratmat.mul(O, Od) == ratmat.scale(eps, Od) == ratmat.mul(Od, O)
    A = rand_mat(rng, m)
    I = ratmat.identity(m)
    lhs = ratmat.mul(ratmat.kron(A, I), Od)
    rhs = ratmat.mul(ratmat.kron(I, adjoint(A, ratmat.mat(form))), Od)
    assert lhs == rhs


def test_omega_dagger_degenerate():
    with pytest.raises(DegenerateForm):
        omega_dagger(((1, 1), (1, 1)))


@pytest.mark.parametrize("fam,n", [("gl", 3), ("sl", 3), ("so", 4), ("so", 5), ("sp", 4)])
def test_omega_g(fam, n):
    model = build_algebra(LieAlgebraFamily(fam, n))
    assert omega_g(model) == omega_g_expected(model)


def test_compression_adjoint_law(rng):
    s = setup_for("so", 4, (1, 1, 1, 1))
    maps = CompressionMaps.select(4, (0, 1), (2, 3))
    G = induced_pairing(maps.psi, maps.pi, s.form)
    A = rand_mat(rng, 4)
    lhs = adjoint_hom(ratmat.mul(ratmat.mul(maps.pi, A), maps.psi), G)
    rhs = ratmat.scale(1, ratmat.mul(ratmat.mul(maps.pi, adjoint(A, s.form)), maps.psi))
    assert lhs == ratmat.scale(s.epsilon, rhs)


def test_induced_pairing_orthogonality():
    s = setup_for("so", 4, (1, 1, 1, 1))
    bad = CompressionMaps.select(4, (0, 1), (1, 3))
    with pytest.raises(OrthogonalityViolation):
        induced_pairing(bad.psi, bad.pi, s.form)


def test_sp4_induced_form_is_symmetric():
    res = lax_for("sp", 4, (2, 2))
    s = res.setup
    G = induced_pairing(res.maps.psi, res.maps.pi, s.form)
    # identify W with U through the fixed coordinate order: phi = eps (-1)^(p-1) = +1
    assert ratmat.transpose(G) == G


def test_params():
    with pytest.raises(FormMissing):
        YangianParams(1, 1, 0)
    p = params_for_L(setup_for("so", 3, (3,)))
    assert (p.alpha, p.beta, p.gamma) == (HALF, HALF, Q(-1, 2))
    assert params_for_L(setup_for("sp", 4, (2, 2))).gamma == Q(-3, 2)
    assert params_for_A(LieAlgebraFamily("gl", 2)).to_json() == {
        "alpha": "1", "beta": "0", "gamma": "0", "epsilon": None,
    }


@pytest.mark.parametrize("fam,n", [("gl", 2), ("sl", 2), ("so", 3), ("sp", 2)])
def test_params_for_A_and_adler(fam, n):
    s = setup_for(fam, n, (1,) * n)
    A = build_A(s, UEA(s))
    p = params_for_A(s.family)
    rep = check_identity(A, p, s.form)
    assert rep["violations"] == [] and rep["floor"] is None
    assert adler_residual(A, p, s.form).nonzero() == []


def test_identity_detects_wrong_params():
    s = setup_for("so", 3, (1, 1, 1))
    A = build_A(s, UEA(s))
    assert check_identity(A, YangianParams(HALF, HALF, 0, 1), s.form)["violations"]
    assert adler_residual(A, YangianParams(HALF, HALF, HALF, -1), s.form).nonzero()
    with pytest.raises(FormMissing):
        yangian_residual(A, params_for_A(s.family), None)


@pytest.mark.parametrize("case", [("gl", 2, (2,)), ("so", 3, (3,)), ("sp", 4, (2, 2))])
def test_params_for_L_mod_J(case):
    res = lax_for(*case)
    s = res.setup
    G = None if s.epsilon is None else [[s.form[a][b] for b in res.maps.psi_idx] for a in res.maps.pi_idx]
    rep = check_identity(res.L_tilde, params_for_L(s), G, "W", "mod_J", d=s.d)
    assert rep["violations"] == []
    assert rep["floor"] == res.floor + 2 * max(2, s.d + 1)


def test_transformations():
    for name, rep in transform_checks().items():
        assert rep["violations"] == [], name


def test_skewadjoint_of_A():
    for fam, n in (("so", 3), ("sp", 2), ("so", 4)):
        s = setup_for(fam, n, (1,) * n)
        assert check_skewadjoint(build_A(s, UEA(s)), s.form, s.epsilon, kind="end") == []


def test_skewadjoint_of_so3_lax_operator():
    """The 1x1 Lax operator of so3 is not odd in z, so L^dagger(-z) = -L(z) fails.

    L(z) = (z - 1/2)((z - 1/4)^2 - c) with c central; the z^2 term is -1.
    """
    res = lax_for("so", 3, (3,))
    G = [[res.setup.form[a][b] for b in res.maps.psi_idx] for a in res.maps.pi_idx]
    bad = check_skewadjoint(res.L, G, 1)
    assert [b["exp"] for b in bad] == [4, 0]
    assert bad[0]["term"] == "-2"


def test_identity_fails_off_the_classical_families():
    """sl2 + gl2 acting on C^2 (x) C^2 gives a 2x2 L~ with no working alpha."""
    from wlax.laxop import lax
    from wlax.liealg import generic_setup

    E2, F2 = ratmat.unit(2, 2, 0, 1), ratmat.unit(2, 2, 1, 0)
    H2 = ratmat.diag([1, -1])
    I2 = ratmat.identity(2)
    E, F, H = (ratmat.kron(I2, m) for m in (E2, F2, H2))
    mult = [ratmat.kron(ratmat.unit(2, 2, i, j), I2) for i in range(2) for j in range(2)]
    labels = [("e",), ("h",), ("f",)] + [("m", i, j) for i in (1, 2) for j in (1, 2)]
    s = generic_setup([E, H, F] + mult, [2, 0, -2, 0, 0, 0, 0], labels=labels,
                      x=ratmat.scale(HALF, H), f=F, e=E)
    res = lax(s, None, UEA(s))
    assert res.r1 == 2
    for a in (1, HALF, 2, -1):
        rep = check_identity(res.L_tilde, YangianParams(a, 0, 0), None, "W", "mod_J", d=s.d)
        assert rep["violations"]
