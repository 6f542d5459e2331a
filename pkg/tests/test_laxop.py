import pytest

from wlax import ratmat
from wlax._scalar import Q
from wlax.errors import UnsupportedFamily
from wlax.laxop import (
    build_A,
    build_U,
    check_Arho,
    check_dirac,
    check_lemma_X,
    check_membership,
    epsilon_leading_check,
    grading_count_identity,
    kazhdan_profile,
    leading_term_check,
    main_lemma_check,
    shift_matrix,
    shift_matrix_closed_form,
    sl2_irreducible_closed_form,
)
from wlax.liealg import generic_setup, sl2_adjoint, sl2_irreducible
from wlax.series import TruncatedSeries

from conftest import lax_for, setup_for

SMALL = [("gl", 2, (2,)), ("gl", 3, (2, 1)), ("sl", 3, (3,)), ("so", 3, (3,)), ("so", 4, (2, 2)), ("sp", 4, (2, 2))]


def test_gl2_principal_exact():
    res = lax_for("gl", 2, (2,))
    alg = res.uea
    e11, e22, e21 = (alg.gen(x) for x in ("e[1,1]", "e[2,2]", "e[2,1]"))
    L = res.L_tilde[0, 0]
    assert res.floor == -8
    assert L.coeffs[4] == -1
    assert L.coeffs[2] == 1 - e11 - e22
    assert L.coeffs[0] == e21 + e11 - e11 * e22
    assert set(L.coeffs) == {4, 2, 0}
    assert shift_matrix(res.setup) == ratmat.diag([0, -1])


def test_shift_closed_forms_examples():
    assert shift_matrix(setup_for("so", 3, (3,))) == ratmat.diag([0, Q(-1, 2), Q(-1, 2)])
    for N in (2, 3, 4):
        assert shift_matrix(sl2_irreducible(N)) == sl2_irreducible_closed_form(N)
    assert shift_matrix(sl2_adjoint()) == ratmat.diag([0, Q(-1, 2), Q(-1, 2)])
    with pytest.raises(UnsupportedFamily):
        shift_matrix_closed_form(sl2_adjoint())


@pytest.mark.parametrize("case", SMALL)
def test_structural_checks(case):
    res = lax_for(*case)
    assert check_membership(res) == []
    assert leading_term_check(res) == []
    assert kazhdan_profile(res) == []
    assert check_dirac(res) == []
    assert check_Arho(res.setup, res.uea) == []


@pytest.mark.parametrize("case", [("gl", 2, (2,)), ("so", 3, (3,)), ("sp", 4, (2, 2))])
def test_main_lemma_small(case):
    res = lax_for(*case)
    rep = main_lemma_check(res.setup, res.floor, res.uea, res)
    assert rep == {"lemma_X": [], "epsilon": [], "mismatches": []}


def test_lemma_X_and_epsilon_gl3():
    s = setup_for("gl", 3, (3,))
    assert check_lemma_X(s) == []
    assert epsilon_leading_check(s) == []


def test_membership_detects_perturbation():
    res = lax_for("gl", 2, (2,))
    alg = res.uea
    bad = res.L_tilde.map_entries(lambda s: s + TruncatedSeries({0: alg.gen("e[2,2]")}))
    from dataclasses import replace

    broken = replace(res, L_tilde=bad)
    assert check_membership(broken)


def test_main_lemma_detects_perturbation():
    res = lax_for("gl", 2, (2,))
    from dataclasses import replace

    alg = res.uea
    wrong = res.L.map_entries(lambda s: s + TruncatedSeries({-2: alg.scalar(1)}))
    rep = main_lemma_check(res.setup, res.floor, res.uea, replace(res, L=wrong))
    assert rep["mismatches"]


def test_precision_monotonicity():
    coarse = lax_for("gl", 3, (2, 1))
    deep = lax_for("gl", 3, (2, 1), -10)
    assert deep.floor < coarse.floor
    assert coarse.L_tilde.differences(deep.L_tilde, coarse.floor) == []


def test_gl_identity_partition_is_z_plus_U():
    res = lax_for("gl", 3, (1, 1, 1))
    U = build_U(res.setup, res.uea)
    for a in range(3):
        for b in range(3):
            s = res.L[a, b]
            assert s.coeffs.get(0, res.uea.zero) == U[a, b].coeffs.get(0, res.uea.zero)
            assert s.coeffs.get(2, 0) == (1 if a == b else 0)
            assert all(e >= 0 for e in s.coeffs)


@pytest.mark.parametrize("case", [("gl", 3, (2, 1)), ("so", 5, (3, 1, 1)), ("sp", 4, (2, 2))])
def test_basis_independence(case, rng):
    """U and D do not depend on the basis chosen inside each graded piece."""
    s = setup_for(*case)
    alg = s.algebra
    mats = [list(m) for m in alg.rep]
    # random invertible recombination inside each delta-eigenspace
    new = []
    for i, m in enumerate(mats):
        same = [j for j in range(alg.dim) if s.delta[j] == s.delta[i] and j != i]
        M = ratmat.scale(Q(rng.randint(1, 4), rng.randint(1, 3)), alg.rep[i])
        if same:
            j = rng.choice(same)
            if j > i:
                M = ratmat.add(M, ratmat.scale(Q(rng.randint(-2, 2)), alg.rep[j]))
        new.append(M)
    g = generic_setup(new, list(s.delta), labels=list(alg.labels), x=s.X, f=s.F, form=s.form, epsilon=s.epsilon)
    assert shift_matrix(g) == shift_matrix(s)
    from wlax.yangian import omega_g

    assert omega_g(g.algebra) == omega_g(alg)


def test_counting_identity():
    for part in ((3,), (2, 1), (1, 1, 1)):
        lhs, rhs = grading_count_identity(setup_for("gl", 3, part))
        assert lhs == rhs
    s = setup_for("gl", 3, (2, 1))
    assert -sum(shift_matrix(s)[a][a] for a in range(3)) == grading_count_identity(s)[0]


def test_build_A_is_z_plus_U():
    s = setup_for("sl", 2, (2,))
    A = build_A(s)
    assert A[0, 0].coeffs[2] == 1 and A[0, 1].top() == 0


def test_non_rectangular_tail_is_infinite():
    """gl3 (2,1): the 1x1 operator keeps nonzero coefficients down to the floor."""
    res = lax_for("gl", 3, (2, 1), -10)
    s = res.L[0, 0]
    assert all(s.coeffs.get(e) for e in range(-10, 5, 2))
    principal = lax_for("gl", 3, (3,))
    assert all(e >= 0 for e in principal.L[0, 0].coeffs)
