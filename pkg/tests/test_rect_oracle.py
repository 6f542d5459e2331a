import pytest

from wlax import ratmat
from wlax.errors import InvalidRectangle
from wlax.rect_oracle import SignCase, build_rect, cross_check, explicit_L, f_matrix
from wlax.uea import UEA

from conftest import setup_for


def test_rejections():
    with pytest.raises(InvalidRectangle):
        build_rect("so", 3, 2)
    with pytest.raises(InvalidRectangle):
        build_rect("gl", 2, 2)
    with pytest.raises(InvalidRectangle):
        build_rect("sp", 1, 3)


@pytest.mark.parametrize("fam,r,p,case,d", [
    ("sp", 2, 2, SignCase.CASE1, 1),
    ("so", 2, 3, SignCase.CASE2, 2),
    ("so", 1, 3, SignCase.CASE1, 2),
    ("so", 2, 2, SignCase.CASE2, 1),
])
def test_build(fam, r, p, case, d):
    rect, setup = build_rect(fam, r, p)
    assert rect.case is case and setup.d == d and setup.N == r * p
    form = setup.form
    assert ratmat.transpose(form) == ratmat.scale(rect.epsilon, form)


def test_case1_matches_graded_constructor():
    rect, setup = build_rect("sp", 2, 2)
    ref = setup_for("sp", 4, (2, 2))
    assert setup.F == ref.F and setup.X == ref.X and setup.form == ref.form
    assert setup.algebra.labels == ref.algebra.labels


def test_f_elements_are_skew():
    rect, setup = build_rect("so", 2, 3)
    from wlax.liealg import adjoint

    for a in [(1, 1), (2, 3), (1, 2)]:
        for b in [(2, 1), (1, 3)]:
            M = f_matrix(rect, a, b)
            assert ratmat.add(M, adjoint(M, setup.form)) == ratmat.zeros(6)


@pytest.mark.parametrize("fam,r,p", [("sp", 2, 2), ("so", 1, 3), ("sp", 1, 4), ("so", 2, 2)])
def test_explicit_L_shape(fam, r, p):
    rect, setup = build_rect(fam, r, p)
    uea = UEA(setup)
    L = explicit_L(rect, uea)
    assert L.floor is None and L.shape == (r, r)
    lead = (-1) ** (p + 1)
    for i in range(r):
        for j in range(r):
            s = L[i, j]
            assert min(s.coeffs) >= 0 and max(s.coeffs) <= 2 * p
            assert s.coeffs.get(2 * p, uea.zero) == (lead if i == j else 0)
            for c in s.coeffs.values():
                for mono in c.terms:
                    assert all(setup.delta[g] <= 0 for g in mono)
    # r^2 p coefficient slots below the leading power
    slots = sum(1 for i in range(r) for j in range(r) for k in range(p))
    assert slots == r * r * p


@pytest.mark.parametrize("fam,r,p", [("sp", 2, 2), ("so", 1, 3), ("so", 2, 2), ("sp", 1, 2)])
def test_cross_check(fam, r, p):
    rect, _ = build_rect(fam, r, p)
    rep = cross_check(rect)
    assert all(x["status"] == "ok" for x in rep), rep


def test_cross_check_sees_wrong_shift(monkeypatch):
    rect, _ = build_rect("so", 1, 3)
    from wlax import rect_oracle

    monkeypatch.setattr(rect_oracle.RectSetup, "shift", lambda self, h: 0)
    rep = cross_check(rect)
    assert rep[0]["status"] == "mismatch"
