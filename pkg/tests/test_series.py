import pytest

from wlax import ratmat
from wlax._scalar import Q
from wlax.errors import NonScalarLeading, SingularLeading, PivotNotInvertible
from wlax.series import (
    CompressionMaps,
    SeriesMatrix,
    TruncatedSeries,
    compressed_inverse,
    dirac_for_quasidet,
    invert,
    leading,
    quasideterminant,
    series_to_json,
)
from wlax.uea import UEA

from conftest import setup_for


def s(d, floor=None):
    return TruncatedSeries({k: Q(v) for k, v in d.items()}, floor)


def test_truncation_drops_terms():
    x = s({2: 1, 0: 3, -4: 5, -6: 1}, -4)
    assert x.coeffs == {2: 1, 0: 3, -4: 5}
    with pytest.raises(ValueError):
        x.coeff(-6)


def test_product_floor_rule():
    a = s({2: 1, 0: 1}, -4)  # known down to z^-2
    b = s({0: 2}, -2)  # known down to z^-1
    p = a * b
    # max(-4 + 0, -2 + 2) = 0
    assert p.floor == 0 and p.coeffs == {2: 2, 0: 2}
    assert (s({2: 1}) * s({-2: 1})).coeffs == {0: 1}


def test_exact_zero_floor():
    z = TruncatedSeries({}, -6)
    assert (z * s({4: 1})).floor == -2
    assert z.top_bound() == -7


def test_shift_and_negate():
    x = s({2: 1, 0: 3})
    assert x.shift(2).coeffs == {4: 1, 2: 3}
    assert x.negate_z().coeffs == {2: -1, 0: 3}


def test_geometric_inverse():
    # (z - 1)^{-1} = sum_{k>=1} z^{-k}
    M = SeriesMatrix([[s({2: 1, 0: -1})]])
    inv = invert(M, -10)
    assert inv.floor == -10
    assert inv[0, 0].coeffs == {e: 1 for e in range(-2, -11, -2)}
    prod = (M @ inv).truncate(-8)
    assert prod[0, 0].coeffs == {0: 1}


def test_exact_nilpotent_inverse():
    # z + N with N nilpotent has a finite inverse
    M = SeriesMatrix([[s({2: 1}), s({0: 1})], [s({}), s({2: 1})]])
    inv = invert(M)
    assert inv.floor is None
    assert (M @ inv) == SeriesMatrix.identity(2)


def test_infinite_exact_inverse_needs_floor():
    with pytest.raises(ValueError):
        invert(SeriesMatrix([[s({2: 1, 0: 1})]]))


def test_leading_errors():
    alg = UEA(setup_for("gl", 2, (2,)))
    M = SeriesMatrix([[TruncatedSeries({2: alg.gen(0)})]])
    with pytest.raises(NonScalarLeading):
        leading(M)
    with pytest.raises(SingularLeading):
        invert(SeriesMatrix([[s({2: 1}), s({2: 1})], [s({2: 1}), s({2: 1})]]), -6)
    with pytest.raises(SingularLeading):
        leading(SeriesMatrix.zeros(2, 2))


def test_quasideterminant_matches_dirac_random(rng):
    for _ in range(15):
        n = rng.randint(2, 4)
        k = rng.randint(1, n - 1)
        A = [[Q(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        M = SeriesMatrix.identity(n, 2) + SeriesMatrix.from_scalar(A)
        S = sorted(rng.sample(range(n), k))
        maps = CompressionMaps.select(n, S, S)
        q = quasideterminant(M, maps, -8)
        d = dirac_for_quasidet(M, maps, -8)
        assert q.agrees_with(d, -8)


def test_dirac_scalar_matches_inverse(rng):
    A = ratmat.mat([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    maps = CompressionMaps.select(3, (0,), (2,))
    d = dirac_for_quasidet(SeriesMatrix.from_scalar(A), maps)
    assert [list(r) for r in ratmat.quasideterminant(A, (0,), (2,))] == d.coeff_matrix(0)
    assert ratmat.schur_complement(A, (0,), (2,)) == ratmat.quasideterminant(A, (0,), (2,))


def test_dirac_singular_pivot():
    A = ratmat.mat([[1, 1], [1, 0]])
    # pivot block A[1][0] ... choose maps whose pivot block is the zero entry
    maps = CompressionMaps.select(2, (0,), (0,))
    with pytest.raises(PivotNotInvertible):
        dirac_for_quasidet(SeriesMatrix.from_scalar(A), maps)


def test_compression_maps_validation():
    with pytest.raises(ValueError):
        CompressionMaps(((1, 1),), ((1, 0),))
    m = CompressionMaps.select(4, (0, 2), (3,))
    assert m.psi_idx == (0, 2) and m.pi_idx == (3,)


def test_compressed_inverse_block():
    M = SeriesMatrix.identity(3, 2) + SeriesMatrix.from_scalar([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    maps = CompressionMaps.select(3, (0,), (2,))
    P = compressed_inverse(M, maps.pi, maps.psi)
    # (z + N)^{-1} entry (3,1) of a nilpotent Jordan block is zero
    assert P.is_zero()
    P2 = compressed_inverse(M, CompressionMaps.select(3, (2,), (0,)).pi, CompressionMaps.select(3, (2,), (0,)).psi)
    assert P2[0, 0].coeffs == {-6: 1}


def test_json():
    js = series_to_json(s({2: 1, 0: Q(-1, 2)}, -4))
    assert js == {"floor": -4, "terms": [{"exp": 2, "value": "1"}, {"exp": 0, "value": "-1/2"}]}
