from fractions import Fraction

import pytest

from tentlab.piecewise import PiecewiseLinearMap, constant_plm


def plm(*pts):
    return PiecewiseLinearMap(tuple((Fraction(a), Fraction(b)) for a, b in pts))


def test_validation():
    with pytest.raises(ValueError):
        plm((0, 0))
    with pytest.raises(ValueError):
        plm((0, 0), (Fraction(1, 2), 1))  # must end at x=1
    with pytest.raises(ValueError):
        plm((0, 0), (0, 1), (1, 0))  # strictly increasing x
    with pytest.raises(ValueError):
        plm((0, 0), (1, 2))  # ordinate out of range


def test_exact_interpolation():
    m = plm((0, 0), (Fraction(1, 3), 1), (1, 0))
    assert m(Fraction(1, 6)) == Fraction(1, 2)
    assert m(Fraction(1, 3)) == 1
    assert m(Fraction(2, 3)) == Fraction(1, 2)
    assert m(Fraction(1)) == 0


def test_canonical_merges_collinear():
    redundant = plm((0, 0), (Fraction(1, 4), Fraction(1, 4)), (Fraction(1, 2), Fraction(1, 2)), (1, 1))
    assert redundant.canonical().breakpoints == plm((0, 0), (1, 1)).breakpoints
    for x in (Fraction(1, 8), Fraction(5, 7)):
        assert redundant(x) == redundant.canonical()(x)


def test_slopes():
    m = plm((0, 0), (Fraction(1, 2), 1), (1, 0))
    assert m.slopes() == (2, -2)


def test_round_trip_json():
    m = constant_plm(Fraction(2, 3))
    doc = m.to_json_dict()
    assert doc == {"breakpoints": [["0/1", "2/3"], ["1/1", "2/3"]]}
    assert PiecewiseLinearMap.from_json_dict(doc) == m
