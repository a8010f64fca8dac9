"""Unit tests for chain complexes, Betti numbers, and reduction checking."""

import pytest

from morsereduce.complexes import (
    BoundaryViolation,
    FGChainComplex,
    ReductionTriple,
    TruncatedComplex,
    betti,
    from_truncated,
    verify_reduction,
)
from morsereduce.gf2 import Gf2Matrix

import oracle


def test_truncated_complex_validates_composition():
    with pytest.raises(BoundaryViolation):
        TruncatedComplex(Gf2Matrix.from_rows([[1]]), Gf2Matrix.from_rows([[1]]))
    with pytest.raises(ValueError):
        TruncatedComplex(Gf2Matrix.zeros(2, 3), Gf2Matrix.zeros(4, 1))
    t = TruncatedComplex(Gf2Matrix.zeros(2, 3), Gf2Matrix.zeros(3, 1))
    assert t.dims() == (2, 3, 1)


def test_fg_complex_accessors_and_validation():
    d1 = Gf2Matrix.from_rows([[1, 1], [1, 1]])
    c = FGChainComplex(0, 2, {0: 2, 1: 2, 2: 0}, {1: d1})
    assert c.dim(0) == 2 and c.dim(2) == 0 and c.dim(7) == 0
    assert c.d(1) == d1
    assert c.d(2) == Gf2Matrix.zeros(2, 0)
    assert c.d(0) == Gf2Matrix.zeros(0, 2)
    assert list(c.degrees()) == [0, 1, 2]
    with pytest.raises(ValueError):
        FGChainComplex(2, 0, {})
    with pytest.raises(ValueError):
        FGChainComplex(0, 1, {0: 1, 1: 1, 5: 2})
    with pytest.raises(ValueError):
        FGChainComplex(0, 1, {0: 2, 1: 1}, {1: Gf2Matrix.zeros(3, 1)})


def test_fg_complex_rejects_nonsquaring_differential():
    d1 = Gf2Matrix.from_rows([[1]])
    d2 = Gf2Matrix.from_rows([[1]])
    with pytest.raises(BoundaryViolation):
        FGChainComplex(0, 2, {0: 1, 1: 1, 2: 1}, {1: d1, 2: d2})


def test_fg_complex_equality():
    a = FGChainComplex(0, 1, {0: 1, 1: 1}, {1: Gf2Matrix.from_rows([[1]])})
    b = FGChainComplex(0, 1, {0: 1, 1: 1}, {1: Gf2Matrix.from_rows([[1]])})
    c = FGChainComplex(0, 1, {0: 1, 1: 1})
    assert a == b and a != c


def test_betti_zero_differential_is_dimension():
    c = FGChainComplex(0, 2, {0: 3, 1: 5, 2: 2})
    assert betti(c) == {0: 3, 1: 5, 2: 2}


def test_betti_matches_oracle_ranks():
    # Boundary pair of a hollow triangle plus an isolated vertex.
    d1 = Gf2Matrix.from_rows(
        [
            [1, 0, 1],
            [1, 1, 0],
            [0, 1, 1],
            [0, 0, 0],
        ]
    )
    d2 = Gf2Matrix.zeros(3, 0)
    c = from_truncated(TruncatedComplex(d1, d2))
    want = oracle.betti_from_matrices((4, 3, 0), d1.to_rows(), d2.to_rows())
    assert betti(c) == {0: want[0], 1: want[1], 2: want[2]}
    assert betti(c) == {0: 2, 1: 1, 2: 0}


def _identity_reduction(c: FGChainComplex) -> ReductionTriple:
    f = {k: Gf2Matrix.identity(c.dim(k)) for k in c.degrees()}
    return ReductionTriple(c, c, f, dict(f), {})


def test_verify_reduction_identity_triple():
    d1 = Gf2Matrix.from_rows([[1, 1], [1, 1]])
    c = FGChainComplex(0, 1, {0: 2, 1: 2}, {1: d1})
    report = verify_reduction(_identity_reduction(c))
    assert report.ok
    assert len(report.entries) == 14  # seven identities in each of two degrees


def test_verify_reduction_catches_tampering():
    d1 = Gf2Matrix.from_rows([[1, 1], [1, 1]])
    c = FGChainComplex(0, 1, {0: 2, 1: 2}, {1: d1})
    good = _identity_reduction(c)
    bad = ReductionTriple(
        c,
        c,
        {k: good.f(k) for k in (0, 1)},
        {0: good.g(0) + Gf2Matrix.from_rows([[0, 1], [0, 0]]), 1: good.g(1)},
        {},
    )
    report = verify_reduction(bad)
    assert not report.ok
    assert any("identity" in e.name for e in report.failures())
    assert "failed" in str(report)


def test_reduction_triple_shape_validation():
    c = FGChainComplex(0, 1, {0: 2, 1: 2}, {1: Gf2Matrix.from_rows([[1, 1], [1, 1]])})
    small = FGChainComplex(0, 1, {0: 1, 1: 0})
    with pytest.raises(ValueError):
        ReductionTriple(c, small, {0: Gf2Matrix.zeros(2, 2)}, {}, {})
    with pytest.raises(ValueError):
        ReductionTriple(c, small, {}, {}, {0: Gf2Matrix.zeros(3, 3)})
    lo_mismatch = FGChainComplex(1, 2, {1: 1, 2: 0})
    with pytest.raises(ValueError):
        ReductionTriple(c, lo_mismatch, {}, {}, {})
