"""Moebius stabilizers of finite point sets against an independent
integer-arithmetic brute-force oracle, plus the restricted involution
shapes."""

import random
from fractions import Fraction

import pytest

from weilcert.numbers import QuadElt, TowerElt, field_tower
from weilcert.projline import (
    DegenerateInputError,
    Moebius,
    P1Point,
    finite_set_stabilizer,
    moebius_apply,
    moebius_from_triple,
    special_shape_invariance,
)

F1 = field_tower(2, 1)


def _pt(q) -> P1Point:
    return P1Point.finite(TowerElt.from_rational(Fraction(q), F1))


def _inf() -> P1Point:
    return P1Point.infinity(F1)


from stab_oracle import (
    int_pairs_to_points,
    moebius_to_int_key,
    oracle_stabilizer,
    random_int_point_set,
)


def _is_group(maps):
    keys = set(M.key() for M in maps)
    ident = Moebius.identity(F1)
    assert ident.key() in keys
    for A in maps:
        assert A.inverse().key() in keys
        for B in maps:
            assert A.compose(B).key() in keys


def test_golden_stabilizer_counts():
    # {0, 1, inf} is a full orbit of S3 symmetries; {0, inf, 1, -1} is
    # stabilized by the dihedral group of order 8
    s3 = finite_set_stabilizer([_pt(0), _pt(1), _inf()])
    assert len(s3) == 6
    _is_group(s3)
    d4 = finite_set_stabilizer([_pt(0), _inf(), _pt(1), _pt(-1)])
    assert len(d4) == 8
    _is_group(d4)


def test_oracle_equivalence_random_sets_smoke():
    # the full 200-set run is acceptance criterion 4; a smaller seed-stable
    # sample keeps this suite fast
    rng = random.Random(7)
    for _ in range(40):
        int_pts = random_int_point_set(rng, rng.randint(4, 6))
        pts = int_pairs_to_points(int_pts)
        ours = finite_set_stabilizer(pts)
        got = set(moebius_to_int_key(M) for M in ours)
        assert got == oracle_stabilizer(int_pts)
        _is_group(ours)


def test_moebius_from_triple_round_trip():
    src = (_pt(2), _pt(-3), _inf())
    dst = (_pt(0), _pt(1), _pt(5))
    M = moebius_from_triple(src, dst)
    for s, d in zip(src, dst):
        assert moebius_apply(M, s) == d


def test_stabilizer_rejects_degenerate_input():
    with pytest.raises(ValueError):
        finite_set_stabilizer([_pt(0), _pt(1)])
    with pytest.raises(ValueError):
        finite_set_stabilizer([_pt(0), _pt(0), _pt(1)])


# --- restricted involution shapes -------------------------------------------


def _unit_pts(*quads):
    return [
        P1Point.finite(TowerElt.from_quad(q, F1)) for q in quads
    ]


def test_psi_a_invariance_on_scaled_unit_pair():
    # Z = {eta/sqrt(D), eta*sqrt(D)} is preserved by (X : Z) -> (Z : a X)
    # with a = 1/(z1 z2) = eta^(-2)
    eta = QuadElt.of(1, 1, 2)
    sqrt_d = QuadElt.of(0, 1, 2)
    pts = _unit_pts(eta * sqrt_d.inverse(), eta * sqrt_d)
    report = special_shape_invariance(pts)
    a_values = [a.as_quad() for a, _ in report.psi_a]
    assert eta.inverse() * eta.inverse() in a_values  # 3 - 2*sqrt(2)


def test_shape_invariance_rejects_zero_and_infinity():
    with pytest.raises(DegenerateInputError):
        special_shape_invariance([_pt(0), _pt(1)])
    with pytest.raises(DegenerateInputError):
        special_shape_invariance([_inf(), _pt(1)])


def test_reported_shape_maps_preserve_the_set():
    # a 4-point rational set generically admits psi_ab involutions (any
    # Moebius involution pairing the points); every reported map must
    # genuinely preserve the set
    pts = [_pt(2), _pt(3), _pt(5), _pt(11)]
    report = special_shape_invariance(pts)
    assert not report.psi_a  # no (X : Z) -> (Z : a X) map preserves it
    assert report.psi_ab  # but pairing involutions exist
    keys = set(p.key() for p in pts)
    for _, M in report.psi_a + report.psi_ab:
        assert set(moebius_apply(M, p).key() for p in pts) == keys
        assert M.compose(M) == Moebius.identity(F1)  # involution shape
