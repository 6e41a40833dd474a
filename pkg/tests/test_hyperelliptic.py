"""Hyperelliptic family: model construction, isomorphism verification,
cocycle scanning, and the deterministic parameter search."""

from fractions import Fraction

import pytest

from weilcert.hyperelliptic import (
    BranchCollisionError,
    HypMap,
    SearchExhaustedError,
    build_hyper,
    conjugated_branch_matches,
    find_good_t,
    hyper_cocycle_fails,
    hyper_compose,
    hyper_iso_verify,
    rational_enumeration,
    reduced_aut_is_trivial,
    sigma_map,
)
from weilcert.numbers import GaloisAut, QuadElt, TowerElt, field_tower
from weilcert.pell import InvalidParameterError, select_etas
from weilcert.polyforms import conjugate_coeffs

SIGMA = GaloisAut(flip_sqrt=True)
ETAS_G2 = select_etas(2, "hyperelliptic", 1)
ETAS_G4 = select_etas(2, "hyperelliptic", 3)


def test_enumeration_prefix_matches_design():
    prefix = []
    for t in rational_enumeration(6):
        prefix.append(t)
        if len(prefix) == 11:
            break
    assert prefix == [
        Fraction(2),
        Fraction(3),
        Fraction(1, 2),
        Fraction(4),
        Fraction(1, 3),
        Fraction(3, 2),
        Fraction(2, 3),
        Fraction(5),
        Fraction(1, 4),
        Fraction(4, 3),
        Fraction(3, 4),
    ]


def test_build_rejects_bad_params():
    with pytest.raises(InvalidParameterError):
        build_hyper(2, 3, Fraction(3), ETAS_G2)  # odd genus
    with pytest.raises(InvalidParameterError):
        build_hyper(2, 2, Fraction(1), ETAS_G2)  # t = 1
    with pytest.raises(InvalidParameterError):
        build_hyper(2, 2, Fraction(3), ETAS_G4)  # wrong unit count


def test_branch_collision_detected():
    # t = eta gives -t coinciding with... use t equal to a unit image:
    # roots include -t and -eta, so t = eta would need t rational; instead
    # force collision via t with 1/t = t, i.e. impossible; use eta pair:
    # collision happens when t equals sqrt(2)-related values only through
    # rationals, so check the guard directly with a crafted selection
    from weilcert.pell import EtaSelection

    dup = EtaSelection(
        (QuadElt.of(1, 1, 2),), "hyperelliptic", (1,)
    )
    model = build_hyper(2, 2, Fraction(3), dup)
    assert len(model.branch_set) == 6
    two_same = EtaSelection(
        (QuadElt.of(1, 1, 2), QuadElt.of(1, 1, 2), QuadElt.of(7, 5, 2)),
        "hyperelliptic",
        (1, 1, 3),
    )
    with pytest.raises(BranchCollisionError):
        build_hyper(2, 4, Fraction(3), two_same)


def test_golden_t_values():
    # frozen once from the deterministic search
    assert find_good_t(2, 2, ETAS_G2) == Fraction(3)
    assert find_good_t(2, 4, ETAS_G4) == Fraction(2)


def test_t2_genus2_has_extra_symmetry():
    # the first enumerated candidate t = 2 is rejected: its branch set has
    # a nontrivial Moebius stabilizer
    model = build_hyper(2, 2, Fraction(2), ETAS_G2)
    assert not reduced_aut_is_trivial(model)


def test_sigma_map_is_isomorphism_from_conjugate():
    model = build_hyper(2, 2, Fraction(3), ETAS_G2)
    f = sigma_map(model)
    assert f.scale == TowerElt.from_quad(QuadElt.of(1, 1, 2), model.field)
    conj = conjugate_coeffs(SIGMA, model.branch_poly)
    assert hyper_iso_verify(conj, model.branch_poly, f, 2)
    assert conjugated_branch_matches(model, f)


def test_iso_verify_rejects_wrong_scale():
    model = build_hyper(2, 2, Fraction(3), ETAS_G2)
    f = sigma_map(model)
    wrong = HypMap.make(
        f.moebius.rows, f.scale * 2, f.genus
    )
    conj = conjugate_coeffs(SIGMA, model.branch_poly)
    assert not hyper_iso_verify(conj, model.branch_poly, wrong, 2)


def test_cocycle_fails_with_iota_composites():
    model = build_hyper(2, 2, Fraction(3), ETAS_G2)
    report = hyper_cocycle_fails(model)
    assert report.fails
    assert len(report.witnesses) == 2  # identity and involution twists
    field = model.field
    iota = HypMap.involution(field, 2)
    for w in report.witnesses:
        assert not w.is_identity
        # each composite is the hyperelliptic involution: identity Moebius
        # part with scale -1
        assert w.composite == iota


def test_cocycle_fails_genus_4():
    model = build_hyper(2, 4, Fraction(2), ETAS_G4)
    report = hyper_cocycle_fails(model)
    assert report.fails
    iota = HypMap.involution(model.field, 4)
    assert all(w.composite == iota for w in report.witnesses)


def test_compose_respects_identification():
    # (M, e) ~ (lambda M, lambda^(g+1) e): composing with identity twice
    # stays canonical
    field = field_tower(2, 1)
    f = HypMap.make(
        ((TowerElt.from_rational(2, field), TowerElt.zero(field)),
         (TowerElt.zero(field), TowerElt.from_rational(2, field))),
        TowerElt.from_rational(8, field),
        2,
    )
    assert f == HypMap.identity(field, 2)
    g = hyper_compose(f, f, 2)
    assert g == HypMap.identity(field, 2)


def test_search_exhaustion_raises():
    with pytest.raises(SearchExhaustedError):
        find_good_t(2, 2, ETAS_G2, bound=1)
