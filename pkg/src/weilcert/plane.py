"""The smooth plane family Y^d + Y^(d/2) g(X,Z) + f_t(X,Z), d = 4m:
construction, structure-specific smoothness certification, the cyclic
Y-scaling automorphism, the Galois-conjugate isomorphism [Z : alpha*Y : X],
cocycle scanning over all candidates, and the invariant-bitangent
discriminant for d = 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .numbers import (
    FieldDesc,
    GaloisAut,
    QuadElt,
    TowerElt,
    field_tower,
)
from .pell import EtaSelection, InvalidParameterError, solve_negative_pell
from .polyforms import (
    Form3,
    Poly,
    ProjMap3,
    conjugate_coeffs,
    is_square_free,
    proportionality,
    substitute_linear,
)
from .projline import P1Point, ShapeInvarianceReport, special_shape_invariance


class AlphaNotInTowerError(ValueError):
    """No (d/2)-th root of the squared unit product exists under the
    selected exponent policy."""


def genus_of_degree(d: int) -> int:
    if d < 4:
        raise InvalidParameterError("smooth plane curves need degree >= 4")
    return (d - 1) * (d - 2) // 2


@dataclass(frozen=True)
class PlaneCurveForm:
    d: int
    F: Form3
    g_form: Form3  # binary in X, Z of degree d/2
    ft_form: Form3  # binary in X, Z of degree d
    g_x: Poly  # g(X, 1)
    ft_x: Poly  # f_t(X, 1)
    D: int
    t: Fraction
    etas: EtaSelection
    alpha: TowerElt

    @property
    def field(self) -> FieldDesc:
        return self.F.field

    @property
    def m(self) -> int:
        return self.d // 4


@dataclass(frozen=True)
class SmoothnessReport:
    c1: bool  # F(X, Y, 0) square-free as a binary form
    c2: bool  # f_t(X, 1) square-free of full degree d
    c3: bool  # g^2 - 4 f_t and g^2 + 4 f_t both square-free

    @property
    def verdict(self) -> bool:
        return self.c1 and self.c2 and self.c3


def find_alpha(etas: EtaSelection, m: int, n: int) -> TowerElt:
    """alpha = eta_0^(sum(exponents)/m), a (d/2)-th root of the squared
    unit product inside Q(sqrt(D)); verified by exact exponentiation."""
    if len(etas.etas) != m or len(etas.exponents) != m:
        raise InvalidParameterError("need m units with m exponents")
    total = sum(etas.exponents)
    if total % m != 0:
        raise AlphaNotInTowerError(
            "exponent sum not divisible by m: no root in the tower"
        )
    D = etas.etas[0].D
    sol = solve_negative_pell(D)
    assert sol is not None
    eta0 = sol.unit()
    alpha_q = _qpow(eta0, total // m)
    field = field_tower(D, n)
    alpha = TowerElt.from_quad(alpha_q, field)
    prod = TowerElt.one(field)
    for q in etas.etas:
        prod = prod * TowerElt.from_quad(q, field)
    if _tpow(alpha, n) != prod * prod:
        raise AlphaNotInTowerError("exponentiation check failed for alpha")
    return alpha


def _qpow(q: QuadElt, k: int) -> QuadElt:
    out = QuadElt.rational(1, q.D)
    base = q if k >= 0 else q.inverse()
    for _ in range(abs(k)):
        out = out * base
    return out


def _tpow(x: TowerElt, k: int) -> TowerElt:
    out = TowerElt.one(x.field)
    for _ in range(k):
        out = out * x
    return out


def _binary_from_x_roots(roots, field: FieldDesc) -> tuple[Form3, Poly]:
    """prod (X - r Z) as a Form3 in X, Z plus its dehomogenization at Z=1."""
    form = Form3.make(0, {(0, 0, 0): TowerElt.one(field)}, field)
    for r in roots:
        lin = Form3.make(
            1, {(1, 0, 0): TowerElt.one(field), (0, 0, 1): -r}, field
        )
        form = form * lin
    poly = Poly.from_roots(roots, field)
    return form, poly


def _validate_plane_params(
    D: int, d: int, t: Fraction, etas: EtaSelection
) -> None:
    if d < 4 or d % 4 != 0:
        raise InvalidParameterError("degree must be a positive multiple of 4")
    if not isinstance(t, Fraction):
        raise InvalidParameterError("t must be an exact rational")
    if t in (0, 1, -1):
        raise InvalidParameterError("t must avoid {0, 1, -1}")
    m = d // 4
    if len(etas.etas) != m:
        raise InvalidParameterError(f"need exactly {m} unit parameters")
    for e in etas.etas:
        if e.D != D:
            raise InvalidParameterError("unit parameter from the wrong field")
        if e.norm() != -1:
            raise InvalidParameterError("unit parameter must have norm -1")


def build_plane(
    D: int, d: int, t: Fraction, etas: EtaSelection
) -> PlaneCurveForm:
    _validate_plane_params(D, d, t, etas)
    m = d // 4
    n = d // 2
    field = field_tower(D, n)
    alpha = find_alpha(etas, m, n)
    sqrt_d = TowerElt.sqrtD(field)
    sqrt_d_inv = sqrt_d.inverse()
    g_roots = []
    f_roots = []
    for q in etas.etas:
        e = TowerElt.from_quad(q, field)
        e_inv = e.inverse()
        e3 = e * e * e
        g_roots.append(e * sqrt_d_inv)
        g_roots.append(e * sqrt_d)
        f_roots.append(e_inv)
        f_roots.append(-e_inv)
        f_roots.append(TowerElt.from_rational(-t, field) * e3)
        f_roots.append(TowerElt.from_rational(1 / t, field) * e3)
    g_form, g_x = _binary_from_x_roots(g_roots, field)
    ft_form, ft_x = _binary_from_x_roots(f_roots, field)
    one = TowerElt.one(field)
    yd = Form3.make(d, {(0, d, 0): one}, field)
    ymid = Form3.make(n, {(0, n, 0): one}, field)
    F = yd + ymid * g_form + ft_form
    return PlaneCurveForm(d, F, g_form, ft_form, g_x, ft_x, D, t, etas, alpha)


def _binary_z0_square_free(F: Form3) -> bool:
    """Square-freeness of F(X, Y, 0) as a binary form: the dehomogenized
    polynomial in X must be square-free and Y may divide at most once."""
    field = F.field
    d = F.degree
    coeffs = [TowerElt.zero(field)] * (d + 1)
    for (i, j, k), c in F.terms:
        if k == 0:
            coeffs[i] = c  # coefficient of X^i Y^(d-i)
    b = Poly.make(coeffs, field)
    if b.is_zero():
        return False
    y_mult = d - b.degree
    if y_mult > 1:
        return False
    return is_square_free(b)


def smoothness_check(C: PlaneCurveForm) -> SmoothnessReport:
    """Structure-specific decomposition: c1 covers Z = 0, c2 the affine
    points with Y = 0, c3 the affine points with 2 Y^(d/2) = -g; both
    discriminant sign variants are required square-free."""
    c1 = _binary_z0_square_free(C.F)
    c2 = (not C.ft_x.is_zero()) and C.ft_x.degree == C.d and is_square_free(
        C.ft_x
    )
    g2 = C.g_x * C.g_x
    four_f = C.ft_x * 4
    minus = g2 - four_f
    plus = g2 + four_f
    c3 = (
        not minus.is_zero()
        and not plus.is_zero()
        and is_square_free(minus)
        and is_square_free(plus)
    )
    return SmoothnessReport(c1, c2, c3)


def psi_map(field: FieldDesc) -> ProjMap3:
    """[X : zeta_{d/2} Y : Z]."""
    one = TowerElt.one(field)
    return ProjMap3.diagonal(one, TowerElt.zeta(field), one)


def verify_psi_automorphism(C: PlaneCurveForm) -> tuple[bool, int]:
    """Checks F o psi is proportional to F and returns the multiplicative
    order of psi, which must equal d/2."""
    psi = psi_map(C.field)
    ok = proportionality(substitute_linear(C.F, psi), C.F) is not None
    order = 1
    ident = ProjMap3.identity(C.field)
    cur = psi
    while cur != ident:
        cur = cur.compose(psi)
        order += 1
        if order > C.d:
            raise AssertionError("psi order runaway")
    return ok, order


def condition_ii_report(C: PlaneCurveForm) -> ShapeInvarianceReport:
    """Restricted-shape invariance of the zero set of g; an empty report
    means the automorphism-group hypothesis holds."""
    field = C.field
    sqrt_d = TowerElt.sqrtD(field)
    sqrt_d_inv = sqrt_d.inverse()
    pts = []
    for q in C.etas.etas:
        e = TowerElt.from_quad(q, field)
        pts.append(P1Point.finite(e * sqrt_d_inv))
        pts.append(P1Point.finite(e * sqrt_d))
    return special_shape_invariance(pts)


def sigma_iso_map(C: PlaneCurveForm) -> ProjMap3:
    """[Z : alpha Y : X]."""
    field = C.field
    z, o = TowerElt.zero(field), TowerElt.one(field)
    return ProjMap3.make(((z, z, o), (z, C.alpha, z), (o, z, z)))


def in_quadratic_subfield(F: Form3) -> bool:
    return all(c.as_quad() is not None for _, c in F.terms)


def verify_sigma_iso(C: PlaneCurveForm) -> bool:
    """F o [Z : alpha Y : X] proportional to the sigma-conjugated F, and
    the tau-conjugates fix F (coefficients in the quadratic subfield)."""
    sigma = GaloisAut(flip_sqrt=True)
    a_sigma = sigma_iso_map(C)
    lhs = substitute_linear(C.F, a_sigma)
    rhs = conjugate_coeffs(sigma, C.F)
    if proportionality(lhs, rhs) is None:
        return False
    if not in_quadratic_subfield(C.F):
        return False
    n = C.field.n
    from math import gcd

    for k in range(1, n):
        if gcd(k, n) == 1:
            tau = GaloisAut(flip_sqrt=False, zeta_exp=k)
            if conjugate_coeffs(tau, C.F) != C.F:
                return False
    return True


@dataclass(frozen=True)
class PlaneCocycleWitness:
    power: int  # candidate is [Z : alpha Y : X] composed with psi^power
    candidate: ProjMap3
    composite: ProjMap3
    is_identity: bool


@dataclass(frozen=True)
class PlaneCocycleReport:
    witnesses: tuple[PlaneCocycleWitness, ...]
    fails: bool


def plane_cocycle_fails(C: PlaneCurveForm) -> PlaneCocycleReport:
    """Every isomorphism from the sigma-conjugate has the form
    [Z : alpha Y : X] o psi^k; scan all d/2 composites f o (sigma f)."""
    if not verify_sigma_iso(C):
        raise InvalidParameterError(
            "cocycle scan requires a verified conjugate isomorphism"
        )
    field = C.field
    sigma = GaloisAut(flip_sqrt=True)
    a_sigma = sigma_iso_map(C)
    psi = psi_map(field)
    ident = ProjMap3.identity(field)
    witnesses = []
    cand = a_sigma
    for k in range(C.d // 2):
        comp = cand.compose(cand.galois(sigma))
        witnesses.append(
            PlaneCocycleWitness(k, cand, comp, comp == ident)
        )
        cand = cand.compose(psi)
    return PlaneCocycleReport(
        tuple(witnesses), fails=not any(w.is_identity for w in witnesses)
    )


def bitangent_discriminant(C: PlaneCurveForm) -> Poly:
    """P(X) = g(X,1)^2 - 4 f_t(X,1), whose roots are the ordinates of the
    four psi-invariant vertical bitangents (d = 4 only)."""
    if C.d != 4:
        raise InvalidParameterError("bitangent discriminant defined for d = 4")
    return C.g_x * C.g_x - C.ft_x * 4


def find_good_t_plane(
    D: int, d: int, etas: EtaSelection, bound: int = 100
) -> Fraction:
    """First t in the deterministic enumeration whose form builds and is
    certified smooth."""
    from .hyperelliptic import SearchExhaustedError, rational_enumeration

    for t in rational_enumeration(bound):
        try:
            C = build_plane(D, d, t, etas)
        except InvalidParameterError:
            continue
        if smoothness_check(C).verdict:
            return t
    raise SearchExhaustedError(f"no admissible t of height <= {bound}")
