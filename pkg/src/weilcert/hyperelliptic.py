"""The hyperelliptic family y^2 = (x+t)(x+1/t)(x+sqrt(D))(x-1/sqrt(D))
prod (x^2 - eta_i^2): construction, branch-set stabilizer verification,
Galois-conjugate isomorphism checking and cocycle scanning.

Curves are kept as the affine model y^2 = p(x) with deg p = 2g + 2; the
projective plane form is singular at (0:1:0) for g >= 2, so isomorphism
checking reduces to an exact polynomial identity on p.
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
from .pell import EtaSelection, InvalidParameterError
from .polyforms import Poly, conjugate_coeffs
from .projline import (
    Moebius,
    P1Point,
    finite_set_stabilizer,
    moebius_apply,
)


class BranchCollisionError(ValueError):
    """Two branch points of the constructed model coincide."""


class SearchExhaustedError(ValueError):
    """No admissible parameter found within the requested bound."""


@dataclass(frozen=True)
class HyperellipticModel:
    genus: int
    branch_poly: Poly  # degree 2g+2, monic, over Q(sqrt(D))
    branch_set: tuple[P1Point, ...]
    D: int
    t: Fraction
    etas: EtaSelection

    @property
    def field(self) -> FieldDesc:
        return self.branch_poly.field


@dataclass(frozen=True)
class HypMap:
    """Pair (Moebius M, scale e) acting as x -> M(x), y -> e*y/(cx+d)^(g+1);
    (M, e) and (lambda*M, lambda^(g+1)*e) are identified, stored with M
    canonical and e adjusted accordingly."""

    moebius: Moebius
    scale: TowerElt
    genus: int

    @staticmethod
    def make(raw_rows, scale: TowerElt, genus: int) -> "HypMap":
        (a, b), (c, d) = raw_rows
        det = a * d - b * c
        if det.is_zero():
            raise ValueError("Moebius part must be invertible")
        if scale.is_zero():
            raise ValueError("scale must be nonzero")
        lam = None
        for e in (a, b, c, d):
            if not e.is_zero():
                lam = e.inverse()
                break
        rows = ((a * lam, b * lam), (c * lam, d * lam))
        lam_pow = _pow(lam, genus + 1)
        return HypMap(Moebius(rows), scale * lam_pow, genus)

    @staticmethod
    def identity(field: FieldDesc, genus: int) -> "HypMap":
        return HypMap.make(
            Moebius.identity(field).rows, TowerElt.one(field), genus
        )

    @staticmethod
    def involution(field: FieldDesc, genus: int) -> "HypMap":
        """The hyperelliptic involution: identity on x, y -> -y."""
        return HypMap.make(
            Moebius.identity(field).rows,
            TowerElt.from_rational(-1, field),
            genus,
        )

    def galois(self, aut: GaloisAut) -> "HypMap":
        rows = tuple(
            tuple(e.galois(aut) for e in r) for r in self.moebius.rows
        )
        return HypMap.make(rows, self.scale.galois(aut), self.genus)


def _pow(x: TowerElt, k: int) -> TowerElt:
    out = TowerElt.one(x.field)
    for _ in range(k):
        out = out * x
    return out


def hyper_compose(f1: HypMap, f2: HypMap, genus: int) -> HypMap:
    if f1.genus != genus or f2.genus != genus:
        raise ValueError("genus mismatch in composition")
    (a, b), (c, d) = f1.moebius.rows
    (e, f), (g, h) = f2.moebius.rows
    rows = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
    return HypMap.make(rows, f1.scale * f2.scale, genus)


def _validate_params(D: int, g: int, t: Fraction, etas: EtaSelection) -> None:
    if g < 2 or g % 2 != 0:
        raise InvalidParameterError("genus must be an even integer >= 2")
    if not isinstance(t, Fraction):
        raise InvalidParameterError("t must be an exact rational")
    if t in (0, 1, -1):
        raise InvalidParameterError("t must avoid {0, 1, -1}")
    if len(etas.etas) != g - 1:
        raise InvalidParameterError("need exactly g - 1 unit parameters")
    for e in etas.etas:
        if e.D != D:
            raise InvalidParameterError("unit parameter from the wrong field")
        if e.norm() != -1:
            raise InvalidParameterError("unit parameter must have norm -1")


def build_hyper(
    D: int, g: int, t: Fraction, etas: EtaSelection
) -> HyperellipticModel:
    _validate_params(D, g, t, etas)
    field = field_tower(D, 1)
    sqrt_d = TowerElt.sqrtD(field)
    roots = [
        TowerElt.from_rational(-t, field),
        TowerElt.from_rational(-1 / t, field),
        -sqrt_d,
        sqrt_d.inverse(),
    ]
    for q in etas.etas:
        e = TowerElt.from_quad(q, field)
        roots.append(e)
        roots.append(-e)
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if roots[i] == roots[j]:
                raise BranchCollisionError(
                    f"branch points {i} and {j} coincide"
                )
    p = Poly.from_roots(roots, field)
    branch = tuple(
        sorted((P1Point.finite(r) for r in roots), key=lambda q: q.key())
    )
    return HyperellipticModel(g, p, branch, D, t, etas)


def reduced_aut_is_trivial(model: HyperellipticModel) -> bool:
    """True iff the branch-set stabilizer in PGL_2 is trivial, certifying
    that the full automorphism group is the hyperelliptic involution."""
    stab = finite_set_stabilizer(model.branch_set)
    return len(stab) == 1


def rational_enumeration(bound: int) -> Iterator[Fraction]:
    """Deterministic positive enumeration of Q \\ {0, 1} by increasing
    height: 2, 3, 1/2, 4, 1/3, 3/2, 2/3, 5, 1/4, 4/3, 3/4, ..."""
    from math import gcd

    for h in range(2, bound + 1):
        yield Fraction(h)
        if h - 1 >= 2:
            yield Fraction(1, h - 1)
        for q in range(2, h - 1):
            if gcd(h - 1, q) == 1:
                yield Fraction(h - 1, q)
                yield Fraction(q, h - 1)


def find_good_t(
    D: int, g: int, etas: EtaSelection, bound: int = 100
) -> Fraction:
    """First t in the deterministic enumeration whose model builds and has
    a trivial branch-set stabilizer."""
    if bound < 2:
        raise SearchExhaustedError("height bound exhausted before any t")
    for t in rational_enumeration(bound):
        try:
            model = build_hyper(D, g, t, etas)
        except (BranchCollisionError, InvalidParameterError):
            continue
        if reduced_aut_is_trivial(model):
            return t
    raise SearchExhaustedError(f"no admissible t of height <= {bound}")


def hyper_iso_verify(src: Poly, dst: Poly, f: HypMap, g: int) -> bool:
    """Exact identity e^2 * src(x) = (cx+d)^(2g+2) * dst((ax+b)/(cx+d))."""
    deg = 2 * g + 2
    if src.degree != deg or dst.degree != deg:
        raise ValueError(f"both polynomials must have degree {deg}")
    field = src.field
    (a, b), (c, d) = f.moebius.rows
    num = Poly.make((b, a), field)  # a*x + b
    den = Poly.make((d, c), field)  # c*x + d
    rhs = Poly.zero(field)
    for k, coeff in enumerate(dst.coeffs):
        if coeff.is_zero():
            continue
        rhs = rhs + (num**k) * (den ** (deg - k)) * coeff
    lhs = src * (f.scale * f.scale)
    return lhs == rhs


def sigma_map(model: HyperellipticModel) -> HypMap:
    """The candidate isomorphism from the sigma-conjugate model:
    x -> 1/x with y scaled by the product of the unit parameters."""
    field = model.field
    prod = TowerElt.one(field)
    for q in model.etas.etas:
        prod = prod * TowerElt.from_quad(q, field)
    return HypMap.make(
        Moebius.reciprocal(field).rows, prod, model.genus
    )


def conjugated_branch_matches(model: HyperellipticModel, f: HypMap) -> bool:
    """Cross-check: the Moebius part maps the sigma-conjugated branch set
    onto the branch set."""
    sigma = GaloisAut(flip_sqrt=True)
    conj = [
        P1Point.make(p.u.galois(sigma), p.v.galois(sigma))
        for p in model.branch_set
    ]
    keys = set(p.key() for p in model.branch_set)
    return set(moebius_apply(f.moebius, p).key() for p in conj) == keys


@dataclass(frozen=True)
class CocycleWitness:
    candidate: HypMap
    composite: HypMap
    is_identity: bool


@dataclass(frozen=True)
class HyperCocycleReport:
    witnesses: tuple[CocycleWitness, ...]
    fails: bool


def hyper_cocycle_fails(model: HyperellipticModel) -> HyperCocycleReport:
    """Scan both candidate isomorphisms f and iota o f; the cocycle fails
    iff no composite f o (sigma f) is the identity."""
    if not reduced_aut_is_trivial(model):
        raise InvalidParameterError(
            "cocycle scan requires a certified trivial reduced group"
        )
    field = model.field
    g = model.genus
    sigma = GaloisAut(flip_sqrt=True)
    f0 = sigma_map(model)
    iota = HypMap.involution(field, g)
    ident = HypMap.identity(field, g)
    witnesses = []
    for cand in (f0, hyper_compose(iota, f0, g)):
        comp = hyper_compose(cand, cand.galois(sigma), g)
        witnesses.append(CocycleWitness(cand, comp, comp == ident))
    return HyperCocycleReport(
        tuple(witnesses), fails=not any(w.is_identity for w in witnesses)
    )
