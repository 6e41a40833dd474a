"""Moebius transformations on P^1 over a field tower, stabilizers of finite
point sets, and the two special involution shapes used by the plane-family
automorphism condition.

All enumeration outputs are returned in a fixed deterministic order keyed
on canonical matrix entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .numbers import FieldDesc, FieldMismatchError, GaloisAut, TowerElt


class DegenerateInputError(ValueError):
    """Input on which the requested shape analysis is undefined."""


@dataclass(frozen=True)
class P1Point:
    """(u : v), canonically scaled: v = 1 when finite, infinity is (1 : 0)."""

    u: TowerElt
    v: TowerElt

    @staticmethod
    def make(u: TowerElt, v: TowerElt) -> "P1Point":
        if u.field != v.field:
            raise FieldMismatchError("point coordinates in different towers")
        if v.is_zero():
            if u.is_zero():
                raise ValueError("(0 : 0) is not a projective point")
            return P1Point(TowerElt.one(u.field), TowerElt.zero(u.field))
        inv = v.inverse()
        return P1Point(u * inv, TowerElt.one(u.field))

    @staticmethod
    def finite(x: TowerElt) -> "P1Point":
        return P1Point(x, TowerElt.one(x.field))

    @staticmethod
    def infinity(field: FieldDesc) -> "P1Point":
        return P1Point(TowerElt.one(field), TowerElt.zero(field))

    @property
    def field(self) -> FieldDesc:
        return self.u.field

    def is_infinity(self) -> bool:
        return self.v.is_zero()

    def key(self) -> tuple:
        return (0 if self.is_infinity() else 1, self.u.key(), self.v.key())


@dataclass(frozen=True)
class Moebius:
    """2x2 invertible matrix over the tower, canonically scaled: first
    nonzero entry is 1."""

    rows: tuple[tuple[TowerElt, TowerElt], tuple[TowerElt, TowerElt]]

    @staticmethod
    def make(rows) -> "Moebius":
        (a, b), (c, d) = rows
        det = a * d - b * c
        if det.is_zero():
            raise ValueError("Moebius matrix must be invertible")
        for e in (a, b, c, d):
            if not e.is_zero():
                inv = e.inverse()
                return Moebius(
                    ((a * inv, b * inv), (c * inv, d * inv))
                )
        raise ValueError("zero matrix")

    @property
    def field(self) -> FieldDesc:
        return self.rows[0][0].field

    @staticmethod
    def identity(field: FieldDesc) -> "Moebius":
        o, z = TowerElt.one(field), TowerElt.zero(field)
        return Moebius.make(((o, z), (z, o)))

    @staticmethod
    def reciprocal(field: FieldDesc) -> "Moebius":
        """x -> 1/x."""
        o, z = TowerElt.one(field), TowerElt.zero(field)
        return Moebius.make(((z, o), (o, z)))

    def compose(self, other: "Moebius") -> "Moebius":
        (a, b), (c, d) = self.rows
        (e, f), (g, h) = other.rows
        return Moebius.make(
            ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
        )

    def inverse(self) -> "Moebius":
        (a, b), (c, d) = self.rows
        return Moebius.make(((d, -b), (-c, a)))

    def galois(self, aut: GaloisAut) -> "Moebius":
        return Moebius.make(
            tuple(tuple(e.galois(aut) for e in r) for r in self.rows)
        )

    def key(self) -> tuple:
        return tuple(e.key() for r in self.rows for e in r)


def projective_equal(A, B) -> bool:
    """True iff A = lambda * B; both sides are kept canonical, so this is
    structural equality of matching kinds."""
    if type(A) is not type(B):
        raise TypeError("projective comparison of different kinds")
    return A == B


def moebius_apply(M: Moebius, p: P1Point) -> P1Point:
    (a, b), (c, d) = M.rows
    return P1Point.make(a * p.u + b * p.v, c * p.u + d * p.v)


def _to_standard_triple(p1: P1Point, p2: P1Point, p3: P1Point) -> Moebius:
    """The map sending (p1, p2, p3) to (0, 1, infinity)."""
    # row1 kills p1, row2 kills p3; cross scale fixes p2 -> (1 : 1)
    r1 = (p1.v, -p1.u)
    r2 = (p3.v, -p3.u)
    lam = r2[0] * p2.u + r2[1] * p2.v
    mu = r1[0] * p2.u + r1[1] * p2.v
    return Moebius.make(((r1[0] * lam, r1[1] * lam), (r2[0] * mu, r2[1] * mu)))


def moebius_from_triple(src, dst) -> Moebius:
    """The unique Moebius map with M(src_i) = dst_i for distinct triples."""
    src = tuple(src)
    dst = tuple(dst)
    if len(set(p.key() for p in src)) != 3:
        raise ValueError("source triple has repeated points")
    if len(set(p.key() for p in dst)) != 3:
        raise ValueError("destination triple has repeated points")
    return _to_standard_triple(*dst).inverse().compose(_to_standard_triple(*src))


def sort_points(points) -> list[P1Point]:
    return sorted(points, key=lambda p: p.key())


def finite_set_stabilizer(points) -> list[Moebius]:
    """All Moebius maps preserving a finite set of >= 3 distinct points,
    found by sending the first three points to every ordered triple."""
    pts = sort_points(points)
    keys = set(p.key() for p in pts)
    if len(keys) != len(pts):
        raise ValueError("points must be pairwise distinct")
    if len(pts) < 3:
        raise ValueError("need at least 3 points")
    src = tuple(pts[:3])
    found: dict[tuple, Moebius] = {}
    for dst in permutations(pts, 3):
        M = moebius_from_triple(src, dst)
        image = set(moebius_apply(M, p).key() for p in pts)
        if image == keys:
            found.setdefault(M.key(), M)
    return [found[k] for k in sorted(found)]


@dataclass(frozen=True)
class ShapeInvarianceReport:
    """Maps of the two restricted involution shapes that preserve Z.

    psi_a entries: (a, map) for (X : Z) -> (Z : a*X).
    psi_ab entries: ((a, b), map) for (X : Z) -> (X + a*Z : b*X - Z).
    """

    psi_a: tuple
    psi_ab: tuple

    @property
    def invariant_maps_exist(self) -> bool:
        return bool(self.psi_a) or bool(self.psi_ab)


def _psi_a_map(a: TowerElt) -> Moebius:
    field = a.field
    z, o = TowerElt.zero(field), TowerElt.one(field)
    return Moebius.make(((z, o), (a, z)))


def _psi_ab_map(a: TowerElt, b: TowerElt) -> Moebius | None:
    field = a.field
    o = TowerElt.one(field)
    rows = ((o, a), (b, -o))
    (r, s), (t, u) = rows
    if (r * u - s * t).is_zero():
        return None
    return Moebius.make(rows)


def special_shape_invariance(points) -> ShapeInvarianceReport:
    """Every map of shape psi_a or psi_{a,b} preserving the finite set Z.

    psi_a candidates come from a = 1/(z_i z_j) over unordered pairs
    (including i = j); psi_{a,b} candidates are solved from the images of
    the two canonically-first points, singular systems discarded.
    """
    pts = sort_points(points)
    if len(set(p.key() for p in pts)) != len(pts):
        raise ValueError("points must be pairwise distinct")
    if not pts:
        raise DegenerateInputError("empty point set")
    field = pts[0].field
    for p in pts:
        if p.is_infinity() or p.u.is_zero():
            raise DegenerateInputError(
                "0 or infinity in the set: restricted shapes act degenerately"
            )
    zs = [p.u for p in pts]
    keys = set(p.key() for p in pts)

    def preserves(M: Moebius) -> bool:
        return set(moebius_apply(M, p).key() for p in pts) == keys

    psi_a = {}
    for i in range(len(zs)):
        for j in range(i, len(zs)):
            a = (zs[i] * zs[j]).inverse()
            M = _psi_a_map(a)
            if preserves(M):
                psi_a.setdefault(a.key(), (a, M))

    psi_ab = {}
    if len(pts) >= 2:
        z1, z2 = zs[0], zs[1]
        for wi in zs:
            for wj in zs:
                if wi == wj:
                    continue
                # z1 -> wi, z2 -> wj:  a - (wi z1) b = -wi - z1, etc.
                c1, r1 = -(wi * z1), -(wi + z1)
                c2, r2 = -(wj * z2), -(wj + z2)
                det = c2 - c1
                if det.is_zero():
                    continue
                det_inv = det.inverse()
                b = (r2 - r1) * det_inv
                a = r1 - c1 * b
                M = _psi_ab_map(a, b)
                if M is not None and preserves(M):
                    psi_ab.setdefault((a.key(), b.key()), ((a, b), M))

    return ShapeInvarianceReport(
        tuple(psi_a[k] for k in sorted(psi_a)),
        tuple(psi_ab[k] for k in sorted(psi_ab)),
    )
