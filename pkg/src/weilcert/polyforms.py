"""Univariate polynomials and homogeneous ternary forms over a field tower.

Polynomials are coefficient tuples in ascending degree; forms are sparse
maps from exponent triples to tower elements.  Monomial order everywhere is
lexicographic on (i, j, k) for determinism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numbers import (
    FieldDesc,
    FieldMismatchError,
    GaloisAut,
    TowerElt,
)

MAX_FORM_DEGREE = 64


class ZeroPolynomialError(ValueError):
    """Operation undefined on the zero polynomial."""


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial; coeffs ascending, no trailing zeros."""

    coeffs: tuple[TowerElt, ...]
    field: FieldDesc

    @staticmethod
    def make(coeffs, field: FieldDesc) -> "Poly":
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        return Poly(tuple(cs), field)

    @staticmethod
    def zero(field: FieldDesc) -> "Poly":
        return Poly((), field)

    @staticmethod
    def constant(c: TowerElt) -> "Poly":
        return Poly.make((c,), c.field)

    @staticmethod
    def x(field: FieldDesc) -> "Poly":
        return Poly((TowerElt.zero(field), TowerElt.one(field)), field)

    @staticmethod
    def from_roots(roots, field: FieldDesc) -> "Poly":
        p = Poly.constant(TowerElt.one(field))
        x = Poly.x(field)
        for r in roots:
            p = p * (x - Poly.constant(r))
        return p

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def _check(self, other: "Poly") -> None:
        if self.field != other.field:
            raise FieldMismatchError("polynomials over different towers")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = TowerElt.zero(self.field)
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return Poly.make([x + y for x, y in zip(a, b)], self.field)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs), self.field)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction, TowerElt)):
            return Poly.make([c * other for c in self.coeffs], self.field)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field)
        z = TowerElt.zero(self.field)
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(other.coeffs):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return Poly.make(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.constant(TowerElt.one(self.field))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def derivative(self) -> "Poly":
        return Poly.make(
            [c * i for i, c in enumerate(self.coeffs)][1:], self.field
        )

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ZeroPolynomialError("monic of zero polynomial")
        inv = self.coeffs[-1].inverse()
        return Poly(tuple(c * inv for c in self.coeffs), self.field)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroPolynomialError("division by zero polynomial")
        rem = list(self.coeffs)
        dden = other.degree
        lead_inv = other.coeffs[-1].inverse()
        z = TowerElt.zero(self.field)
        quot = [z] * max(len(rem) - dden, 0)
        for i in range(len(rem) - 1, dden - 1, -1):
            c = rem[i] * lead_inv
            if not c.is_zero():
                quot[i - dden] = c
                for j, d in enumerate(other.coeffs):
                    rem[i - dden + j] = rem[i - dden + j] - c * d
        return Poly.make(quot, self.field), Poly.make(rem[:dden], self.field)

    def evaluate(self, x: TowerElt) -> TowerElt:
        acc = TowerElt.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm over the tower field."""
    if p.field != q.field:
        raise FieldMismatchError("polynomials over different towers")
    a, b = p, q
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    if a.is_zero():
        return a
    return a.monic()


def is_square_free(p: Poly) -> bool:
    if p.is_zero():
        raise ZeroPolynomialError("square-freeness of the zero polynomial")
    if p.degree == 0:
        return True
    return poly_gcd(p, p.derivative()).degree == 0


def resultant(p: Poly, q: Poly) -> TowerElt:
    """Sylvester determinant, convention Res(p, q) = lc(p)^deg(q) * prod
    of q over the roots of p."""
    if p.is_zero() or q.is_zero():
        raise ZeroPolynomialError("resultant of the zero polynomial")
    field = p.field
    n, m = p.degree, q.degree
    if n == 0:
        return _te_pow(p.coeffs[0], m) if m else TowerElt.one(field)
    if m == 0:
        c = q.coeffs[0]
        out = TowerElt.one(field)
        for _ in range(n):
            out = out * c
        return out
    size = n + m
    z = TowerElt.zero(field)
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(m):
        rows.append([z] * i + pc + [z] * (size - n - 1 - i))
    for i in range(n):
        rows.append([z] * i + qc + [z] * (size - m - 1 - i))
    # Gaussian elimination tracking the determinant exactly
    det = TowerElt.one(field)
    for col in range(size):
        pivot = None
        for r in range(col, size):
            if not rows[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            return TowerElt.zero(field)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        pv = rows[col][col]
        det = det * pv
        inv = pv.inverse()
        for r in range(col + 1, size):
            f = rows[r][col] * inv
            if f.is_zero():
                continue
            for c in range(col, size):
                rows[r][c] = rows[r][c] - f * rows[col][c]
    return det


def _te_pow(base: TowerElt, k: int) -> TowerElt:
    out = TowerElt.one(base.field)
    while k:
        if k & 1:
            out = out * base
        base = base * base
        k >>= 1
    return out


@dataclass(frozen=True)
class Form3:
    """Homogeneous ternary form of fixed degree; sparse, no stored zeros,
    terms sorted lexicographically on (i, j, k)."""

    degree: int
    terms: tuple[tuple[tuple[int, int, int], TowerElt], ...]
    field: FieldDesc

    @staticmethod
    def make(degree: int, terms: dict, field: FieldDesc) -> "Form3":
        if degree > MAX_FORM_DEGREE:
            raise ValueError(f"form degree {degree} exceeds {MAX_FORM_DEGREE}")
        clean = {}
        for (i, j, k), c in terms.items():
            if i + j + k != degree:
                raise ValueError("exponent triple does not match form degree")
            if not c.is_zero():
                clean[(i, j, k)] = c
        return Form3(degree, tuple(sorted(clean.items())), field)

    @staticmethod
    def zero(degree: int, field: FieldDesc) -> "Form3":
        return Form3.make(degree, {}, field)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "Form3") -> None:
        if self.field != other.field:
            raise FieldMismatchError("forms over different towers")

    def __add__(self, other: "Form3") -> "Form3":
        self._check(other)
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        d = self.as_dict()
        for m, c in other.terms:
            d[m] = d[m] + c if m in d else c
        return Form3.make(self.degree, d, self.field)

    def __sub__(self, other: "Form3") -> "Form3":
        return self + other.scale(TowerElt.from_rational(-1, self.field))

    def scale(self, c: TowerElt) -> "Form3":
        return Form3.make(
            self.degree, {m: x * c for m, x in self.terms}, self.field
        )

    def __mul__(self, other: "Form3") -> "Form3":
        self._check(other)
        out: dict = {}
        for (i1, j1, k1), c1 in self.terms:
            for (i2, j2, k2), c2 in other.terms:
                m = (i1 + i2, j1 + j2, k1 + k2)
                p = c1 * c2
                out[m] = out[m] + p if m in out else p
        return Form3.make(self.degree + other.degree, out, self.field)

    def __pow__(self, k: int) -> "Form3":
        field = self.field
        out = Form3.make(0, {(0, 0, 0): TowerElt.one(field)}, field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def evaluate(self, x: TowerElt, y: TowerElt, z: TowerElt) -> TowerElt:
        acc = TowerElt.zero(self.field)
        for (i, j, k), c in self.terms:
            acc = acc + c * _te_pow(x, i) * _te_pow(y, j) * _te_pow(z, k)
        return acc

    def partial(self, var: int) -> "Form3":
        out = {}
        for m, c in self.terms:
            e = m[var]
            if e:
                nm = list(m)
                nm[var] = e - 1
                out[tuple(nm)] = c * e
        return Form3.make(max(self.degree - 1, 0), out, self.field)


@dataclass(frozen=True)
class ProjMap3:
    """Projective plane map given by a 3x3 matrix over the tower,
    canonically scaled: first nonzero entry in row-major order is 1."""

    rows: tuple[tuple[TowerElt, TowerElt, TowerElt], ...]

    @staticmethod
    def make(rows) -> "ProjMap3":
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("need a 3x3 matrix")
        if _det3(rows).is_zero():
            raise ValueError("projective map must be invertible")
        return ProjMap3(_canonical_rows(rows))

    @property
    def field(self) -> FieldDesc:
        return self.rows[0][0].field

    @staticmethod
    def identity(field: FieldDesc) -> "ProjMap3":
        o, z = TowerElt.one(field), TowerElt.zero(field)
        return ProjMap3.make(((o, z, z), (z, o, z), (z, z, o)))

    @staticmethod
    def diagonal(a: TowerElt, b: TowerElt, c: TowerElt) -> "ProjMap3":
        z = TowerElt.zero(a.field)
        return ProjMap3.make(((a, z, z), (z, b, z), (z, z, c)))

    def compose(self, other: "ProjMap3") -> "ProjMap3":
        a, b = self.rows, other.rows
        rows = tuple(
            tuple(
                sum(
                    (a[i][k] * b[k][j] for k in range(3)),
                    TowerElt.zero(self.field),
                )
                for j in range(3)
            )
            for i in range(3)
        )
        return ProjMap3.make(rows)

    def galois(self, aut: GaloisAut) -> "ProjMap3":
        return ProjMap3.make(
            tuple(tuple(e.galois(aut) for e in r) for r in self.rows)
        )

    def key(self) -> tuple:
        return tuple(e.key() for r in self.rows for e in r)


def _det3(rows) -> TowerElt:
    a, b, c = rows[0]
    d, e, f = rows[1]
    g, h, i = rows[2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _canonical_rows(rows):
    for r in rows:
        for e in r:
            if not e.is_zero():
                inv = e.inverse()
                return tuple(tuple(x * inv for x in rr) for rr in rows)
    raise ValueError("zero matrix")


def substitute_linear(F: Form3, A: ProjMap3) -> Form3:
    """F evaluated at the linear images of (X, Y, Z) given by A's rows."""
    if F.field != A.field:
        raise FieldMismatchError("form and map over different towers")
    field = F.field
    lin = []
    for r in A.rows:
        lin.append(
            Form3.make(
                1,
                {(1, 0, 0): r[0], (0, 1, 0): r[1], (0, 0, 1): r[2]},
                field,
            )
        )
    # cache powers of each linear form up to the needed exponent
    pows = []
    for v in range(3):
        needed = max((m[v] for m, _ in F.terms), default=0)
        p = [Form3.make(0, {(0, 0, 0): TowerElt.one(field)}, field)]
        for _ in range(needed):
            p.append(p[-1] * lin[v])
        pows.append(p)
    out = Form3.zero(F.degree, field)
    for (i, j, k), c in F.terms:
        out = out + (pows[0][i] * pows[1][j] * pows[2][k]).scale(c)
    return out


def conjugate_coeffs(aut: GaloisAut, obj):
    """Coefficientwise Galois action on a Form3 or a Poly."""
    if isinstance(obj, Form3):
        return Form3.make(
            obj.degree, {m: c.galois(aut) for m, c in obj.terms}, obj.field
        )
    if isinstance(obj, Poly):
        return Poly.make([c.galois(aut) for c in obj.coeffs], obj.field)
    raise TypeError(f"cannot conjugate {type(obj).__name__}")


def proportionality(F: Form3, G: Form3) -> TowerElt | None:
    """lambda with F = lambda * G, or None; lambda is read off the first
    common monomial in the fixed lexicographic order."""
    if F.is_zero() or G.is_zero():
        return None
    if F.degree != G.degree:
        return None
    fd, gd = F.as_dict(), G.as_dict()
    if sorted(fd) != sorted(gd):
        return None
    m0 = min(gd)
    lam = fd[m0] * gd[m0].inverse()
    for m, c in gd.items():
        if fd[m] != c * lam:
            return None
    return lam
