"""Exact arithmetic in Q, Q(sqrt(D)) and the tower Q(sqrt(D), zeta_n).

Every value is immutable and every operation is pure, so elements can be
shared freely between workers.  There are no tolerances anywhere: equality
is structural on canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd


class FieldMismatchError(ValueError):
    """Operands belong to different field towers."""


class ZeroInversionError(ZeroDivisionError):
    """Inverse of zero requested."""


def is_square_free_int(n: int) -> bool:
    if n <= 1:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def _poly_div_exact_int(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic; division is exact for cyclotomic factors of y^n - 1
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - 1, len(den) - 2, -1):
        c = num[i]
        k = i - (len(den) - 1)
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact cyclotomic division")
    return out


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending degree, computed by dividing
    y^n - 1 by the lower-order cyclotomics."""
    if n < 1:
        raise ValueError("cyclotomic order must be >= 1")
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_div_exact_int(poly, cyclotomic(d))
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic(n)) - 1


@dataclass(frozen=True)
class FieldDesc:
    """The tower Q(sqrt(D), zeta_n); degenerate orders n in {1, 2} keep the
    same uniform representation (zeta_1 = 1, zeta_2 = -1)."""

    D: int
    n: int

    def __post_init__(self) -> None:
        if not is_square_free_int(self.D):
            raise ValueError(f"D={self.D} is not a square-free integer > 1")
        if self.n < 1:
            raise ValueError("cyclotomic order must be >= 1")

    @property
    def phi(self) -> int:
        return euler_phi(self.n)

    @property
    def cyclo(self) -> tuple[int, ...]:
        return cyclotomic(self.n)


@lru_cache(maxsize=None)
def field_tower(D: int, n: int) -> FieldDesc:
    return FieldDesc(D, n)


_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class QuadElt:
    """a + b*sqrt(D), components kept reduced by Fraction."""

    a: Fraction
    b: Fraction
    D: int

    @staticmethod
    def of(a, b, D: int) -> "QuadElt":
        return QuadElt(Fraction(a), Fraction(b), D)

    @staticmethod
    def rational(a, D: int) -> "QuadElt":
        return QuadElt(Fraction(a), _ZERO, D)

    def _check(self, other: "QuadElt") -> None:
        if self.D != other.D:
            raise FieldMismatchError(f"D mismatch: {self.D} != {other.D}")

    def __add__(self, other: "QuadElt") -> "QuadElt":
        self._check(other)
        return QuadElt(self.a + other.a, self.b + other.b, self.D)

    def __sub__(self, other: "QuadElt") -> "QuadElt":
        self._check(other)
        return QuadElt(self.a - other.a, self.b - other.b, self.D)

    def __neg__(self) -> "QuadElt":
        return QuadElt(-self.a, -self.b, self.D)

    def __mul__(self, other) -> "QuadElt":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return QuadElt(self.a * q, self.b * q, self.D)
        self._check(other)
        return QuadElt(
            self.a * other.a + self.D * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.D,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadElt":
        return QuadElt(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def inverse(self) -> "QuadElt":
        n = self.norm()
        if n == 0:
            raise ZeroInversionError("inverse of zero in Q(sqrt(D))")
        return QuadElt(self.a / n, -self.b / n, self.D)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def key(self) -> tuple:
        return (
            self.a.numerator,
            self.a.denominator,
            self.b.numerator,
            self.b.denominator,
        )


def quad_conjugate(x: QuadElt) -> QuadElt:
    return x.conjugate()


def quad_norm(x: QuadElt) -> Fraction:
    return x.norm()


@lru_cache(maxsize=None)
def _zeta_power_vector(n: int, j: int) -> tuple[Fraction, ...]:
    """Coefficient vector of y^j reduced modulo Phi_n, length phi(n)."""
    phi = euler_phi(n)
    cyclo = cyclotomic(n)
    j %= n
    vec = [_ZERO] * max(phi, j + 1)
    vec[j] = _ONE
    for i in range(len(vec) - 1, phi - 1, -1):
        c = vec[i]
        vec[i] = _ZERO
        if c:
            for k in range(phi):
                vec[i - phi + k] -= c * cyclo[k]
    return tuple(vec[:phi])


@dataclass(frozen=True)
class GaloisAut:
    """sqrt(D) -> -sqrt(D) iff flip_sqrt; zeta -> zeta^zeta_exp."""

    flip_sqrt: bool
    zeta_exp: int = 1


SIGMA = GaloisAut(flip_sqrt=True, zeta_exp=1)


@dataclass(frozen=True)
class TowerElt:
    """Element of Q(sqrt(D), zeta_n): coefficient of zeta^k at index k,
    each coefficient in Q(sqrt(D)), reduced modulo Phi_n."""

    coeffs: tuple[QuadElt, ...]
    field: FieldDesc

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.field.phi:
            raise ValueError("coefficient vector must have length phi(n)")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_quad(q: QuadElt, field: FieldDesc) -> "TowerElt":
        if q.D != field.D:
            raise FieldMismatchError("quadratic element from the wrong field")
        zero = QuadElt.rational(0, field.D)
        return TowerElt((q,) + (zero,) * (field.phi - 1), field)

    @staticmethod
    def from_rational(a, field: FieldDesc) -> "TowerElt":
        return TowerElt.from_quad(QuadElt.rational(a, field.D), field)

    @staticmethod
    def zero(field: FieldDesc) -> "TowerElt":
        return TowerElt.from_rational(0, field)

    @staticmethod
    def one(field: FieldDesc) -> "TowerElt":
        return TowerElt.from_rational(1, field)

    @staticmethod
    def sqrtD(field: FieldDesc) -> "TowerElt":
        return TowerElt.from_quad(QuadElt.of(0, 1, field.D), field)

    @staticmethod
    def zeta(field: FieldDesc) -> "TowerElt":
        vec = _zeta_power_vector(field.n, 1)
        return TowerElt(
            tuple(QuadElt.rational(c, field.D) for c in vec), field
        )

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "TowerElt") -> None:
        if self.field != other.field:
            raise FieldMismatchError(
                f"tower mismatch: {self.field} != {other.field}"
            )

    def __add__(self, other: "TowerElt") -> "TowerElt":
        self._check(other)
        return TowerElt(
            tuple(x + y for x, y in zip(self.coeffs, other.coeffs)), self.field
        )

    def __sub__(self, other: "TowerElt") -> "TowerElt":
        self._check(other)
        return TowerElt(
            tuple(x - y for x, y in zip(self.coeffs, other.coeffs)), self.field
        )

    def __neg__(self) -> "TowerElt":
        return TowerElt(tuple(-x for x in self.coeffs), self.field)

    def __mul__(self, other) -> "TowerElt":
        if isinstance(other, (int, Fraction)):
            return TowerElt(
                tuple(c * other for c in self.coeffs), self.field
            )
        if isinstance(other, QuadElt):
            return TowerElt(
                tuple(c * other for c in self.coeffs), self.field
            )
        self._check(other)
        phi = self.field.phi
        zero = QuadElt.rational(0, self.field.D)
        prod = [zero] * (2 * phi - 1)
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(other.coeffs):
                if not y.is_zero():
                    prod[i + j] = prod[i + j] + x * y
        return TowerElt(tuple(_reduce_mod_cyclo(prod, self.field)), self.field)

    __rmul__ = __mul__

    def inverse(self) -> "TowerElt":
        return tower_inv(self)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def as_quad(self) -> QuadElt | None:
        """The element as a member of Q(sqrt(D)), if it lies there."""
        if any(not c.is_zero() for c in self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def as_rational(self) -> Fraction | None:
        q = self.as_quad()
        if q is None or not q.is_rational():
            return None
        return q.a

    def galois(self, aut: GaloisAut) -> "TowerElt":
        return apply_galois(aut, self)

    def key(self) -> tuple:
        return tuple(c.key() for c in self.coeffs)


def _reduce_mod_cyclo(vec: list[QuadElt], field: FieldDesc) -> list[QuadElt]:
    phi = field.phi
    cyclo = field.cyclo
    vec = list(vec)
    for i in range(len(vec) - 1, phi - 1, -1):
        c = vec[i]
        vec[i] = QuadElt.rational(0, field.D)
        if not c.is_zero():
            for k in range(phi):
                if cyclo[k]:
                    vec[i - phi + k] = vec[i - phi + k] - c * cyclo[k]
    if len(vec) < phi:
        vec += [QuadElt.rational(0, field.D)] * (phi - len(vec))
    return vec[:phi]


def tower_mul(x: TowerElt, y: TowerElt) -> TowerElt:
    return x * y


def _quadpoly_divmod(
    num: list[QuadElt], den: list[QuadElt], D: int
) -> tuple[list[QuadElt], list[QuadElt]]:
    num = list(num)
    dden = len(den) - 1
    lead_inv = den[-1].inverse()
    quot = [QuadElt.rational(0, D)] * max(len(num) - dden, 1)
    for i in range(len(num) - 1, dden - 1, -1):
        c = num[i] * lead_inv
        if not c.is_zero():
            quot[i - dden] = c
            for j, d in enumerate(den):
                num[i - dden + j] = num[i - dden + j] - c * d
    while len(num) > 1 and num[-1].is_zero():
        num.pop()
    return quot, num


def tower_inv(x: TowerElt) -> TowerElt:
    """Inverse via extended gcd against Phi_n over Q(sqrt(D))."""
    if x.is_zero():
        raise ZeroInversionError("inverse of zero tower element")
    field = x.field
    if field.phi == 1:
        return TowerElt((x.coeffs[0].inverse(),), field)
    D = field.D
    zero = QuadElt.rational(0, D)
    one = QuadElt.rational(1, D)
    # extended Euclid: r0 = Phi_n, r1 = x; track s in x-coordinates only
    r0 = [QuadElt.rational(c, D) for c in field.cyclo]
    r1 = list(x.coeffs)
    while len(r1) > 1 and r1[-1].is_zero():
        r1.pop()
    s0: list[QuadElt] = [zero]
    s1: list[QuadElt] = [one]
    while not (len(r1) == 1 and r1[0].is_zero()):
        q, r = _quadpoly_divmod(r0, r1, D)
        # s_next = s0 - q * s1
        s_next = list(s0) + [zero] * max(0, len(q) + len(s1) - 1 - len(s0))
        for i, qc in enumerate(q):
            if qc.is_zero():
                continue
            for j, sc in enumerate(s1):
                s_next[i + j] = s_next[i + j] - qc * sc
        r0, r1 = r1, r
        s0, s1 = s1, s_next
    # r0 is a nonzero constant gcd; x * s0 = r0 mod Phi_n
    c_inv = r0[0].inverse()
    vec = [sc * c_inv for sc in s0]
    return TowerElt(tuple(_reduce_mod_cyclo(vec, field)), field)


def apply_galois(aut: GaloisAut, x: TowerElt) -> TowerElt:
    field = x.field
    k = aut.zeta_exp % field.n
    if gcd(aut.zeta_exp, field.n) != 1:
        raise ValueError("zeta exponent must be coprime to the tower order")
    coeffs = [c.conjugate() if aut.flip_sqrt else c for c in x.coeffs]
    zero = QuadElt.rational(0, field.D)
    out = [zero] * field.phi
    for i, c in enumerate(coeffs):
        if c.is_zero():
            continue
        vec = _zeta_power_vector(field.n, (i * k) % field.n)
        for j, r in enumerate(vec):
            if r:
                out[j] = out[j] + c * r
    return TowerElt(tuple(out), field)
