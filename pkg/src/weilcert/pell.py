"""Negative Pell equation a^2 - D*b^2 = -1 and the unit parameters built
from its fundamental solution.

Solvability is decided by the parity of the continued-fraction period of
sqrt(D); the recurrences are exact integer arithmetic throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .numbers import QuadElt, is_square_free_int


class PellUnsolvableError(ValueError):
    """The negative Pell equation has no solution for this D."""


class InvalidParameterError(ValueError):
    """Parameter outside the documented domain."""


@dataclass(frozen=True)
class PellSolution:
    a: int
    b: int
    D: int

    def __post_init__(self) -> None:
        if self.a * self.a - self.D * self.b * self.b != -1:
            raise ValueError("not a negative Pell solution")

    def unit(self) -> QuadElt:
        return QuadElt.of(self.a, self.b, self.D)


@dataclass(frozen=True)
class EtaSelection:
    etas: tuple[QuadElt, ...]
    family_kind: str  # "hyperelliptic" | "plane"
    exponents: tuple[int, ...]


def _validate_d(D: int) -> None:
    if not is_square_free_int(D):
        raise InvalidParameterError(f"D={D} must be a square-free integer > 1")


def solve_negative_pell(D: int) -> PellSolution | None:
    """Fundamental solution of a^2 - D*b^2 = -1, or None when the
    continued-fraction period of sqrt(D) is even."""
    _validate_d(D)
    a0 = isqrt(D)
    # continued-fraction expansion of sqrt(D): convergents h/k
    m, d, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    while True:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        if d == 1:
            # end of period: h/k is the convergent just before it repeats
            if h * h - D * k * k == -1:
                return PellSolution(h, k, D)
            return None
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev


def norm_minus_one_units(D: int, k: int) -> list[QuadElt]:
    """First k odd powers of the fundamental norm -1 unit, increasing."""
    sol = solve_negative_pell(D)
    if sol is None:
        raise PellUnsolvableError(f"negative Pell equation unsolvable for D={D}")
    if k < 0:
        raise InvalidParameterError("count must be >= 0")
    eta0 = sol.unit()
    sq = eta0 * eta0
    out = []
    cur = eta0
    for _ in range(k):
        out.append(cur)
        cur = cur * sq
    return out


def _excluded_hyper_values(D: int) -> list[QuadElt]:
    sqrt_d = QuadElt.of(0, 1, D)
    inv = sqrt_d.inverse()
    return [sqrt_d, -sqrt_d, inv, -inv]


def select_etas(D: int, kind: str, count: int) -> EtaSelection:
    """Unit parameters for a family; always the lexicographically smallest
    admissible odd exponent tuple (ties broken by construction)."""
    if kind not in ("hyperelliptic", "plane"):
        raise InvalidParameterError(f"unknown family kind: {kind}")
    if count < 1:
        raise InvalidParameterError("count must be >= 1")
    sol = solve_negative_pell(D)
    if sol is None:
        raise PellUnsolvableError(f"negative Pell equation unsolvable for D={D}")

    if kind == "hyperelliptic":
        exponents = tuple(range(1, 2 * count, 2))
        etas = tuple(norm_minus_one_units(D, count))
        excluded = _excluded_hyper_values(D)
        for e in etas:
            assert e.norm() == -1
            assert not e.is_rational()
            assert all(e != x for x in excluded)
        for ei in etas:
            inv = ei.inverse()
            assert all(ej != inv and ej != -inv for ej in etas)
        return EtaSelection(etas, kind, exponents)

    # plane kind: odd, distinct exponents with sum divisible by count, so
    # the Y-scaling of the conjugate isomorphism exists inside the tower.
    m = count
    exponents = tuple(range(1, 2 * m, 2))
    assert sum(exponents) % m == 0  # sum of first m odd numbers is m^2
    units = norm_minus_one_units(D, m)
    etas = tuple(units)
    for e in etas:
        assert e.norm() == -1
    return EtaSelection(etas, kind, exponents)
