"""Text grammar for exact elements, shared by the CLI and certificates.

    rat  := int [ "/" posint ]
    quad := rat | rat ("+"|"-") rat "*" "s"

where "s" denotes sqrt(D).  Tower elements serialize as a JSON array of
quad strings indexed by the power of zeta.
"""

from __future__ import annotations

from fractions import Fraction

from .numbers import FieldDesc, QuadElt, TowerElt


class ElementSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, message: str) -> None:
        super().__init__(f"at position {pos} in {text!r}: {message}")
        self.text = text
        self.pos = pos


class _Scanner:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, message: str) -> ElementSyntaxError:
        return ElementSyntaxError(self.text, self.pos, message)

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self, signed: bool = True) -> int:
        self.skip_ws()
        start = self.pos
        if signed and self.peek() in ("+", "-"):
            self.pos += 1
        if not self.peek().isdigit():
            raise self.error("expected a digit")
        while self.peek().isdigit():
            self.pos += 1
        return int(self.text[start : self.pos])

    def rational(self) -> Fraction:
        num = self.integer()
        self.skip_ws()
        if self.peek() == "/":
            self.pos += 1
            den = self.integer(signed=False)
            if den == 0:
                raise self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)


def parse_quad(text: str, D: int) -> QuadElt:
    sc = _Scanner(text)
    a = sc.rational()
    sc.skip_ws()
    if sc.peek() in ("+", "-"):
        sign = 1 if sc.peek() == "+" else -1
        sc.pos += 1
        b = sc.rational() * sign
        sc.skip_ws()
        sc.expect("*")
        sc.skip_ws()
        sc.expect("s")
    else:
        b = Fraction(0)
    sc.skip_ws()
    if sc.pos != len(text):
        raise sc.error("trailing characters")
    return QuadElt(a, b, D)


def format_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_quad(q: QuadElt) -> str:
    if q.b == 0:
        return format_rat(q.a)
    sign = "+" if q.b > 0 else "-"
    return f"{format_rat(q.a)}{sign}{format_rat(abs(q.b))}*s"


def parse_element(text, field: FieldDesc) -> TowerElt:
    """A quad string, or a list of quad strings indexed by zeta power."""
    if isinstance(text, str):
        return TowerElt.from_quad(parse_quad(text, field.D), field)
    parts = list(text)
    if len(parts) != field.phi:
        raise ValueError(
            f"tower element needs {field.phi} coordinates, got {len(parts)}"
        )
    return TowerElt(
        tuple(parse_quad(p, field.D) for p in parts), field
    )


def format_element(x: TowerElt):
    """Inverse of parse_element: a bare quad string when the element lies
    in the quadratic subfield and phi = 1, else the coordinate array."""
    if x.field.phi == 1:
        return format_quad(x.coeffs[0])
    return [format_quad(c) for c in x.coeffs]
