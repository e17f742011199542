"""Exact dense univariate polynomials over Fraction in the coordinate w."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Iterator

from .arith import Valuation, nu_p
from .errors import PolyParseError

NEG_INFINITY = float("-inf")


def _coerce(value: object) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"polynomial coefficients must be exact rationals, got {value!r}")


class Poly:
    """Immutable dense polynomial; coefficient i belongs to w^i.

    Trailing zero coefficients are trimmed, so the zero polynomial stores
    nothing and reports degree -inf.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[Fraction | int] = ()) -> None:
        coeffs = [_coerce(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs = tuple(coeffs)

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def constant(cls, value: Fraction | int) -> "Poly":
        return cls((value,))

    @classmethod
    def variable(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, coefficient: Fraction | int, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("monomial exponent must be >= 0")
        return cls((0,) * exponent + (coefficient,))

    # ---- basic structure ----------------------------------------------

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int | float:
        """Degree in w; -inf for the zero polynomial."""
        return len(self._coeffs) - 1 if self._coeffs else NEG_INFINITY

    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, exponent: int) -> Fraction:
        if 0 <= exponent < len(self._coeffs):
            return self._coeffs[exponent]
        return Fraction(0)

    def leading_coefficient(self) -> Fraction:
        if not self._coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == Poly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    # ---- ring operations ----------------------------------------------

    def __add__(self, other: "Poly | Fraction | int") -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        summed = list(a)
        for i, c in enumerate(b):
            summed[i] += c
        return Poly(summed)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self._coeffs))

    def __sub__(self, other: "Poly | Fraction | int") -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        return self + (-other)

    def __rsub__(self, other: "Fraction | int") -> "Poly":
        return Poly.constant(other) - self

    def __mul__(self, other: "Poly | Fraction | int") -> "Poly":
        if not isinstance(other, Poly):
            factor = _coerce(other)
            return Poly(tuple(c * factor for c in self._coeffs))
        if self.is_zero() or other.is_zero():
            return Poly.zero()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                if b:
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, factor: Fraction | int) -> "Poly":
        return self * factor

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"polynomial exponent must be a natural number, got {exponent!r}")
        result = Poly.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # ---- evaluation and substitution ----------------------------------

    def evaluate(self, x: Fraction | int) -> Fraction:
        """Exact Horner evaluation."""
        x = _coerce(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def substitute_affine(self, a: Fraction | int, b: Fraction | int) -> "Poly":
        """Return f(a*w + b), exactly (Horner over the polynomial ring)."""
        inner = Poly((b, a))
        acc = Poly.zero()
        for c in reversed(self._coeffs):
            acc = acc * inner + c
        return acc

    def min_coeff_valuation(self, p: int) -> Valuation:
        """Minimum of nu_p over all coefficients; infinite for the zero polynomial."""
        best = Valuation.infinite()
        for c in self._coeffs:
            v = nu_p(p, c)
            if v < best:
                best = v
        return best

    # ---- serialization --------------------------------------------------

    def to_json(self) -> list[str]:
        """Coefficient list as exact "num/den" strings, index = degree."""
        return [str(c) for c in self._coeffs]

    @classmethod
    def from_json(cls, data: Iterable[str]) -> "Poly":
        return cls(tuple(Fraction(s) for s in data))

    def __repr__(self) -> str:
        return f"Poly({list(self._coeffs)!r})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        den = 1
        for c in self._coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        body = _render_integer_poly([c * den for c in self._coeffs])
        if den == 1:
            return body
        return f"({body})/{den}"

    # ---- parsing --------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Parse ``3/8*w^2 - w + 1`` style expressions (also parenthesized)."""
        return _Parser(text).parse()


def _render_integer_poly(coeffs: list[Fraction]) -> str:
    terms = []
    for exp in range(len(coeffs) - 1, -1, -1):
        c = coeffs[exp]
        if c == 0:
            continue
        mag = abs(c)
        mag_int = mag.numerator  # denominator 1 by construction
        if exp == 0:
            text = str(mag_int)
        else:
            head = "w" if exp == 1 else f"w^{exp}"
            text = head if mag_int == 1 else f"{mag_int}*{head}"
        if not terms:
            terms.append(text if c > 0 else f"-{text}")
        else:
            terms.append(f" + {text}" if c > 0 else f" - {text}")
    return "".join(terms)


_TOKEN = re.compile(r"\s*(\d+|[wW]|\*\*|[-+*/^()])")


class _Parser:
    """Recursive-descent parser for the small polynomial grammar.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' natural)*
    atom   := natural | 'w' | '(' expr ')'

    Division requires a nonzero constant divisor.
    """

    def __init__(self, text: str) -> None:
        self._text = text
        self._tokens = self._tokenize(text)
        self._pos = 0

    @staticmethod
    def _tokenize(text: str) -> list[str]:
        tokens = []
        pos = 0
        while pos < len(text):
            match = _TOKEN.match(text, pos)
            if match is None:
                if text[pos:].strip():
                    raise PolyParseError(f"unexpected character {text[pos:].strip()[0]!r} in {text!r}")
                break
            token = match.group(1)
            tokens.append("^" if token == "**" else token.lower())
            pos = match.end()
        return tokens

    def _peek(self) -> str | None:
        return self._tokens[self._pos] if self._pos < len(self._tokens) else None

    def _next(self) -> str:
        token = self._peek()
        if token is None:
            raise PolyParseError(f"unexpected end of expression in {self._text!r}")
        self._pos += 1
        return token

    def parse(self) -> Poly:
        if not self._tokens:
            raise PolyParseError("empty polynomial expression")
        result = self._expr()
        if self._peek() is not None:
            raise PolyParseError(f"trailing input {self._peek()!r} in {self._text!r}")
        return result

    def _expr(self) -> Poly:
        sign = 1
        if self._peek() in ("+", "-"):
            sign = -1 if self._next() == "-" else 1
        acc = self._term() * sign
        while self._peek() in ("+", "-"):
            op = self._next()
            term = self._term()
            acc = acc + term if op == "+" else acc - term
        return acc

    def _term(self) -> Poly:
        acc = self._factor()
        while self._peek() in ("*", "/"):
            op = self._next()
            rhs = self._factor()
            if op == "*":
                acc = acc * rhs
            else:
                if rhs.degree > 0:
                    raise PolyParseError("division by a non-constant polynomial")
                divisor = rhs.coefficient(0)
                if divisor == 0:
                    raise PolyParseError("division by zero")
                acc = acc * (1 / divisor)
        return acc

    def _factor(self) -> Poly:
        acc = self._atom()
        while self._peek() == "^":
            self._next()
            token = self._next()
            if not token.isdigit():
                raise PolyParseError(f"exponent must be a natural number, got {token!r}")
            acc = acc ** int(token)
        return acc

    def _atom(self) -> Poly:
        token = self._next()
        if token.isdigit():
            return Poly.constant(int(token))
        if token == "w":
            return Poly.variable()
        if token == "(":
            inner = self._expr()
            if self._next() != ")":
                raise PolyParseError(f"unbalanced parentheses in {self._text!r}")
            return inner
        raise PolyParseError(f"unexpected token {token!r} in {self._text!r}")
