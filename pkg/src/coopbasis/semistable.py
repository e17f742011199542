"""Semistable numerical polynomials: the g-basis and p-local integrality tests.

A rational polynomial f in Q[w] is 2-locally semistable when f(k) lies in
Z_(2) for every 2-adic unit k.  The polynomials

    g_n(w) = (w - 1)(w - 3) ... (w - (2n - 1)) / (2^n n!)

are a Z_(2)-basis of the semistable polynomials, obtained from the binomial
coefficient polynomials under the coordinate change k -> 2k + 1, so 2-local
integrality is decided by expanding in the g-basis.  At odd primes there is
no such basis here and the test exhausts unit residues modulo p^e.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import Iterable, Mapping

from .arith import nu_p, require_prime
from .errors import ResourceLimitError
from .poly import Poly

DEFAULT_RESIDUE_BUDGET = 10_000_000


@functools.lru_cache(maxsize=None)
def binomial_poly(n: int) -> Poly:
    """The binomial coefficient polynomial x(x-1)...(x-n+1)/n!."""
    if n < 0:
        raise ValueError(f"expected a natural number, got {n}")
    product = Poly.one()
    for i in range(n):
        product = product * Poly((-i, 1))
    return product * Fraction(1, math.factorial(n))


@functools.lru_cache(maxsize=None)
def g_poly(n: int) -> Poly:
    """The semistable basis polynomial (w-1)(w-3)...(w-(2n-1))/(2^n n!)."""
    if n < 0:
        raise ValueError(f"expected a natural number, got {n}")
    product = Poly.one()
    for i in range(1, n + 1):
        product = product * Poly((-(2 * i - 1), 1))
    return product * Fraction(1, 2 ** n * math.factorial(n))


class GExpansion:
    """Exact coordinates of a polynomial in the g-basis, finite support."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Mapping[int, Fraction | int] | Iterable[tuple[int, Fraction | int]] = ()) -> None:
        raw = dict(coefficients)
        items = {}
        for j, c in raw.items():
            c = Fraction(c)
            if c != 0:
                items[int(j)] = c
        self._coeffs = dict(sorted(items.items()))

    def __getitem__(self, index: int) -> Fraction:
        return self._coeffs.get(index, Fraction(0))

    def items(self) -> Iterable[tuple[int, Fraction]]:
        return self._coeffs.items()

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GExpansion):
            return self._coeffs == other._coeffs
        if isinstance(other, dict):
            return self == GExpansion(other)
        return NotImplemented

    def __repr__(self) -> str:
        return f"GExpansion({self._coeffs!r})"

    def to_poly(self) -> Poly:
        """Recombine sum b_j * g_j."""
        acc = Poly.zero()
        for j, b in self._coeffs.items():
            acc = acc + g_poly(j) * b
        return acc

    def to_json(self) -> dict[str, str]:
        return {str(j): str(c) for j, c in self._coeffs.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "GExpansion":
        return cls({int(j): Fraction(c) for j, c in data.items()})


def expand_in_g(f: Poly) -> GExpansion:
    """Unique exact coordinates of f in the g-basis.

    Descending-degree triangular elimination: g_j has degree j and leading
    coefficient 1/(2^j j!), so b_j = coeff_j(remainder) * 2^j * j!.
    """
    coeffs: dict[int, Fraction] = {}
    remainder = f
    while not remainder.is_zero():
        j = remainder.degree
        b = remainder.leading_coefficient() * 2 ** j * math.factorial(j)
        coeffs[j] = b
        remainder = remainder - g_poly(j) * b
        assert remainder.degree < j
    return GExpansion(coeffs)


def is_semistable_2local(f: Poly) -> bool:
    """True iff every g-basis coordinate of f is 2-locally integral."""
    return all(nu_p(2, b) >= 0 for _, b in expand_in_g(f).items())


def is_semistable_plocal_residues(p: int, f: Poly,
                                  budget: int = DEFAULT_RESIDUE_BUDGET) -> bool:
    """True iff nu_p(f(k)) >= 0 for every p-adic unit k, by residue exhaustion.

    With e = max(0, -min coefficient valuation), p^e*f has p-integral
    coefficients and its value mod p^e depends only on k mod p^e, so the
    units of Z/p^e exhaust all unit evaluations.  Work is bounded by
    p^e * (deg f + 1) and guarded by ``budget``.
    """
    require_prime(p)
    min_val = f.min_coeff_valuation(p)
    e = 0 if min_val.is_infinite else max(0, -min_val.value)
    if e == 0:
        return True
    terms = int(f.degree) + 1
    cost = p ** e * terms
    if cost > budget:
        raise ResourceLimitError(
            f"residue test needs e={e}: p^e*(deg+1) = {cost} exceeds budget {budget}",
            required=e, budget=budget)
    modulus = p ** e
    scaled = []
    for c in (f * modulus).coefficients:
        # nu_p(c) >= 0 here, so the reduced denominator is a unit mod p^e
        scaled.append(c.numerator * pow(c.denominator, -1, modulus) % modulus)
    for k in range(1, modulus):
        if k % p == 0:
            continue
        acc = 0
        for c in reversed(scaled):
            acc = (acc * k + c) % modulus
        if acc:
            return False
    return True
