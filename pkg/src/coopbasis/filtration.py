"""Adams-filtration weight calculus on the g-basis at p = 2.

For f = sum_j b_j g_j the computable weight is

    W(f) = min_j ( nu_2(b_j) + alpha(j) - 2j ),

built from AF(g_j) = alpha(j) - 2j.  W is a filtration lower bound and every
congruence check below is a statement about W: two polynomials agree modulo
higher filtration when their weights agree and their difference is strictly
heavier.  The same calculus drives the finite-precision expansion of a
semistable polynomial in the phi-monomial family.
"""

from __future__ import annotations

import dataclasses
import functools
import math
from fractions import Fraction

from .arith import Valuation, alpha_p, base_p_digits, nu_p
from .errors import NotSemistableError, WeightMonotonicityError
from .phi import PhiFamily, phi_family, phi_monomial
from .poly import Poly
from .semistable import GExpansion, expand_in_g, g_poly


@dataclasses.dataclass(frozen=True)
class WeightReport:
    """g-expansion of a polynomial with its weight and minimizing indices."""

    expansion: GExpansion
    weight: Valuation
    argmin: tuple[int, ...]


def weight(f: Poly) -> WeightReport:
    """Weight of f via its exact g-expansion; infinite only for f = 0."""
    expansion = expand_in_g(f)
    best = Valuation.infinite()
    per_index: dict[int, int] = {}
    for j, b in expansion.items():
        term = nu_p(2, b).value + alpha_p(2, j) - 2 * j
        per_index[j] = term
        if term < best:
            best = Valuation(term)
    argmin = tuple(sorted(j for j, t in per_index.items() if t == best))
    return WeightReport(expansion, best, argmin)


def weight_value(f: Poly) -> Valuation:
    return weight(f).weight


def congruent_mod_higher_af(a: Poly, b: Poly) -> bool:
    """True iff a and b agree modulo higher filtration (in the W sense)."""
    if a == b:
        return True
    weight_a = weight_value(a)
    if weight_a != weight_value(b):
        return False
    return weight_value(a - b) > weight_a


@functools.lru_cache(maxsize=None)
def _family(count: int) -> PhiFamily:
    return phi_family(2, count)


@functools.lru_cache(maxsize=None)
def _monomial_poly(k: int) -> Poly:
    if k == 0:
        return Poly.one()
    return phi_monomial(2, k, _family(k.bit_length())).poly


@dataclasses.dataclass(frozen=True)
class CongruenceCheck:
    """Outcome of one congruence-mod-higher-filtration comparison."""

    claim: str
    n: int
    weight_lhs: int | None
    weight_rhs: int | None
    weight_diff: int | None
    passed: bool


def _as_optional_int(v: Valuation) -> int | None:
    return None if v.is_infinite else v.value


def _check_pair(claim: str, n: int, lhs: Poly, rhs: Poly) -> CongruenceCheck:
    w_lhs = weight_value(lhs)
    w_rhs = weight_value(rhs)
    diff = Valuation.infinite() if lhs == rhs else weight_value(lhs - rhs)
    passed = lhs == rhs or (w_lhs == w_rhs and diff > w_lhs)
    return CongruenceCheck(claim, n, _as_optional_int(w_lhs),
                           _as_optional_int(w_rhs), _as_optional_int(diff), passed)


def verify_congruences(max_n: int) -> list[CongruenceCheck]:
    """Check the six weight congruences relating the g- and phi-families.

    For each applicable n <= max_n, compares (modulo higher weight):

      phi_vs_phi1_power       phi_n            vs  phi_1^(2^(n-1)) / 2^(2^(n-1)-1)
      g_vs_phi1_over_factorial g_n             vs  phi_1^n / n!
      g_vs_phi1_over_power2   g_n              vs  phi_1^n / 2^(n-alpha(n))
      g_power2_vs_phi         g_(2^j)          vs  phi_(j+1)
      g_vs_g_digit_product    g_n              vs  prod_i g_(2^i)^(n_i)
      g_vs_phi_monomial       g_n              vs  prod_i phi_(i+1)^(n_i)

    where n = sum n_i 2^i is the binary expansion.  Failures are reported,
    not raised.
    """
    if max_n < 1:
        raise ValueError(f"expected max_n >= 1, got {max_n}")
    top = max_n.bit_length()
    fam = _family(top)
    phi1 = fam.phi(1)
    checks: list[CongruenceCheck] = []

    for n in range(1, top + 1):
        half = 2 ** (n - 1)
        rhs = phi1 ** half * Fraction(1, 2 ** (half - 1))
        checks.append(_check_pair("phi_vs_phi1_power", n, fam.phi(n), rhs))

    for n in range(1, max_n + 1):
        rhs = phi1 ** n * Fraction(1, math.factorial(n))
        checks.append(_check_pair("g_vs_phi1_over_factorial", n, g_poly(n), rhs))

    for n in range(1, max_n + 1):
        rhs = phi1 ** n * Fraction(1, 2 ** (n - alpha_p(2, n)))
        checks.append(_check_pair("g_vs_phi1_over_power2", n, g_poly(n), rhs))

    for j in range(top):
        checks.append(_check_pair("g_power2_vs_phi", 2 ** j, g_poly(2 ** j), fam.phi(j + 1)))

    for n in range(1, max_n + 1):
        rhs = Poly.one()
        for i, digit in enumerate(base_p_digits(2, n)):
            if digit:
                rhs = rhs * g_poly(2 ** i)
        checks.append(_check_pair("g_vs_g_digit_product", n, g_poly(n), rhs))

    for n in range(1, max_n + 1):
        checks.append(_check_pair("g_vs_phi_monomial", n, g_poly(n), _monomial_poly(n)))

    return checks


def checks_to_json(checks: list[CongruenceCheck]) -> list[dict]:
    return [dataclasses.asdict(c) for c in checks]


@dataclasses.dataclass(frozen=True)
class TraceStep:
    """One greedy reduction step: the weight found and what was subtracted."""

    weight: int
    indices: tuple[int, ...]
    coefficients: tuple[tuple[int, Fraction], ...]


@dataclasses.dataclass(frozen=True)
class PhiExpansion:
    """Finite-precision coordinates of a semistable polynomial in the phi-monomials.

    ``coeffs`` holds canonical representatives in [0, 2^precision); the exact
    accumulated rationals are kept in ``exact_coeffs`` together with the exact
    ``residual`` so that f = sum exact_coeffs[k]*m_k + residual holds on the
    nose and callers can resume at higher precision.
    """

    precision: int
    coeffs: dict[int, int]
    exact_coeffs: dict[int, Fraction]
    residual: Poly
    trace: tuple[TraceStep, ...]

    @property
    def residual_weight(self) -> Valuation:
        return weight_value(self.residual)

    def to_json(self) -> dict:
        return {
            "M": self.precision,
            "coeffs": {str(k): v for k, v in sorted(self.coeffs.items())},
            "residual_weight": _as_optional_int(self.residual_weight),
            "residual": self.residual.to_json(),
            "trace": [
                {
                    "weight": step.weight,
                    "indices": list(step.indices),
                    "coefficients": {str(j): str(b) for j, b in step.coefficients},
                }
                for step in self.trace
            ],
        }


def expand_in_phi(f: Poly, precision: int) -> PhiExpansion:
    """Greedy filtration-graded expansion of f in the phi-monomial family.

    Each pass expands the residual in the g-basis, subtracts b_j * m_j over
    the minimal-weight indices j, and repeats until the residual weight
    reaches ``precision``.  The weight must strictly increase every pass
    (each subtraction trades g_j for the congruent m_j); a failure to do so
    raises WeightMonotonicityError and is a genuine mathematical finding.
    """
    if precision < 1:
        raise ValueError(f"precision must be >= 1, got {precision}")
    offending = tuple((j, b, nu_p(2, b).value) for j, b in expand_in_g(f).items()
                      if nu_p(2, b) < 0)
    if offending:
        raise NotSemistableError(
            f"input is not 2-locally semistable at g-indices {[j for j, _, _ in offending]}",
            coordinates=offending)

    residual = f
    exact: dict[int, Fraction] = {}
    trace: list[TraceStep] = []
    previous: Valuation | None = None
    while True:
        report = weight(residual)
        if previous is not None and report.weight <= previous:
            raise WeightMonotonicityError(
                f"weight stalled at {report.weight} (previous {previous}) after "
                f"{len(trace)} steps")
        if report.weight >= precision:
            break
        previous = report.weight
        step_coeffs = []
        for j in report.argmin:
            b = report.expansion[j]
            residual = residual - _monomial_poly(j) * b
            exact[j] = exact.get(j, Fraction(0)) + b
            step_coeffs.append((j, b))
        trace.append(TraceStep(report.weight.value, report.argmin, tuple(step_coeffs)))

    modulus = 2 ** precision
    reduced: dict[int, int] = {}
    for k, c in exact.items():
        representative = c.numerator * pow(c.denominator, -1, modulus) % modulus
        if representative:
            reduced[k] = representative
    exact_nonzero = {k: c for k, c in exact.items() if c != 0}
    return PhiExpansion(precision, reduced, exact_nonzero, residual, tuple(trace))
