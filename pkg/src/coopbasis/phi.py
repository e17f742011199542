"""The phi-family of semistable polynomials and its formal-group-law oracle.

The family is built by the recursion

    phi_1 = (w^(p-1) - 1) / p
    phi_n = (w^(p^n - 1) - sum_{i=1}^{n-1} p^i * phi_i^(p^(n-i)) - 1) / p^n

and cross-checked against an independent derivation from the Hazewinkel
generators: starting from

    p*lam_n      = sum_{0 <= i < n}  lam_i * v_{n-i}^(p^i)
    eta_R(lam_n) = sum_{0 <= i <= n} lam_i * t_{n-i}^(p^i)      (t_0 = 1)

one kills u_k = eta_R(v_k) and v_k for k >= 2, substitutes the resulting
closed form lam_n = v_1^((p^n-1)/(p-1)) / p^n, solves the relations
successively for t_n, normalizes by v_1^(-(p^n-1)/(p-1)), and rewrites in
w via u_1/v_1 = w^(p-1).  Both routes must agree exactly.

Products phi_1^{k_0} * phi_2^{k_1} * ... over the base-p digits k_i of k
are the monomial generating set of the p-local cooperations module.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from typing import Iterable, Mapping

from .arith import alpha_p, base_p_digits, require_prime
from .errors import InternalConsistencyError, ResourceLimitError
from .poly import Poly
from .semistable import (DEFAULT_RESIDUE_BUDGET, is_semistable_2local,
                         is_semistable_plocal_residues)

DEFAULT_MAX_DEGREE = 1_000_000

Monomial = tuple[tuple[str, int], ...]


def _coerce_scalar(value: object) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"expected an exact rational scalar, got {value!r}")


class SymbolicPoly:
    """Minimal exact multivariate polynomial over Fraction.

    Just enough ring structure for the generator elimination: named
    indeterminates, ring operations, natural powers, and substitution.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None) -> None:
        cleaned: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    cleaned[mono] = coeff
        self._terms = cleaned

    @classmethod
    def constant(cls, value: Fraction | int) -> "SymbolicPoly":
        value = _coerce_scalar(value)
        return cls({(): value} if value else {})

    @classmethod
    def variable(cls, name: str) -> "SymbolicPoly":
        return cls({((name, 1),): Fraction(1)})

    def terms(self) -> Iterable[tuple[Monomial, Fraction]]:
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def variables(self) -> set[str]:
        return {name for mono in self._terms for name, _ in mono}

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SymbolicPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == SymbolicPoly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "SymbolicPoly | Fraction | int") -> "SymbolicPoly":
        if not isinstance(other, SymbolicPoly):
            other = SymbolicPoly.constant(other)
        merged = dict(self._terms)
        for mono, coeff in other._terms.items():
            merged[mono] = merged.get(mono, Fraction(0)) + coeff
        return SymbolicPoly(merged)

    __radd__ = __add__

    def __neg__(self) -> "SymbolicPoly":
        return SymbolicPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "SymbolicPoly | Fraction | int") -> "SymbolicPoly":
        if not isinstance(other, SymbolicPoly):
            other = SymbolicPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other: "Fraction | int") -> "SymbolicPoly":
        return SymbolicPoly.constant(other) - self

    @staticmethod
    def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
        exps = dict(a)
        for name, e in b:
            exps[name] = exps.get(name, 0) + e
        return tuple(sorted(exps.items()))

    def __mul__(self, other: "SymbolicPoly | Fraction | int") -> "SymbolicPoly":
        if not isinstance(other, SymbolicPoly):
            factor = _coerce_scalar(other)
            return SymbolicPoly({m: c * factor for m, c in self._terms.items()})
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                mono = self._mono_mul(ma, mb)
                out[mono] = out.get(mono, Fraction(0)) + ca * cb
        return SymbolicPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "SymbolicPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"exponent must be a natural number, got {exponent!r}")
        result = SymbolicPoly.constant(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def substitute(self, name: str, replacement: "SymbolicPoly") -> "SymbolicPoly":
        """Replace every occurrence of an indeterminate by a polynomial."""
        acc = SymbolicPoly()
        for mono, coeff in self._terms.items():
            exps = dict(mono)
            e = exps.pop(name, 0)
            rest = SymbolicPoly({tuple(sorted(exps.items())): coeff})
            acc = acc + (rest * replacement ** e if e else rest)
        return acc

    def split_linear(self, name: str) -> tuple["SymbolicPoly", "SymbolicPoly"]:
        """Write self as head*name + tail with name absent from head and tail."""
        head: dict[Monomial, Fraction] = {}
        tail: dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            exps = dict(mono)
            e = exps.pop(name, 0)
            if e == 0:
                tail[mono] = coeff
            elif e == 1:
                head_mono = tuple(sorted(exps.items()))
                head[head_mono] = head.get(head_mono, Fraction(0)) + coeff
            else:
                raise ValueError(f"{name} appears with exponent {e}; relation is not linear")
        return SymbolicPoly(head), SymbolicPoly(tail)

    def __repr__(self) -> str:
        if not self._terms:
            return "SymbolicPoly(0)"
        parts = []
        for mono, coeff in sorted(self._terms.items()):
            factors = [str(coeff)] + [f"{n}^{e}" if e > 1 else n for n, e in mono]
            parts.append("*".join(factors))
        return "SymbolicPoly(" + " + ".join(parts) + ")"


@dataclasses.dataclass(frozen=True)
class PhiFamily:
    """Memoized phi_1..phi_N for a fixed prime, with Adams filtrations.

    ``polys[i]`` is phi_{i+1}; ``af[i]`` its filtration -(p^(i+1)-1)/(p-1).
    """

    prime: int
    polys: tuple[Poly, ...]
    af: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.polys)

    def phi(self, n: int) -> Poly:
        if not 1 <= n <= len(self.polys):
            raise ValueError(f"phi_{n} not in family of size {len(self.polys)}")
        return self.polys[n - 1]


def _af_value(p: int, n: int) -> int:
    return -((p ** n - 1) // (p - 1))


def _check_family_integrality(p: int, polys: tuple[Poly, ...],
                              residue_budget: int) -> None:
    for n, f in enumerate(polys, start=1):
        if p == 2:
            ok = is_semistable_2local(f)
        else:
            try:
                ok = is_semistable_plocal_residues(p, f, budget=residue_budget)
            except ResourceLimitError:
                continue  # over-budget members are vouched for by the oracle equality
        if not ok:
            raise InternalConsistencyError(f"phi_{n} failed the p={p} integrality test")


def phi_family(p: int, count: int, *, max_degree: int = DEFAULT_MAX_DEGREE,
               residue_budget: int = DEFAULT_RESIDUE_BUDGET,
               verify_integrality: bool = True) -> PhiFamily:
    """Construct phi_1..phi_count at the prime p by the defining recursion."""
    require_prime(p)
    if count < 1:
        raise ValueError(f"family size must be >= 1, got {count}")
    top_degree = p ** count - 1
    if top_degree > max_degree:
        raise ResourceLimitError(
            f"phi_{count} at p={p} has degree {top_degree}, over the cap {max_degree}",
            required=top_degree, budget=max_degree)
    polys: list[Poly] = []
    for n in range(1, count + 1):
        numerator = Poly.monomial(1, p ** n - 1) - 1
        for i in range(1, n):
            numerator = numerator - polys[i - 1] ** (p ** (n - i)) * p ** i
        polys.append(numerator * Fraction(1, p ** n))
    family = tuple(polys)
    if verify_integrality:
        _check_family_integrality(p, family, residue_budget)
    return PhiFamily(p, family, tuple(_af_value(p, n) for n in range(1, count + 1)))


def hazewinkel_t_solutions(p: int, count: int) -> list[SymbolicPoly]:
    """Solve for t_1..t_count as exact polynomials in u1 and v1.

    Follows the elimination sketched in the module docstring.  Raises
    InternalConsistencyError if any step leaves terms that cannot be
    normalized; that would indicate a bug, not bad input.
    """
    require_prime(p)
    if count < 1:
        raise ValueError(f"need at least one generator, got {count}")
    u = SymbolicPoly.variable("u1")
    v = SymbolicPoly.variable("v1")

    lam = [SymbolicPoly.constant(1)]
    for n in range(1, count + 1):
        lam.append(lam[n - 1] * v ** (p ** (n - 1)) * Fraction(1, p))
        if lam[n] * p ** n != v ** ((p ** n - 1) // (p - 1)):
            raise InternalConsistencyError(f"lam_{n} disagrees with its closed form")

    def t_symbol(i: int) -> SymbolicPoly:
        return SymbolicPoly.constant(1) if i == 0 else SymbolicPoly.variable(f"t{i}")

    def eta_lambda(n: int) -> SymbolicPoly:
        acc = SymbolicPoly()
        for j in range(n + 1):
            acc = acc + lam[j] * t_symbol(n - j) ** (p ** j)
        return acc

    solutions: list[SymbolicPoly] = []
    for n in range(1, count + 1):
        if n == 1:
            relation = eta_lambda(1) * p - u
        else:
            relation = eta_lambda(n) * p - eta_lambda(n - 1) * u ** (p ** (n - 1))
        for i, solved in enumerate(solutions, start=1):
            relation = relation.substitute(f"t{i}", solved)
        try:
            head, tail = relation.split_linear(f"t{n}")
        except ValueError as exc:
            raise InternalConsistencyError(str(exc)) from exc
        if head != SymbolicPoly.constant(p):
            raise InternalConsistencyError(f"t{n} does not occur with unit coefficient p")
        solution = tail * Fraction(-1, p)
        if not solution.variables() <= {"u1", "v1"}:
            raise InternalConsistencyError(f"unresolved indeterminates in t{n}: "
                                           f"{sorted(solution.variables())}")
        solutions.append(solution)
    return solutions


def _normalized_t_to_poly(p: int, n: int, t_expr: SymbolicPoly) -> Poly:
    """Rewrite v1^(-(p^n-1)/(p-1)) * t_n in w, using u1/v1 = w^(p-1)."""
    span = (p ** n - 1) // (p - 1)
    coeffs = [Fraction(0)] * (p ** n - 1 + 1)
    for mono, coeff in t_expr.terms():
        exps = dict(mono)
        a = exps.pop("u1", 0)
        b = exps.pop("v1", 0)
        if exps or a + b != span:
            raise InternalConsistencyError(
                f"t{n} term {mono} is not homogeneous of degree {span} in u1, v1")
        coeffs[a * (p - 1)] += coeff
    return Poly(coeffs)


def phi_family_oracle(p: int, count: int, *,
                      max_degree: int = DEFAULT_MAX_DEGREE) -> PhiFamily:
    """Independent construction of the family from the Hazewinkel formulas."""
    require_prime(p)
    if count < 1:
        raise ValueError(f"family size must be >= 1, got {count}")
    top_degree = p ** count - 1
    if top_degree > max_degree:
        raise ResourceLimitError(
            f"phi_{count} at p={p} has degree {top_degree}, over the cap {max_degree}",
            required=top_degree, budget=max_degree)
    solutions = hazewinkel_t_solutions(p, count)
    polys = tuple(_normalized_t_to_poly(p, n, t) for n, t in enumerate(solutions, start=1))
    return PhiFamily(p, polys, tuple(_af_value(p, n) for n in range(1, count + 1)))


@dataclasses.dataclass(frozen=True)
class PhiMonomial:
    """Product of phi's over the base-p digits of the index k."""

    prime: int
    index: int
    digits: tuple[int, ...]
    poly: Poly

    @property
    def degree(self) -> int:
        """Degree in w: p*k - alpha_p(k), i.e. (p-1) times the w^(p-1) degree."""
        return self.prime * self.index - alpha_p(self.prime, self.index)


def phi_monomial(p: int, k: int, family: PhiFamily) -> PhiMonomial:
    """The monomial prod_i phi_{i+1}^{k_i} for the base-p digits k_i of k."""
    require_prime(p)
    if k < 0:
        raise ValueError(f"expected a natural index, got {k}")
    if family.prime != p:
        raise ValueError(f"family was built at p={family.prime}, not p={p}")
    digits = base_p_digits(p, k)
    product = Poly.one()
    for i, digit in enumerate(digits):
        if digit == 0:
            continue
        if i + 1 > len(family):
            raise ValueError(f"index {k} needs phi_{i + 1}, beyond family of size {len(family)}")
        product = product * family.phi(i + 1) ** digit
    monomial = PhiMonomial(p, k, digits, product)
    assert monomial.poly.degree == monomial.degree or k == 0
    return monomial


def monomial_af(p: int, k: int) -> int:
    """Adams filtration of the k-th phi-monomial: sum k_i * AF(phi_{i+1}).

    At p = 2 this equals alpha(k) - 2k.
    """
    require_prime(p)
    if k < 0:
        raise ValueError(f"expected a natural index, got {k}")
    return sum(d * _af_value(p, i + 1) for i, d in enumerate(base_p_digits(p, k)))
