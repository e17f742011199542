from fractions import Fraction

import pytest

from coopbasis import (InternalConsistencyError, Poly, ResourceLimitError,
                       SymbolicPoly, alpha_p, hazewinkel_t_solutions,
                       is_semistable_2local, is_semistable_plocal_residues,
                       monomial_af, phi_family, phi_family_oracle, phi_monomial)


def test_phi_family_first_members():
    fam = phi_family(2, 3)
    assert fam.phi(1) == Poly((Fraction(-1, 2), Fraction(1, 2)))
    assert fam.phi(2) == Poly((Fraction(-3, 8), Fraction(1, 4), Fraction(-1, 8), Fraction(1, 4)))
    assert fam.phi(2).evaluate(3) == 6
    assert fam.phi(3).evaluate(3) == 255
    assert fam.af == (-1, -3, -7)


def test_phi_family_odd_prime_values():
    fam = phi_family(3, 2)
    assert fam.phi(1) == Poly((Fraction(-1, 3), 0, Fraction(1, 3)))
    assert fam.phi(2).evaluate(2) == 28
    assert fam.af == (-1, -4)


def test_phi_degrees_and_exponent_support():
    for p, count in ((2, 5), (3, 3), (5, 2)):
        fam = phi_family(p, count)
        for n in range(1, count + 1):
            f = fam.phi(n)
            assert f.degree == p ** n - 1
            support = [e for e in range(int(f.degree) + 1) if f.coefficient(e) != 0]
            assert all(e % (p - 1) == 0 for e in support)


def test_phi_family_members_are_integral():
    fam = phi_family(2, 5)
    for n in range(1, 6):
        assert is_semistable_2local(fam.phi(n))
    fam3 = phi_family(3, 2)
    for n in (1, 2):
        assert is_semistable_plocal_residues(3, fam3.phi(n))


def test_phi_monomials_are_integral():
    fam = phi_family(2, 6)
    for k in range(33):
        assert is_semistable_2local(phi_monomial(2, k, fam).poly)
    fam3 = phi_family(3, 2)
    for k in range(9):  # digit products on phi_1, phi_2; all fit the budget
        assert is_semistable_plocal_residues(3, phi_monomial(3, k, fam3).poly)


def test_phi_family_degree_budget():
    with pytest.raises(ResourceLimitError):
        phi_family(7, 9)
    with pytest.raises(ResourceLimitError):
        phi_family(2, 3, max_degree=6)


@pytest.mark.parametrize("p,count", [(2, 5), (3, 3), (5, 2)])
def test_oracle_equivalence(p, count):
    fam = phi_family(p, count)
    oracle = phi_family_oracle(p, count)
    assert fam.polys == oracle.polys
    assert fam.af == oracle.af


@pytest.mark.parametrize("p", [2, 3, 5])
def test_worked_generator_identities(p):
    u = SymbolicPoly.variable("u1")
    v = SymbolicPoly.variable("v1")
    t1, t2 = hazewinkel_t_solutions(p, 2)
    assert t1 == (u - v) * Fraction(1, p)
    assert t2 == (u ** (p + 1) - v ** (p + 1)) * Fraction(1, p ** 2) - v * t1 ** p * Fraction(1, p)


def test_oracle_t1_gives_phi1():
    oracle = phi_family_oracle(2, 1)
    assert oracle.phi(1) == Poly((Fraction(-1, 2), Fraction(1, 2)))


def test_phi_monomial_examples():
    fam = phi_family(2, 3)
    assert phi_monomial(2, 0, fam).poly == Poly.one()
    m3 = phi_monomial(2, 3, fam)
    assert m3.poly == fam.phi(1) * fam.phi(2)
    assert m3.degree == 4
    m5 = phi_monomial(2, 5, fam)
    assert m5.poly == fam.phi(1) * fam.phi(3)
    assert m5.degree == 8
    assert m5.digits == (1, 0, 1)


def test_phi_monomial_needs_family_members():
    fam = phi_family(2, 2)
    with pytest.raises(ValueError):
        phi_monomial(2, 4, fam)  # needs phi_3
    with pytest.raises(ValueError):
        phi_monomial(3, 1, fam)  # prime mismatch


def test_monomial_degree_law():
    for p, count in ((2, 5), (3, 3)):
        fam = phi_family(p, count)
        previous = -1
        for k in range(p ** count):
            m = phi_monomial(p, k, fam)
            doubled = p * k - alpha_p(p, k)
            assert doubled % (p - 1) == 0
            scaled = doubled // (p - 1)
            assert (m.poly.degree == doubled) or (k == 0 and m.poly.degree == 0)
            assert scaled > previous
            previous = scaled


def test_monomial_af_examples():
    assert monomial_af(2, 1) == -1
    assert monomial_af(2, 3) == -4
    assert monomial_af(2, 0) == 0
    for k in range(64):
        assert monomial_af(2, k) == alpha_p(2, k) - 2 * k
    assert monomial_af(3, 3) == -4  # digit (0,1): AF(phi_2) = -(3^2-1)/2


def test_symbolic_poly_basics():
    u = SymbolicPoly.variable("u1")
    v = SymbolicPoly.variable("v1")
    assert (u + v) * (u - v) == u ** 2 - v ** 2
    assert (u * v).substitute("u1", v) == v ** 2
    head, tail = (2 * u + v * v + 3).split_linear("u1")
    assert head == SymbolicPoly.constant(2)
    assert tail == v ** 2 + 3
    with pytest.raises(ValueError):
        (u ** 2).split_linear("u1")


def test_oracle_normalization_rejects_inhomogeneous_terms():
    from coopbasis.phi import _normalized_t_to_poly

    u = SymbolicPoly.variable("u1")
    with pytest.raises(InternalConsistencyError):
        _normalized_t_to_poly(2, 1, u * u)  # degree 2 term, span is 1
