"""Weight-graded monomial complexes under the Milnor primitives Q0 and Q1.

At p = 2 the underlying algebra is P(z1^2, z2^2, z3, z4, ...) with
wt(z_m) = 2^(m-1); at odd p it is P(z1, z2, ...) (x) E(tau_2, tau_3, ...)
with wt(z_m) = wt(tau_m) = p^m.  The span of the monomials of weight
exactly 2k (resp. pk) is a finite complex under each Q_i, and its Margolis
homology ker Q_i / im Q_i is computed degreewise by exact elimination
over F_p.

Action conventions (derivations in all cases):

    p = 2:   Q0(z_m) = z_{m-1}^2 and Q1(z_m) = z_{m-2}^4 for m >= 3,
             both vanishing on z1^2 and z2^2.
    odd p:   Q_i(tau_m) = z_{m-i}^(p^i), Q_i(z_m) = 0, with Koszul signs.

Internal degrees: deg z_m = 2^m - 1 at p = 2; deg z_m = 2(p^m - 1) and
deg tau_m = 2p^m - 1 at odd p.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Mapping

from .arith import alpha_p, base_p_digits, require_prime
from .errors import ResourceLimitError
from .poly import Poly  # noqa: F401  (re-exported type hints elsewhere)

DEFAULT_ENUMERATION_BUDGET = 1_000_000

Cycle = tuple[tuple["SteenrodMonomial", int], ...]


class SteenrodMonomial:
    """A monomial in the conjugate Milnor generators, normalized and hashable."""

    __slots__ = ("prime", "zeta", "tau")

    def __init__(self, prime: int,
                 zeta: Mapping[int, int] | Iterable[tuple[int, int]] = (),
                 tau: Iterable[int] = ()) -> None:
        require_prime(prime)
        exps = {}
        for index, e in dict(zeta).items():
            if e < 0 or index < 1:
                raise ValueError(f"bad zeta power z{index}^{e}")
            if e:
                exps[index] = e
        taus = tuple(sorted(tau))
        if prime == 2:
            if taus:
                raise ValueError("tau generators only exist at odd primes")
            for index in (1, 2):
                if exps.get(index, 0) % 2:
                    raise ValueError(f"z{index} must occur with even exponent at p = 2")
        else:
            if len(set(taus)) != len(taus):
                raise ValueError("tau generators are exterior (multiplicity one)")
            if taus and taus[0] < 2:
                raise ValueError("tau indices start at 2 in this quotient")
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "zeta", tuple(sorted(exps.items())))
        object.__setattr__(self, "tau", taus)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("SteenrodMonomial is immutable")

    def weight(self) -> int:
        p = self.prime
        if p == 2:
            return sum(e * 2 ** (m - 1) for m, e in self.zeta)
        return (sum(e * p ** m for m, e in self.zeta)
                + sum(p ** m for m in self.tau))

    def degree(self) -> int:
        p = self.prime
        if p == 2:
            return sum(e * (2 ** m - 1) for m, e in self.zeta)
        return (sum(e * 2 * (p ** m - 1) for m, e in self.zeta)
                + sum(2 * p ** m - 1 for m in self.tau))

    def sort_key(self) -> tuple:
        return (self.degree(), self.zeta, self.tau)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SteenrodMonomial):
            return NotImplemented
        return (self.prime, self.zeta, self.tau) == (other.prime, other.zeta, other.tau)

    def __hash__(self) -> int:
        return hash((self.prime, self.zeta, self.tau))

    def __str__(self) -> str:
        parts = [f"z{m}^{e}" if e > 1 else f"z{m}" for m, e in self.zeta]
        parts += [f"tau{m}" for m in self.tau]
        return " ".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return f"SteenrodMonomial(p={self.prime}, {self})"


def apply_q(i: int, m: SteenrodMonomial) -> dict[SteenrodMonomial, int]:
    """Q_i applied to a monomial, as an F_p combination of monomials."""
    if i not in (0, 1):
        raise ValueError(f"only Q0 and Q1 act here, got Q{i}")
    p = m.prime
    result: dict[SteenrodMonomial, int] = {}

    def add(target: SteenrodMonomial, coeff: int) -> None:
        total = (result.get(target, 0) + coeff) % p
        if total:
            result[target] = total
        else:
            result.pop(target, None)

    if p == 2:
        for index, e in m.zeta:
            if index < 3 or e % 2 == 0:
                continue
            image_index, image_exp = (index - 1, 2) if i == 0 else (index - 2, 4)
            exps = dict(m.zeta)
            exps[index] = e - 1
            exps[image_index] = exps.get(image_index, 0) + image_exp
            add(SteenrodMonomial(2, exps), 1)
        return result

    for position, index in enumerate(m.tau):
        target_index = index - i
        exps = dict(m.zeta)
        exps[target_index] = exps.get(target_index, 0) + p ** i
        remaining = tuple(t for t in m.tau if t != index)
        sign = 1 if position % 2 == 0 else p - 1  # odd generators passed over
        add(SteenrodMonomial(p, exps, remaining), sign)
    return result


def apply_q_linear(i: int, cycle: Cycle) -> dict[SteenrodMonomial, int]:
    """Extend apply_q linearly over an F_p combination."""
    acc: dict[SteenrodMonomial, int] = {}
    for monomial, coeff in cycle:
        p = monomial.prime
        for target, c in apply_q(i, monomial).items():
            total = (acc.get(target, 0) + coeff * c) % p
            if total:
                acc[target] = total
            else:
                acc.pop(target, None)
    return acc


Matrix = tuple[tuple[int, ...], ...]


@dataclasses.dataclass(frozen=True)
class M1Complex:
    """The weight-2k (p = 2) or weight-pk (odd p) monomial piece with both differentials.

    ``q0[d]`` and ``q1[d]`` map the degree-d slice to the slice in degree
    d-1 resp. d-(2p-1); rows are indexed by the target slice, columns by
    the source slice, both in basis order.
    """

    prime: int
    k: int
    basis: tuple[SteenrodMonomial, ...]
    q0: dict[int, Matrix]
    q1: dict[int, Matrix]

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted({m.degree() for m in self.basis}))

    def degree_slice(self, degree: int) -> tuple[SteenrodMonomial, ...]:
        return tuple(m for m in self.basis if m.degree() == degree)

    def differential(self, i: int, degree: int) -> Matrix:
        table = self.q0 if i == 0 else self.q1
        return table.get(degree, ())


def q_degree_drop(p: int, i: int) -> int:
    return 1 if i == 0 else 2 * p - 1


def _generators(p: int, max_weight: int) -> list[tuple[str, int, int, int, int | None]]:
    """(kind, index, exponent step, weight per step, max steps) per generator."""
    gens: list[tuple[str, int, int, int, int | None]] = []
    if p == 2:
        if 2 <= max_weight:
            gens.append(("zeta", 1, 2, 2, None))
        if 4 <= max_weight:
            gens.append(("zeta", 2, 2, 4, None))
        m = 3
        while 2 ** (m - 1) <= max_weight:
            gens.append(("zeta", m, 1, 2 ** (m - 1), None))
            m += 1
    else:
        m = 1
        while p ** m <= max_weight:
            gens.append(("zeta", m, 1, p ** m, None))
            m += 1
        m = 2
        while p ** m <= max_weight:
            gens.append(("tau", m, 1, p ** m, 1))
            m += 1
    return gens


def enumerate_m1(p: int, k: int,
                 budget: int = DEFAULT_ENUMERATION_BUDGET) -> M1Complex:
    """Enumerate the complete monomial basis of the weight piece and its differentials."""
    require_prime(p)
    if k < 0:
        raise ValueError(f"expected a natural weight index, got {k}")
    target = (2 if p == 2 else p) * k
    gens = _generators(p, target)
    found: list[SteenrodMonomial] = []

    def descend(pos: int, remaining: int, zeta: dict[int, int], tau: list[int]) -> None:
        if pos == len(gens):
            if remaining == 0:
                if len(found) >= budget:
                    raise ResourceLimitError(
                        f"weight piece at p={p}, k={k} exceeds enumeration budget {budget}",
                        required=len(found) + 1, budget=budget)
                found.append(SteenrodMonomial(p, dict(zeta), tuple(tau)))
            return
        kind, index, exp_step, weight_step, max_steps = gens[pos]
        count = 0
        while count * weight_step <= remaining and (max_steps is None or count <= max_steps):
            if count:
                if kind == "zeta":
                    zeta[index] = count * exp_step
                else:
                    tau.append(index)
            descend(pos + 1, remaining - count * weight_step, zeta, tau)
            if count:
                if kind == "zeta":
                    del zeta[index]
                else:
                    tau.pop()
            count += 1

    descend(0, target, {}, [])
    basis = tuple(sorted(found, key=SteenrodMonomial.sort_key))
    assert all(m.weight() == target for m in basis)

    by_degree: dict[int, list[int]] = {}
    for position, m in enumerate(basis):
        by_degree.setdefault(m.degree(), []).append(position)

    def build(i: int) -> dict[int, Matrix]:
        drop = q_degree_drop(p, i)
        table: dict[int, Matrix] = {}
        for degree, source in by_degree.items():
            target_slice = by_degree.get(degree - drop, [])
            row_of = {basis[pos]: row for row, pos in enumerate(target_slice)}
            rows = [[0] * len(source) for _ in target_slice]
            for col, pos in enumerate(source):
                for monomial, coeff in apply_q(i, basis[pos]).items():
                    rows[row_of[monomial]][col] = coeff
            table[degree] = tuple(tuple(r) for r in rows)
        return table

    return M1Complex(p, k, basis, build(0), build(1))


# ---- exact linear algebra over F_p -------------------------------------


def _rref(rows: Iterable[Iterable[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    mat = [r for r in mat if any(x % p for x in r)]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, len(mat)) if mat[r][col] % p), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = pow(mat[row][col], -1, p)
        mat[row] = [x * inv % p for x in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [(a - factor * b) % p for a, b in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
        if row == len(mat):
            break
    return [r for r in mat if any(r)], pivots


def _nullspace(rows: Matrix, ncols: int, p: int) -> list[list[int]]:
    """Basis of the kernel of the map whose matrix rows are given."""
    rref, pivots = _rref(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for r, pivot_col in zip(rref, pivots):
            vec[pivot_col] = (-r[f]) % p
        basis.append(vec)
    return basis


def _reduce_mod_rows(vec: list[int], rref: list[list[int]], pivots: list[int],
                     p: int) -> list[int]:
    out = list(vec)
    for row, col in zip(rref, pivots):
        factor = out[col] % p
        if factor:
            out = [(a - factor * b) % p for a, b in zip(out, row)]
    return out


@dataclasses.dataclass(frozen=True)
class HomologyEntry:
    """Nonzero Margolis homology in one internal degree, with representatives."""

    degree: int
    dimension: int
    generators: tuple[Cycle, ...]


def margolis_homology(complex_: M1Complex, i: int) -> tuple[HomologyEntry, ...]:
    """ker Q_i / im Q_i per internal degree, with canonical representative cycles.

    Representatives are kernel vectors reduced to normal form against the
    image (echelon pivots eliminated) with leading coefficient 1, taken in
    the basis order of the slice; for one-dimensional homology this is the
    least representative in that ordering.
    """
    if i not in (0, 1):
        raise ValueError(f"only Q0 and Q1 act here, got Q{i}")
    p = complex_.prime
    drop = q_degree_drop(p, i)
    entries = []
    for degree in complex_.degrees():
        slice_ = complex_.degree_slice(degree)
        outgoing = complex_.differential(i, degree)
        kernel = _nullspace(outgoing, len(slice_), p)
        if not kernel:
            continue
        incoming = complex_.differential(i, degree + drop)
        image_vectors = [[row[c] for row in incoming] for c in range(
            len(incoming[0]) if incoming else 0)]
        image_rref, image_pivots = _rref(image_vectors, p) if image_vectors else ([], [])
        reduced = [_reduce_mod_rows(v, image_rref, image_pivots, p) for v in kernel]
        hom_rows, _ = _rref(reduced, p)
        if not hom_rows:
            continue
        generators = tuple(
            tuple((slice_[c], coeff) for c, coeff in enumerate(row) if coeff)
            for row in hom_rows)
        entries.append(HomologyEntry(degree, len(hom_rows), generators))
    return tuple(entries)


def is_cycle(i: int, cycle: Cycle) -> bool:
    return not apply_q_linear(i, cycle)


def homologous(complex_: M1Complex, i: int, a: Cycle, b: Cycle) -> bool:
    """True iff two cycles of the same degree differ by an image element."""
    p = complex_.prime
    drop = q_degree_drop(p, i)
    degrees = {m.degree() for m, _ in a} | {m.degree() for m, _ in b}
    if len(degrees) != 1:
        return False
    degree = degrees.pop()
    slice_ = complex_.degree_slice(degree)
    position = {m: c for c, m in enumerate(slice_)}
    vec = [0] * len(slice_)
    for monomial, coeff in a:
        vec[position[monomial]] = (vec[position[monomial]] + coeff) % p
    for monomial, coeff in b:
        vec[position[monomial]] = (vec[position[monomial]] - coeff) % p
    incoming = complex_.differential(i, degree + drop)
    image_vectors = [[row[c] for row in incoming] for c in range(
        len(incoming[0]) if incoming else 0)]
    image_rref, image_pivots = _rref(image_vectors, p) if image_vectors else ([], [])
    return not any(_reduce_mod_rows(vec, image_rref, image_pivots, p))


def q_square_is_zero(complex_: M1Complex, i: int) -> bool:
    """Blockwise check that Q_i composed with itself vanishes."""
    p = complex_.prime
    drop = q_degree_drop(p, i)
    for degree in complex_.degrees():
        first = complex_.differential(i, degree)
        second = complex_.differential(i, degree - drop)
        if not first or not second:
            continue
        for col in range(len(first[0])):
            column = [row[col] for row in first]
            for out_row in second:
                if sum(a * b for a, b in zip(out_row, column)) % p:
                    return False
    return True


def cover_rank(p: int, k: int) -> int:
    """Number of Adams covers attached to the weight piece: (k - alpha_p(k))/(p-1)."""
    require_prime(p)
    if k < 0:
        raise ValueError(f"expected a natural weight index, got {k}")
    quotient, remainder = divmod(k - alpha_p(p, k), p - 1)
    if remainder:
        raise ArithmeticError(f"(k - alpha_p(k)) not divisible by p-1 for k={k}, p={p}")
    return quotient


def expected_q0_generator(p: int, k: int) -> SteenrodMonomial:
    """The 2-primary formula z1^(2k) for the Q0 homology generator."""
    if p != 2:
        raise ValueError("closed-form generators are only asserted at p = 2")
    return SteenrodMonomial(2, {1: 2 * k} if k else {})


def expected_q1_generator(p: int, k: int) -> SteenrodMonomial:
    """The 2-primary digit formula z1^(2k_0) z2^(2k_1) ... for the Q1 generator."""
    if p != 2:
        raise ValueError("closed-form generators are only asserted at p = 2")
    return SteenrodMonomial(2, {i + 1: 2 * d for i, d in enumerate(base_p_digits(2, k)) if d})


def cycle_to_string(cycle: Cycle) -> str:
    parts = []
    for monomial, coeff in cycle:
        parts.append(str(monomial) if coeff == 1 else f"{coeff}*{monomial}")
    return " + ".join(parts) if parts else "0"


def homology_to_json(entries: tuple[HomologyEntry, ...]) -> dict:
    return {
        "dimension": sum(e.dimension for e in entries),
        "classes": [
            {
                "degree": e.degree,
                "dimension": e.dimension,
                "generators": [cycle_to_string(c) for c in e.generators],
            }
            for e in entries
        ],
    }


def complex_to_json(complex_: M1Complex) -> dict:
    return {
        "p": complex_.prime,
        "k": complex_.k,
        "basis": [str(m) for m in complex_.basis],
        "homology": {
            "Q0": homology_to_json(margolis_homology(complex_, 0)),
            "Q1": homology_to_json(margolis_homology(complex_, 1)),
        },
        "cover_rank": cover_rank(complex_.prime, complex_.k),
    }
