"""Cycle monomials: closed-form torus invariants for the special linear family.

A monomial in the off-diagonal coordinates of sl(n) is torus-invariant
exactly when its exponent multigraph is balanced (in-degree equals out-degree
at every vertex), and every balanced monomial factors into directed-cycle
monomials p_{i1..id} = x_{i1 i2} x_{i2 i3} ... x_{id i1}.  This gives an
independent combinatorial route to the same invariant algebra that the
kernel pipeline computes, used as a cross-check oracle, plus the classical
relation families among cycle generators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Sequence

from . import linalg
from .algebra import LieAlgebra, builtin_sl, cartan_subalgebra, sl_size, _sl_matrix_coords
from .commutant import (
    BudgetExceededError,
    Generator,
    GeneratorSet,
    invariant_basis,
    monomial_basis,
)
from .poly import Monomial, Polynomial


def sl_coordinate_roles(alg: LieAlgebra) -> list[tuple]:
    """Role of each coordinate of a built-in sl(n): ("cartan", i) for the i-th
    simple-root coordinate, ("edge", i, j) for the matrix-unit coordinate
    x_{ij} (1-based indices)."""
    n = sl_size(alg)
    if n is None:
        raise ValueError("cycle combinatorics requires the built-in sl(n) layout")
    roles: list[tuple] = [("cartan", i + 1) for i in range(n - 1)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                roles.append(("edge", i, j))
    return roles


def edge_index(n: int) -> dict[tuple[int, int], int]:
    """Coordinate index of x_{ij} in the built-in sl(n) basis (1-based i, j)."""
    out = {}
    idx = n - 1
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                out[(i, j)] = idx
                idx += 1
    return out


@dataclass(frozen=True)
class CycleMonomial:
    """A directed cycle on distinct indices, rotated so the smallest is first.

    Orientation is preserved: (1,2,3) and (1,3,2) are different monomials.
    """

    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        idx = self.indices
        if len(idx) < 2:
            raise ValueError("a cycle needs at least two indices")
        if len(set(idx)) != len(idx):
            raise ValueError("cycle indices must be pairwise distinct")
        if any(i < 1 for i in idx):
            raise ValueError("indices are 1-based")
        low = idx.index(min(idx))
        object.__setattr__(self, "indices", idx[low:] + idx[:low])

    @property
    def length(self) -> int:
        return len(self.indices)

    @property
    def label(self) -> str:
        if max(self.indices) < 10:
            return "p" + "".join(str(i) for i in self.indices)
        return "p" + "_".join(str(i) for i in self.indices)

    def edges(self) -> list[tuple[int, int]]:
        idx = self.indices
        return [(idx[u], idx[(u + 1) % len(idx)]) for u in range(len(idx))]

    def polynomial(self, n: int) -> Polynomial:
        index = edge_index(n)
        if any(i > n for i in self.indices):
            raise ValueError(f"cycle uses indices beyond n={n}")
        counts: dict[int, int] = {}
        for e in self.edges():
            v = index[e]
            counts[v] = counts.get(v, 0) + 1
        dim = n * n - 1
        return Polynomial.term(dim, 1, counts.items())


@dataclass
class ExponentGraph:
    """Directed edge multiset extracted from a monomial's exponents."""

    n: int
    edges: dict[tuple[int, int], int]

    @classmethod
    def from_monomial(cls, mono: Monomial, alg: LieAlgebra) -> "ExponentGraph":
        n = sl_size(alg)
        if n is None:
            raise ValueError("cycle combinatorics requires the built-in sl(n) layout")
        roles = sl_coordinate_roles(alg)
        edges: dict[tuple[int, int], int] = {}
        for var, exp in mono.exps:
            role = roles[var]
            if role[0] == "edge":
                edges[(role[1], role[2])] = edges.get((role[1], role[2]), 0) + exp
        return cls(n=n, edges=edges)

    def is_balanced(self) -> bool:
        defect: dict[int, int] = {}
        for (i, j), m in self.edges.items():
            defect[i] = defect.get(i, 0) + m
            defect[j] = defect.get(j, 0) - m
        return all(v == 0 for v in defect.values())

    def total(self) -> int:
        return sum(self.edges.values())


def balance_check(mono: Monomial, alg: LieAlgebra) -> bool:
    """In-degree equals out-degree at every vertex of the exponent graph.

    Diagonal (Cartan) variables carry no edges and never obstruct; the
    condition is equivalent to torus invariance of the monomial.
    """
    return ExponentGraph.from_monomial(mono, alg).is_balanced()


def cycle_decompose(graph: ExponentGraph) -> list[CycleMonomial]:
    """Factor a balanced edge multiset into directed cycles.

    Deterministic greedy walk: start from the smallest vertex with an unused
    out-edge, always step to the smallest available successor, and extract a
    cycle as soon as a vertex repeats.  The product of the returned cycle
    monomials equals the original off-diagonal monomial.
    """
    if not graph.is_balanced():
        raise ValueError("cannot decompose an unbalanced exponent graph")
    remaining = {e: m for e, m in graph.edges.items() if m > 0}
    out: list[CycleMonomial] = []

    def consume(i: int, j: int) -> None:
        remaining[(i, j)] -= 1
        if not remaining[(i, j)]:
            del remaining[(i, j)]

    while remaining:
        start = min(i for i, _ in remaining)
        path = [start]
        seen = {start: 0}
        while True:
            cur = path[-1]
            succ = min((j for (i, j) in remaining if i == cur), default=None)
            if succ is None:
                raise AssertionError("walk stuck on a balanced graph")
            if succ in seen:
                cycle = path[seen[succ]:]
                for u in range(len(cycle)):
                    consume(cycle[u], cycle[(u + 1) % len(cycle)])
                out.append(CycleMonomial(tuple(cycle)))
                break
            seen[succ] = len(path)
            path.append(succ)
    return out


def all_cycles(n: int, length: int) -> list[CycleMonomial]:
    """Every oriented cycle of the given length on n letters, up to rotation,
    in lexicographic order of the canonical index sequence."""
    found = []
    for subset in combinations(range(1, n + 1), length):
        first, rest = subset[0], subset[1:]
        for tail in permutations(rest):
            found.append(CycleMonomial((first,) + tail))
    found.sort(key=lambda c: c.indices)
    return found


def enumerate_cycle_generators(n: int) -> GeneratorSet:
    """The closed-form torus-invariant generators of sl(n): the simple-root
    coordinates plus every cycle monomial of length 2..n."""
    if n < 2:
        raise ValueError("need n >= 2")
    alg = builtin_sl(n)
    gens: list[Generator] = []
    for i in range(n - 1):
        gens.append(
            Generator(
                poly=Polynomial.variable(i, alg.dim),
                degree=1,
                label=alg.labels[i],
            )
        )
    for length in range(2, n + 1):
        for cyc in all_cycles(n, length):
            gens.append(
                Generator(poly=cyc.polynomial(n), degree=length, label=cyc.label)
            )
    return GeneratorSet(
        algebra=alg,
        generators=gens,
        subalgebra=cartan_subalgebra(alg),
        max_degree=n,
    )


# ---------------------------------------------------------------------------
# relation families


def _product(polys: Iterable[Polynomial], dim: int) -> Polynomial:
    acc = Polynomial.one(dim)
    for p in polys:
        acc = acc * p
    return acc


def _two_cycle(i: int, j: int, n: int) -> Polynomial:
    return CycleMonomial((i, j)).polynomial(n)


def phi_exponent(n: int, k: int) -> int:
    """Number of oriented k-cycles through a fixed directed edge:
    (n-2)!/(n-k)!; the empty product 1 at k = 2."""
    return math.factorial(n - 2) // math.factorial(n - k)


@dataclass
class FamilyResult:
    family: str
    instances_checked: int
    failures: list[str]
    convention: str
    skipped: str | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "instances_checked": self.instances_checked,
            "passed": self.passed,
            "failures": self.failures,
            "convention": self.convention,
        }
        if self.skipped:
            out["skipped"] = self.skipped
        return out


@dataclass
class RelationFamiliesReport:
    n: int
    results: list[FamilyResult]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "all_passed": self.all_passed,
            "families": [r.to_json() for r in self.results],
        }


def _check_family_one(n: int, budget: int) -> FamilyResult:
    """Loop-edge product identity: the product of the two-cycles along a
    closed index tuple equals the cycle times its orientation reversal."""
    checked = 0
    failures = []
    for k in range(2, n + 1):
        for tup in permutations(range(1, n + 1), k):
            checked += 1
            if checked > budget:
                raise BudgetExceededError(
                    f"family (i) exceeded {budget} instances"
                )
            lhs_factors = [
                _two_cycle(tup[u], tup[u + 1], n) for u in range(k - 1)
            ]
            lhs_factors.append(_two_cycle(tup[-1], tup[0], n))
            lhs = _product(lhs_factors, n * n - 1)
            forward = CycleMonomial(tup).polynomial(n)
            backward = CycleMonomial((tup[0],) + tuple(reversed(tup[1:]))).polynomial(n)
            rhs = forward * backward
            if lhs != rhs:
                failures.append(f"tuple {tup}")
    return FamilyResult(
        family="i",
        instances_checked=checked,
        failures=failures,
        convention=(
            "closing two-cycle (last, first) included on the left; right side "
            "is the oriented cycle times its reversal"
        ),
    )


def _check_family_two(n: int) -> FamilyResult:
    """All-pairs product identity: the product of every two-cycle equals the
    full cycle, times its reversal, times the two-cycles on non-adjacent
    pairs."""
    convention = (
        "second factor is the orientation-reversed full cycle; the trailing "
        "product runs over pairs (i, j), j > i + 1, excluding (1, n) — the "
        "pairs not adjacent on the standard loop; degenerate at n = 2"
    )
    if n < 3:
        return FamilyResult(
            family="ii",
            instances_checked=0,
            failures=[],
            convention=convention,
            skipped="degenerate at n = 2 (no non-adjacent pairs; identity has no content)",
        )
    dim = n * n - 1
    lhs = _product(
        (_two_cycle(i, j, n) for i in range(1, n + 1) for j in range(i + 1, n + 1)),
        dim,
    )
    full = CycleMonomial(tuple(range(1, n + 1))).polynomial(n)
    reversed_full = CycleMonomial((1,) + tuple(range(n, 1, -1))).polynomial(n)
    chords = [
        _two_cycle(i, j, n)
        for i in range(1, n + 1)
        for j in range(i + 2, n + 1)
        if not (i == 1 and j == n)
    ]
    rhs = full * reversed_full * _product(chords, dim)
    failures = [] if lhs == rhs else ["all-pairs instance"]
    return FamilyResult(
        family="ii", instances_checked=1, failures=failures, convention=convention
    )


def _check_family_three(n: int, budget: int) -> FamilyResult:
    """Power identity per cycle length: the product of all oriented k-cycles
    equals the product of all two-cycles raised to the count of k-cycles
    through a fixed directed edge."""
    dim = n * n - 1
    checked = 0
    failures = []
    all_pairs = _product(
        (_two_cycle(i, j, n) for i in range(1, n + 1) for j in range(i + 1, n + 1)),
        dim,
    )
    for k in range(2, n + 1):
        cycles = all_cycles(n, k)
        checked += 1
        if len(cycles) > budget:
            raise BudgetExceededError(f"family (iii) at k={k}: {len(cycles)} cycles")
        lhs = _product((c.polynomial(n) for c in cycles), dim)
        rhs = all_pairs.power(phi_exponent(n, k))
        if lhs != rhs:
            failures.append(f"k = {k}")
    return FamilyResult(
        family="iii",
        instances_checked=checked,
        failures=failures,
        convention=(
            "left side ranges over oriented cycles distinct up to rotation "
            "(both orientations separate); exponent phi(k) = (n-2)!/(n-k)! "
            "counts k-cycles through a fixed directed edge, phi(2) = 1"
        ),
    )


def relation_families_check(n: int, budget: int = 5000) -> RelationFamiliesReport:
    """Exact expansion check of the three classical relation families among
    cycle generators, with the degenerate-case conventions recorded."""
    if n < 2:
        raise ValueError("need n >= 2")
    results = [
        _check_family_one(n, budget),
        _check_family_two(n),
        _check_family_three(n, budget),
    ]
    return RelationFamiliesReport(n=n, results=results)


# ---------------------------------------------------------------------------
# oracle cross-check against the kernel pipeline


@dataclass
class OracleDegreeResult:
    degree: int
    balanced_count: int
    kernel_dim: int
    spans_equal: bool

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "balanced_count": self.balanced_count,
            "kernel_dim": self.kernel_dim,
            "spans_equal": self.spans_equal,
        }


@dataclass
class OracleReport:
    n: int
    per_degree: list[OracleDegreeResult]

    @property
    def all_equal(self) -> bool:
        return all(r.spans_equal for r in self.per_degree)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "all_equal": self.all_equal,
            "per_degree": [r.to_json() for r in self.per_degree],
        }


def oracle_cross_check(n: int, k_max: int) -> OracleReport:
    """Span equality, degree by degree, of the balanced monomials and the
    kernel-computed invariants (two fully independent computations)."""
    alg = builtin_sl(n)
    sub = cartan_subalgebra(alg)
    results = []
    for k in range(1, k_max + 1):
        balanced = [
            m for m in monomial_basis(alg.dim, k) if balance_check(m, alg)
        ]
        kernel = invariant_basis(alg, sub, k)
        balanced_polys = [Polynomial(alg.dim, {m: Fraction(1)}) for m in balanced]
        equal = _same_span(balanced_polys, kernel, alg.dim)
        results.append(
            OracleDegreeResult(
                degree=k,
                balanced_count=len(balanced),
                kernel_dim=len(kernel),
                spans_equal=equal,
            )
        )
    return OracleReport(n=n, per_degree=results)


def _same_span(
    left: Sequence[Polynomial], right: Sequence[Polynomial], dim: int
) -> bool:
    monos = sorted(
        {m for p in [*left, *right] for m in p.terms},
        key=lambda m: m.sort_key(dim),
        reverse=True,
    )
    index = {m: i for i, m in enumerate(monos)}

    def rref(polys: Sequence[Polynomial]) -> list[dict[int, Fraction]]:
        return linalg.canonical_rref(
            [{index[m]: c for m, c in p.terms.items()} for p in polys]
        )

    return rref(left) == rref(right)


# ---------------------------------------------------------------------------
# symmetric-group action and averaging


def sl_weyl_images(alg: LieAlgebra, sigma: Sequence[int]) -> list[Polynomial]:
    """Coordinate images under the index permutation sigma (0-based tuple:
    matrix index i+1 goes to sigma[i]+1), as substitution targets.

    The permutation acts on matrices by simultaneous row/column permutation;
    each basis matrix is permuted and re-expanded in the basis, giving a
    linear image per coordinate.
    """
    n = sl_size(alg)
    if n is None:
        raise ValueError("the permutation action needs the built-in sl(n) layout")
    if sorted(sigma) != list(range(n)):
        raise ValueError("sigma must be a permutation of 0..n-1")
    roles = sl_coordinate_roles(alg)
    images: list[Polynomial] = []
    for role in roles:
        if role[0] == "edge":
            _, i, j = role
            si, sj = sigma[i - 1] + 1, sigma[j - 1] + 1
            images.append(Polynomial.variable(edge_index(n)[(si, sj)], alg.dim))
        else:
            i = role[1]
            mat = [[Fraction(0)] * n for _ in range(n)]
            mat[sigma[i - 1]][sigma[i - 1]] = Fraction(1)
            mat[sigma[i]][sigma[i]] = Fraction(-1)
            coords = _sl_matrix_coords(mat, n)
            acc = Polynomial.zero(alg.dim)
            for v, c in enumerate(coords):
                if c:
                    acc = acc + Polynomial.variable(v, alg.dim).scale(c)
            images.append(acc)
    return images


def weyl_permute(alg: LieAlgebra, p: Polynomial, sigma: Sequence[int]) -> Polynomial:
    return p.substitute_linear(sl_weyl_images(alg, sigma))


def reynolds_average(alg: LieAlgebra, p: Polynomial) -> Polynomial:
    """Average of the polynomial over all index permutations."""
    n = sl_size(alg)
    if n is None:
        raise ValueError("averaging needs the built-in sl(n) layout")
    total = Polynomial.zero(alg.dim)
    count = 0
    for sigma in permutations(range(n)):
        total = total + weyl_permute(alg, p, sigma)
        count += 1
    return total.scale(Fraction(1, count))


def _bounded_products(gens: Sequence[Generator], cap: int, budget: int) -> list[Polynomial]:
    """All products of the generators (repeats allowed, single factors
    included) with total degree at most the cap."""
    out: list[Polynomial] = []

    def rec(start: int, remaining: int, acc: Polynomial | None) -> None:
        for idx in range(start, len(gens)):
            g = gens[idx]
            if g.degree > remaining:
                continue
            prod = g.poly if acc is None else acc * g.poly
            out.append(prod)
            if len(out) > budget:
                raise BudgetExceededError(
                    f"more than {budget} generator products below degree {cap}"
                )
            if g.degree < remaining:
                rec(idx, remaining - g.degree, prod)

    rec(0, cap, None)
    return out


def reynolds_sl(
    alg: LieAlgebra,
    gens: GeneratorSet,
    max_degree: int,
    product_budget: int = 20000,
) -> GeneratorSet:
    """Permutation-averaged spans of generator products, degree by degree.

    Averages every product of the given generators up to the degree cap and
    returns a reduced echelon basis per degree.  Applied to torus generators
    this produces the invariants of the torus normalizer.
    """
    averaged: dict[int, list[Polynomial]] = {}
    for prod in _bounded_products(gens.generators, max_degree, product_budget):
        avg = reynolds_average(alg, prod)
        if avg.is_zero():
            continue
        deg = avg.degree or 0
        averaged.setdefault(deg, []).append(avg)
    out: list[Generator] = []
    for deg in sorted(averaged):
        monos = sorted(
            {m for p in averaged[deg] for m in p.terms},
            key=lambda m: m.sort_key(alg.dim),
            reverse=True,
        )
        index = {m: i for i, m in enumerate(monos)}
        basis = linalg.canonical_rref(
            [{index[m]: c for m, c in p.terms.items()} for p in averaged[deg]]
        )
        for i, row in enumerate(basis, start=1):
            poly = Polynomial(alg.dim, {monos[c]: v for c, v in row.items()})
            label = f"w{deg}_{i}" if len(basis) > 1 else f"w{deg}"
            out.append(
                Generator(poly=poly, degree=deg, label=label, indecomposable=False)
            )
    return GeneratorSet(algebra=alg, generators=out, max_degree=max_degree)
