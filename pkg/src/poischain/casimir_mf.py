"""Casimir elements and argument-shift (Mishchenko-Fomenko) subalgebras.

Casimirs come from two independent constructions that are cross-checked in
the test suite: the kernel route (invariants of the full algebra, degree by
degree) and, for sl(n), power traces of a symbolic matrix transported to dual
coordinates through the Killing form.  Shifting a Casimir's argument along a
fixed direction and collecting coefficients of the shift parameter produces a
Poisson-commutative family whose independent count reaches (dim + rank)/2
exactly when the direction is regular.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import (
    BilinearForm,
    LieAlgebra,
    SubalgebraSpec,
    builtin_sl,
    dual_transport,
    full_subalgebra,
    in_centralizer,
    is_regular,
    killing_form,
    orbit_dimension,
    _sl_matrix_basis,
)
from .commutant import (
    Generator,
    GeneratorSet,
    RelationSet,
    generate,
    is_invariant,
    relation_basis,
)
from .poly import Polynomial, as_point, lie_poisson_bracket, render_polynomial
from .sampling import DEFAULT_SEED, generic_jacobian_rank

REGULARITY_NOTE = (
    "regularity of the shift (maximal commutator-matrix rank) is the "
    "operative hypothesis; semisimplicity of the shift is not checked"
)


@dataclass
class CasimirSet:
    """Central generators of the symmetric algebra, with their construction tag."""

    gens: GeneratorSet
    method: str  # "kernel" | "trace-transport"

    @property
    def algebra(self) -> LieAlgebra:
        return self.gens.algebra

    @property
    def generators(self) -> list[Generator]:
        return self.gens.generators

    def polys(self) -> list[Polynomial]:
        return self.gens.polys()

    def __len__(self) -> int:
        return len(self.gens.generators)

    def to_json(self) -> dict:
        out = self.gens.to_json()
        out["method"] = self.method
        return out


def casimirs_by_kernel(alg: LieAlgebra, max_degree: int) -> CasimirSet:
    """Indecomposable invariants of the full algebra up to the degree cap."""
    gens = generate(alg, full_subalgebra(alg), max_degree, label_prefix="C")
    return CasimirSet(gens=gens, method="kernel")


def _symbolic_sl_matrix(n: int, dim: int) -> list[list[Polynomial]]:
    matrices, _ = _sl_matrix_basis(n)
    entries = [[Polynomial.zero(dim) for _ in range(n)] for _ in range(n)]
    for i, mat in enumerate(matrices):
        coord = Polynomial.variable(i, dim)
        for r in range(n):
            for c in range(n):
                if mat[r][c]:
                    entries[r][c] = entries[r][c] + coord.scale(mat[r][c])
    return entries


def _matrix_poly_mul(
    a: list[list[Polynomial]], b: list[list[Polynomial]], dim: int
) -> list[list[Polynomial]]:
    n = len(a)
    out = [[Polynomial.zero(dim) for _ in range(n)] for _ in range(n)]
    for r in range(n):
        for k in range(n):
            if a[r][k].is_zero():
                continue
            for c in range(n):
                if not b[k][c].is_zero():
                    out[r][c] = out[r][c] + a[r][k] * b[k][c]
    return out


def trace_casimirs_sln(n: int, max_k: int | None = None) -> CasimirSet:
    """Power traces of the generic traceless matrix, in dual coordinates.

    The trace of the k-th matrix power is a polynomial in the coefficients of
    the matrix against the standard basis; composing with the inverse Killing
    form turns it into a central polynomial in the dual coordinates.  Each
    result is made monic.  k runs over 2..max_k (the first power has zero
    trace); values above n add nothing new and are rejected.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if max_k is None:
        max_k = n
    if not 2 <= max_k <= n:
        raise ValueError("trace exponent cap must lie in 2..n")
    alg = builtin_sl(n)
    form = killing_form(alg)
    symbolic = _symbolic_sl_matrix(n, alg.dim)
    gens: list[Generator] = []
    power = symbolic
    for k in range(2, max_k + 1):
        power = _matrix_poly_mul(power, symbolic, alg.dim)
        trace = Polynomial.zero(alg.dim)
        for r in range(n):
            trace = trace + power[r][r]
        transported = dual_transport(alg, form, trace).monic()
        gens.append(Generator(poly=transported, degree=k, label=f"c{k}"))
    gen_set = GeneratorSet(
        algebra=alg,
        generators=gens,
        subalgebra=full_subalgebra(alg),
        max_degree=max_k,
    )
    return CasimirSet(gens=gen_set, method="trace-transport")


@dataclass
class CasimirCountReport:
    independent_count: int
    expected: int  # dim - generic commutator rank
    dim: int
    generic_commutator_rank: int
    max_degree: int
    matches: bool

    def to_json(self) -> dict:
        return {
            "independent_count": self.independent_count,
            "expected": self.expected,
            "dim": self.dim,
            "generic_commutator_rank": self.generic_commutator_rank,
            "max_degree": self.max_degree,
            "matches": self.matches,
        }


def casimir_count_check(
    alg: LieAlgebra,
    max_degree: int | None = None,
    seed: int = DEFAULT_SEED,
    casimirs: CasimirSet | None = None,
) -> CasimirCountReport:
    """Independent Casimir count against the corank of the commutator matrix.

    The corank (dim minus the generic rank of the bracket pairing matrix) is
    the maximal number of functionally independent central polynomials; the
    kernel construction should reach it once the degree cap covers every
    fundamental generator degree.
    """
    if max_degree is None:
        max_degree = alg.rank(seed=seed) + 1
    if casimirs is None:
        casimirs = casimirs_by_kernel(alg, max_degree)
    count = generic_jacobian_rank(casimirs.polys(), alg.dim, seed=seed)
    corank = alg.dim - orbit_dimension(alg, full_subalgebra(alg), seed=seed)
    return CasimirCountReport(
        independent_count=count,
        expected=corank,
        dim=alg.dim,
        generic_commutator_rank=alg.dim - corank,
        max_degree=casimirs.gens.max_degree or max_degree,
        matches=count == corank,
    )


# ---------------------------------------------------------------------------
# argument shift


@dataclass
class MFAlgebra:
    """Shift-coefficient family of the Casimirs along a fixed direction."""

    shift: tuple[Fraction, ...]
    base: CasimirSet
    generators: list[Generator]
    shift_regular: bool
    note: str = REGULARITY_NOTE

    @property
    def algebra(self) -> LieAlgebra:
        return self.base.algebra

    def polys(self) -> list[Polynomial]:
        return [g.poly for g in self.generators]

    def labels(self) -> list[str]:
        return [g.label for g in self.generators]

    def as_generator_set(self) -> GeneratorSet:
        return GeneratorSet(algebra=self.algebra, generators=list(self.generators))

    def to_json(self) -> dict:
        alg = self.algebra
        return {
            "algebra": alg.name,
            "shift": [str(c) for c in self.shift],
            "shift_regular": self.shift_regular,
            "note": self.note,
            "generators": [
                {
                    "label": g.label,
                    "degree": g.degree,
                    "poly": render_polynomial(g.poly, alg.labels),
                }
                for g in self.generators
            ],
        }


def mf_generators(cas: CasimirSet, mu: Sequence) -> MFAlgebra:
    """All shift-parameter coefficients of each Casimir, top constant dropped.

    Expanding P(x + t*mu) in t gives coefficients of orders 0..deg P; the
    order-0 coefficient is P itself and the top one is the constant P(mu),
    which generates nothing and is discarded.  Zero coefficients are dropped,
    so a zero shift reproduces exactly the Casimirs.
    """
    alg = cas.algebra
    point = as_point(mu, alg.dim)
    gens: list[Generator] = []
    for base_gen in cas.generators:
        coeffs = base_gen.poly.shift_coefficients(point)
        top = base_gen.degree
        for j in range(top):
            poly = coeffs.get(j)
            if poly is None or poly.is_zero():
                continue
            label = base_gen.label if j == 0 else f"{base_gen.label}.d{j}"
            degree = poly.degree or 0
            gens.append(Generator(poly=poly, degree=degree, label=label))
    regular = is_regular(alg, point)
    return MFAlgebra(
        shift=point, base=cas, generators=gens, shift_regular=regular
    )


@dataclass
class CommutativityReport:
    pair_count: int
    nonzero_pairs: list[tuple[str, str]]

    @property
    def commutative(self) -> bool:
        return not self.nonzero_pairs

    def to_json(self) -> dict:
        return {
            "pair_count": self.pair_count,
            "commutative": self.commutative,
            "nonzero_pairs": [list(p) for p in self.nonzero_pairs],
        }


def mf_commutativity_check(mf: MFAlgebra) -> CommutativityReport:
    """Exact pairwise brackets of the shift family (all must vanish)."""
    alg = mf.algebra
    bad = []
    count = 0
    gens = mf.generators
    for i, gi in enumerate(gens):
        for gj in gens[i + 1 :]:
            count += 1
            if not lie_poisson_bracket(gi.poly, gj.poly, alg).is_zero():
                bad.append((gi.label, gj.label))
    return CommutativityReport(pair_count=count, nonzero_pairs=bad)


@dataclass
class MFRankReport:
    jacobian_rank: int
    expected: int  # b(g) = (dim + rank)/2
    generator_count: int
    shift_regular: bool
    hypothesis_met: bool
    matches: bool
    relations: RelationSet | None
    note: str = REGULARITY_NOTE

    def to_json(self) -> dict:
        out = {
            "jacobian_rank": self.jacobian_rank,
            "expected": self.expected,
            "generator_count": self.generator_count,
            "shift_regular": self.shift_regular,
            "hypothesis_met": self.hypothesis_met,
            "matches": self.matches,
            "note": self.note,
        }
        if self.relations is not None:
            out["relations"] = self.relations.to_json()
        return out


def mf_rank_check(
    mf: MFAlgebra,
    seed: int = DEFAULT_SEED,
    check_relations: bool = True,
    relation_budget: int | None = None,
) -> MFRankReport:
    """Independent count of the shift family against (dim + rank)/2.

    When the shift is not regular the report flags the missing hypothesis and
    still states the computed rank.  Optionally also certifies the absence of
    polynomial relations up to a weighted-degree budget.
    """
    alg = mf.algebra
    rank_g = alg.rank(seed=seed)
    b_g, rem = divmod(alg.dim + rank_g, 2)
    if rem:
        raise ValueError("dim + rank is odd; not a valid bracket geometry")
    jac = generic_jacobian_rank(mf.polys(), alg.dim, seed=seed)
    relations = None
    if check_relations and mf.generators:
        max_deg = max(g.degree for g in mf.generators)
        budget = relation_budget if relation_budget is not None else 2 * max_deg
        relations = relation_basis(mf.as_generator_set(), budget)
    return MFRankReport(
        jacobian_rank=jac,
        expected=b_g,
        generator_count=len(mf.generators),
        shift_regular=mf.shift_regular,
        hypothesis_met=mf.shift_regular,
        matches=jac == b_g,
        relations=relations,
    )


@dataclass
class InclusionReport:
    centralizer_route: bool
    operator_route: bool
    witness: str | None  # label of a generator failing invariance

    @property
    def agree(self) -> bool:
        return self.centralizer_route == self.operator_route

    @property
    def included(self) -> bool:
        return self.operator_route

    def to_json(self) -> dict:
        return {
            "centralizer_route": self.centralizer_route,
            "operator_route": self.operator_route,
            "agree": self.agree,
            "included": self.included,
            "witness": self.witness,
        }


def mf_inclusion_check(
    mf: MFAlgebra, sub: SubalgebraSpec, form: BilinearForm | None = None
) -> InclusionReport:
    """Whether the shift family lands inside the invariants of the subalgebra.

    Two independent tests that must agree: the transported shift commutes
    with the subalgebra (a rank-one linear-algebra criterion), and every
    family member is annihilated by every invariance operator (a full kernel
    check).  The first failing generator is reported as a witness.
    """
    alg = mf.algebra
    if form is None:
        form = killing_form(alg)
    central = in_centralizer(alg, sub, mf.shift, form=form)
    witness = None
    operator_ok = True
    for g in mf.generators:
        if not is_invariant(alg, sub, g.poly):
            operator_ok = False
            witness = g.label
            break
    return InclusionReport(
        centralizer_route=central, operator_route=operator_ok, witness=witness
    )


@dataclass
class SandwichReport:
    d_a: int
    rank: int
    hypothesis_met: bool  # d_A == rank
    casimirs_in_family: bool
    inclusion: InclusionReport
    notes: list[str] = field(default_factory=list)

    @property
    def sandwich_holds(self) -> bool:
        return self.casimirs_in_family and self.inclusion.included

    def to_json(self) -> dict:
        return {
            "d_A": self.d_a,
            "rank": self.rank,
            "hypothesis_met": self.hypothesis_met,
            "casimirs_in_family": self.casimirs_in_family,
            "inclusion": self.inclusion.to_json(),
            "sandwich_holds": self.sandwich_holds,
            "notes": self.notes,
        }


def sandwich_check(
    cas: CasimirSet,
    mf: MFAlgebra,
    sub: SubalgebraSpec,
    seed: int = DEFAULT_SEED,
) -> SandwichReport:
    """Certificate for the refined chain: Casimirs inside the shift family
    inside the invariants of the subalgebra.

    The refinement is meaningful when the subalgebra's generic orbit
    dimension equals the rank; a mismatch is reported as a failed hypothesis
    while the two inclusions are still checked.
    """
    alg = cas.algebra
    d_a = orbit_dimension(alg, sub, seed=seed)
    rank_g = alg.rank(seed=seed)
    notes = []
    if d_a != rank_g:
        notes.append(
            f"hypothesis fails: generic orbit dimension {d_a} != rank {rank_g}"
        )
    order_zero = {
        g.label.split(".")[0]: g.poly for g in mf.generators if "." not in g.label
    }
    casimirs_in = all(
        order_zero.get(c.label) == c.poly for c in cas.generators
    )
    inclusion = mf_inclusion_check(mf, sub)
    if not inclusion.agree:
        notes.append("inclusion routes disagree; investigate")
    return SandwichReport(
        d_a=d_a,
        rank=rank_g,
        hypothesis_met=d_a == rank_g,
        casimirs_in_family=casimirs_in,
        inclusion=inclusion,
        notes=notes,
    )
