"""Verification of Poisson inclusion chains base < intermediate < full.

A chain is superintegrable when the base sits in the Poisson center of the
intermediate algebra and the two transcendence degrees add up to the
dimension of the Lie algebra.  Both conditions are decided exactly:bracket
centrality by symbolic computation, transcendence degrees as generic Jacobian
ranks over seeded integer points.  Because generator sets are computed up to
a degree cap, a failed dimension identity with an intermediate rank below the
orbit-complement prediction is reported as inconclusive rather than negative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import (
    ConfigurationError,
    LieAlgebra,
    SubalgebraSpec,
    cartan_subalgebra,
    orbit_dimension,
    sl_size,
)
from .casimir_mf import CasimirSet, casimirs_by_kernel
from .commutant import (
    Generator,
    GeneratorSet,
    generate,
    membership,
    poisson_center_basis,
)
from .poly import Polynomial, lie_poisson_bracket, render_polynomial
from .sampling import DEFAULT_SEED, generic_jacobian_rank


class ChainFormationError(ValueError):
    """The candidate base is not contained in the intermediate algebra."""

    def __init__(self, message: str, witness: str | None = None) -> None:
        super().__init__(message)
        self.witness = witness


def default_degree_cap(alg: LieAlgebra) -> int:
    """Generation cap: n for the built-in sl(n) (longest cycle), rank+1 otherwise."""
    n = sl_size(alg)
    if n is not None:
        return n
    return alg.rank() + 1


def trdeg(gens: GeneratorSet, seed: int = DEFAULT_SEED) -> int:
    """Transcendence degree of the generated algebra: generic Jacobian rank.

    Maximum over the seeded sample points; a certified lower bound that is
    generically exact.
    """
    return generic_jacobian_rank(gens.polys(), gens.algebra.dim, seed=seed)


@dataclass
class ChainSpec:
    algebra: LieAlgebra
    subalgebra: SubalgebraSpec
    intermediate: GeneratorSet
    base: GeneratorSet
    base_kind: str = "explicit"  # casimirs | moment-map | mf | explicit
    intermediate_kind: str = "commutant"  # commutant | normalizer-average


@dataclass
class CentralityReport:
    pair_count: int
    failures: list[dict]  # {base, intermediate, bracket}

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "pair_count": self.pair_count,
            "passed": self.passed,
            "failures": self.failures,
        }


def base_center_check(spec: ChainSpec) -> CentralityReport:
    """Exact brackets of every base generator against every intermediate one."""
    alg = spec.algebra
    failures = []
    count = 0
    for b in spec.base.generators:
        for a in spec.intermediate.generators:
            count += 1
            br = lie_poisson_bracket(b.poly, a.poly, alg)
            if not br.is_zero():
                failures.append(
                    {
                        "base": b.label,
                        "intermediate": a.label,
                        "bracket": render_polynomial(br, alg.labels),
                    }
                )
    return CentralityReport(pair_count=count, failures=failures)


@dataclass
class ChainReport:
    algebra: str
    subalgebra: str
    base_kind: str
    intermediate_kind: str
    centrality: CentralityReport
    trdeg_intermediate: int
    trdeg_base: int
    dim: int
    dim_identity: bool
    d_a: int
    rank: int
    kernel_dims: dict[int, int]
    verdict: str  # superintegrable | not_superintegrable | inconclusive
    cross_check_consistent: bool
    max_degree: int | None
    expected: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def superintegrable(self) -> bool:
        return self.verdict == "superintegrable"

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "subalgebra": self.subalgebra,
            "base_kind": self.base_kind,
            "intermediate_kind": self.intermediate_kind,
            "verdict": self.verdict,
            "centrality": self.centrality.to_json(),
            "trdeg_intermediate": self.trdeg_intermediate,
            "trdeg_base": self.trdeg_base,
            "dim": self.dim,
            "dim_identity": self.dim_identity,
            "d_A": self.d_a,
            "rank": self.rank,
            "kernel_dims": {str(k): v for k, v in sorted(self.kernel_dims.items())},
            "cross_check_consistent": self.cross_check_consistent,
            "max_degree": self.max_degree,
            "expected": self.expected,
            "notes": self.notes,
        }


def _check_base_containment(spec: ChainSpec) -> None:
    for b in spec.base.generators:
        budget = max(b.degree, b.poly.degree or 0, 1)
        result = membership(b.poly, spec.intermediate, budget)
        if not result.found:
            raise ChainFormationError(
                f"base generator {b.label!r} is not contained in the "
                f"intermediate algebra (membership status: {result.status}); "
                "the chain is ill-formed or the degree cap is too small",
                witness=b.label,
            )


def verify_chain(spec: ChainSpec, seed: int = DEFAULT_SEED) -> ChainReport:
    """Decide the superintegrability of the candidate chain.

    Besides the two defining conditions, the report carries an independent
    cross-check: the dimension identity should hold exactly when the base
    transcendence degree matches the generic orbit dimension of the
    subalgebra (both sides computed from scratch).
    """
    alg = spec.algebra
    _check_base_containment(spec)
    centrality = base_center_check(spec)
    trdeg_int = trdeg(spec.intermediate, seed=seed)
    trdeg_base = trdeg(spec.base, seed=seed)
    d_a = orbit_dimension(alg, spec.subalgebra, seed=seed)
    rank_g = alg.rank(seed=seed)
    identity = trdeg_int + trdeg_base == alg.dim
    notes: list[str] = []
    if centrality.passed and identity:
        verdict = "superintegrable"
    elif identity or trdeg_int == alg.dim - d_a:
        verdict = "not_superintegrable"
    else:
        verdict = "inconclusive"
        notes.append(
            f"intermediate rank {trdeg_int} is below the orbit-complement "
            f"prediction {alg.dim - d_a}; the degree cap "
            f"{spec.intermediate.max_degree} may truncate the generators"
        )
    cross = identity == (trdeg_base == d_a)
    if not cross:
        notes.append(
            "dimension identity and base-rank-vs-orbit-dimension tests "
            "disagree; generic sampling may be degenerate for this seed"
        )
    return ChainReport(
        algebra=alg.name,
        subalgebra=spec.subalgebra.name,
        base_kind=spec.base_kind,
        intermediate_kind=spec.intermediate_kind,
        centrality=centrality,
        trdeg_intermediate=trdeg_int,
        trdeg_base=trdeg_base,
        dim=alg.dim,
        dim_identity=identity,
        d_a=d_a,
        rank=rank_g,
        kernel_dims=dict(spec.intermediate.kernel_dims),
        verdict=verdict,
        cross_check_consistent=cross,
        max_degree=spec.intermediate.max_degree,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# chain builders


def casimir_base(alg: LieAlgebra, max_degree: int) -> GeneratorSet:
    return casimirs_by_kernel(alg, max_degree).gens


def torus_chain(
    alg: LieAlgebra,
    max_degree: int | None = None,
    seed: int = DEFAULT_SEED,
) -> ChainReport:
    """Casimirs under the Cartan commutant: the canonical chain.

    The expected ranks (dim - rank for the intermediate, rank for the base)
    are recorded in the report for comparison.
    """
    cap = default_degree_cap(alg) if max_degree is None else max_degree
    sub = cartan_subalgebra(alg)
    intermediate = generate(alg, sub, cap)
    base = casimir_base(alg, cap)
    spec = ChainSpec(
        algebra=alg,
        subalgebra=sub,
        intermediate=intermediate,
        base=base,
        base_kind="casimirs",
    )
    report = verify_chain(spec, seed=seed)
    rank_g = alg.rank(seed=seed)
    report.expected = {
        "trdeg_intermediate": alg.dim - rank_g,
        "trdeg_base": rank_g,
    }
    return report


def moment_map_base(
    alg: LieAlgebra,
    sub: SubalgebraSpec,
    max_degree: int | None = None,
    seed: int = DEFAULT_SEED,
) -> ChainReport:
    """Chain with the linear pairing polynomials of an abelian subalgebra as base.

    Each spanning vector H contributes the linear polynomial sum_i h_i x_i;
    the base they generate is expected to reach transcendence degree equal to
    the subalgebra size.
    """
    if not sub.abelian:
        raise ConfigurationError(
            "moment-map base requires a subalgebra flagged abelian"
        )
    cap = default_degree_cap(alg) if max_degree is None else max_degree
    intermediate = generate(alg, sub, cap)
    base_gens = [
        Generator(poly=alg.linear_form(vec), degree=1, label=f"mu{j + 1}")
        for j, vec in enumerate(sub.vectors)
    ]
    base = GeneratorSet(algebra=alg, generators=base_gens, max_degree=1)
    spec = ChainSpec(
        algebra=alg,
        subalgebra=sub,
        intermediate=intermediate,
        base=base,
        base_kind="moment-map",
    )
    report = verify_chain(spec, seed=seed)
    report.expected = {
        "trdeg_intermediate": alg.dim - sub.size,
        "trdeg_base": sub.size,
    }
    return report


def mf_chain(
    alg: LieAlgebra,
    sub: SubalgebraSpec,
    mu: Sequence,
    max_degree: int | None = None,
    seed: int = DEFAULT_SEED,
) -> ChainReport:
    """Chain with the argument-shift family as candidate base (never valid
    for a regular shift: its rank exceeds any orbit dimension bound)."""
    from .casimir_mf import mf_generators

    cap = default_degree_cap(alg) if max_degree is None else max_degree
    intermediate = generate(alg, sub, cap)
    cas = casimirs_by_kernel(alg, cap)
    mf = mf_generators(cas, mu)
    spec = ChainSpec(
        algebra=alg,
        subalgebra=sub,
        intermediate=intermediate,
        base=mf.as_generator_set(),
        base_kind="mf",
    )
    return verify_chain(spec, seed=seed)


@dataclass
class BaseExistenceReport:
    verdict: str  # exists | does_not_exist_up_to_cap
    center_trdeg: int
    d_a: int
    max_degree: int
    center_dims: dict[int, int]
    note: str

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "center_trdeg": self.center_trdeg,
            "d_A": self.d_a,
            "max_degree": self.max_degree,
            "center_dims": {str(k): v for k, v in sorted(self.center_dims.items())},
            "note": self.note,
        }


def base_existence_verdict(
    alg: LieAlgebra,
    sub: SubalgebraSpec,
    max_degree: int | None = None,
    seed: int = DEFAULT_SEED,
) -> BaseExistenceReport:
    """Whether a valid base can exist: compare the Poisson-center rank of the
    intermediate algebra with the generic orbit dimension.

    A base must consist of central elements and reach transcendence degree
    equal to the orbit dimension, so a center rank below that bound rules one
    out up to the cap.  The center is computed degreewise against the
    generated intermediate algebra and is itself a lower bound.
    """
    cap = default_degree_cap(alg) if max_degree is None else max_degree
    intermediate = generate(alg, sub, cap)
    center_polys: list[Polynomial] = []
    center_dims: dict[int, int] = {}
    for k in range(1, cap + 1):
        basis = poisson_center_basis(alg, sub, intermediate, k)
        center_dims[k] = len(basis)
        center_polys.extend(basis)
    center_rank = generic_jacobian_rank(center_polys, alg.dim, seed=seed)
    d_a = orbit_dimension(alg, sub, seed=seed)
    verdict = "exists" if center_rank >= d_a else "does_not_exist_up_to_cap"
    return BaseExistenceReport(
        verdict=verdict,
        center_trdeg=center_rank,
        d_a=d_a,
        max_degree=cap,
        center_dims=center_dims,
        note=(
            "center rank is a lower bound from degreewise computation up to "
            f"the cap {cap}; a negative verdict is relative to that cap"
        ),
    )


def normalizer_chain_sln(
    n: int,
    max_degree: int | None = None,
    seed: int = DEFAULT_SEED,
) -> ChainReport:
    """Chain through the permutation-averaged torus invariants of sl(n).

    The symmetric group acts by simultaneous index permutation; averaging
    torus-generator products up to the cap produces the invariants of the
    torus normalizer.  The intermediate transcendence degree matches the
    plain torus chain (the extension is by a finite group).
    """
    from .algebra import builtin_sl
    from .cycles import reynolds_sl

    alg = builtin_sl(n)
    cap = (n + 1) if max_degree is None else max_degree
    sub = cartan_subalgebra(alg)
    torus = generate(alg, sub, min(cap, n) if max_degree is None else cap)
    averaged = reynolds_sl(alg, torus, cap)
    base = casimir_base(alg, n)
    spec = ChainSpec(
        algebra=alg,
        subalgebra=sub,
        intermediate=averaged,
        base=base,
        base_kind="casimirs",
        intermediate_kind="normalizer-average",
    )
    report = verify_chain(spec, seed=seed)
    report.expected = {
        "trdeg_intermediate": n * (n - 1),
        "trdeg_base": n - 1,
    }
    report.notes.append(
        "intermediate algebra is the symmetric-group average of torus "
        f"generator products up to degree {cap}"
    )
    return report


# ---------------------------------------------------------------------------
# symplectic-leaf bookkeeping


def leaf_dimension(alg: LieAlgebra, seed: int = DEFAULT_SEED) -> int:
    """Dimension of the joint level sets cut out by the Casimirs and the
    Cartan coordinates: dim - 3*rank (meaningful when nonnegative)."""
    return alg.dim - 3 * alg.rank(seed=seed)


@dataclass
class JMapReport:
    components: list[str]
    generator_labels: list[str]
    zero_bracket_count: int
    failures: list[dict]
    leaf_dim: int

    @property
    def all_central(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "components": self.components,
            "generators": self.generator_labels,
            "zero_bracket_count": self.zero_bracket_count,
            "all_central": self.all_central,
            "failures": self.failures,
            "leaf_dimension": self.leaf_dim,
        }


def j_map_components(
    alg: LieAlgebra,
    casimirs: CasimirSet | None = None,
    max_degree: int | None = None,
) -> list[tuple[str, Polynomial]]:
    """The 2r polynomials (Cartan coordinates then Casimirs) defining the
    joint level map."""
    cap = default_degree_cap(alg) if max_degree is None else max_degree
    if casimirs is None:
        casimirs = casimirs_by_kernel(alg, cap)
    sub = cartan_subalgebra(alg)
    out: list[tuple[str, Polynomial]] = []
    for j, vec in enumerate(sub.vectors):
        out.append((f"mu{j + 1}", alg.linear_form(vec)))
    for g in casimirs.generators:
        out.append((g.label, g.poly))
    return out


def j_map_casimir_check(
    alg: LieAlgebra,
    max_degree: int | None = None,
    seed: int = DEFAULT_SEED,
) -> JMapReport:
    """Centrality of every level-map component against every torus-commutant
    generator, by exact brackets."""
    cap = default_degree_cap(alg) if max_degree is None else max_degree
    sub = cartan_subalgebra(alg)
    torus = generate(alg, sub, cap)
    components = j_map_components(alg, max_degree=cap)
    failures = []
    zero_count = 0
    for name, comp in components:
        for g in torus.generators:
            br = lie_poisson_bracket(comp, g.poly, alg)
            if br.is_zero():
                zero_count += 1
            else:
                failures.append(
                    {
                        "component": name,
                        "generator": g.label,
                        "bracket": render_polynomial(br, alg.labels),
                    }
                )
    return JMapReport(
        components=[name for name, _ in components],
        generator_labels=torus.labels(),
        zero_bracket_count=zero_count,
        failures=failures,
        leaf_dim=leaf_dimension(alg, seed=seed),
    )


def fiber_ideal_generators(
    alg: LieAlgebra,
    c_values: Sequence,
    alpha_values: Sequence,
    max_degree: int | None = None,
) -> list[Polynomial]:
    """Generators of the level-set ideal: shifted Casimirs and shifted Cartan
    coordinates, one per rank."""
    cap = default_degree_cap(alg) if max_degree is None else max_degree
    casimirs = casimirs_by_kernel(alg, cap)
    sub = cartan_subalgebra(alg)
    r = sub.size
    c_values = list(c_values)
    alpha_values = list(alpha_values)
    if len(c_values) != len(casimirs.generators):
        raise ConfigurationError(
            f"expected {len(casimirs.generators)} Casimir level values"
        )
    if len(alpha_values) != r:
        raise ConfigurationError(f"expected {r} Cartan level values")
    out = []
    for g, c in zip(casimirs.generators, c_values):
        out.append(g.poly - Polynomial.constant(Fraction(c), alg.dim))
    for vec, a in zip(sub.vectors, alpha_values):
        out.append(
            alg.linear_form(vec) - Polynomial.constant(Fraction(a), alg.dim)
        )
    return out
