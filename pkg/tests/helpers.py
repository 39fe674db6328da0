"""Shared helpers for the test suite: random polynomials and span fingerprints."""

from __future__ import annotations

import random
from fractions import Fraction

from poischain import Polynomial
from poischain.linalg import canonical_rref


def random_polynomial(
    rng: random.Random,
    dim: int,
    max_degree: int = 2,
    n_terms: int = 3,
) -> Polynomial:
    """Small random polynomial with integer coefficients in [-4, 4]."""
    p = Polynomial.zero(dim)
    for _ in range(n_terms):
        deg = rng.randint(0, max_degree)
        exps: dict[int, int] = {}
        for _ in range(deg):
            var = rng.randrange(dim)
            exps[var] = exps.get(var, 0) + 1
        coeff = Fraction(rng.randint(-4, 4))
        p = p + Polynomial.term(dim, coeff, exps.items())
    return p


def span_fingerprint(polys) -> list[tuple]:
    """Canonical fingerprint of the rational span of a family of polynomials.

    Columns are keyed by the monomials themselves (not insertion order), so
    fingerprints computed in separate calls are comparable: two families have
    equal fingerprints iff they span the same coefficient subspace.
    """
    polys = [p for p in polys if not p.is_zero()]
    dim = max((p.dim for p in polys), default=1)
    monos = sorted({m for p in polys for m in p.terms}, key=lambda m: m.sort_key(dim))
    index = {m: i for i, m in enumerate(monos)}
    vectors = []
    for p in polys:
        vectors.append({index[m]: c for m, c in p.terms.items()})
    basis = canonical_rref(vectors)
    return sorted(
        tuple(sorted((monos[i].exps, c) for i, c in v.items())) for v in basis
    )


def same_span(polys_a, polys_b) -> bool:
    return span_fingerprint(polys_a) == span_fingerprint(polys_b)


def rendered_set(gens, labels) -> set[str]:
    """Render every generator polynomial against coordinate labels."""
    return {g.poly.render(labels) for g in gens.generators}
