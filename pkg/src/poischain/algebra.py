"""Lie algebras presented by exact structure constants.

A LieAlgebra stores sparse structure constants C_ijk (only i < j, nonzero)
over the rationals together with basis labels and an optional flagged Cartan
subalgebra.  Coordinates x_1..x_n live on the dual space; polynomials on the
algebra itself are moved to dual coordinates through a fixed invariant
bilinear form (Killing by default).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .poly import Monomial, Polynomial, as_fraction, as_point
from .sampling import DEFAULT_SEED, sample_points

Vector = tuple[Fraction, ...]


class ConfigurationError(ValueError):
    """Raised when an operation needs data the algebra does not carry."""


@dataclass(eq=False)
class LieAlgebra:
    name: str
    dim: int
    labels: tuple[str, ...]
    structure: dict[tuple[int, int, int], Fraction]
    cartan_indices: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        self.labels = tuple(self.labels)
        if len(self.labels) != self.dim:
            raise ValueError("label count does not match dimension")
        if len(set(self.labels)) != self.dim:
            raise ValueError("duplicate basis labels")
        clean: dict[tuple[int, int, int], Fraction] = {}
        for (i, j, k), c in self.structure.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim and 0 <= k < self.dim):
                raise ValueError(f"structure index out of range: {(i, j, k)}")
            if i >= j:
                raise ValueError(
                    f"structure constants must be stored with i < j: {(i, j, k)}"
                )
            c = as_fraction(c)
            if c:
                clean[(i, j, k)] = c
        self.structure = clean
        if self.cartan_indices is not None:
            self.cartan_indices = tuple(self.cartan_indices)
            if any(not 0 <= i < self.dim for i in self.cartan_indices):
                raise ValueError("Cartan index out of range")
        self._bracket_cache: dict[tuple[int, int], dict[int, Fraction]] = {}
        self._coord_bracket_cache: dict[tuple[int, int], Polynomial] = {}

    # -- structure access ---------------------------------------------------

    def bracket_coeffs(self, i: int, j: int) -> dict[int, Fraction]:
        """Coefficients of [X_i, X_j] in the basis, antisymmetry applied."""
        if i == j:
            return {}
        key = (i, j) if i < j else (j, i)
        cached = self._bracket_cache.get(key)
        if cached is None:
            cached = {}
            for (a, b, k), c in self.structure.items():
                if (a, b) == key:
                    cached[k] = c
            self._bracket_cache[key] = cached
        if i < j:
            return dict(cached)
        return {k: -c for k, c in cached.items()}

    def coordinate_bracket(self, i: int, j: int) -> Polynomial:
        """{x_i, x_j} as a linear polynomial."""
        key = (i, j)
        cached = self._coord_bracket_cache.get(key)
        if cached is None:
            cached = Polynomial(
                self.dim,
                {Monomial.variable(k): c for k, c in self.bracket_coeffs(i, j).items()},
            )
            self._coord_bracket_cache[key] = cached
        return cached

    def bracket_vectors(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        """[u, v] for coordinate vectors u, v on the algebra."""
        out = [Fraction(0)] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj or i == j:
                    continue
                for k, c in self.bracket_coeffs(i, j).items():
                    out[k] += ui * vj * c
        return tuple(out)

    def linear_form(self, vec: Sequence[Fraction]) -> Polynomial:
        """The linear coordinate function of a basis-coordinate vector."""
        return Polynomial(
            self.dim,
            {
                Monomial.variable(i): as_fraction(v)
                for i, v in enumerate(vec)
                if as_fraction(v)
            },
        )

    def ad_matrix(self, i: int) -> list[list[Fraction]]:
        """Matrix of ad(X_i); entry [k][j] is the X_k coefficient of [X_i, X_j]."""
        out = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.bracket_coeffs(i, j).items():
                out[k][j] = c
        return out

    def label_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no basis label {label!r}") from None

    def rank(self, seed: int = DEFAULT_SEED) -> int:
        """Rank: the flagged Cartan dimension, else dim minus the generic
        rank of the coordinate commutator matrix (correct with probability one)."""
        if self.cartan_indices is not None:
            return len(self.cartan_indices)
        best = 0
        for pt in sample_points(self.dim, seed=seed):
            best = max(best, linalg.rank_of_matrix(commutator_matrix(self, pt)))
        return self.dim - best

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        entries = [
            {"i": i, "j": j, "k": k, "c": str(c)}
            for (i, j, k), c in sorted(self.structure.items())
        ]
        out = {
            "name": self.name,
            "dim": self.dim,
            "labels": list(self.labels),
            "structure": entries,
        }
        if self.cartan_indices is not None:
            out["cartan_indices"] = list(self.cartan_indices)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "LieAlgebra":
        dim = int(data["dim"])
        labels = tuple(data.get("labels") or (f"x{i + 1}" for i in range(dim)))
        structure: dict[tuple[int, int, int], Fraction] = {}
        for entry in data.get("structure", ()):
            key = (int(entry["i"]), int(entry["j"]), int(entry["k"]))
            if key in structure:
                raise ValueError(f"duplicate structure entry for {key}")
            structure[key] = as_fraction(entry["c"])
        cartan = data.get("cartan_indices")
        return cls(
            name=str(data.get("name", "algebra")),
            dim=dim,
            labels=labels,
            structure=structure,
            cartan_indices=tuple(cartan) if cartan is not None else None,
        )


# ---------------------------------------------------------------------------
# validation


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witness: tuple | None = None


@dataclass
class ValidationReport:
    algebra: str
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                    "witness": list(c.witness) if c.witness else None,
                }
                for c in self.checks
            ],
        }


def validate_algebra(alg: LieAlgebra) -> ValidationReport:
    """Antisymmetry (by storage convention), the Jacobi identity checked on
    every basis triple, and nondegeneracy of the Killing form."""
    checks = []

    checks.append(
        CheckResult(
            "antisymmetry",
            True,
            "structure stored for i < j only; [X_i, X_i] = 0 by convention",
        )
    )

    jacobi = CheckResult("jacobi", True, "holds on all basis triples")
    unit = [
        tuple(Fraction(int(a == b)) for a in range(alg.dim)) for b in range(alg.dim)
    ]
    done = False
    for i in range(alg.dim):
        if done:
            break
        for j in range(i + 1, alg.dim):
            if done:
                break
            for k in range(j + 1, alg.dim):
                s1 = alg.bracket_vectors(unit[i], alg.bracket_vectors(unit[j], unit[k]))
                s2 = alg.bracket_vectors(unit[j], alg.bracket_vectors(unit[k], unit[i]))
                s3 = alg.bracket_vectors(unit[k], alg.bracket_vectors(unit[i], unit[j]))
                total = [a + b + c for a, b, c in zip(s1, s2, s3)]
                bad = next((l for l, v in enumerate(total) if v), None)
                if bad is not None:
                    jacobi = CheckResult(
                        "jacobi",
                        False,
                        "Jacobi identity fails",
                        (alg.labels[i], alg.labels[j], alg.labels[k], alg.labels[bad]),
                    )
                    done = True
                    break
    checks.append(jacobi)

    killing = killing_form(alg)
    det = linalg.det_exact(killing.matrix)
    checks.append(
        CheckResult(
            "killing_nondegenerate",
            det != 0,
            f"det(Killing) = {det}",
        )
    )
    return ValidationReport(alg.name, checks)


# ---------------------------------------------------------------------------
# bilinear forms


@dataclass
class BilinearForm:
    name: str
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        self.matrix = tuple(tuple(as_fraction(v) for v in row) for row in self.matrix)
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise ValueError("form matrix must be square")
        self._inverse: list[list[Fraction]] | None = None

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def is_nondegenerate(self) -> bool:
        return linalg.det_exact(self.matrix) != 0

    def inverse(self) -> list[list[Fraction]]:
        if self._inverse is None:
            self._inverse = linalg.matrix_inverse(self.matrix)
        return self._inverse

    def pair(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = self.matrix[i]
            for j, vj in enumerate(v):
                if vj:
                    total += ui * row[j] * vj
        return total


def killing_form(alg: LieAlgebra) -> BilinearForm:
    """B(X, Y) = trace(ad X . ad Y), computed exactly from the structure constants."""
    ads = []
    for i in range(alg.dim):
        sparse: dict[int, dict[int, Fraction]] = {}
        for j in range(alg.dim):
            for k, c in alg.bracket_coeffs(i, j).items():
                sparse.setdefault(j, {})[k] = c
        ads.append(sparse)
    matrix = []
    for i in range(alg.dim):
        row = []
        for j in range(alg.dim):
            total = Fraction(0)
            for a, outs in ads[i].items():
                adj_a = ads[j]
                for b, c in outs.items():
                    c2 = adj_a.get(b, {}).get(a)
                    if c2:
                        total += c * c2
            row.append(total)
        matrix.append(tuple(row))
    return BilinearForm("killing", tuple(matrix))


def form_invariance_witness(
    alg: LieAlgebra, form: BilinearForm
) -> tuple[str, str, str] | None:
    """First basis triple violating B([z,x],y) + B(x,[z,y]) = 0, if any."""
    unit = [
        tuple(Fraction(int(a == b)) for a in range(alg.dim)) for b in range(alg.dim)
    ]
    for z in range(alg.dim):
        for x in range(alg.dim):
            zx = alg.bracket_vectors(unit[z], unit[x])
            for y in range(alg.dim):
                zy = alg.bracket_vectors(unit[z], unit[y])
                if form.pair(zx, unit[y]) + form.pair(unit[x], zy) != 0:
                    return (alg.labels[z], alg.labels[x], alg.labels[y])
    return None


# ---------------------------------------------------------------------------
# special linear family


def _sl_matrix_basis(n: int) -> tuple[list[list[list[Fraction]]], list[str]]:
    mats: list[list[list[Fraction]]] = []
    labels: list[str] = []

    def zeros() -> list[list[Fraction]]:
        return [[Fraction(0)] * n for _ in range(n)]

    for i in range(1, n):
        m = zeros()
        m[i - 1][i - 1] = Fraction(1)
        m[i][i] = Fraction(-1)
        mats.append(m)
        labels.append(f"h{i}")
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            m = zeros()
            m[i - 1][j - 1] = Fraction(1)
            mats.append(m)
            labels.append(f"e{i}{j}")
    return mats, labels


def _sl_matrix_coords(m: list[list[Fraction]], n: int) -> list[Fraction]:
    """Coordinates of a traceless matrix in the h/e basis built above."""
    coords = [Fraction(0)] * (n * n - 1)
    running = Fraction(0)
    for i in range(n - 1):
        running += m[i][i]
        coords[i] = running
    idx = n - 1
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            coords[idx] = m[i][j]
            idx += 1
    return coords


def builtin_sl(n: int) -> LieAlgebra:
    """sl(n) in the basis h_i = E_ii - E_(i+1)(i+1), followed by the E_ij row
    by row; the h block is the flagged Cartan subalgebra."""
    if n < 2:
        raise ValueError("sl(n) needs n >= 2")
    mats, labels = _sl_matrix_basis(n)
    dim = n * n - 1
    structure: dict[tuple[int, int, int], Fraction] = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            comm = [
                [
                    sum(
                        mats[a][r][t] * mats[b][t][c] - mats[b][r][t] * mats[a][t][c]
                        for t in range(n)
                    )
                    for c in range(n)
                ]
                for r in range(n)
            ]
            for k, c in enumerate(_sl_matrix_coords(comm, n)):
                if c:
                    structure[(a, b, k)] = c
    return LieAlgebra(
        name=f"sl{n}",
        dim=dim,
        labels=tuple(labels),
        structure=structure,
        cartan_indices=tuple(range(n - 1)),
    )


def sl_size(alg: LieAlgebra) -> int | None:
    """n if the algebra is a built-in sl(n) layout, else None."""
    if alg.cartan_indices is None:
        return None
    n = len(alg.cartan_indices) + 1
    if alg.dim != n * n - 1:
        return None
    _, labels = _sl_matrix_basis(n)
    return n if tuple(labels) == alg.labels else None


def trace_form_sl(n: int) -> BilinearForm:
    """The defining-representation trace form of sl(n)."""
    mats, _ = _sl_matrix_basis(n)
    dim = n * n - 1
    matrix = []
    for a in range(dim):
        row = []
        for b in range(dim):
            row.append(
                sum(mats[a][r][c] * mats[b][c][r] for r in range(n) for c in range(n))
            )
        matrix.append(tuple(row))
    return BilinearForm("trace", tuple(matrix))


def direct_sum(a: LieAlgebra, b: LieAlgebra, name: str | None = None) -> LieAlgebra:
    labels = tuple(f"{lab}.1" for lab in a.labels) + tuple(
        f"{lab}.2" for lab in b.labels
    )
    structure: dict[tuple[int, int, int], Fraction] = dict(a.structure)
    off = a.dim
    for (i, j, k), c in b.structure.items():
        structure[(i + off, j + off, k + off)] = c
    cartan = None
    if a.cartan_indices is not None and b.cartan_indices is not None:
        cartan = tuple(a.cartan_indices) + tuple(i + off for i in b.cartan_indices)
    return LieAlgebra(
        name=name or f"{a.name}+{b.name}",
        dim=a.dim + b.dim,
        labels=labels,
        structure=structure,
        cartan_indices=cartan,
    )


# ---------------------------------------------------------------------------
# subalgebras


@dataclass
class SubalgebraSpec:
    """A Lie subalgebra given by spanning coordinate vectors, with declared flags."""

    vectors: tuple[Vector, ...]
    abelian: bool = False
    cartan: bool = False
    full: bool = False
    name: str = "subalgebra"

    def __post_init__(self) -> None:
        self.vectors = tuple(
            tuple(as_fraction(v) for v in vec) for vec in self.vectors
        )

    @property
    def size(self) -> int:
        return len(self.vectors)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "vectors": [[str(v) for v in vec] for vec in self.vectors],
            "abelian": self.abelian,
            "cartan": self.cartan,
            "full": self.full,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SubalgebraSpec":
        return cls(
            vectors=tuple(tuple(as_fraction(v) for v in vec) for vec in data["vectors"]),
            abelian=bool(data.get("abelian", False)),
            cartan=bool(data.get("cartan", False)),
            full=bool(data.get("full", False)),
            name=str(data.get("name", "subalgebra")),
        )


def cartan_subalgebra(alg: LieAlgebra) -> SubalgebraSpec:
    if alg.cartan_indices is None:
        raise ConfigurationError(f"{alg.name} has no flagged Cartan subalgebra")
    vectors = tuple(
        tuple(Fraction(int(i == c)) for i in range(alg.dim))
        for c in alg.cartan_indices
    )
    return SubalgebraSpec(vectors, abelian=True, cartan=True, name="cartan")


def full_subalgebra(alg: LieAlgebra) -> SubalgebraSpec:
    vectors = tuple(
        tuple(Fraction(int(i == c)) for i in range(alg.dim)) for c in range(alg.dim)
    )
    return SubalgebraSpec(vectors, full=True, name="full")


def span_subalgebra(
    vectors: Iterable[Sequence[Fraction]],
    abelian: bool = False,
    name: str = "span",
) -> SubalgebraSpec:
    return SubalgebraSpec(
        tuple(tuple(as_fraction(v) for v in vec) for vec in vectors),
        abelian=abelian,
        name=name,
    )


def validate_subalgebra(alg: LieAlgebra, sub: SubalgebraSpec) -> ValidationReport:
    """Linear independence, bracket closure, and the declared abelian flag."""
    checks = []
    for vec in sub.vectors:
        if len(vec) != alg.dim:
            raise ValueError("subalgebra vector dimension mismatch")

    rows = [
        linalg.row_from_rationals({i: v for i, v in enumerate(vec) if v})
        for vec in sub.vectors
    ]
    independent = linalg.rank_of_rows(rows) == sub.size
    checks.append(
        CheckResult("independent", independent, f"{sub.size} spanning vectors")
    )

    closed = CheckResult("closed", True, "bracket closed in the span")
    abelian_check = CheckResult("abelian", True, "all brackets vanish")
    for i in range(sub.size):
        for j in range(i + 1, sub.size):
            br = alg.bracket_vectors(sub.vectors[i], sub.vectors[j])
            if any(br):
                if sub.abelian and abelian_check.passed:
                    abelian_check = CheckResult(
                        "abelian", False, "nonzero bracket", (i, j)
                    )
                target = linalg.row_from_rationals(
                    {k: v for k, v in enumerate(br) if v}
                )
                if linalg.express_in_rowspace(rows, target) is None and closed.passed:
                    closed = CheckResult(
                        "closed", False, "bracket leaves the span", (i, j)
                    )
    checks.append(closed)
    if sub.abelian:
        checks.append(abelian_check)
    return ValidationReport(f"{alg.name}:{sub.name}", checks)


# ---------------------------------------------------------------------------
# geometry on the dual space


def commutator_matrix(alg: LieAlgebra, point: Sequence[Fraction]) -> list[list[Fraction]]:
    """The matrix A_ij(x) = sum_k C_ijk x_k at the given point."""
    pt = as_point(point, alg.dim)
    out = [[Fraction(0)] * alg.dim for _ in range(alg.dim)]
    for (i, j, k), c in alg.structure.items():
        if pt[k]:
            v = c * pt[k]
            out[i][j] += v
            out[j][i] -= v
    return out


def orbit_dimension(
    alg: LieAlgebra, sub: SubalgebraSpec, seed: int = DEFAULT_SEED
) -> int:
    """Generic dimension of the subalgebra orbits on the dual space.

    At each seeded sample point the rows are the infinitesimal motions of the
    coordinates under the spanning vectors; the maximum exact rank over the
    samples is reported (a certified lower bound, generically exact).
    """
    best = 0
    for pt in sample_points(alg.dim, seed=seed):
        a = commutator_matrix(alg, pt)
        rows = []
        for vec in sub.vectors:
            row = [
                sum(vec[i] * a[i][k] for i in range(alg.dim) if vec[i])
                for k in range(alg.dim)
            ]
            rows.append(row)
        best = max(best, linalg.rank_of_matrix(rows))
    return best


def is_regular(
    alg: LieAlgebra,
    point: Sequence[Fraction],
    rank_of_g: int | None = None,
    seed: int = DEFAULT_SEED,
) -> bool:
    """True when the stabilizer of the point has the minimal (rank) dimension."""
    r = alg.rank(seed) if rank_of_g is None else rank_of_g
    a = commutator_matrix(alg, point)
    return linalg.rank_of_matrix(a) == alg.dim - r


def in_centralizer(
    alg: LieAlgebra,
    sub: SubalgebraSpec,
    point: Sequence[Fraction],
    form: BilinearForm | None = None,
) -> bool:
    """Whether the dual point, moved to the algebra by the bilinear form,
    commutes with every spanning vector of the subalgebra."""
    if form is None:
        form = killing_form(alg)
    pt = as_point(point, alg.dim)
    inv = form.inverse()
    z = tuple(
        sum(inv[i][j] * pt[j] for j in range(alg.dim)) for i in range(alg.dim)
    )
    for vec in sub.vectors:
        if any(alg.bracket_vectors(vec, z)):
            return False
    return True


def dual_transport(
    alg: LieAlgebra, form: BilinearForm, p: Polynomial
) -> Polynomial:
    """Move a polynomial in algebra-side coordinates to dual coordinates.

    The substitution is coordinate_i -> (B^-1 x)_i, so that evaluating the
    result at a dual point equals evaluating p at the algebra element paired
    to it by the form.
    """
    if p.dim != alg.dim or form.dim != alg.dim:
        raise ValueError("dimension mismatch in dual transport")
    inv = form.inverse()
    images = [
        Polynomial(
            alg.dim,
            {
                Monomial.variable(j): inv[i][j]
                for j in range(alg.dim)
                if inv[i][j]
            },
        )
        for i in range(alg.dim)
    ]
    return p.substitute_linear(images)


def dual_transport_inverse(
    alg: LieAlgebra, form: BilinearForm, p: Polynomial
) -> Polynomial:
    """Inverse of dual_transport (substitute x_i -> sum_j B_ij coordinate_j)."""
    images = [
        Polynomial(
            alg.dim,
            {
                Monomial.variable(j): form.matrix[i][j]
                for j in range(alg.dim)
                if form.matrix[i][j]
            },
        )
        for i in range(alg.dim)
    ]
    return p.substitute_linear(images)


def moment_map_form(alg: LieAlgebra, vec: Sequence[Fraction]) -> Polynomial:
    """The linear function on the dual space cut out by an algebra element.

    Equals dual_transport of the pairing with the element, independently of
    the (invariant, nondegenerate) form used.
    """
    return alg.linear_form(vec)
