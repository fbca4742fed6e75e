"""Constructors for the finite value matrices and sequence families whose
multiplicity behavior the engine certifies.

Everything here is deterministic: the generic-vector search walks the same
integer grid every run, and each constructor's output is verified against
its defining property by the test suite and by emitted certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import RangeError, ShapeError, TooLargeError
from .kernel import RatMatrix, Vec, integer_tuples, rank_of_vectors, vec
from .engine import profile, set_partitions
from .geometry import approx_direction_census, approx_regular_polygon
from .rationals import first_unit_rationals
from .sequences import StepSequence, combine, step_sequence

GENERIC_CAP = 9
ODD_CAP = 6
FAMILY_CAP = 100_000


# ---------------------------------------------------------------------------
# generic vector families (affine-position recursion)


@dataclass(frozen=True)
class GenericVectorFamily:
    """n+d vectors in Q^{d+1}, starting at 0, in general position in the
    sense that every coefficient row on the resulting matrix attains at
    least n distinct values."""

    n: int
    d: int
    vectors: tuple[Vec, ...]

    def matrix(self) -> RatMatrix:
        return RatMatrix(
            tuple(
                tuple(v[i] for v in self.vectors) for i in range(self.d + 1)
            )
        )


def _partition_blocks_upto(count: int, max_blocks: int):
    """Set partitions of range(count) with at most max_blocks blocks."""
    for assignment in set_partitions(count):
        if max(assignment) + 1 > max_blocks:
            continue
        blocks: dict[int, list[int]] = {}
        for idx, b in enumerate(assignment):
            blocks.setdefault(b, []).append(idx)
        yield list(blocks.values())


def _candidate_ok(vectors: list[Vec], cand: Vec, n: int, d: int) -> bool:
    """Acceptance test for the next vector: in every partition of the
    extended prefix into at most n-1 blocks, the within-block difference
    multiset must be as independent as the ambient dimension allows
    (rank == min(size, d+1)). Duplicate vectors always fail some partition,
    so distinctness is also enforced here; it is still checked explicitly
    for the degenerate n == 1 case."""
    if cand in vectors:
        return False
    k = len(vectors)
    ext = vectors + [cand]
    for blocks in _partition_blocks_upto(k + 1, n - 1):
        cand_block = next(b for b in blocks if k in b)
        if len(cand_block) == 1:
            continue  # restriction to the old prefix, checked at an earlier step
        diffs = []
        for block in blocks:
            lead = ext[block[0]]
            for idx in block[1:]:
                diffs.append(tuple(a - b for a, b in zip(ext[idx], lead)))
        if rank_of_vectors(diffs) != min(len(diffs), d + 1):
            return False
    return True


def generic_vectors(n: int, d: int, cap: int = GENERIC_CAP) -> GenericVectorFamily:
    """Greedy deterministic construction of the n+d vectors: candidates come
    from the integer grid in max-norm shells, the first acceptable one wins."""
    if n < 1 or d < 0:
        raise ShapeError("need n >= 1 and d >= 0")
    if n + d > cap:
        raise TooLargeError(f"n+d = {n + d} exceeds cap {cap}")
    dim = d + 1
    vectors: list[Vec] = [tuple(Fraction(0) for _ in range(dim))]
    while len(vectors) < n + d:
        for t in integer_tuples(dim):
            cand = vec(t)
            if _candidate_ok(vectors, cand, n, d):
                vectors.append(cand)
                break
    return GenericVectorFamily(n, d, tuple(vectors))


def interval_space(n: int, d: int, cap: int = GENERIC_CAP) -> RatMatrix:
    """(d+1) x (n+d) matrix whose profile is contained in [n, n+d] with both
    endpoints achieved: columns are a generic vector family."""
    if n < 2:
        raise ShapeError("need n >= 2")
    return generic_vectors(n, d, cap=cap).matrix()


# ---------------------------------------------------------------------------
# odd-cardinality spaces and sign families


def odd_space(k: int, cap: int = ODD_CAP) -> RatMatrix:
    """k x 3^k matrix with one column per sign vector in {-1,0,1}^k.

    Every nonzero coefficient row has a symmetric value set containing 0,
    hence an odd number of accumulation points, and at least 3 of them."""
    if k < 1:
        raise ShapeError("need k >= 1")
    if k > cap:
        raise TooLargeError(f"k = {k} exceeds cap {cap}")
    cols = list(product((-1, 0, 1), repeat=k))
    return RatMatrix.from_rows([[Fraction(e[j]) for e in cols] for j in range(k)])


@dataclass(frozen=True)
class IndependentFamily:
    """k generators over sign-vector atoms: generator g's piece for sign e is
    the union of atoms whose g-th coordinate is e. Any choice of one sign per
    generator picks a single (nonempty) atom, which is what independence of
    the family means at this finite scale."""

    k: int
    split: int
    atoms: tuple[tuple[int, ...], ...]

    def piece(self, generator: int, sign: int) -> tuple[int, ...]:
        if not 0 <= generator < self.k:
            raise ShapeError("generator index out of range")
        return tuple(i for i, a in enumerate(self.atoms) if a[generator] == sign)


def independent_family(k: int, split: int = 2) -> IndependentFamily:
    if split not in (2, 3):
        raise ShapeError("split must be 2 or 3")
    if k < 1:
        raise ShapeError("need k >= 1")
    if split**k > FAMILY_CAP:
        raise TooLargeError(f"{split}^{k} atoms exceeds cap {FAMILY_CAP}")
    values = (0, 1) if split == 2 else (-1, 0, 1)
    return IndependentFamily(k, split, tuple(product(values, repeat=k)))


def nonconvergent_span(k: int) -> RatMatrix:
    """k x 2^k matrix of indicator rows over the {0,1}^k sign atoms: row g is
    1 exactly on atoms with g-th coordinate 1. Every nonzero combination
    attains 0 (all-zero atom) and its first nonzero coefficient (a basis
    atom), so no nonzero element of the span converges."""
    fam = independent_family(k, split=2)
    return RatMatrix.from_rows(
        [[Fraction(a[g]) for a in fam.atoms] for g in range(k)]
    )


# ---------------------------------------------------------------------------
# polygon spaces


@dataclass(frozen=True)
class PolygonSpace:
    """Vertices of an (affinely) regular 2n-gon as a 2-row value matrix.

    Exact mode (n in {2, 3}) uses rational affine images with pairwise
    distinct abscissas; approximate mode uses float vertices of the regular
    polygon and a tolerance-based direction census."""

    n: int
    mode: str
    counts: tuple[int, ...]
    matrix: RatMatrix | None = None
    vertices: tuple[tuple[float, float], ...] | None = None
    tolerance: float | None = None


_EXACT_POLYGONS = {
    # affinely regular square: {+-a, +-b} for independent a, b
    2: ((1, 2), (2, -1), (-1, -2), (-2, 1)),
    # affinely regular hexagon: {+-a, +-b, +-(b-a)} with distinct abscissas
    3: ((1, 0), (3, 1), (2, 1), (-1, 0), (-3, -1), (-2, -1)),
}


def polygon_space(n: int, mode: str | None = None, tol: float = 1e-9) -> PolygonSpace:
    if n < 2:
        raise ShapeError("need n >= 2")
    if mode is None:
        mode = "exact" if n in _EXACT_POLYGONS else "approximate"
    if mode == "exact":
        if n not in _EXACT_POLYGONS:
            raise RangeError(f"exact polygons available only for n in {{2, 3}}, got {n}")
        verts = _EXACT_POLYGONS[n]
        xs = [v[0] for v in verts]
        assert len(set(xs)) == len(xs)
        mat = RatMatrix.from_rows(
            [[Fraction(v[0]) for v in verts], [Fraction(v[1]) for v in verts]]
        )
        counts = profile(mat).achieved
        return PolygonSpace(n, "exact", counts, matrix=mat)
    if mode == "approximate":
        verts = approx_regular_polygon(n, tol=tol)
        counts = approx_direction_census(verts, tol=tol)
        return PolygonSpace(n, "approximate", counts, vertices=verts, tolerance=tol)
    raise ShapeError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# disjointly supported rows with prescribed value ladders


@dataclass(frozen=True)
class SpaceableFamily:
    """Rows with pairwise disjoint supports and common value ladder a_0, a_1, ...

    Row r takes value a_t on its own atom A{r}.{t} and 0 on a residual atom
    covering everything else, including every other row's support. Any
    combination with coefficients bounded by 1 in absolute value therefore
    has supremum value a_0 (attained on the A{r}.0 atom of a coefficient-1
    row), which is the truncation-level picture of an isometric embedding."""

    flavor: str
    n_max: int
    k_max: int
    ladder: tuple[Fraction, ...]
    rows: tuple[StepSequence, ...]

    def relation_table(self) -> dict[tuple[int, int], frozenset[tuple[int, int]]]:
        """Pairwise infinitude: a support atom only meets the other row's
        residual atom; the residuals meet each other."""
        table = {}
        last = self.k_max + 1
        for i in range(self.n_max):
            for j in range(i + 1, self.n_max):
                pairs = {(last, last)}
                for t in range(self.k_max + 1):
                    pairs.add((t, last))
                    pairs.add((last, t))
                table[(i, j)] = frozenset(pairs)
        return table

    def combination(self, alpha: Sequence) -> StepSequence:
        if len(alpha) != self.n_max:
            raise ShapeError("one coefficient per row required")
        return combine(alpha, self.rows, self.relation_table())


def value_ladder(k_max: int, flavor: str = "dyadic") -> tuple[Fraction, ...]:
    """a_0 .. a_{k_max}: halving steps, or the unit-interval rational
    enumeration for the dense flavor."""
    if k_max < 0:
        raise ShapeError("need k_max >= 0")
    if flavor == "dyadic":
        return tuple(Fraction(1, 2**t) for t in range(k_max + 1))
    if flavor == "rational-dense":
        return first_unit_rationals(k_max + 1)
    raise ShapeError(f"unknown flavor {flavor!r}")


def spaceable_rows(n_max: int, k_max: int, flavor: str = "dyadic") -> SpaceableFamily:
    if n_max < 1:
        raise ShapeError("need n_max >= 1")
    ladder = value_ladder(k_max, flavor)
    rows = []
    for r in range(n_max):
        pairs = [(f"A{r}.{t}", ladder[t]) for t in range(k_max + 1)]
        pairs.append((f"R{r}", Fraction(0)))
        rows.append(step_sequence(pairs))
    return SpaceableFamily(flavor, n_max, k_max, ladder, tuple(rows))
