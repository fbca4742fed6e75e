"""Step sequences up to vanishing perturbations, and their exact combinations.

A bounded sequence whose accumulation points form a finite set is represented
canonically: a partition of the index set into finitely many infinite atoms,
plus one exact rational value per atom. Values are pairwise distinct in the
canonical form, and the set of accumulation points is exactly the value set.

Whether two atoms from different partitions intersect in an infinite set is
not derivable symbolically, so it is declared: an InfinitudeRelation lists
the pairs with infinite intersection. Combinations refine partitions along
those pairs; refined atoms without a declared infinite realization are
dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import BadRelationError, EmptyInputError, ShapeError
from .kernel import rat, rat_str


@dataclass(frozen=True)
class Atom:
    """One infinite piece of the index set. ``realization`` is an optional
    descriptor tying the atom to a concrete subset of the naturals (see the
    numeric lab); it plays no role in symbolic computations."""

    id: str
    realization: tuple | None = None


@dataclass(frozen=True)
class SymbolicPartition:
    atoms: tuple[Atom, ...]

    def __post_init__(self):
        if not self.atoms:
            raise EmptyInputError("partition needs at least one atom")
        ids = [a.id for a in self.atoms]
        if len(set(ids)) != len(ids):
            raise ShapeError("atom ids must be unique")

    @classmethod
    def from_ids(cls, ids: Iterable[str]) -> "SymbolicPartition":
        return cls(tuple(Atom(i) for i in ids))

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)


@dataclass(frozen=True)
class StepSequence:
    """Canonical representative: one distinct exact value per atom."""

    partition: SymbolicPartition
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != len(self.partition.atoms):
            raise ShapeError("one value per atom required")
        if len(set(self.values)) != len(self.values):
            raise ShapeError("canonical form requires pairwise distinct values")

    @property
    def num_atoms(self) -> int:
        return len(self.values)

    def accumulation_points(self) -> frozenset[Fraction]:
        return frozenset(self.values)

    def sup_value(self) -> Fraction:
        return max(abs(v) for v in self.values)

    def to_json(self) -> dict:
        return {
            "atoms": [a.id for a in self.partition.atoms],
            "values": [rat_str(v) for v in self.values],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "StepSequence":
        atoms = [str(a) for a in data["atoms"]]
        values = [rat(v) for v in data["values"]]
        return canonicalize(SymbolicPartition.from_ids(atoms), values)


def step_sequence(pairs: Iterable[tuple[str, object]]) -> StepSequence:
    """Build a canonical StepSequence from (atom id, value) pairs."""
    pairs = list(pairs)
    part = SymbolicPartition.from_ids(p[0] for p in pairs)
    return canonicalize(part, [rat(p[1]) for p in pairs])


def canonicalize(partition: SymbolicPartition, values: Sequence) -> StepSequence:
    """Merge atoms that share a value; value order follows first occurrence.

    Merged atoms get the id of their members joined with '|'. A merged union
    of infinite sets is infinite, so the result is a valid partition.
    """
    vals = [rat(v) for v in values]
    if len(vals) != len(partition.atoms):
        raise ShapeError("one value per atom required")
    groups: dict[Fraction, list[Atom]] = {}
    order: list[Fraction] = []
    for atom, v in zip(partition.atoms, vals):
        if v not in groups:
            groups[v] = []
            order.append(v)
        groups[v].append(atom)
    new_atoms = []
    for v in order:
        members = groups[v]
        if len(members) == 1:
            new_atoms.append(members[0])
        else:
            new_atoms.append(Atom("|".join(a.id for a in members)))
    return StepSequence(SymbolicPartition(tuple(new_atoms)), tuple(order))


@dataclass(frozen=True)
class InfinitudeRelation:
    """Declares which atom pairs (left index, right index) meet infinitely.

    Validity requires every left atom and every right atom to sit in at
    least one pair; otherwise the two partitions could not partition the
    same index set.
    """

    left: SymbolicPartition
    right: SymbolicPartition
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        nl, nr = len(self.left), len(self.right)
        for i, j in self.pairs:
            if not (0 <= i < nl and 0 <= j < nr):
                raise BadRelationError(f"pair ({i},{j}) out of range")
        if {i for i, _ in self.pairs} != set(range(nl)):
            raise BadRelationError("some left atom occurs in no pair")
        if {j for _, j in self.pairs} != set(range(nr)):
            raise BadRelationError("some right atom occurs in no pair")

    @classmethod
    def full(cls, left: SymbolicPartition, right: SymbolicPartition) -> "InfinitudeRelation":
        """Generic position: every intersection declared infinite."""
        ps = frozenset((i, j) for i in range(len(left)) for j in range(len(right)))
        return cls(left, right, ps)

    @classmethod
    def identity(cls, partition: SymbolicPartition) -> "InfinitudeRelation":
        """Relation of a partition with itself: atoms only meet themselves."""
        ps = frozenset((i, i) for i in range(len(partition)))
        return cls(partition, partition, ps)

    @classmethod
    def nested(cls, left: SymbolicPartition, right: SymbolicPartition,
               assignment: Sequence[int]) -> "InfinitudeRelation":
        """Each right atom contained (mod finite) in the assigned left atom."""
        if len(assignment) != len(right):
            raise BadRelationError("assignment must map every right atom")
        ps = frozenset((assignment[j], j) for j in range(len(right)))
        return cls(left, right, ps)

    def to_json(self) -> dict:
        return {
            "left": [a.id for a in self.left.atoms],
            "right": [a.id for a in self.right.atoms],
            "pairs": sorted([i, j] for i, j in self.pairs),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "InfinitudeRelation":
        left = SymbolicPartition.from_ids(str(a) for a in data["left"])
        right = SymbolicPartition.from_ids(str(a) for a in data["right"])
        pairs = frozenset((int(i), int(j)) for i, j in data["pairs"])
        return cls(left, right, pairs)


RelationTable = Mapping[tuple[int, int], frozenset[tuple[int, int]]]


def _pair_table(
    coeff_count: int,
    xs: Sequence[StepSequence],
    rel,
) -> dict[tuple[int, int], frozenset[tuple[int, int]]]:
    """Normalize the relation argument to a table keyed by sequence index pairs.

    Defaults: sequences over the same atom ids relate by identity (that is the
    only realizable relation of a partition with itself); otherwise all
    intersections are taken to be infinite (generic position).
    """
    table: dict[tuple[int, int], frozenset[tuple[int, int]]] = {}
    if rel is None:
        pass
    elif isinstance(rel, InfinitudeRelation):
        if coeff_count != 2:
            raise BadRelationError(
                "a single InfinitudeRelation only describes a two-sequence combine"
            )
        if rel.left.ids != xs[0].partition.ids or rel.right.ids != xs[1].partition.ids:
            raise BadRelationError("relation partitions do not match the sequences")
        table[(0, 1)] = rel.pairs
    elif isinstance(rel, Mapping):
        for (i, j), ps in rel.items():
            if not (0 <= i < j < coeff_count):
                raise BadRelationError(f"bad sequence index pair ({i},{j})")
            ps = frozenset((int(a), int(b)) for a, b in ps)
            ni, nj = xs[i].num_atoms, xs[j].num_atoms
            for a, b in ps:
                if not (0 <= a < ni and 0 <= b < nj):
                    raise BadRelationError(f"atom pair ({a},{b}) out of range for ({i},{j})")
            if {a for a, _ in ps} != set(range(ni)) or {b for _, b in ps} != set(range(nj)):
                raise BadRelationError(f"relation for ({i},{j}) does not cover both partitions")
            table[(i, j)] = ps
    else:
        raise BadRelationError("rel must be None, an InfinitudeRelation, or a mapping")
    for i in range(coeff_count):
        for j in range(i + 1, coeff_count):
            if (i, j) in table:
                continue
            if xs[i].partition.ids == xs[j].partition.ids:
                table[(i, j)] = frozenset((a, a) for a in range(xs[i].num_atoms))
            else:
                table[(i, j)] = frozenset(
                    (a, b)
                    for a in range(xs[i].num_atoms)
                    for b in range(xs[j].num_atoms)
                )
    return table


def combine(coeffs: Sequence, xs: Sequence[StepSequence], rel=None) -> StepSequence:
    """Exact combination sum(c_i * x_i) as a canonical StepSequence.

    Partitions are refined iteratively; a refined atom survives only when
    every pairwise intersection along it is declared infinite. The value on
    a refined atom is the coefficient-weighted sum of the member values.
    """
    if len(coeffs) != len(xs) or not xs:
        raise ShapeError("coeffs and xs must have equal nonzero length")
    cs = [rat(c) for c in coeffs]
    table = _pair_table(len(xs), xs, rel)
    live = [i for i, c in enumerate(cs) if c != 0]
    if not live:
        return canonicalize(xs[0].partition, [Fraction(0)] * xs[0].num_atoms)

    composites: list[tuple[int, ...]] = [(a,) for a in range(xs[live[0]].num_atoms)]
    for t in range(1, len(live)):
        sj = live[t]
        new: list[tuple[int, ...]] = []
        for comp in composites:
            for b in range(xs[sj].num_atoms):
                ok = True
                for u in range(t):
                    si = live[u]
                    key = (si, sj) if si < sj else (sj, si)
                    pair = (comp[u], b) if si < sj else (b, comp[u])
                    if pair not in table[key]:
                        ok = False
                        break
                if ok:
                    new.append(comp + (b,))
        composites = new
    if not composites:
        raise BadRelationError("declared relations leave no infinite refined atom")

    atoms = []
    values = []
    for comp in composites:
        ids = [xs[live[u]].partition.atoms[comp[u]].id for u in range(len(live))]
        atoms.append("&".join(ids))
        values.append(sum((cs[live[u]] * xs[live[u]].values[comp[u]]
                           for u in range(len(live))), Fraction(0)))
    return canonicalize(SymbolicPartition.from_ids(atoms), values)


def accumulation_points(x: StepSequence) -> frozenset[Fraction]:
    """The (finite) set of accumulation points of a canonical step sequence."""
    return x.accumulation_points()
