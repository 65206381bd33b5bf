"""Finite partitions, the refinement order, projection maps and joins."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .sets import AnySet, FiniteSet, UPSet, render_set
from .state_space import FiniteSpace, StateSpace, describe_space


class PartitionError(ValueError):
    """Base class for rejected partitions and partition operations."""


class EmptyBlock(PartitionError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"block {index} is empty")


class Overlap(PartitionError):
    def __init__(self, first: int, second: int, witness: int):
        self.first, self.second, self.witness = first, second, witness
        super().__init__(f"blocks {first} and {second} overlap at {witness}")


class Uncovered(PartitionError):
    def __init__(self, witness: int):
        self.witness = witness
        super().__init__(f"state {witness} is not covered by any block")


class SpaceMismatch(PartitionError):
    pass


class NotARefinement(PartitionError):
    def __init__(self, fine_block: int):
        self.fine_block = fine_block
        super().__init__(f"fine block {fine_block} lies in no block of the coarse partition")


def _set_kind(space: StateSpace):
    return FiniteSet if isinstance(space, FiniteSpace) else UPSet


class Partition:
    """A finite partition of a state space into nonempty admissible blocks.

    Blocks are kept sorted by least element, so block IDs (list positions)
    are deterministic.  Build instances with :func:`validate`.
    """

    __slots__ = ("space", "blocks")

    def __init__(self, space: StateSpace, blocks: Sequence[AnySet]):
        self.space = space
        self.blocks = tuple(sorted(blocks, key=lambda b: b.min_element()))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[AnySet]:
        return iter(self.blocks)

    def __getitem__(self, block_id: int) -> AnySet:
        return self.blocks[block_id]

    def block_of(self, x: int) -> int:
        """ID of the block containing state ``x``."""
        for i, block in enumerate(self.blocks):
            if block.member(x):
                return i
        raise ValueError(f"state {x} is not covered")

    def index(self, block: AnySet) -> int:
        return self.blocks.index(block)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Partition) and (self.space, self.blocks) == (other.space, other.blocks)

    def __hash__(self) -> int:
        return hash((self.space, self.blocks))

    def __repr__(self) -> str:
        return f"Partition({describe_space(self.space)}, [{', '.join(map(render_set, self.blocks))}])"

    def render(self) -> list[str]:
        return [render_set(b) for b in self.blocks]

    @classmethod
    def trivial(cls, space: StateSpace) -> "Partition":
        return cls(space, [space.full_set()])

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        """Partition of ``0..len(labels)-1`` grouping states with equal labels."""
        groups: dict = {}
        for x, lab in enumerate(labels):
            groups.setdefault(lab, []).append(x)
        n = len(labels)
        return cls(FiniteSpace(n), [FiniteSet.from_elements(n, g) for g in groups.values()])


def validate(blocks: Iterable[AnySet], space: StateSpace) -> Partition:
    """Check that ``blocks`` partition ``space`` and return the canonical partition.

    Raises :class:`EmptyBlock`, :class:`Overlap` or :class:`Uncovered` with a
    witness for the first violated condition.  Indices in the errors refer to
    the order the blocks were given in.
    """
    blocks = list(blocks)
    kind = _set_kind(space)
    for i, b in enumerate(blocks):
        if not isinstance(b, kind):
            raise SpaceMismatch(f"block {i} is a {type(b).__name__}, expected {kind.__name__}")
        if isinstance(b, FiniteSet) and b.size != space.size:
            raise SpaceMismatch(f"block {i} lives on a space of size {b.size}")
    if not blocks:
        raise Uncovered(space.full_set().min_element())
    for i, b in enumerate(blocks):
        if b.is_empty():
            raise EmptyBlock(i)
    for i, j in combinations(range(len(blocks)), 2):
        common = blocks[i].intersect(blocks[j])
        if not common.is_empty():
            raise Overlap(i, j, common.min_element())
    covered = blocks[0]
    for b in blocks[1:]:
        covered = covered.union(b)
    missing = covered.complement()
    if not missing.is_empty():
        raise Uncovered(missing.min_element())
    return Partition(space, blocks)


def _check_same_space(a: Partition, b: Partition) -> None:
    if a.space != b.space:
        raise SpaceMismatch(f"{describe_space(a.space)} vs {describe_space(b.space)}")


def _containing_block(coarse: Partition, block: AnySet):
    # blocks are disjoint and cover, so the block holding the least element is the only candidate
    i = coarse.block_of(block.min_element())
    return i if block.issubset(coarse.blocks[i]) else None


def refines(coarse: Partition, fine: Partition) -> bool:
    """True iff every block of ``fine`` lies inside some block of ``coarse``."""
    _check_same_space(coarse, fine)
    return all(_containing_block(coarse, b) is not None for b in fine.blocks)


@dataclass(frozen=True)
class ProjectionMap:
    """Sends each block of ``source`` to the block of ``target`` containing it."""

    source: Partition
    target: Partition
    table: tuple

    def __call__(self, block_id: int) -> int:
        return self.table[block_id]

    def compose(self, inner: "ProjectionMap") -> "ProjectionMap":
        """``self`` after ``inner``."""
        if inner.target != self.source:
            raise PartitionError("projection maps are not composable")
        return ProjectionMap(inner.source, self.target, tuple(self.table[j] for j in inner.table))

    def is_identity(self) -> bool:
        return self.table == tuple(range(len(self.table)))


def psi(fine: Partition, coarse: Partition) -> ProjectionMap:
    """Projection from the blocks of ``fine`` onto the blocks of ``coarse``."""
    _check_same_space(coarse, fine)
    table = []
    for j, b in enumerate(fine.blocks):
        i = _containing_block(coarse, b)
        if i is None:
            raise NotARefinement(j)
        table.append(i)
    return ProjectionMap(fine, coarse, tuple(table))


def join(a: Partition, b: Partition) -> Partition:
    """Coarsest common refinement: all nonempty pairwise intersections."""
    _check_same_space(a, b)
    blocks = []
    for x in a.blocks:
        for y in b.blocks:
            common = x.intersect(y)
            if not common.is_empty():
                blocks.append(common)
    return Partition(a.space, blocks)


def join_all(partitions: Iterable[Partition]) -> Partition:
    partitions = iter(partitions)
    result = next(partitions)
    for p in partitions:
        result = join(result, p)
    return result


def enumerate_partitions(size: int) -> list[Partition]:
    """Every partition of ``{0..size-1}``, via restricted growth strings."""

    def growth(prefix: list[int], top: int):
        if len(prefix) == size:
            yield list(prefix)
            return
        for lab in range(top + 2):
            prefix.append(lab)
            yield from growth(prefix, max(top, lab))
            prefix.pop()

    return [Partition.from_labels(labels) for labels in growth([0], 0)] if size else []


def split_block(p: Partition, block_id: int, part: AnySet) -> Partition:
    """Refine ``p`` by cutting block ``block_id`` along ``part``.

    Returns ``p`` unchanged when the cut would leave an empty piece.
    """
    block = p.blocks[block_id]
    inside, outside = block.intersect(part), block.difference(part)
    if inside.is_empty() or outside.is_empty():
        return p
    rest = [b for i, b in enumerate(p.blocks) if i != block_id]
    return Partition(p.space, rest + [inside, outside])


__all__ = [
    "EmptyBlock",
    "NotARefinement",
    "Overlap",
    "Partition",
    "PartitionError",
    "ProjectionMap",
    "SpaceMismatch",
    "Uncovered",
    "enumerate_partitions",
    "join",
    "join_all",
    "psi",
    "refines",
    "split_block",
    "validate",
]
