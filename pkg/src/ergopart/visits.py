"""Blocks visited infinitely often by an orbit."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Mapping, Optional, Union

from .chains import RefinementChain
from .partitions import Partition, SpaceMismatch
from .sets import AnySet, UPSet
from .state_space import Arithmetic, Cycle, MapDescriptor, orbit_descriptor


class InvalidSelection(ValueError):
    def __init__(self, label, block_id):
        self.label, self.block_id = label, block_id
        super().__init__(f"block {block_id} at index {label!r} is not visited infinitely often")


@dataclass(frozen=True)
class VisitSet:
    """Block IDs of ``partition`` hit by ``T^n(point)`` for infinitely many ``n >= 1``."""

    partition: Partition
    point: int
    block_ids: tuple

    @property
    def m(self) -> int:
        return len(self.block_ids)

    def __contains__(self, block_id: int) -> bool:
        return block_id in self.block_ids

    def __iter__(self):
        return iter(self.block_ids)

    def blocks(self) -> list:
        return [self.partition.blocks[i] for i in self.block_ids]


def _meets_progression(block: UPSet, first: int, stride: int) -> bool:
    # {first + k*stride} reduces mod p onto the coset first + gcd(stride, p)*Z
    g = gcd(stride, block.period)
    return any((r - first) % g == 0 for r in block.residues)


def delta(partition: Partition, m: MapDescriptor, x: int) -> VisitSet:
    """The blocks of ``partition`` visited infinitely often by the orbit of ``x``."""
    if partition.space != m.space:
        raise SpaceMismatch("partition and map act on different spaces")
    orbit = orbit_descriptor(m, x)
    tail = orbit.tail
    if isinstance(tail, Cycle):
        ids = {partition.block_of(s) for s in tail.states}
    elif isinstance(tail, Arithmetic):
        ids = {
            i
            for i, block in enumerate(partition.blocks)
            if _meets_progression(block.canonicalize(), tail.first, tail.stride)
        }
    else:  # pragma: no cover
        raise TypeError(tail)
    return VisitSet(partition, x, tuple(sorted(ids)))


@dataclass(frozen=True)
class IntersectionReport:
    intersection: AnySet
    labels: tuple
    chosen: tuple
    minima: tuple
    verdict: str


EMPTY = "empty"
EMPTY_IN_LIMIT = "empty in the limit (witnessed by unbounded minima)"
STABILIZED = "nonempty (stabilized)"
UNDETERMINED = "undetermined at this depth"


def _least(label, visits: VisitSet) -> int:
    return visits.block_ids[0]


def chain_block_intersection(
    chain: RefinementChain,
    m: MapDescriptor,
    x: int,
    selector: Union[Callable, Mapping, None] = None,
    depth: Optional[int] = None,
) -> IntersectionReport:
    """Intersect one visited block per index along a total chain.

    ``selector`` is either a mapping from index label to block ID or a
    callable ``(label, VisitSet) -> block ID``; by default the least visited
    block is taken.  The verdict reads the trend of the prefix intersections:
    the last two equal and finite means stabilized, strictly growing minima
    over the second half with every prefix infinite means empty in the limit.
    """
    labels = chain.index.linear_order()
    if depth is not None:
        labels = labels[: depth + 1]
    if selector is None:
        selector = _least
    elif isinstance(selector, Mapping):
        table = selector
        selector = lambda label, visits: table[label]  # noqa: E731

    current = chain.space.full_set()
    prefixes, chosen = [], []
    for label in labels:
        visits = delta(chain[label], m, x)
        block_id = selector(label, visits)
        if block_id not in visits:
            raise InvalidSelection(label, block_id)
        chosen.append(block_id)
        current = current.intersect(chain[label].blocks[block_id])
        prefixes.append(current)
    minima = tuple(p.min_element() for p in prefixes)
    return IntersectionReport(current, tuple(labels), tuple(chosen), minima, _verdict(prefixes, minima))


def _verdict(prefixes: list, minima: tuple) -> str:
    last = prefixes[-1]
    if last.is_empty():
        return EMPTY
    if len(prefixes) >= 2 and prefixes[-2] == last and not last.is_infinite():
        return STABILIZED
    tail_start = len(prefixes) // 2
    tail = minima[tail_start:]
    if (
        len(tail) >= 2
        and all(a < b for a, b in zip(tail, tail[1:]))
        and all(p.is_infinite() for p in prefixes[tail_start:])
    ):
        return EMPTY_IN_LIMIT
    return UNDETERMINED


__all__ = [
    "EMPTY",
    "EMPTY_IN_LIMIT",
    "IntersectionReport",
    "InvalidSelection",
    "STABILIZED",
    "UNDETERMINED",
    "VisitSet",
    "chain_block_intersection",
    "delta",
]
