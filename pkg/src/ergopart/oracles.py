"""Brute-force reference computations used to cross-check the exact algorithms.

Nothing here touches orbit descriptors: every value comes from stepping the
map one application at a time.
"""

from __future__ import annotations

from math import lcm

from .partitions import Partition
from .state_space import FiniteOverride, FiniteSpace, MapDescriptor, TableMap, apply


def simulate_cycle(m: TableMap, x: int) -> tuple[list[int], list[int]]:
    """Transient and cycle of the orbit of ``x`` by hash-set bookkeeping."""
    seen: dict[int, int] = {}
    seq: list[int] = []
    s = apply(m, x)
    while s not in seen:
        seen[s] = len(seq)
        seq.append(s)
        s = apply(m, s)
    k = seen[s]
    return seq[:k], seq[k:]


def finite_delta(partition: Partition, m: TableMap, x: int) -> tuple:
    """Blocks hit by ``T^n(x)`` for ``|X| < n <= 2|X|``.

    After ``|X|`` steps the orbit is on its cycle, and ``|X|`` further steps
    cover the whole cycle.  The window result is cross-checked against the
    cycle found by revisit bookkeeping.
    """
    size = m.space.size
    hits = set()
    s = x
    for n in range(1, 2 * size + 1):
        s = apply(m, s)
        if n > size:
            hits.add(partition.block_of(s))
    _, cycle = simulate_cycle(m, x)
    assert hits == {partition.block_of(c) for c in cycle}, "window and cycle disagree"
    return tuple(sorted(hits))


def sampling_delta(partition: Partition, m: MapDescriptor, x: int) -> tuple:
    """Blocks hit by the orbit of ``x`` inside a late sampling window.

    The window skips enough steps for the orbit to pass every block threshold
    and every overridden point, then samples ``4 * lcm(periods) * stride``
    consecutive steps.
    """
    if isinstance(m.space, FiniteSpace):
        return finite_delta(partition, m, x)
    blocks = [b.canonicalize() for b in partition.blocks]
    period = lcm(*(b.period for b in blocks))
    horizon = max(b.threshold for b in blocks)
    if isinstance(m, FiniteOverride):
        horizon = max([horizon, *(max(pair) for pair in m.overrides)])
    stride = getattr(getattr(m, "tail", m), "stride", 1)
    slack = 2 * len(getattr(m, "overrides", ())) + 2
    skip = horizon + slack
    window = 4 * period * stride + slack
    s = x
    for _ in range(skip):
        s = apply(m, s)
    hits = set()
    for _ in range(window):
        s = apply(m, s)
        hits.add(partition.block_of(s))
    return tuple(sorted(hits))


def brute_preimages(levels_hi, table: dict, target: int) -> list[int]:
    """Elements of ``levels_hi`` sent to ``target`` by ``table``."""
    return [a for a in levels_hi if table[a] == target]
