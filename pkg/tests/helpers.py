"""Random instance generators shared by the unit and acceptance tests."""

import random
from math import lcm

from hypothesis import strategies as st

from ergopart.chains import IndexPoset, RefinementChain, join_closed_family
from ergopart.partitions import Partition, validate
from ergopart.sets import UPSet
from ergopart.state_space import NatSpace, TableMap


def random_table(rng: random.Random, size: int) -> TableMap:
    return TableMap(tuple(rng.randrange(size) for _ in range(size)))


def random_labels(rng: random.Random, size: int, max_blocks: int = 6) -> list:
    k = rng.randint(1, max_blocks)
    return [rng.randrange(k) for _ in range(size)]


def random_partition(rng: random.Random, size: int, max_blocks: int = 6) -> Partition:
    return Partition.from_labels(random_labels(rng, size, max_blocks))


def refine_labels(rng: random.Random, labels: list, pieces: int = 2) -> list:
    """Split every block of ``labels`` into up to ``pieces`` random parts."""
    return [(lab, rng.randrange(pieces)) for lab in labels]


def random_refinement_pair(rng: random.Random, size: int):
    coarse = random_labels(rng, size)
    return Partition.from_labels(coarse), Partition.from_labels(refine_labels(rng, coarse, rng.randint(1, 3)))


def random_monotone_chain(rng: random.Random, size: int, length: int) -> RefinementChain:
    labels = random_labels(rng, size, 3)
    parts = [Partition.from_labels(labels)]
    for _ in range(length - 1):
        labels = refine_labels(rng, labels, rng.randint(1, 2))
        parts.append(Partition.from_labels(labels))
    names = list(range(length))
    return RefinementChain(IndexPoset(names, zip(names, names[1:])), dict(zip(names, parts)))


def random_directed_family(rng: random.Random, size: int) -> RefinementChain:
    """Join closure of 1-3 random partitions, plus the trivial one: at most 8 members."""
    gens = {f"g{i}": random_partition(rng, size, 4) for i in range(rng.randint(1, 3))}
    gens["top0"] = Partition.from_labels([0] * size)
    return join_closed_family(gens)


def random_upset(rng: random.Random, max_threshold: int = 8, max_period: int = 6) -> UPSet:
    t = rng.randint(0, max_threshold)
    p = rng.randint(1, max_period)
    residues = {r for r in range(p) if rng.random() < 0.5}
    exceptions = {n for n in range(t) if rng.random() < 0.5}
    return UPSet(t, p, residues, exceptions).canonicalize()


def random_up_partition(rng: random.Random) -> Partition:
    """Random partition of the naturals into ultimately periodic blocks."""
    t = rng.randint(0, 8)
    p = rng.randint(1, 6)
    k = rng.randint(1, 4)
    tail = [rng.randrange(k) for _ in range(p)]
    head = [rng.randrange(k) for _ in range(t)]
    blocks = []
    for b in range(k):
        s = UPSet(t, p, {r for r in range(p) if tail[r] == b}, {n for n in range(t) if head[n] == b})
        if not s.is_empty():
            blocks.append(s.canonicalize())
    return validate(blocks, NatSpace())


@st.composite
def upsets(draw, max_threshold=8, max_period=6):
    t = draw(st.integers(0, max_threshold))
    p = draw(st.integers(1, max_period))
    residues = draw(st.sets(st.integers(0, p - 1)))
    exceptions = draw(st.sets(st.integers(0, t - 1))) if t else set()
    return UPSet(t, p, residues, exceptions)


@st.composite
def finite_systems(draw, max_size=12):
    size = draw(st.integers(1, max_size))
    table = draw(st.lists(st.integers(0, size - 1), min_size=size, max_size=size))
    labels = draw(st.lists(st.integers(0, 4), min_size=size, max_size=size))
    x = draw(st.integers(0, size - 1))
    return TableMap(tuple(table)), Partition.from_labels(labels), x


@st.composite
def label_lists(draw, size, max_label=4):
    return draw(st.lists(st.integers(0, max_label), min_size=size, max_size=size))


def check_window(*sets: UPSet) -> int:
    return 4 * lcm(*(s.period for s in sets)) + max(s.threshold for s in sets)
