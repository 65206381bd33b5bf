"""Index posets, refinement chains and the built-in chain families."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Hashable, Iterable, Iterator, Mapping, Optional, Sequence

from .partitions import Partition, join, refines, validate
from .sets import UPSet
from .state_space import NatSpace


class PosetError(ValueError):
    pass


class NotAPartialOrder(PosetError):
    pass


class NotDirected(PosetError):
    def __init__(self, a, b):
        self.pair = (a, b)
        super().__init__(f"{a!r} and {b!r} have no common upper bound")


class NotCofinal(PosetError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"{witness!r} lies below no element of the cofinal set")


class IndexPoset:
    """A finite partially ordered index set.

    Either an explicit element list with a relation (closed reflexively and
    transitively on construction), or the truncated chain ``0 <= 1 <= ... <= K``.
    """

    def __init__(self, elements: Sequence[Hashable], relation: Iterable[tuple] = (), *, omega: bool = False):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise NotAPartialOrder("duplicate index labels")
        self.omega = omega
        self._pos = {e: i for i, e in enumerate(self.elements)}
        if omega:
            self._up = None
            return
        n = len(self.elements)
        reach = [[i == j for j in range(n)] for i in range(n)]
        for a, b in relation:
            if a not in self._pos or b not in self._pos:
                raise NotAPartialOrder(f"relation mentions unknown label in {(a, b)!r}")
            reach[self._pos[a]][self._pos[b]] = True
        for k in range(n):
            rk = reach[k]
            for i in range(n):
                if reach[i][k]:
                    ri = reach[i]
                    for j in range(n):
                        if rk[j]:
                            ri[j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if reach[i][j] and reach[j][i]:
                    raise NotAPartialOrder(
                        f"{self.elements[i]!r} and {self.elements[j]!r} are mutually related"
                    )
        self._up = [frozenset(j for j in range(n) if reach[i][j]) for i in range(n)]

    @classmethod
    def truncated_omega(cls, depth: int) -> "IndexPoset":
        if depth < 0:
            raise PosetError("depth must be non-negative")
        return cls(range(depth + 1), omega=True)

    @property
    def depth(self) -> int:
        return len(self.elements) - 1

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __contains__(self, label) -> bool:
        return label in self._pos

    def position(self, label) -> int:
        return self._pos[label]

    def leq(self, a, b) -> bool:
        i, j = self._pos[a], self._pos[b]
        if self.omega:
            return i <= j
        return j in self._up[i]

    def comparable_pairs(self) -> Iterator[tuple]:
        """All ``(lo, hi)`` with ``lo <= hi``, including ``lo == hi``."""
        for a in self.elements:
            for b in self.elements:
                if self.leq(a, b):
                    yield a, b

    def upper_bounds(self, a, b) -> list:
        return [c for c in self.elements if self.leq(a, c) and self.leq(b, c)]

    def directedness_witness(self) -> Optional[tuple]:
        """A pair without a common upper bound, or ``None`` if directed."""
        if self.omega:
            return None
        for i, a in enumerate(self.elements):
            for b in self.elements[i + 1:]:
                if not self.upper_bounds(a, b):
                    return a, b
        return None

    def is_directed(self) -> bool:
        return self.directedness_witness() is None

    def is_total(self) -> bool:
        if self.omega:
            return True
        return all(self.leq(a, b) or self.leq(b, a) for a in self.elements for b in self.elements)

    def linear_order(self) -> list:
        """Elements of a total order, from least to greatest."""
        if not self.is_total():
            raise PosetError("index poset is not a chain")
        if self.omega:
            return list(self.elements)
        return sorted(self.elements, key=lambda e: len(self._up[self._pos[e]]), reverse=True)

    def maximal_elements(self) -> list:
        return [a for a in self.elements if not any(a != b and self.leq(a, b) for b in self.elements)]

    def restrict(self, labels: Iterable) -> "IndexPoset":
        keep = [e for e in self.elements if e in set(labels)]
        if self.omega and keep == list(range(len(keep))):
            return IndexPoset(keep, omega=True)
        return IndexPoset(keep, [(a, b) for a in keep for b in keep if self.leq(a, b)])

    def __repr__(self) -> str:
        if self.omega:
            return f"IndexPoset.truncated_omega({self.depth})"
        return f"IndexPoset({list(self.elements)!r})"


@dataclass(frozen=True)
class RefinementChain:
    """A monotone assignment of partitions to the elements of an index poset."""

    index: IndexPoset
    assignment: Mapping
    provenance: tuple = ("explicit",)

    def __post_init__(self):
        missing = [lab for lab in self.index if lab not in self.assignment]
        if missing:
            raise PosetError(f"no partition assigned to {missing[0]!r}")
        spaces = {p.space for p in self.assignment.values()}
        if len(spaces) != 1:
            raise PosetError("chain partitions live on different spaces")

    def __getitem__(self, label) -> Partition:
        return self.assignment[label]

    @property
    def space(self):
        return next(iter(self.assignment.values())).space

    def restrict(self, labels: Iterable) -> "RefinementChain":
        index = self.index.restrict(labels)
        return RefinementChain(index, {lab: self.assignment[lab] for lab in index}, self.provenance)


@dataclass(frozen=True)
class MonotoneReport:
    passed: bool
    pairs_checked: int
    violation: Optional[tuple] = None  # (coarse label, fine label, fine block id)


def check_monotone(chain: RefinementChain) -> MonotoneReport:
    """Check that ``lo <= hi`` implies ``chain[lo]`` is refined by ``chain[hi]``.

    Truncated chains are checked on consecutive pairs only.
    """
    if chain.index.omega:
        labels = list(chain.index)
        pairs: Iterable = zip(labels, labels[1:])
    else:
        pairs = ((a, b) for a, b in chain.index.comparable_pairs() if a != b)
    checked = 0
    for lo, hi in pairs:
        checked += 1
        coarse, fine = chain[lo], chain[hi]
        for j, block in enumerate(fine.blocks):
            i = coarse.block_of(block.min_element())
            if not block.issubset(coarse.blocks[i]):
                return MonotoneReport(False, checked, (lo, hi, j))
    return MonotoneReport(True, checked)


def extract_cofinal_chain(poset: IndexPoset, cofinal: Sequence) -> list:
    """An increasing sequence dominating every element of ``poset``.

    Starts at the first element of ``cofinal`` and repeatedly moves to the
    first element (in construction order) above both the current element and
    the next element of ``cofinal``.
    """
    if not cofinal:
        raise NotCofinal(poset.elements[0] if len(poset) else None)
    for c in cofinal:
        if c not in poset:
            raise PosetError(f"unknown label {c!r} in cofinal set")
    witness = poset.directedness_witness()
    if witness is not None:
        raise NotDirected(*witness)
    for e in poset:
        if not any(poset.leq(e, c) for c in cofinal):
            raise NotCofinal(e)
    chain = [cofinal[0]]
    for c in cofinal[1:]:
        if not poset.leq(c, chain[-1]):
            chain.append(poset.upper_bounds(chain[-1], c)[0])
    return chain


@dataclass(frozen=True)
class FilterProxy:
    """An infinite, co-infinite set standing in for a free-ultrafilter member."""

    U: UPSet

    def __post_init__(self):
        if not isinstance(self.U, UPSet):
            raise TypeError("filter proxy needs a UPSet")
        if not self.U.is_infinite():
            raise ValueError("filter proxy set must be infinite")
        if not self.U.complement().is_infinite():
            raise ValueError("filter proxy set must have an infinite complement")


def partition_poset(partitions: Mapping, provenance: tuple = ("explicit",)) -> RefinementChain:
    """Index a family of partitions by itself, ordered by refinement."""
    labels = list(partitions)
    relation = [(a, b) for a in labels for b in labels if refines(partitions[a], partitions[b])]
    return RefinementChain(IndexPoset(labels, relation), dict(partitions), provenance)


def example2(depth: int) -> RefinementChain:
    """``{0}, ..., {k-1}, [k, oo)`` at index ``k`` for ``k = 0..depth``."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    space = NatSpace()
    assignment = {}
    for k in range(depth + 1):
        blocks = [UPSet.finite([i]) for i in range(k)] + [UPSet.ray(k)]
        assignment[k] = validate(blocks, space)
    return RefinementChain(IndexPoset.truncated_omega(depth), assignment, ("example2", {"depth": depth}))


def _join_closure(generators: dict) -> dict:
    family = {}
    for label, p in generators.items():
        if p not in family.values():
            family[label] = p
    changed = True
    while changed:
        changed = False
        items = list(family.items())
        for i, (la, pa) in enumerate(items):
            for lb, pb in items[i + 1:]:
                p = join(pa, pb)
                if p not in family.values():
                    family[f"{la}v{lb}"] = p
                    changed = True
    return family


def join_closed_family(generators: Mapping, provenance: tuple = ("join_closure",)) -> RefinementChain:
    """Close a labelled family under joins and order it by refinement.

    Duplicates are dropped (first label wins); new members are labelled
    ``"avb"`` after the pair that produced them.  The result is directed.
    """
    return partition_poset(_join_closure(dict(generators)), provenance)


def filter_family(U: UPSet, depth: int) -> RefinementChain:
    """A join-closed directed family of partitions of the naturals all containing ``U``.

    Generators: ``G_j`` splits the first ``j`` points of the complement of
    ``U`` off as singletons, and ``H`` cuts the complement into two infinite
    residue classes.  The family is the join closure of these.
    """
    proxy = FilterProxy(U)
    if depth < 0:
        raise ValueError("depth must be non-negative")
    space = NatSpace()
    rest = proxy.U.complement()
    points = list(islice(rest.elements(), depth))
    generators = {}
    for j in range(depth + 1):
        singles = [UPSet.finite([c]) for c in points[:j]]
        remainder = rest.difference(UPSet.finite(points[:j]))
        generators[f"G{j}"] = validate([proxy.U, *singles, remainder], space)
    canon = rest.canonicalize()
    r = min(canon.residues)
    half = rest.intersect(UPSet.residue_class(r, 2 * canon.period))
    generators["H"] = validate([proxy.U, half, rest.difference(half)], space)
    return join_closed_family(generators, ("filter_family", {"U": proxy.U, "depth": depth}))


BUILTIN_CHAINS = {"example2": example2, "filter_family": filter_family}


def generate_builtin_chain(name: str, **params) -> RefinementChain:
    try:
        generator = BUILTIN_CHAINS[name]
    except KeyError:
        raise ValueError(f"unknown built-in chain {name!r}; choose from {sorted(BUILTIN_CHAINS)}") from None
    return generator(**params)


__all__ = [
    "FilterProxy",
    "IndexPoset",
    "MonotoneReport",
    "NotAPartialOrder",
    "NotCofinal",
    "NotDirected",
    "PosetError",
    "RefinementChain",
    "check_monotone",
    "example2",
    "extract_cofinal_chain",
    "filter_family",
    "generate_builtin_chain",
    "join_closed_family",
    "partition_poset",
]
