"""Inverse systems of visit sets and their threads.

For a refinement chain ``lambda -> D_lambda``, a map ``T`` and a point ``x``
the levels are the visit sets ``D_lambda(x)`` and, for ``lo <= hi``, the
bonding map sends a visited block of ``D_hi`` to the block of ``D_lo``
containing it.  A thread picks one visited block per index, compatibly with
every bonding map.  On a directed index poset with a countable cofinal subset
the threads are never exhausted; :func:`theorem_thread` builds one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .chains import IndexPoset, RefinementChain, check_monotone, extract_cofinal_chain
from .partitions import psi
from .state_space import MapDescriptor
from .visits import delta


class InverseSystemError(ValueError):
    pass


class NotMonotone(InverseSystemError):
    pass


class InvariantViolation(InverseSystemError):
    """A property guaranteed by construction failed; indicates a bug or bad input."""


class NoDominatingChainElement(InverseSystemError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"no element of the chain lies above {label!r}")


class IllDefinedExtension(InverseSystemError):
    def __init__(self, label, values):
        self.label, self.values = label, values
        super().__init__(f"chain elements above {label!r} push down to different blocks {values}")


@dataclass(frozen=True)
class InverseSystem:
    """Finite levels indexed by a poset with bonding maps ``maps[(hi, lo)]``.

    ``maps`` holds a dict from level-``hi`` elements to level-``lo`` elements
    for every comparable pair, identities included.
    """

    index: IndexPoset
    levels: Mapping
    maps: Mapping
    chain: Optional[RefinementChain] = None
    transformation: Optional[MapDescriptor] = None
    point: Optional[int] = None

    @classmethod
    def from_tables(cls, index: IndexPoset, levels: Mapping, maps: Mapping) -> "InverseSystem":
        """Hand-built system; identities are filled in, other pairs are required."""
        levels = {lab: tuple(sorted(levels[lab])) for lab in index}
        full = {}
        for lo, hi in index.comparable_pairs():
            if lo == hi:
                full[(hi, lo)] = {a: a for a in levels[hi]}
                continue
            try:
                table = dict(maps[(hi, lo)])
            except KeyError:
                raise InverseSystemError(f"missing bonding map {hi!r} -> {lo!r}") from None
            if set(table) != set(levels[hi]) or not set(table.values()) <= set(levels[lo]):
                raise InverseSystemError(f"bonding map {hi!r} -> {lo!r} does not match its levels")
            full[(hi, lo)] = table
        return cls(index, levels, full)

    def project(self, hi, lo, block: int) -> int:
        return self.maps[(hi, lo)][block]

    def restrict(self, labels: Iterable) -> "InverseSystem":
        index = self.index.restrict(labels)
        keep = set(index)
        return InverseSystem(
            index,
            {lab: self.levels[lab] for lab in index},
            {k: v for k, v in self.maps.items() if k[0] in keep and k[1] in keep},
            self.chain.restrict(keep) if self.chain is not None else None,
            self.transformation,
            self.point,
        )


@dataclass(frozen=True)
class Thread:
    """One block ID per index label."""

    choices: tuple  # ((label, block_id), ...) in index order
    certificate: Optional[str] = field(default=None, compare=False)

    def __getitem__(self, label) -> int:
        for lab, b in self.choices:
            if lab == label:
                return b
        raise KeyError(label)

    def as_dict(self) -> dict:
        return dict(self.choices)

    @property
    def labels(self) -> tuple:
        return tuple(lab for lab, _ in self.choices)


def build_system(chain: RefinementChain, m: MapDescriptor, x: int) -> InverseSystem:
    """Visit sets of ``x`` along ``chain`` with their restricted projections."""
    report = check_monotone(chain)
    if not report.passed:
        lo, hi, block = report.violation
        raise NotMonotone(f"index {lo!r} <= {hi!r} but block {block} of {hi!r} is not contained in any block of {lo!r}")
    levels = {lab: delta(chain[lab], m, x).block_ids for lab in chain.index}
    for lab, level in levels.items():
        if not level:
            raise InvariantViolation(f"empty visit set at {lab!r}")
    maps = {}
    for lo, hi in chain.index.comparable_pairs():
        if lo == hi:
            maps[(hi, lo)] = {a: a for a in levels[hi]}
            continue
        table = psi(chain[hi], chain[lo]).table
        restricted = {a: table[a] for a in levels[hi]}
        stray = set(restricted.values()) - set(levels[lo])
        if stray:
            raise InvariantViolation(
                f"projection {hi!r} -> {lo!r} leaves the visit set (blocks {sorted(stray)})"
            )
        maps[(hi, lo)] = restricted
    return InverseSystem(chain.index, levels, maps, chain, m, x)


@dataclass(frozen=True)
class LawResult:
    passed: bool
    witness: Optional[tuple] = None


@dataclass(frozen=True)
class SystemReport:
    identity: LawResult
    composition: LawResult
    surjectivity: LawResult

    @property
    def passed(self) -> bool:
        return self.identity.passed and self.composition.passed and self.surjectivity.passed


def check_inverse_system(system: InverseSystem) -> SystemReport:
    """Identity law, composition law on comparable triples, and surjectivity.

    Witnesses: ``(label, block)`` for identity, ``(lo, mid, hi, block)`` for
    composition, ``(lo, hi, block)`` for a block of ``lo`` with no preimage.
    """
    index, levels, maps = system.index, system.levels, system.maps
    identity = LawResult(True)
    for lab in index:
        for a in levels[lab]:
            if maps[(lab, lab)][a] != a:
                identity = LawResult(False, (lab, a))
                break
        if not identity.passed:
            break

    composition = LawResult(True)
    pairs = [(lo, hi) for lo, hi in index.comparable_pairs() if lo != hi]
    above = {}
    for lo, hi in pairs:
        above.setdefault(lo, []).append(hi)
    for lo, mid in pairs:
        for hi in above.get(mid, ()):
            for a in levels[hi]:
                if maps[(mid, lo)][maps[(hi, mid)][a]] != maps[(hi, lo)][a]:
                    composition = LawResult(False, (lo, mid, hi, a))
                    break
            if not composition.passed:
                break
        if not composition.passed:
            break

    surjectivity = LawResult(True)
    for lo, hi in pairs:
        image = set(maps[(hi, lo)].values())
        missing = [a for a in levels[lo] if a not in image]
        if missing:
            surjectivity = LawResult(False, (lo, hi, missing[0]))
            break
    return SystemReport(identity, composition, surjectivity)


def is_thread(system: InverseSystem, thread: Thread) -> bool:
    choice = thread.as_dict()
    if set(choice) != set(system.index):
        return False
    if any(choice[lab] not in system.levels[lab] for lab in system.index):
        return False
    return all(
        system.maps[(hi, lo)][choice[hi]] == choice[lo] for lo, hi in system.index.comparable_pairs()
    )


def enumerate_threads(system: InverseSystem, limit: Optional[int] = None) -> list[Thread]:
    """All threads, in lexicographic order of ``(index order, block ID)``.

    Backtracking over the index labels; each candidate is checked against the
    labels already assigned that are comparable with it.  An empty result
    means the inverse limit is empty.
    """
    index, levels, maps = system.index, system.levels, system.maps
    labels = list(index)
    related = []
    for i, lab in enumerate(labels):
        checks = []
        for prev in labels[:i]:
            if index.leq(prev, lab):
                checks.append((prev, maps[(lab, prev)], True))
            elif index.leq(lab, prev):
                checks.append((prev, maps[(prev, lab)], False))
        related.append(checks)

    out: list[Thread] = []
    chosen: dict = {}

    def extend(i: int) -> bool:
        if i == len(labels):
            out.append(Thread(tuple((lab, chosen[lab]) for lab in labels)))
            return limit is not None and len(out) >= limit
        lab = labels[i]
        for a in levels[lab]:
            ok = True
            for prev, table, lab_above in related[i]:
                if lab_above:
                    ok = table[a] == chosen[prev]
                else:
                    ok = table[chosen[prev]] == a
                if not ok:
                    break
            if ok:
                chosen[lab] = a
                if extend(i + 1):
                    return True
        chosen.pop(lab, None)
        return False

    extend(0)
    return out


def build_thread_along_chain(system: InverseSystem, depth: Optional[int] = None) -> Thread:
    """Thread over a totally ordered index set by pushing down from the top.

    The least visited block at the top index (or at index number ``depth``)
    is projected to every lower index.  Surjectivity of each consecutive
    bonding map is checked on the way; for truncated infinite chains the
    thread carries a certificate saying so.
    """
    order = system.index.linear_order()
    if depth is not None:
        if not 0 <= depth < len(order):
            raise InverseSystemError(f"depth {depth} outside 0..{len(order) - 1}")
        order = order[: depth + 1]
    top = order[-1]
    if not system.levels[top]:
        raise InvariantViolation(f"empty level at {top!r}")
    for lo, hi in zip(order, order[1:]):
        if set(system.maps[(hi, lo)].values()) != set(system.levels[lo]):
            raise InvariantViolation(f"bonding map {hi!r} -> {lo!r} is not surjective")
    start = system.levels[top][0]
    kept = set(order)
    choices = tuple((lab, system.maps[(top, lab)][start]) for lab in system.index if lab in kept)
    certificate = None
    if system.index.omega:
        certificate = (
            f"truncated at depth {len(order) - 1}: every consecutive bonding map up to this depth "
            "is surjective, so each finite stage lifts to the next"
        )
    return Thread(choices, certificate)


def extend_thread_to_directed(system: InverseSystem, chain: Sequence[Hashable], chain_thread: Thread) -> Thread:
    """Extend a thread living on a cofinal chain to every index.

    Each index takes the projection of the chain's block from any chain
    element above it.  All such elements are tried and must agree.
    """
    index = system.index
    values = chain_thread.as_dict()
    for lo, hi in zip(chain, chain[1:]):
        if system.maps[(hi, lo)][values[hi]] != values[lo]:
            raise InverseSystemError(f"chain thread is incompatible between {lo!r} and {hi!r}")
    choices = []
    for lab in index:
        candidates = {system.maps[(nu, lab)][values[nu]] for nu in chain if index.leq(lab, nu)}
        if not candidates:
            raise NoDominatingChainElement(lab)
        if len(candidates) > 1:
            raise IllDefinedExtension(lab, sorted(candidates))
        choices.append((lab, candidates.pop()))
    thread = Thread(tuple(choices))
    if not is_thread(system, thread):
        raise InvariantViolation("extended thread is not compatible")
    return thread


def theorem_thread(system: InverseSystem, cofinal: Optional[Sequence] = None) -> tuple[list, Thread]:
    """Cofinal chain plus a thread on the whole directed index poset.

    ``cofinal`` defaults to the maximal elements.  Returns the extracted
    chain and the extended thread.
    """
    index = system.index
    if index.is_total():
        return index.linear_order(), build_thread_along_chain(system)
    if cofinal is None:
        cofinal = index.maximal_elements()
    chain = extract_cofinal_chain(index, list(cofinal))
    sub = system.restrict(chain)
    chain_thread = build_thread_along_chain(sub)
    return chain, extend_thread_to_directed(system, chain, chain_thread)


def twisted_crown_system() -> InverseSystem:
    """A non-directed system with nonempty levels, onto maps, and no thread.

    Three bottom indices ``a, b, c`` and three top indices with ``p`` above
    ``a, b``, ``q`` above ``b, c`` and ``r`` above ``a, c``.  Every level is
    ``{0, 1}``; every bonding map is the identity except ``r -> c``, which
    swaps.  Going round the crown forces ``A_a = A_c`` and ``A_a != A_c``.
    """
    index = IndexPoset(
        ["a", "b", "c", "p", "q", "r"],
        [("a", "p"), ("b", "p"), ("b", "q"), ("c", "q"), ("a", "r"), ("c", "r")],
    )
    ident = {0: 0, 1: 1}
    maps = {
        ("p", "a"): ident,
        ("p", "b"): ident,
        ("q", "b"): ident,
        ("q", "c"): ident,
        ("r", "a"): ident,
        ("r", "c"): {0: 1, 1: 0},
    }
    return InverseSystem.from_tables(index, {lab: (0, 1) for lab in index}, maps)


__all__ = [
    "IllDefinedExtension",
    "InvariantViolation",
    "InverseSystem",
    "InverseSystemError",
    "LawResult",
    "NoDominatingChainElement",
    "NotMonotone",
    "SystemReport",
    "Thread",
    "build_system",
    "build_thread_along_chain",
    "check_inverse_system",
    "enumerate_threads",
    "extend_thread_to_directed",
    "is_thread",
    "theorem_thread",
    "twisted_crown_system",
]
