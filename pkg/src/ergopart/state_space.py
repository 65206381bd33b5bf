"""State spaces, self-maps and exact orbit descriptors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

from .sets import FiniteSet, UPSet


class DomainError(ValueError):
    """A state does not belong to the space a map acts on."""


@dataclass(frozen=True)
class FiniteSpace:
    """The states ``0..size-1``; every subset is admissible."""

    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError(f"finite space needs size >= 1, got {self.size}")

    def contains(self, x: int) -> bool:
        return isinstance(x, int) and 0 <= x < self.size

    def full_set(self) -> FiniteSet:
        return FiniteSet.full(self.size)

    def empty_set(self) -> FiniteSet:
        return FiniteSet.empty(self.size)

    def finite_set(self, elements) -> FiniteSet:
        return FiniteSet.from_elements(self.size, elements)


@dataclass(frozen=True)
class NatSpace:
    """The natural numbers; admissible subsets are the ultimately periodic ones."""

    def contains(self, x: int) -> bool:
        return isinstance(x, int) and x >= 0

    def full_set(self) -> UPSet:
        return UPSet.nat()

    def empty_set(self) -> UPSet:
        return UPSet.empty()

    def finite_set(self, elements) -> UPSet:
        return UPSet.finite(elements)


StateSpace = Union[FiniteSpace, NatSpace]


# map descriptors


@dataclass(frozen=True)
class TableMap:
    """Self-map of a finite space given by its image table."""

    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        n = len(self.table)
        if n < 1:
            raise ValueError("image table must be nonempty")
        for x, y in enumerate(self.table):
            if not 0 <= y < n:
                raise DomainError(f"image of {x} is {y}, outside 0..{n - 1}")

    @property
    def space(self) -> FiniteSpace:
        return FiniteSpace(len(self.table))


@dataclass(frozen=True)
class Identity:
    @property
    def space(self) -> NatSpace:
        return NatSpace()


@dataclass(frozen=True)
class Constant:
    xstar: int

    def __post_init__(self):
        if self.xstar < 0:
            raise DomainError(f"constant value must be a natural number, got {self.xstar}")

    @property
    def space(self) -> NatSpace:
        return NatSpace()


@dataclass(frozen=True)
class Shift:
    stride: int = 1

    def __post_init__(self):
        if self.stride < 1:
            raise ValueError(f"shift stride must be positive, got {self.stride}")

    @property
    def space(self) -> NatSpace:
        return NatSpace()


TailMap = Union[Identity, Constant, Shift]


@dataclass(frozen=True)
class FiniteOverride:
    """A symbolic map altered on finitely many points."""

    overrides: tuple
    tail: TailMap = field(default_factory=Identity)

    def __post_init__(self):
        items = self.overrides.items() if isinstance(self.overrides, Mapping) else self.overrides
        pairs = tuple(sorted((int(a), int(b)) for a, b in items))
        if len({a for a, _ in pairs}) != len(pairs):
            raise ValueError("override domain has duplicate keys")
        if any(a < 0 or b < 0 for a, b in pairs):
            raise DomainError("overrides must map naturals to naturals")
        if not isinstance(self.tail, (Identity, Constant, Shift)):
            raise TypeError("override tail must be Identity, Constant or Shift")
        object.__setattr__(self, "overrides", pairs)

    @property
    def table(self) -> dict:
        return dict(self.overrides)

    @property
    def space(self) -> NatSpace:
        return NatSpace()


MapDescriptor = Union[TableMap, Identity, Constant, Shift, FiniteOverride]


def apply(m: MapDescriptor, x: int) -> int:
    """Return the image of ``x`` under ``m``."""
    if not m.space.contains(x):
        raise DomainError(f"state {x!r} is not in {m.space}")
    if isinstance(m, TableMap):
        return m.table[x]
    if isinstance(m, Identity):
        return x
    if isinstance(m, Constant):
        return m.xstar
    if isinstance(m, Shift):
        return x + m.stride
    if isinstance(m, FiniteOverride):
        table = m.table
        if x in table:
            return table[x]
        return apply(m.tail, x)
    raise TypeError(f"unknown map descriptor {m!r}")


def iterate(m: MapDescriptor, x: int, n: int) -> int:
    """Return ``T^n(x)``; ``n = 0`` gives ``x`` back."""
    if n < 0:
        raise ValueError("iteration count must be non-negative")
    if not m.space.contains(x):
        raise DomainError(f"state {x!r} is not in {m.space}")
    if isinstance(m, Shift):
        return x + n * m.stride
    for _ in range(n):
        x = apply(m, x)
    return x


# orbit descriptors


@dataclass(frozen=True)
class Cycle:
    states: tuple

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        if not self.states:
            raise ValueError("a cycle needs at least one state")


@dataclass(frozen=True)
class Arithmetic:
    first: int
    stride: int


@dataclass(frozen=True)
class OrbitDescriptor:
    """Closed form of ``T^1(x), T^2(x), ...``.

    ``transient`` lists ``T^1(x)..T^t(x)``; from ``n = t+1`` the orbit follows
    ``tail``, either a cycle or an arithmetic progression.
    """

    start: int
    transient: tuple
    tail: Union[Cycle, Arithmetic]

    def value(self, n: int) -> int:
        if n < 1:
            raise ValueError("orbit values are indexed from n = 1")
        if n <= len(self.transient):
            return self.transient[n - 1]
        k = n - 1 - len(self.transient)
        if isinstance(self.tail, Cycle):
            return self.tail.states[k % len(self.tail.states)]
        return self.tail.first + k * self.tail.stride


def brent(f, x0):
    """Brent's cycle finding on ``x0, f(x0), ...``.

    Returns ``(mu, lam)``: index of the first state on the cycle and the
    cycle length.  Constant memory.
    """
    power = lam = 1
    tortoise = x0
    hare = f(x0)
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = f(hare)
        lam += 1
    tortoise = hare = x0
    for _ in range(lam):
        hare = f(hare)
    mu = 0
    while tortoise != hare:
        tortoise = f(tortoise)
        hare = f(hare)
        mu += 1
    return mu, lam


def _finite_descriptor(m: TableMap, x: int) -> OrbitDescriptor:
    table = m.table
    s0 = table[x]
    mu, lam = brent(table.__getitem__, s0)
    seq = []
    s = s0
    for _ in range(mu + lam):
        seq.append(s)
        s = table[s]
    return OrbitDescriptor(x, tuple(seq[:mu]), Cycle(tuple(seq[mu:])))


def _override_descriptor(m: FiniteOverride, x: int) -> OrbitDescriptor:
    table = m.table
    top = max(table, default=-1)
    stride = m.tail.stride if isinstance(m.tail, Shift) else None
    seen: dict[int, int] = {}
    seq: list[int] = []
    s = apply(m, x)
    while True:
        if s in seen:
            k = seen[s]
            return OrbitDescriptor(x, tuple(seq[:k]), Cycle(tuple(seq[k:])))
        if stride is not None and s > top:
            first = s
            while seq and seq[-1] == first - stride:
                first = seq.pop()
            return OrbitDescriptor(x, tuple(seq), Arithmetic(first, stride))
        if s not in table and isinstance(m.tail, Identity):
            return OrbitDescriptor(x, tuple(seq), Cycle((s,)))
        seen[s] = len(seq)
        seq.append(s)
        s = apply(m, s)


def orbit_descriptor(m: MapDescriptor, x: int) -> OrbitDescriptor:
    """Exact transient-plus-tail presentation of the orbit of ``x``."""
    if not m.space.contains(x):
        raise DomainError(f"state {x!r} is not in {m.space}")
    if isinstance(m, TableMap):
        return _finite_descriptor(m, x)
    if isinstance(m, Identity):
        return OrbitDescriptor(x, (), Cycle((x,)))
    if isinstance(m, Constant):
        return OrbitDescriptor(x, (), Cycle((m.xstar,)))
    if isinstance(m, Shift):
        return OrbitDescriptor(x, (), Arithmetic(x + m.stride, m.stride))
    if isinstance(m, FiniteOverride):
        return _override_descriptor(m, x)
    raise TypeError(f"unknown map descriptor {m!r}")


def describe_map(m: MapDescriptor) -> str:
    """Config-file notation for a map descriptor."""
    if isinstance(m, TableMap):
        return "table[" + ",".join(map(str, m.table)) + "]"
    if isinstance(m, Identity):
        return "identity"
    if isinstance(m, Constant):
        return f"constant({m.xstar})"
    if isinstance(m, Shift):
        return f"shift({m.stride})"
    pairs = ",".join(f"{a}:{b}" for a, b in m.overrides)
    return f"override{{{pairs}; {describe_map(m.tail)}}}"


def describe_space(space: StateSpace) -> str:
    return f"finite({space.size})" if isinstance(space, FiniteSpace) else "nat"


def check_state(space: StateSpace, x: int) -> int:
    if not space.contains(x):
        raise DomainError(f"state {x!r} is not in {describe_space(space)}")
    return x


__all__ = [
    "Arithmetic",
    "Constant",
    "Cycle",
    "DomainError",
    "FiniteOverride",
    "FiniteSpace",
    "Identity",
    "MapDescriptor",
    "NatSpace",
    "OrbitDescriptor",
    "Shift",
    "StateSpace",
    "TableMap",
    "apply",
    "brent",
    "check_state",
    "describe_map",
    "describe_space",
    "iterate",
    "orbit_descriptor",
]

