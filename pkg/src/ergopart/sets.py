"""Exact set algebra for the two state-space backends.

``FiniteSet`` is a bitset over ``0..size-1``.  ``UPSet`` is an ultimately
periodic subset of the naturals: below ``threshold`` membership is given by an
explicit finite set of exceptions, from ``threshold`` on it is decided by the
residue of ``n`` modulo ``period``.  Both classes are immutable and closed
under intersection, union and complement.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Iterator, Optional, Union


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


class SetKindError(TypeError):
    """Raised when sets from different backends or spaces are combined."""


class FiniteSet:
    """Subset of ``{0, ..., size-1}`` stored as an integer bitmask."""

    __slots__ = ("size", "bits")

    def __init__(self, size: int, bits: int = 0):
        if size < 1:
            raise ValueError(f"space size must be positive, got {size}")
        if bits < 0 or bits >> size:
            raise ValueError("bit vector does not fit the space size")
        self.size = size
        self.bits = bits

    @classmethod
    def from_elements(cls, size: int, elements: Iterable[int]) -> "FiniteSet":
        bits = 0
        for x in elements:
            if not 0 <= x < size:
                raise ValueError(f"state {x} outside 0..{size - 1}")
            bits |= 1 << x
        return cls(size, bits)

    @classmethod
    def full(cls, size: int) -> "FiniteSet":
        return cls(size, (1 << size) - 1)

    @classmethod
    def empty(cls, size: int) -> "FiniteSet":
        return cls(size, 0)

    def _check(self, other: object) -> "FiniteSet":
        if not isinstance(other, FiniteSet):
            raise SetKindError(f"cannot combine FiniteSet with {type(other).__name__}")
        if other.size != self.size:
            raise SetKindError(f"space size mismatch: {self.size} vs {other.size}")
        return other

    def member(self, x: int) -> bool:
        if not 0 <= x < self.size:
            raise ValueError(f"state {x} outside 0..{self.size - 1}")
        return bool(self.bits >> x & 1)

    __contains__ = member

    def intersect(self, other: "FiniteSet") -> "FiniteSet":
        return FiniteSet(self.size, self.bits & self._check(other).bits)

    def union(self, other: "FiniteSet") -> "FiniteSet":
        return FiniteSet(self.size, self.bits | self._check(other).bits)

    def complement(self) -> "FiniteSet":
        return FiniteSet(self.size, ~self.bits & ((1 << self.size) - 1))

    def difference(self, other: "FiniteSet") -> "FiniteSet":
        return self.intersect(other.complement())

    def issubset(self, other: "FiniteSet") -> bool:
        return self.bits & ~self._check(other).bits == 0

    def is_empty(self) -> bool:
        return self.bits == 0

    def is_infinite(self) -> bool:
        return False

    def min_element(self) -> Optional[int]:
        if not self.bits:
            return None
        return (self.bits & -self.bits).bit_length() - 1

    def elements(self, bound: Optional[int] = None) -> Iterator[int]:
        stop = self.size if bound is None else min(bound, self.size)
        for x in range(stop):
            if self.bits >> x & 1:
                yield x

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteSet) and (self.size, self.bits) == (other.size, other.bits)

    def __hash__(self) -> int:
        return hash(("FiniteSet", self.size, self.bits))

    def __repr__(self) -> str:
        return f"FiniteSet({self.size}, {{{', '.join(map(str, self.elements()))}}})"


class UPSet:
    """Ultimately periodic subset of the natural numbers.

    ``n`` belongs to the set iff ``n in exceptions`` for ``n < threshold`` and
    iff ``n % period in residues`` for ``n >= threshold``.  Instances built
    through the public constructors and operations are always canonical;
    equality and hashing go through :meth:`canonicalize` regardless.
    """

    __slots__ = ("threshold", "period", "residues", "exceptions")

    def __init__(
        self,
        threshold: int = 0,
        period: int = 1,
        residues: Iterable[int] = (),
        exceptions: Iterable[int] = (),
    ):
        if threshold < 0:
            raise ValueError("threshold must be non-negative")
        if period < 1:
            raise ValueError("period must be positive")
        residues = frozenset(residues)
        exceptions = frozenset(exceptions)
        if any(not 0 <= r < period for r in residues):
            raise ValueError(f"residues must lie in 0..{period - 1}")
        if any(not 0 <= e < threshold for e in exceptions):
            raise ValueError(f"exceptions must lie in 0..{threshold - 1}")
        self.threshold = threshold
        self.period = period
        self.residues = residues
        self.exceptions = exceptions

    # constructors

    @classmethod
    def empty(cls) -> "UPSet":
        return cls()

    @classmethod
    def nat(cls) -> "UPSet":
        return cls(0, 1, {0})

    @classmethod
    def finite(cls, elements: Iterable[int]) -> "UPSet":
        elements = frozenset(elements)
        if any(e < 0 for e in elements):
            raise ValueError("natural numbers only")
        top = max(elements, default=-1) + 1
        return cls(top, 1, (), elements).canonicalize()

    @classmethod
    def ray(cls, start: int) -> "UPSet":
        """The set ``{start, start+1, ...}``."""
        return cls(start, 1, {0}).canonicalize()

    @classmethod
    def ap(cls, first: int, stride: int) -> "UPSet":
        """The progression ``{first + k*stride | k >= 0}``."""
        if first < 0 or stride < 1:
            raise ValueError("progression needs first >= 0 and stride >= 1")
        return cls(first, stride, {first % stride}).canonicalize()

    @classmethod
    def residue_class(cls, residue: int, modulus: int) -> "UPSet":
        return cls(0, modulus, {residue % modulus})

    # core

    def member(self, x: int) -> bool:
        if x < 0:
            return False
        if x < self.threshold:
            return x in self.exceptions
        return x % self.period in self.residues

    __contains__ = member

    def canonicalize(self) -> "UPSet":
        p = self.period
        residues = self.residues
        for q in _divisors(p):
            if all((r in residues) == ((r + q) % p in residues) for r in range(p)):
                residues = frozenset(r % q for r in residues)
                p = q
                break
        t = self.threshold
        exceptions = set(self.exceptions)
        while t > 0 and ((t - 1) in exceptions) == ((t - 1) % p in residues):
            t -= 1
            exceptions.discard(t)
        return UPSet(t, p, residues, exceptions)

    def _combine(self, other: "UPSet", op) -> "UPSet":
        if not isinstance(other, UPSet):
            raise SetKindError(f"cannot combine UPSet with {type(other).__name__}")
        t = max(self.threshold, other.threshold)
        p = _lcm(self.period, other.period)
        residues = set()
        for r in range(p):
            n = t + (r - t) % p
            if op(self.member(n), other.member(n)):
                residues.add(r)
        exceptions = {n for n in range(t) if op(self.member(n), other.member(n))}
        return UPSet(t, p, residues, exceptions).canonicalize()

    def intersect(self, other: "UPSet") -> "UPSet":
        return self._combine(other, lambda a, b: a and b)

    def union(self, other: "UPSet") -> "UPSet":
        return self._combine(other, lambda a, b: a or b)

    def difference(self, other: "UPSet") -> "UPSet":
        return self._combine(other, lambda a, b: a and not b)

    def complement(self) -> "UPSet":
        t, p = self.threshold, self.period
        residues = set(range(p)) - self.residues
        exceptions = set(range(t)) - self.exceptions
        return UPSet(t, p, residues, exceptions).canonicalize()

    def issubset(self, other: "UPSet") -> bool:
        return self.difference(other).is_empty()

    def is_empty(self) -> bool:
        c = self.canonicalize()
        return not c.residues and not c.exceptions

    def is_infinite(self) -> bool:
        return bool(self.canonicalize().residues)

    def min_element(self) -> Optional[int]:
        if self.exceptions:
            return min(self.exceptions)
        if not self.residues:
            return None
        t, p = self.threshold, self.period
        return min(t + (r - t) % p for r in self.residues)

    def elements(self, bound: Optional[int] = None) -> Iterator[int]:
        """Members in increasing order, below ``bound`` if given.

        Without a bound the iterator is infinite for infinite sets.
        """
        n = 0
        while bound is None or n < bound:
            if n >= self.threshold and not self.residues:
                return
            if self.member(n):
                yield n
            n += 1

    def check_window(self) -> int:
        """An index past which membership is purely periodic, plus one period."""
        return self.threshold + self.period

    # value semantics

    def _key(self):
        c = self.canonicalize()
        return (c.threshold, c.period, c.residues, c.exceptions)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, UPSet) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(("UPSet",) + self._key())

    def __repr__(self) -> str:
        return (
            f"UPSet(threshold={self.threshold}, period={self.period}, "
            f"residues={sorted(self.residues)}, exceptions={sorted(self.exceptions)})"
        )

    def __str__(self) -> str:
        return render_set(self)


AnySet = Union[FiniteSet, UPSet]


def member(s: AnySet, x: int) -> bool:
    return s.member(x)


def intersect(a: AnySet, b: AnySet) -> AnySet:
    return a.intersect(b)


def union(a: AnySet, b: AnySet) -> AnySet:
    return a.union(b)


def complement(s: AnySet) -> AnySet:
    return s.complement()


def is_infinite(s: AnySet) -> bool:
    return s.is_infinite()


def canonicalize(s: UPSet) -> UPSet:
    return s.canonicalize()


def min_element(s: AnySet) -> Optional[int]:
    return s.min_element()


def render_set(s: AnySet) -> str:
    """Render a set in the config-file notation.

    Finite parts become ``finite{a,b}``; each residue class of an infinite
    tail becomes ``ap(first, stride)``; parts are joined with `` ∪ ``.
    """
    if isinstance(s, FiniteSet):
        return "finite{" + ",".join(map(str, s.elements())) + "}"
    c = s.canonicalize()
    parts = []
    if c.exceptions:
        parts.append("finite{" + ",".join(map(str, sorted(c.exceptions))) + "}")
    t, p = c.threshold, c.period
    firsts = sorted(t + (r - t) % p for r in c.residues)
    parts.extend(f"ap({f},{p})" for f in firsts)
    return " ∪ ".join(parts) if parts else "finite{}"
