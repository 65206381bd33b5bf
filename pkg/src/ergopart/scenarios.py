"""Built-in worked scenarios on the natural numbers with known answers.

Expected values are written out directly from the closed forms (rays,
singletons, infinite blocks) rather than computed by the library, and each
check compares them with what the library produces.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chains import FilterProxy, example2, filter_family
from .inverse_limit import build_system, check_inverse_system, enumerate_threads, theorem_thread
from .partitions import Partition, validate
from .sets import UPSet, render_set
from .state_space import Constant, Identity, NatSpace, Shift
from .visits import EMPTY_IN_LIMIT, STABILIZED, chain_block_intersection, delta


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    expected: str = ""
    actual: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "expected": self.expected, "actual": self.actual}


def _sample_partitions() -> list[Partition]:
    nat = NatSpace()
    evens, odds = UPSet.residue_class(0, 2), UPSet.residue_class(1, 2)
    return [
        validate([UPSet.nat()], nat),
        validate([evens, odds], nat),
        validate([UPSet.finite([0, 1, 2]), UPSet.ap(3, 2), UPSet.ap(4, 2)], nat),
        validate([UPSet.finite([1, 4]), UPSet.finite([0, 2, 3]), UPSet.ray(5)], nat),
        validate([UPSet.residue_class(0, 3), UPSet.residue_class(1, 3).union(UPSet.finite([2])),
                  UPSet.residue_class(2, 3).difference(UPSet.finite([2]))], nat),
    ]


def _blocks(visits) -> str:
    return "[" + ", ".join(render_set(b) for b in visits.blocks()) + "]"


def _fmt(sets) -> str:
    return "[" + ", ".join(render_set(s) for s in sets) + "]"


def orbit_examples(points=range(8)) -> list[Check]:
    """Visit sets under the shift, the identity and a constant map."""
    checks = []
    xstar = 3
    for k, part in enumerate(_sample_partitions()):
        infinite = [b for b in part.blocks if b.is_infinite()]
        for x in points:
            v = delta(part, Shift(1), x)
            checks.append(Check(f"shift visits exactly the infinite blocks [partition {k}, x={x}]",
                                v.blocks() == infinite, _fmt(infinite), _blocks(v)))
            own = [b for b in part.blocks if x in b]
            v = delta(part, Identity(), x)
            checks.append(Check(f"identity visits the block of x [partition {k}, x={x}]",
                                v.blocks() == own, _fmt(own), _blocks(v)))
            fixed = [b for b in part.blocks if xstar in b]
            v = delta(part, Constant(xstar), x)
            checks.append(Check(f"constant map visits the block of x*={xstar} [partition {k}, x={x}]",
                                v.blocks() == fixed, _fmt(fixed), _blocks(v)))
    return checks


def _expected_tail_block(lam: int, anchor: int) -> UPSet:
    return UPSet.finite([anchor]) if anchor < lam else UPSet.ray(lam)


def chain_examples(depth: int = 10, x_identity: int = 5, xstar: int = 3, x_constant: int = 8) -> list[Check]:
    """The cut-off chain ``{0}, ..., {k-1}, [k, oo)`` under the three maps."""
    checks = []
    chain = example2(depth)

    for lam in range(depth + 1):
        v = delta(chain[lam], Shift(1), 0)
        want = [UPSet.ray(lam)]
        checks.append(Check(f"shift from 0 visits only [{lam}, oo) at index {lam}",
                            v.blocks() == want, _fmt(want), _blocks(v)))

    cases = [
        ("shift", Shift(1), 0, lambda lam: UPSet.ray(lam)),
        ("identity", Identity(), x_identity, lambda lam: _expected_tail_block(lam, x_identity)),
        ("constant", Constant(xstar), x_constant, lambda lam: _expected_tail_block(lam, xstar)),
    ]
    for name, m, x, expected_block in cases:
        report = chain_block_intersection(chain, m, x)
        if name == "shift":
            want_minima = tuple(range(depth + 1))
            checks.append(Check("shift: prefix intersection minima are 0, 1, ..., depth",
                                report.minima == want_minima, str(want_minima), str(report.minima)))
            checks.append(Check("shift: intersection of visited blocks is empty in the limit",
                                report.verdict == EMPTY_IN_LIMIT, EMPTY_IN_LIMIT, report.verdict))
        else:
            anchor = x if name == "identity" else xstar
            want = UPSet.finite([anchor])
            checks.append(Check(f"{name}: intersection of visited blocks stabilizes at {{{anchor}}}",
                                report.verdict == STABILIZED and report.intersection == want,
                                f"{STABILIZED} {render_set(want)}",
                                f"{report.verdict} {render_set(report.intersection)}"))

        system = build_system(chain, m, x)
        threads = enumerate_threads(system)
        want_thread = [expected_block(lam) for lam in range(depth + 1)]
        got = [[chain[lam].blocks[t[lam]] for lam in range(depth + 1)] for t in threads]
        checks.append(Check(f"{name}: inverse limit is the single thread of tail blocks",
                            got == [want_thread], "1 thread " + _fmt(want_thread),
                            f"{len(threads)} thread(s) " + "; ".join(_fmt(g) for g in got)))
        law = check_inverse_system(system)
        checks.append(Check(f"{name}: identity, composition and surjectivity laws",
                            law.passed, "all pass", _law_text(law)))
        _, built = theorem_thread(system)
        checks.append(Check(f"{name}: pushed-down thread is the enumerated one",
                            bool(threads) and built == threads[0], "equal", "equal" if threads and built == threads[0] else "different"))
    return checks


def filter_examples(depth: int = 3, points=range(6)) -> list[Check]:
    """Directed families of partitions sharing an infinite, co-infinite block."""
    checks = []
    for U in (UPSet.residue_class(0, 2), UPSet.residue_class(1, 3).union(UPSet.finite([0]))):
        proxy = FilterProxy(U)
        checks.append(Check(f"filter proxy {render_set(U)} is infinite and co-infinite",
                            U.is_infinite() and U.complement().is_infinite(), "True", "True"))
        family = filter_family(proxy.U, depth)
        for x in points:
            system = build_system(family, Shift(1), x)
            for lab in family.index:
                part = family[lab]
                v = delta(part, Shift(1), x)
                u_id = part.index(U)
                checks.append(Check(f"U is visited [{render_set(U)}, {lab}, x={x}]",
                                    u_id in v, f"block {u_id}", str(list(v.block_ids))))
                infinite = [b for b in part.blocks if b.is_infinite()]
                checks.append(Check(f"visited blocks are the infinite ones [{render_set(U)}, {lab}, x={x}]",
                                    v.blocks() == infinite, _fmt(infinite), _blocks(v)))
            constant_u = tuple((lab, family[lab].index(U)) for lab in family.index)
            threads = enumerate_threads(system)
            checks.append(Check(f"the thread constantly equal to U exists [{render_set(U)}, x={x}]",
                                any(t.choices == constant_u for t in threads), "present",
                                "present" if any(t.choices == constant_u for t in threads) else "absent"))
            law = check_inverse_system(system)
            checks.append(Check(f"identity, composition and surjectivity laws [{render_set(U)}, x={x}]",
                                law.passed, "all pass", _law_text(law)))
            _, built = theorem_thread(system)
            checks.append(Check(f"directed extension thread is enumerated [{render_set(U)}, x={x}]",
                                built in threads, "member", "member" if built in threads else "missing"))
    return checks


def _law_text(law) -> str:
    parts = []
    for name in ("identity", "composition", "surjectivity"):
        res = getattr(law, name)
        parts.append(f"{name}={'pass' if res.passed else f'fail {res.witness}'}")
    return ", ".join(parts)


def run_all(depth: int = 10) -> list[Check]:
    return orbit_examples() + chain_examples(depth) + filter_examples()
