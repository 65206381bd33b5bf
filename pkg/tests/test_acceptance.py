"""Acceptance suite.  Each test records one PASS/FAIL line in the terminal summary."""

import random
import time

from ergopart.chains import example2, filter_family
from ergopart.inverse_limit import (
    build_system,
    check_inverse_system,
    enumerate_threads,
    theorem_thread,
    twisted_crown_system,
)
from ergopart.oracles import finite_delta, sampling_delta
from ergopart.partitions import psi
from ergopart.scenarios import run_all
from ergopart.sets import UPSet
from ergopart.state_space import Constant, Identity, Shift
from ergopart.visits import delta
from helpers import (
    check_window,
    random_directed_family,
    random_monotone_chain,
    random_refinement_pair,
    random_table,
    random_up_partition,
    random_upset,
)

SEED = 20240601


def example_systems():
    """Every inverse system the worked examples build."""
    chain = example2(10)
    for m, x in ((Shift(1), 0), (Identity(), 5), (Constant(3), 8)):
        yield build_system(chain, m, x)
    for U in (UPSet.residue_class(0, 2), UPSet.residue_class(1, 3).union(UPSet.finite([0]))):
        family = filter_family(U, 3)
        for x in range(6):
            yield build_system(family, Shift(1), x)


def theorem_instances(n=200):
    rng = random.Random(SEED)
    for i in range(n):
        size = rng.randint(1, 64)
        if i % 2:
            chain = random_directed_family(rng, size)
        else:
            chain = random_monotone_chain(rng, size, rng.randint(1, 6))
        yield chain, random_table(rng, size), rng.randrange(size)


def lemma_instances(n=500):
    rng = random.Random(SEED + 1)
    for _ in range(n):
        size = rng.randint(1, 64)
        coarse, fine = random_refinement_pair(rng, size)
        yield coarse, fine, random_table(rng, size), rng.randrange(size)


def test_1_examples(criterion):
    start = time.perf_counter()
    checks = run_all()
    elapsed = time.perf_counter() - start
    failed = [c.name for c in checks if not c.passed]
    ok = not failed and elapsed < 1.0
    criterion(1, "worked examples", ok, f"{len(checks) - len(failed)}/{len(checks)} checks in {elapsed:.2f}s (< 1s)")
    assert ok, failed[:5]


def test_2_theorem_property(criterion):
    start = time.perf_counter()
    nonempty = member = total = 0
    for chain, m, x in theorem_instances():
        total += 1
        system = build_system(chain, m, x)
        threads = enumerate_threads(system)
        nonempty += bool(threads)
        _, built = theorem_thread(system)
        member += built in threads
    elapsed = time.perf_counter() - start
    ok = nonempty == member == total == 200 and elapsed < 30
    criterion(2, "inverse limit nonempty", ok,
              f"nonempty {nonempty}/{total}, constructed thread enumerated {member}/{total} in {elapsed:.1f}s (< 30s)")
    assert ok


def test_3_lemma_property(criterion):
    good = total = 0
    for coarse, fine, m, x in lemma_instances():
        total += 1
        table = psi(fine, coarse).table
        good += {table[a] for a in delta(fine, m, x)} <= set(delta(coarse, m, x).block_ids)
    ok = good == total == 500
    criterion(3, "projection of visit sets", ok, f"containment {good}/{total}")
    assert ok


def test_4_nonemptiness(criterion):
    good = total = 0
    for chain, m, x in theorem_instances():
        for lab in chain.index:
            total += 1
            good += bool(delta(chain[lab], m, x).block_ids)
    for coarse, fine, m, x in lemma_instances():
        for part in (coarse, fine):
            total += 1
            good += bool(delta(part, m, x).block_ids)
    ok = good == total
    criterion(4, "visit sets nonempty", ok, f"{good}/{total}")
    assert ok


def test_5_oracle_equivalence(criterion):
    rng = random.Random(SEED + 2)
    finite_ok = 0
    for _ in range(500):
        size = rng.randint(1, 64)
        coarse, _ = random_refinement_pair(rng, size)
        m, x = random_table(rng, size), rng.randrange(size)
        finite_ok += delta(coarse, m, x).block_ids == finite_delta(coarse, m, x)
    symbolic_ok = 0
    for i in range(200):
        part = random_up_partition(rng)
        m = (Shift(rng.randint(1, 3)), Identity(), Constant(rng.randint(0, 30)))[i % 3]
        x = rng.randint(0, 30)
        symbolic_ok += delta(part, m, x).block_ids == sampling_delta(part, m, x)
    ok = finite_ok == 500 and symbolic_ok == 200
    criterion(5, "oracle equivalence", ok, f"finite {finite_ok}/500, symbolic {symbolic_ok}/200")
    assert ok


def test_6_system_laws(criterion):
    counts = {"identity": 0, "composition": 0, "surjectivity": 0}
    total = 0
    systems = list(example_systems()) + [build_system(c, m, x) for c, m, x in theorem_instances()]
    for system in systems:
        total += 1
        report = check_inverse_system(system)
        for law in counts:
            counts[law] += getattr(report, law).passed
    ok = all(v == total for v in counts.values())
    criterion(6, "identity, composition, surjectivity", ok,
              ", ".join(f"{k} {v}/{total}" for k, v in counts.items()))
    assert ok


def test_7_set_laws(criterion):
    rng = random.Random(SEED + 3)
    laws_ok = idem_ok = 0
    for _ in range(1000):
        a, b, c = (random_upset(rng) for _ in range(3))
        window = range(check_window(a, b, c))

        def ext(s):
            return frozenset(n for n in window if s.member(n))

        A, B = ext(a), ext(b)
        laws_ok += all((
            ext(a.intersect(b)) == A & B,
            ext(a.union(b)) == A | B,
            ext(a.complement()) == frozenset(window) - A,
            ext(a.intersect(b.union(c))) == ext(a.intersect(b).union(a.intersect(c))),
            ext(a.union(b.intersect(c))) == ext(a.union(b).intersect(a.union(c))),
            ext(a.union(b).complement()) == ext(a.complement().intersect(b.complement())),
            ext(a.intersect(b).intersect(c)) == ext(a.intersect(b.intersect(c))),
            ext(a.union(a.complement())) == frozenset(window),
        ))
        t, p = rng.randint(0, 8), rng.randint(1, 6)
        raw = UPSet(t, p, {r for r in range(p) if rng.random() < 0.5}, {n for n in range(t) if rng.random() < 0.5})
        once = raw.canonicalize()
        idem_ok += repr(once.canonicalize()) == repr(once)
    ok = laws_ok == idem_ok == 1000
    criterion(7, "set algebra", ok, f"boolean laws {laws_ok}/1000, canonicalize idempotent {idem_ok}/1000")
    assert ok


def test_8_negative_control(criterion):
    crown = twisted_crown_system()
    report = check_inverse_system(crown)
    levels_ok = all(crown.levels[lab] for lab in crown.index)
    threads = enumerate_threads(crown)
    ok = levels_ok and report.surjectivity.passed and not crown.index.is_directed() and threads == []
    criterion(8, "non-directed control", ok,
              f"levels nonempty={levels_ok}, maps onto={report.surjectivity.passed}, threads={len(threads)}")
    assert ok
