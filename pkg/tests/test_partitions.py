import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ergopart.chains import example2
from ergopart.partitions import (
    EmptyBlock,
    NotARefinement,
    Overlap,
    Partition,
    SpaceMismatch,
    Uncovered,
    enumerate_partitions,
    join,
    psi,
    refines,
    validate,
)
from ergopart.sets import FiniteSet, UPSet
from ergopart.state_space import FiniteSpace, NatSpace
from helpers import label_lists, random_refinement_pair, refine_labels

NAT = NatSpace()
EVENS, ODDS = UPSet.residue_class(0, 2), UPSet.residue_class(1, 2)
CUT2 = validate([UPSet.finite([0]), UPSet.finite([1]), UPSet.ray(2)], NAT)
PARITY = validate([ODDS, EVENS], NAT)


def brute_refines(coarse_labels, fine_labels):
    """Each fine class lies inside one coarse class."""
    seen = {}
    for c, f in zip(coarse_labels, fine_labels):
        if seen.setdefault(f, c) != c:
            return False
    return True


class TestValidate:
    def test_parity(self):
        assert len(PARITY) == 2
        assert PARITY.blocks == (EVENS, ODDS)

    def test_cut_partition(self):
        assert len(CUT2) == 3
        assert CUT2.blocks[2] == UPSet.ray(2)

    def test_overlap_witness(self):
        with pytest.raises(Overlap) as err:
            validate([EVENS, UPSet.ray(4)], NAT)
        # smallest common member of the two blocks
        assert err.value.witness == EVENS.intersect(UPSet.ray(4)).min_element() == 4

    def test_empty_block(self):
        with pytest.raises(EmptyBlock):
            validate([UPSet.nat(), UPSet.empty()], NAT)

    def test_uncovered(self):
        with pytest.raises(Uncovered) as err:
            validate([UPSet.ray(3), UPSet.finite([0, 2])], NAT)
        assert err.value.witness == 1

    def test_wrong_kind(self):
        with pytest.raises(SpaceMismatch):
            validate([FiniteSet.full(3)], NAT)

    def test_block_ids_follow_least_element(self):
        p = validate([UPSet.ray(5), UPSet.finite([3, 4]), UPSet.finite([0, 1, 2])], NAT)
        assert [b.min_element() for b in p.blocks] == [0, 3, 5]


class TestRefines:
    def test_trivial_is_coarsest(self):
        assert refines(Partition.trivial(NAT), CUT2)
        assert refines(Partition.trivial(NAT), PARITY)

    def test_cut_chain(self):
        chain = example2(3)
        assert refines(chain[1], chain[2])
        assert not refines(chain[2], chain[1])

    def test_parity_vs_cut(self):
        # [2, oo) meets both parity blocks
        assert not refines(PARITY, CUT2)

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatch):
            refines(PARITY, Partition.trivial(FiniteSpace(3)))

    @given(st.integers(1, 10).flatmap(lambda n: st.tuples(label_lists(n), label_lists(n))))
    def test_matches_label_oracle(self, pair):
        a, b = pair
        assert refines(Partition.from_labels(a), Partition.from_labels(b)) == brute_refines(a, b)


class TestPsi:
    def test_cut_projection(self):
        chain = example2(2)
        assert psi(chain[2], chain[1]).table == (0, 1, 1)

    def test_identity(self):
        assert psi(CUT2, CUT2).is_identity()

    def test_to_trivial(self):
        assert psi(CUT2, Partition.trivial(NAT)).table == (0, 0, 0)

    def test_not_a_refinement(self):
        with pytest.raises(NotARefinement):
            psi(CUT2, PARITY)

    def test_containment(self):
        rng = random.Random(3)
        for _ in range(50):
            coarse, fine = random_refinement_pair(rng, rng.randint(1, 20))
            table = psi(fine, coarse).table
            for j, i in enumerate(table):
                assert fine.blocks[j].issubset(coarse.blocks[i])


class TestJoin:
    def test_parity_and_cut(self):
        cut = validate([UPSet.finite(range(5)), UPSet.ray(5)], NAT)
        j = join(PARITY, cut)
        want = {
            UPSet.finite([0, 2, 4]),
            UPSet.finite([1, 3]),
            EVENS.intersect(UPSet.ray(5)),
            ODDS.intersect(UPSet.ray(5)),
        }
        assert len(j) == 4 and set(j.blocks) == want

    def test_idempotent(self):
        assert join(CUT2, CUT2) == CUT2

    def test_trivial_is_identity(self):
        assert join(CUT2, Partition.trivial(NAT)) == CUT2

    @given(st.integers(1, 10).flatmap(lambda n: st.tuples(label_lists(n), label_lists(n), label_lists(n))))
    def test_least_upper_bound(self, triple):
        a, b, c = (Partition.from_labels(t) for t in triple)
        j = join(a, b)
        assert refines(a, j) and refines(b, j)
        if refines(a, c) and refines(b, c):
            assert refines(j, c)


def test_enumerate_partitions_counts():
    # Bell numbers
    assert [len(enumerate_partitions(n)) for n in range(1, 6)] == [1, 2, 5, 15, 52]


@given(st.integers(1, 10).flatmap(lambda n: st.tuples(label_lists(n), label_lists(n), label_lists(n))))
def test_refinement_is_a_partial_order(triple):
    a, b, c = (Partition.from_labels(t) for t in triple)
    assert refines(a, a)
    if refines(a, b) and refines(b, a):
        assert a == b
    if refines(a, b) and refines(b, c):
        assert refines(a, c)


def test_psi_functoriality_on_random_triples():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(1, 24)
        labels = [rng.randrange(3) for _ in range(n)]
        mid = refine_labels(rng, labels)
        fine = refine_labels(rng, mid)
        p0, p1, p2 = (Partition.from_labels(x) for x in (labels, mid, fine))
        assert psi(p1, p1).is_identity()
        assert psi(p1, p0).compose(psi(p2, p1)).table == psi(p2, p0).table
