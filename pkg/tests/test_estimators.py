import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from ergopart import InverseLimitEstimator, VisitSetTransformer
from ergopart.chains import example2, filter_family
from ergopart.partitions import Partition, validate
from ergopart.sets import UPSet
from ergopart.state_space import DomainError, Identity, NatSpace, Shift, TableMap

PARITY = validate([UPSet.residue_class(0, 2), UPSet.residue_class(1, 2)], NatSpace())


class TestVisitSetTransformer:
    def test_get_params_and_clone(self):
        t = VisitSetTransformer(PARITY, Shift(2))
        assert t.get_params() == {"partition": PARITY, "transformation": Shift(2)}
        c = clone(t)
        assert c.partition == PARITY and c is not t

    def test_transform(self):
        out = VisitSetTransformer(PARITY, Shift(2)).fit_transform(np.array([0, 3, 4]))
        assert out.tolist() == [[1, 0], [0, 1], [1, 0]]
        assert out.dtype == np.int8

    def test_shift_by_one_hits_both(self):
        out = VisitSetTransformer(PARITY, Shift(1)).fit().transform([[5]])
        assert out.tolist() == [[1, 1]]

    def test_finite_space(self):
        part = Partition.from_labels([0, 0, 1, 1])
        out = VisitSetTransformer(part, TableMap((1, 0, 3, 3))).fit().transform([0, 2])
        assert out.tolist() == [[1, 0], [0, 1]]

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            VisitSetTransformer(PARITY, Shift(1)).transform([0])

    @pytest.mark.parametrize("X,exc", [([-1], DomainError), ([0.5], ValueError), (["a"], TypeError),
                                       ([], ValueError), (np.zeros((2, 2), dtype=int), ValueError)])
    def test_bad_points(self, X, exc):
        with pytest.raises(exc):
            VisitSetTransformer(PARITY, Shift(1)).fit().transform(X)

    def test_space_mismatch(self):
        with pytest.raises(ValueError):
            VisitSetTransformer(PARITY, TableMap((0,))).fit()


class TestInverseLimitEstimator:
    def test_cut_chain(self):
        est = InverseLimitEstimator(example2(4), Shift(1)).fit()
        assert est.index_labels_ == [0, 1, 2, 3, 4]
        assert est.predict([0]).tolist() == [[0, 1, 2, 3, 4]]

    def test_identity(self):
        pred = InverseLimitEstimator(example2(4), Identity()).fit().predict(np.array([2, 9]))
        assert pred.tolist() == [[0, 1, 2, 2, 2], [0, 1, 2, 3, 4]]

    def test_threads_match_prediction(self):
        est = InverseLimitEstimator(filter_family(UPSet.residue_class(0, 2), 2), Shift(1)).fit()
        pred = est.predict([0, 1])
        for row, threads in zip(pred, est.threads([0, 1])):
            assert row.tolist() in [[t[lab] for lab in est.index_labels_] for t in threads]

    def test_get_params(self):
        est = InverseLimitEstimator(example2(2), Shift(1), cofinal=[2])
        assert set(est.get_params()) == {"chain", "transformation", "cofinal"}

    def test_rejects_non_chain(self):
        with pytest.raises(TypeError):
            InverseLimitEstimator(PARITY, Shift(1)).fit()

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            InverseLimitEstimator(example2(2), Shift(1)).predict([0])
