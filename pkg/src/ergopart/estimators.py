"""scikit-learn style wrappers.

``VisitSetTransformer`` turns query points into a 0/1 matrix marking the
blocks each orbit visits infinitely often.  ``InverseLimitEstimator`` fits a
refinement chain under a map and predicts, per point, the block IDs of a
thread through the inverse limit.  Both follow the usual ``fit`` /
``transform`` / ``predict`` protocol and expose ``get_params``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .chains import RefinementChain, check_monotone
from .inverse_limit import build_system, enumerate_threads, theorem_thread
from .partitions import Partition
from .state_space import DomainError
from .visits import delta


def check_points(X, space) -> list[int]:
    """Validate query points and return them as Python ints.

    Accepts a scalar, a 1-D sequence or an ``(n, 1)`` array of non-negative
    integers lying in ``space``.
    """
    arr = np.asarray(X)
    if arr.dtype == object:
        raise TypeError("points must be integers")
    if arr.ndim == 0:
        arr = arr.reshape(1)
    elif arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    elif arr.ndim != 1:
        raise ValueError(f"expected a 1-D array of points, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("no points given")
    if arr.dtype.kind == "f":
        if not np.all(np.isfinite(arr)) or not np.all(arr == np.round(arr)):
            raise ValueError("points must be whole numbers")
    elif arr.dtype.kind not in "iub":
        raise TypeError(f"points must be integers, got dtype {arr.dtype}")
    points = [int(v) for v in arr]
    for x in points:
        if not space.contains(x):
            raise DomainError(f"point {x} is not in the state space")
    return points


def _check_map(transformation, space):
    if transformation is None:
        raise ValueError("a map descriptor is required")
    if transformation.space != space:
        raise ValueError("map and partitions act on different spaces")


class VisitSetTransformer(TransformerMixin, BaseEstimator):
    """Indicator matrix of visited blocks.

    Parameters
    ----------
    partition : Partition
    transformation : map descriptor acting on the partition's space
    """

    def __init__(self, partition=None, transformation=None):
        self.partition = partition
        self.transformation = transformation

    def fit(self, X=None, y=None):
        if not isinstance(self.partition, Partition):
            raise TypeError("partition must be a Partition")
        _check_map(self.transformation, self.partition.space)
        if X is not None:
            check_points(X, self.partition.space)
        self.n_blocks_ = len(self.partition)
        self.space_ = self.partition.space
        return self

    def transform(self, X):
        check_is_fitted(self, ["n_blocks_", "space_"])
        points = check_points(X, self.space_)
        out = np.zeros((len(points), self.n_blocks_), dtype=np.int8)
        for row, x in enumerate(points):
            out[row, list(delta(self.partition, self.transformation, x).block_ids)] = 1
        return out


class InverseLimitEstimator(BaseEstimator):
    """Threads of the inverse limit of visit sets along a refinement chain.

    ``predict`` returns an ``(n_points, n_indices)`` array of block IDs, one
    thread per point, built by pushing down along a cofinal chain.  Index
    columns follow ``index_labels_``.

    Parameters
    ----------
    chain : RefinementChain with a directed index poset
    transformation : map descriptor
    cofinal : optional list of index labels; defaults to the maximal elements
    """

    def __init__(self, chain=None, transformation=None, cofinal=None):
        self.chain = chain
        self.transformation = transformation
        self.cofinal = cofinal

    def fit(self, X=None, y=None):
        if not isinstance(self.chain, RefinementChain):
            raise TypeError("chain must be a RefinementChain")
        _check_map(self.transformation, self.chain.space)
        mono = check_monotone(self.chain)
        if not mono.passed:
            raise ValueError(f"chain is not monotone: {mono.violation}")
        witness = self.chain.index.directedness_witness()
        if witness is not None:
            raise ValueError(f"index poset is not directed: {witness}")
        if X is not None:
            check_points(X, self.chain.space)
        self.index_labels_ = list(self.chain.index)
        return self

    def _system(self, x):
        return build_system(self.chain, self.transformation, x)

    def predict(self, X):
        check_is_fitted(self, "index_labels_")
        points = check_points(X, self.chain.space)
        out = np.empty((len(points), len(self.index_labels_)), dtype=np.int64)
        for row, x in enumerate(points):
            _, thread = theorem_thread(self._system(x), self.cofinal)
            out[row] = [thread[lab] for lab in self.index_labels_]
        return out

    def threads(self, X) -> list:
        """Every thread per point, as lists of :class:`Thread`."""
        check_is_fitted(self, "index_labels_")
        return [enumerate_threads(self._system(x)) for x in check_points(X, self.chain.space)]
