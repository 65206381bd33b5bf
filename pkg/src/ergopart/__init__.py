"""Visit sets of self-map orbits over finite partitions, and inverse limits of them."""

from .chains import (
    FilterProxy,
    IndexPoset,
    RefinementChain,
    check_monotone,
    example2,
    extract_cofinal_chain,
    filter_family,
    generate_builtin_chain,
    partition_poset,
)
from .inverse_limit import (
    InverseSystem,
    Thread,
    build_system,
    build_thread_along_chain,
    check_inverse_system,
    enumerate_threads,
    extend_thread_to_directed,
    theorem_thread,
    twisted_crown_system,
)
from .partitions import Partition, ProjectionMap, join, psi, refines, validate
from .sets import FiniteSet, UPSet, render_set
from .state_space import (
    Constant,
    FiniteOverride,
    FiniteSpace,
    Identity,
    NatSpace,
    OrbitDescriptor,
    Shift,
    TableMap,
    apply,
    iterate,
    orbit_descriptor,
)
from .visits import VisitSet, chain_block_intersection, delta

__version__ = "0.1.0"


def __getattr__(name):
    # sklearn is slow to import; load the estimators only on demand
    if name in ("InverseLimitEstimator", "VisitSetTransformer"):
        from . import estimators

        return getattr(estimators, name)
    raise AttributeError(f"module 'ergopart' has no attribute {name!r}")
