"""Modules over the triangular algebra [[L, L], [0, L]] with L = K[X]/(X^m).

Exact linear algebra over the rationals and prime fields, partition
combinatorics, canonical modules of partition pairs, Hom/Ext computations
and evidence for irreducibility of the module varieties.
"""

from .errors import *  # noqa: F401,F403
from .fields import DEFAULT_PRIME, RATIONAL, PrimeField, RationalField, make_field
from .kernel import BACKEND
from .linalg import Matrix, invert, is_invertible, nullspace_basis, rank
from .partitions import (
    Partition,
    PolyHom,
    dominance_leq,
    enumerate_partitions,
    hom_dim_lambda,
    jordan_matrix,
    jordan_type,
    maximal_partition,
    poly_hom_compose,
    poly_hom_dual,
    poly_hom_matrix,
)
from .pairs import (
    PairType,
    PartitionPair,
    canonical_decomposition,
    classify_pair,
    is_indecomposable_pair,
    is_weakly_indecomposable,
)
from .modules import (
    AModule,
    HomSpace,
    are_isomorphic,
    build_canonical_module,
    direct_sum,
    dual,
    end_dim,
    ext1_dim,
    hom_basis,
    hom_dim,
    is_gorenstein_projective,
    is_indecomposable_module,
    isomorphism_test,
    sample_stratum,
    stratum_of,
)
from .geometry import (
    VerifyConfig,
    build_def_ind_sequence,
    check_def_strata,
    check_dense_orbit_identity,
    classify_component_candidates,
    component_sum_test,
    hom_order_check,
    orbit_dim,
    stratum_dim,
    verify_irreducibility,
)

__version__ = "0.1.0"
