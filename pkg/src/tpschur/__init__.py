"""Schur-function expansions of initial minors of collocation matrices,
total positivity tests and bidiagonal factorizations."""

from .analytic import (
    CoefficientStream,
    FunctionSystem,
    builtin_stream,
    dilation_system,
    f_lambda,
    general_system,
    polynomial_system,
    system_from_config,
    wronskian_entry,
    wronskian_initial_minor,
)
from .cauchy import (
    IdentityReport,
    identity_lhs,
    identity_rhs_closed,
    identity_rhs_determinant,
    verify_identity,
)
from .collocation import (
    CollocationMatrix,
    MinorExpansion,
    collocate,
    expand_minor,
    expand_minor_polynomial,
    initial_minor,
)
from .errors import (
    DomainError,
    FactorizationDegenerateError,
    IdentityMismatchError,
    ResourceGuardError,
    SingularNodesError,
)
from .partitions import (
    Partition,
    PartitionFilter,
    c_lambda,
    enumerate_partitions,
    staircase_indices,
)
from .scalar import EXACT, Kernel
from .symfunc import scale_nodes, schur_bialternant, schur_tableaux, vandermonde
from .tpcore import (
    BDFactorization,
    TPVerdict,
    bd_factorize,
    tp_bruteforce,
    tp_initial_minors,
    tp_sufficiency_dilation,
    tp_wronskian_truncated,
)

__version__ = "0.1.0"
