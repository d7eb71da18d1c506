"""qverma: exact symbolic toolkit for quantum-group tensor decompositions.

Everything is computed over the fraction field Q(q, u, v), with u and v
standing for the q-powers of two generic module weights.  The package
covers the quantum-plane model of a two-fold tensor product of
lowest-weight modules, its separation of variables through little
q-Jacobi polynomials, the q-Hahn Clebsch-Gordan layer, and the
q-Rankin-Cohen brackets as Fischer adjoints of the holographic
embeddings.
"""

from .actions import (
    Gen,
    casimir_plane,
    casimir_tx,
    casimir_verma,
    contragredient_act,
    fischer_inner,
    fischer_inner_tensor,
    tensor_act,
    truncate_operator,
    tx_act,
    verma_act,
)
from .brackets import (
    cg_expand_check,
    cg_table,
    holographic,
    lowest_weight_vector,
    qrc,
    qrc_adjoint_oracle,
    qrc_intertwining_check,
)
from .errors import (
    DenominatorVanishes,
    DomainError,
    IndexOutOfRange,
    ParseError,
    QVermaError,
    SingularBasis,
    TruncationLeak,
)
from .linalg import OpMatrix
from .plane import (
    OnePoly,
    QPlanePoly,
    TXPoly,
    UniPoly,
    XPoly,
    plane_to_tx,
    qp_mul,
    qp_pow_linear,
    tx_to_plane,
)
from .qpolys import (
    GridFunction,
    dq_deriv,
    jacobi_diff_op,
    little_qjacobi,
    little_qjacobi_alt,
    qhahn,
    qhahn_algebra_check,
    qhahn_diffop_check,
    qhahn_tridiagonal_check,
)
from .scalars import (
    LAM,
    LAMP,
    LaurentPoly,
    Scalar,
    WeightExpr,
    qbinom,
    qfact,
    qnum,
    qpoch,
    qpow,
    scalar_eval,
)
from .verify import SessionConfig, run_suite, SUITES

__version__ = "0.1.0"
