"""Exact Lipschitz-type quantities on finite pointed metric spaces."""

from ._kernels import BACKEND
from .dual import (
    AdjointMatrix,
    Functional,
    adjoint,
    adjoint_norm,
    ball_vertices,
    dual_distance,
    dual_distance_oracle,
    lambda_norm,
    second_adjoint_eval,
)
from .errors import (
    BasePointError,
    CapacityError,
    ClosureError,
    DomainError,
    ExtlipError,
    LoadError,
    MetricAxiomError,
    StructuralError,
)
from .extbound import (
    de_distance,
    e_constant,
    eta_restrict,
    gamma_embed,
    radial_retract,
    reciprocal_space_check,
)
from .metric import (
    CoordSpace,
    PointedMetricSpace,
    PointMap,
    RealFunctionSample,
    VectorMap,
    compose,
    induced_space,
    restrict_to_ball,
    validate_space,
)
from .moduli import lip_at, lip_const, norm_Lx, omega, omega_at, sampled_lip_quantities, sup_omega_ratio
from .sequences import (
    SequencePoint,
    dilate,
    dilation_certificates,
    dp_distance,
    dp_norm,
    tx_operator_norm,
)
from .transfer import phi, phi_inv, transfer_compose, vanishing_check

__version__ = "0.1.0"
