"""Fourth-order jet AD, directional derivatives, forward finite differences,
and point kinematics with a screw-theory cross-check."""

from .errors import (
    DimensionCapExceeded,
    DimensionMismatch,
    DomainError,
    EmptyIndexList,
    IndexOutOfRange,
    InsufficientRateOrder,
    MoreThanFourIndices,
    NonUnitAxis,
    PureDualNotInvertible,
)
from .ddouble import DDReal, DDVector
from .jets import (
    Jet4,
    absolute,
    constant,
    cos,
    cosh,
    exp,
    inverse,
    lift_univariate,
    log,
    part,
    powf,
    powi,
    sin,
    sinh,
    sqrt,
    tan,
    variable,
)
from .directional import (
    d1,
    d2,
    d2_single,
    d3,
    d3_single,
    d4,
    d4_single,
    eval_jet,
    hessian_vector_product,
    partial,
    vd1,
    vd2,
    vd3,
    vd4,
    veval_jet,
)
from .finitediff import (
    FdScheme,
    deriv,
    df1,
    df2,
    df3,
    df4,
    directional4_fd,
    forward_delta,
    setvn,
)
from .kinematics import (
    KinematicResult,
    KinematicSnapshot,
    kinematics_directional,
    kinematics_timejet,
    kinematics_trajectory,
)

__version__ = "0.1.0"
