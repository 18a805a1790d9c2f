"""Explicit sampling of planar closed kinematic chain configurations."""

from closedchain.chain import (
    ChainSpec,
    CircularConfiguration,
    ClosedConfiguration,
    circular_residual,
    closure_residual,
    combine_sin_cos,
    cross_term,
    diagonal_length,
    endpoint,
    normalize_angle,
    phase,
    rotate,
    sum_squares,
)
from closedchain.sampler import (
    OrientationVector,
    circular_config,
    close_config,
    path_in_cube,
    sample_angles,
    sample_configs,
)
from closedchain.semidiagonal import (
    CubePoint,
    SemiDiagonalVector,
    UVector,
    c_from_u,
    cn_constant,
    cube_to_u,
    in_q,
    in_sd,
    qa_bounds,
    roots,
    sample_cs,
    u_from_c,
    u_to_cube,
)

__version__ = "0.1.0"
