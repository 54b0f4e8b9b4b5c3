"""Einstein gyrogroup on the unit ball of R^3 and its matrix models."""

__version__ = "0.1.0"

from .bridges import adjoint_rotation, bloch, bloch_inv, gamma_inv, gamma_map, su2_lift, tau, tau_inv
from .endo import (
    BallOrtho,
    BallZero,
    DConj,
    DConst,
    DInvConj,
    JTE1,
    JTE2,
    JTE3,
    P21Conj,
    P21Const,
    P21InvConj,
    apply_endo,
    classify_ball_endo,
    classify_density_endo,
    hom_residual,
    psi_extend,
)
from .gyro import einstein_add, gyro_neg, lorentz_factor, sample_velocity
from .matalg import boxdot, jordan_triple, odot
