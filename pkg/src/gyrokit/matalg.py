"""Density matrices under the normalized sequential product, determinant-one
positive matrices under the sequential product, and the Jordan triple
product on positive definite 2x2 matrices."""

import numpy as np

from . import smallmat as sm
from .errors import NotDensity, NotPositiveDefinite, NotUnitDet

TRACE_TOL = 1e-12
DET_TOL = 1e-12

LOG_EIG_RANGE = (-1.0, 1.0)  # eigenvalues of sampled P2 elements lie in [0.1, 10]


def as_posdef(a):
    a = sm.as_mat2(a)
    sm.check_posdef(a)
    return a


def as_density(a):
    a = as_posdef(a)
    tr = sm.trace2(a)
    if np.any(np.abs(tr - 1.0) > TRACE_TOL):
        raise NotDensity(f"trace {tr.real.flat[0]:.17g} is not 1")
    return a


def as_unitdet(a):
    a = as_posdef(a)
    d = sm.det_herm(a)
    if np.any(np.abs(d - 1.0) > DET_TOL):
        raise NotUnitDet(f"det {np.max(np.abs(d - 1.0)):.3g} away from 1")
    return a


def odot(a, b):
    """Normalized sequential product ``A^(1/2) B A^(1/2) / Tr(AB)``."""
    a = as_density(a)
    b = as_density(b)
    s = sm.sqrt_posdef(a)
    tr = sm.trace2(a @ b).real
    return sm.hermitize(s @ b @ s / tr[..., None, None])


def boxdot(a, b):
    """Sequential product ``A^(1/2) B A^(1/2)``."""
    a = as_unitdet(a)
    b = as_unitdet(b)
    s = sm.sqrt_posdef(a)
    return sm.hermitize(s @ b @ s)


def jordan_triple(a, b):
    a = as_posdef(a)
    b = as_posdef(b)
    return sm.hermitize(a @ b @ a)


def sample_density(rng, n=None):
    from .bridges import bloch
    from .gyro import sample_velocity

    return bloch(sample_velocity(rng, n))


def sample_unitdet(rng, n=None):
    from .bridges import tau

    return tau(sample_density(rng, n))


def random_unitary(theta, phi, chi):
    """``exp(i chi) [[cos t, -e^{-i phi} sin t], [e^{i phi} sin t, cos t]]``."""
    c = np.cos(theta)
    s = np.sin(theta)
    e = np.exp(1j * phi)
    u = np.empty(np.shape(theta) + (2, 2), dtype=complex)
    u[..., 0, 0] = c
    u[..., 0, 1] = -np.conj(e) * s
    u[..., 1, 0] = e * s
    u[..., 1, 1] = c
    return np.exp(1j * np.asarray(chi))[..., None, None] * u


def sample_posdef(rng, n=None):
    """``V diag(l1, l2) V^*`` with log-uniform eigenvalues in [0.1, 10]."""
    shape = () if n is None else (n,)
    lam = 10.0 ** rng.uniform(*LOG_EIG_RANGE, size=shape + (2,))
    theta = rng.uniform(0.0, 0.5 * np.pi, size=shape)
    phi = rng.uniform(0.0, 2.0 * np.pi, size=shape)
    chi = rng.uniform(0.0, 2.0 * np.pi, size=shape)
    v = random_unitary(theta, phi, chi)
    return sm.hermitize(v @ sm.diag2(lam[..., 0], lam[..., 1]) @ sm.dagger(v))


__all__ = [
    "NotDensity",
    "NotPositiveDefinite",
    "NotUnitDet",
    "as_density",
    "as_posdef",
    "as_unitdet",
    "boxdot",
    "jordan_triple",
    "odot",
    "random_unitary",
    "sample_density",
    "sample_posdef",
    "sample_unitdet",
]
