"""Maps between the ball, density matrices, determinant-one matrices,
traceless Hermitian matrices, and the SU(2) -> SO(3) covering."""

import numpy as np

from . import smallmat as sm
from .errors import NotDensity, NotHermitian, NotRotation, NotTraceless, NotUnitary
from .gyro import as_velocity
from .matalg import TRACE_TOL, as_density, as_unitdet

UNITARY_TOL = 1e-12
ORTHO_TOL = 1e-10

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


def bloch(v):
    """Bloch parametrization ``rho(v) = (I + v . sigma) / 2``."""
    v = as_velocity(v)
    return 0.5 * (sm.I2 + gamma_map(v))


def bloch_inv(a):
    a = sm.as_mat2(a)
    sm.check_hermitian(a)
    tr = sm.trace2(a)
    if np.any(np.abs(tr - 1.0) > TRACE_TOL):
        raise NotDensity("trace is not 1")
    v = np.stack(
        [2.0 * a[..., 1, 0].real, 2.0 * a[..., 1, 0].imag, 2.0 * a[..., 0, 0].real - 1.0],
        axis=-1,
    )
    return as_velocity(v)


def tau(a):
    """Rescale a density matrix to determinant one."""
    a = as_density(a)
    return a / np.sqrt(sm.det_herm(a))[..., None, None]


def tau_inv(a):
    a = as_unitdet(a)
    return a / sm.trace2(a).real[..., None, None]


def gamma_map(v):
    """Linear isometry R^3 -> traceless Hermitian 2x2, ``v -> v . sigma``.

    Defined on all of R^3; callers restrict to the ball where needed.
    """
    v = np.asarray(v, dtype=float)
    if v.shape[-1:] != (3,):
        raise ValueError(f"expected (..., 3) vector, got shape {v.shape}")
    out = np.empty(v.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = v[..., 2]
    out[..., 1, 1] = -v[..., 2]
    out[..., 0, 1] = v[..., 0] - 1j * v[..., 1]
    out[..., 1, 0] = v[..., 0] + 1j * v[..., 1]
    return out


def gamma_inv(h, tol=sm.HERM_TOL):
    h = sm.as_mat2(h)
    sm.check_hermitian(h, tol)
    if np.any(np.abs(sm.trace2(h)) > tol):
        raise NotTraceless(f"trace {np.max(np.abs(sm.trace2(h))):.3g} exceeds {tol:g}")
    return np.stack([h[..., 1, 0].real, h[..., 1, 0].imag, h[..., 0, 0].real], axis=-1)


def herm_inner(a, b):
    """``<A, B> = Tr(AB) / 2`` on traceless Hermitian matrices."""
    return 0.5 * sm.trace2(a @ b).real


def as_unitary(u, tol=UNITARY_TOL):
    u = sm.as_mat2(u)
    defect = np.max(np.abs(u @ sm.dagger(u) - sm.I2), axis=(-2, -1))
    if np.any(defect > tol):
        raise NotUnitary(f"unitarity defect {np.max(defect):.3g} exceeds {tol:g}")
    return u


def as_orthogonal(o, tol=ORTHO_TOL):
    o = np.asarray(o, dtype=float)
    if o.shape[-2:] != (3, 3):
        raise ValueError(f"expected (..., 3, 3) matrix, got shape {o.shape}")
    defect = sm.orthogonality_defect(o)
    if np.any(defect > tol):
        raise NotRotation(f"orthogonality defect {np.max(defect):.3g} exceeds {tol:g}")
    return o


def adjoint_rotation(u):
    """Rotation ``R`` with ``U gamma(x) U^* = gamma(R x)``.

    Entries are ``R[i, j] = Tr(sigma_i U sigma_j U^*) / 2``.
    """
    u = as_unitary(u)
    conj = np.einsum("...ab,jbc,...dc->...jad", u, PAULI, np.conj(u))
    return 0.5 * np.einsum("iba,...jab->...ij", PAULI, conj).real


def _quaternion(r):
    """Unit quaternion (w, x, y, z) of a rotation; largest-component branch."""
    r00, r01, r02 = r[..., 0, 0], r[..., 0, 1], r[..., 0, 2]
    r10, r11, r12 = r[..., 1, 0], r[..., 1, 1], r[..., 1, 2]
    r20, r21, r22 = r[..., 2, 0], r[..., 2, 1], r[..., 2, 2]
    four_sq = np.stack(
        [1 + r00 + r11 + r22, 1 + r00 - r11 - r22, 1 - r00 + r11 - r22, 1 - r00 - r11 + r22],
        axis=-1,
    )
    pick = np.argmax(four_sq, axis=-1)
    big = 0.5 * np.sqrt(np.maximum(np.take_along_axis(four_sq, pick[..., None], -1)[..., 0], 0.0))
    k = 0.25 / big
    cases = [
        (big, (r21 - r12) * k, (r02 - r20) * k, (r10 - r01) * k),
        ((r21 - r12) * k, big, (r01 + r10) * k, (r02 + r20) * k),
        ((r02 - r20) * k, (r01 + r10) * k, big, (r12 + r21) * k),
        ((r10 - r01) * k, (r02 + r20) * k, (r12 + r21) * k, big),
    ]
    q = np.zeros(r.shape[:-2] + (4,))
    for idx, comps in enumerate(cases):
        q = np.where((pick == idx)[..., None], np.stack(comps, axis=-1), q)
    return q


def _quat_to_su2(q):
    w, x, y, z = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    u = np.empty(q.shape[:-1] + (2, 2), dtype=complex)
    u[..., 0, 0] = w - 1j * z
    u[..., 0, 1] = -y - 1j * x
    u[..., 1, 0] = y - 1j * x
    u[..., 1, 1] = w + 1j * z
    return u


def su2_lift(r, tol=ORTHO_TOL):
    """Right inverse of :func:`adjoint_rotation` on SO(3).

    Of the two preimages ``+-U`` the one with ``Re Tr U >= 0`` is returned.
    When that trace vanishes, the first entry of ``U`` (reading order, real
    part before imaginary part) that is nonzero is made positive.
    """
    r = as_orthogonal(r, tol)
    det = sm.det3(r)
    if np.any(np.abs(det - 1.0) > tol):
        raise NotRotation(f"det {np.min(det):.3g} is not +1")
    q = _quaternion(r)
    q /= np.linalg.norm(q, axis=-1, keepdims=True)
    u = _quat_to_su2(q)

    flat = u.view(float).reshape(u.shape[:-2] + (8,))
    tie = np.abs(q[..., 0]) <= 1e-12
    nz = np.abs(flat) > 1e-12
    first = np.take_along_axis(flat, np.argmax(nz, axis=-1)[..., None], -1)[..., 0]
    flip = np.where(tie, first < 0, q[..., 0] < 0)
    return np.where(flip[..., None, None], -u, u)


def sample_su2(rng, n=None):
    """Haar-random SU(2) matrices from normalized Gaussian quaternions."""
    shape = () if n is None else (n,)
    q = rng.standard_normal(shape + (4,))
    q /= np.linalg.norm(q, axis=-1, keepdims=True)
    return _quat_to_su2(q)


def sample_unitary(rng, n=None):
    shape = () if n is None else (n,)
    u = sample_su2(rng, n)
    phase = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=shape))
    return phase[..., None, None] * u


def sample_rotation(rng, n=None):
    return adjoint_rotation(sample_su2(rng, n))


def sample_orthogonal(rng, n=None, reflections=True):
    """Random elements of O(3); half of them reflections when requested."""
    shape = () if n is None else (n,)
    r = sample_rotation(rng, n)
    if not reflections:
        return r
    sign = np.where(rng.uniform(size=shape) < 0.5, -1.0, 1.0)
    return sign[..., None, None] * r


__all__ = [
    "PAULI",
    "adjoint_rotation",
    "as_orthogonal",
    "as_unitary",
    "bloch",
    "bloch_inv",
    "gamma_inv",
    "gamma_map",
    "herm_inner",
    "sample_orthogonal",
    "sample_rotation",
    "sample_su2",
    "sample_unitary",
    "su2_lift",
    "tau",
    "tau_inv",
    "NotHermitian",
]
