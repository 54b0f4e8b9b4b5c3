"""Closed-form kernels for 2x2 complex and 3x3 real matrices.

Every function accepts a single matrix of shape ``(2, 2)`` or a stack of
shape ``(..., 2, 2)`` and broadcasts over the leading axes.  Nothing here
calls an iterative solver.
"""

import numpy as np

from .errors import NotHermitian, NotPositiveDefinite, SingularMatrix

HERM_TOL = 1e-12
POSDEF_TOL = 1e-12
SINGULAR_TOL = 1e-14

I2 = np.eye(2, dtype=complex)
I3 = np.eye(3)


def as_mat2(m):
    m = np.asarray(m, dtype=complex)
    if m.shape[-2:] != (2, 2):
        raise ValueError(f"expected (..., 2, 2) matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def dagger(m):
    return np.conj(np.swapaxes(m, -1, -2))


def hermitize(m):
    """Average with the conjugate transpose to remove rounding drift."""
    return 0.5 * (m + dagger(m))


def fro(m):
    """Frobenius norm over the last two axes."""
    return np.sqrt(np.sum(np.abs(m) ** 2, axis=(-2, -1)))


def det2(m):
    return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]


_SPLIT = 134217729.0  # 2**27 + 1


def _two_prod(a, b):
    """Error-free product: ``a * b == p + e`` exactly (Dekker/Veltkamp)."""
    p = a * b
    t = _SPLIT * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLIT * b
    bh = t - (t - b)
    bl = b - bh
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def det_herm(m):
    """Determinant of a Hermitian 2x2 (stack) with compensated products.

    ``a11 a22 - |a12|^2`` cancels badly for ill-conditioned matrices; the
    products and the first sums are formed error-free.
    """
    a = m[..., 0, 0].real
    d = m[..., 1, 1].real
    b = 0.5 * (m[..., 0, 1] + np.conj(m[..., 1, 0]))
    p1, e1 = _two_prod(a, d)
    p2, e2 = _two_prod(b.real, b.real)
    p3, e3 = _two_prod(b.imag, b.imag)
    s, t1 = _two_sum(p1, -p2)
    s, t2 = _two_sum(s, -p3)
    return s + (((t1 + t2) + e1) - e2 - e3)


def trace2(m):
    return m[..., 0, 0] + m[..., 1, 1]


def adj2(m):
    out = np.empty_like(m)
    out[..., 0, 0] = m[..., 1, 1]
    out[..., 1, 1] = m[..., 0, 0]
    out[..., 0, 1] = -m[..., 0, 1]
    out[..., 1, 0] = -m[..., 1, 0]
    return out


def inv2(m, tol=SINGULAR_TOL):
    m = np.asarray(m, dtype=complex)
    d = det2(m)
    if np.any(np.abs(d) <= tol):
        raise SingularMatrix(f"|det| <= {tol:g}")
    return adj2(m) / d[..., None, None]


def inv_herm(m, tol=SINGULAR_TOL):
    """Inverse of a Hermitian 2x2 (stack) using :func:`det_herm`."""
    d = det_herm(m)
    if np.any(np.abs(d) <= tol):
        raise SingularMatrix(f"|det| <= {tol:g}")
    return adj2(m) / d[..., None, None]


def diag2(a, b):
    a, b = np.broadcast_arrays(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
    out = np.zeros(a.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = a
    out[..., 1, 1] = b
    return out


def hermitian_defect(m):
    return np.max(np.abs(m - dagger(m)), axis=(-2, -1))


def check_hermitian(m, tol=HERM_TOL):
    defect = hermitian_defect(m)
    if np.any(defect > tol):
        raise NotHermitian(f"Hermitian defect {np.max(defect):.3g} exceeds {tol:g}")


def min_eig_herm(m):
    """Smallest eigenvalue of a Hermitian 2x2 (stack), closed form."""
    a = m[..., 0, 0].real
    d = m[..., 1, 1].real
    r = np.hypot(0.5 * (a - d), np.abs(m[..., 0, 1]))
    return 0.5 * (a + d) - r


def check_posdef(m, tol=POSDEF_TOL):
    check_hermitian(m)
    lo = min_eig_herm(m)
    if np.any(lo <= tol):
        raise NotPositiveDefinite(f"min eigenvalue {np.min(lo):.3g} <= {tol:g}")


def sqrt_posdef(a):
    """Principal square root of a positive definite 2x2 matrix.

    Uses ``S = (A + sqrt(det A) I) / sqrt(tr A + 2 sqrt(det A))``, which is
    exact on the positive definite cone (Cayley-Hamilton for ``S``).
    """
    a = as_mat2(a)
    check_posdef(a)
    s = np.sqrt(det_herm(a))
    t = np.sqrt(trace2(a).real + 2.0 * s)
    return hermitize((a + s[..., None, None] * I2) / t[..., None, None])


def eig_herm2(h):
    """Eigen-decomposition of a Hermitian 2x2 matrix (or stack).

    Returns
    -------
    (lam_hi, lam_lo, V)
        Eigenvalues in descending order and a unitary ``V`` whose columns are
        the matching eigenvectors, so ``V @ diag(lam_hi, lam_lo) @ V^*`` is
        ``h``.  Each column is phased so its first nonzero entry is real and
        positive.
    """
    h = as_mat2(h)
    check_hermitian(h)
    a = h[..., 0, 0].real
    d = h[..., 1, 1].real
    b = 0.5 * (h[..., 0, 1] + np.conj(h[..., 1, 0]))
    babs = np.abs(b)
    mean = 0.5 * (a + d)
    r = np.hypot(0.5 * (a - d), babs)
    lam_hi = mean + r
    lam_lo = mean - r

    # unit phase taking b to |b|; 1 where b == 0
    safe = np.where(babs > 0, babs, 1.0)
    ph = np.where(babs > 0, np.conj(b) / safe, 1.0)

    # a >= d branch: v1 ~ (lam_hi - d, conj b); a < d branch: v1 ~ (b, lam_hi - a)
    p = lam_hi - d
    q = lam_hi - a
    top = a >= d
    x1 = np.where(top, p + 0j, babs + 0j)
    y1 = np.where(top, np.conj(b), q * ph)
    # second column orthogonal to the first, with first entry made real >= 0
    x2 = np.where(top, babs + 0j, q + 0j)
    y2 = np.where(top, -p * ph, -np.conj(b))

    n1 = np.hypot(np.abs(x1), np.abs(y1))
    n2 = np.hypot(np.abs(x2), np.abs(y2))
    scalar = r == 0
    n1 = np.where(scalar, 1.0, n1)
    n2 = np.where(scalar, 1.0, n2)
    # a multiple of the identity: any basis works, take the standard one
    x1 = np.where(scalar, 1.0, x1)
    y1 = np.where(scalar, 0.0, y1)
    x2 = np.where(scalar, 0.0, x2)
    y2 = np.where(scalar, 1.0, y2)

    v = np.empty(h.shape, dtype=complex)
    v[..., 0, 0] = x1 / n1
    v[..., 1, 0] = y1 / n1
    v[..., 0, 1] = x2 / n2
    v[..., 1, 1] = y2 / n2
    # a column with zero first entry gets its second entry made real positive
    for col in (0, 1):
        z = np.abs(v[..., 0, col]) == 0
        if np.any(z):
            w = v[..., 1, col]
            v[..., 1, col] = np.where(z, np.abs(w), w)
    return lam_hi, lam_lo, v


def det3(m):
    m = np.asarray(m, dtype=float)
    return (
        m[..., 0, 0] * (m[..., 1, 1] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 1])
        - m[..., 0, 1] * (m[..., 1, 0] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 0])
        + m[..., 0, 2] * (m[..., 1, 0] * m[..., 2, 1] - m[..., 1, 1] * m[..., 2, 0])
    )


def orthogonality_defect(m):
    m = np.asarray(m, dtype=float)
    return np.max(np.abs(np.swapaxes(m, -1, -2) @ m - I3), axis=(-2, -1))
