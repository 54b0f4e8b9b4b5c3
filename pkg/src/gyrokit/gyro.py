"""Einstein velocity addition on the open unit ball of R^3.

Velocities are plain float arrays of shape ``(3,)`` or ``(n, 3)``.
"""

import numpy as np

from .errors import OutOfBall

BALL_MARGIN = 1e-15
SAMPLE_RADIUS = 0.95


def as_velocity(v):
    """Validate ``v`` as a point (or stack of points) strictly inside the ball.

    Rejects rather than clamps: a point with norm ``>= 1 - 1e-15`` raises
    :class:`OutOfBall`.
    """
    v = np.asarray(v, dtype=float)
    if v.shape[-1:] != (3,):
        raise ValueError(f"expected (..., 3) vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("velocity has non-finite components")
    norm = np.linalg.norm(v, axis=-1)
    if np.any(norm >= 1.0 - BALL_MARGIN):
        raise OutOfBall(f"|v| = {np.max(norm):.17g} is not < 1")
    return v


def _dot(u, v):
    return np.sum(u * v, axis=-1)


def lorentz_factor(u):
    u = as_velocity(u)
    return 1.0 / np.sqrt(1.0 - _dot(u, u))


def einstein_add(u, v):
    """Einstein sum ``u (+) v``; broadcasts over leading axes."""
    u = as_velocity(u)
    v = as_velocity(v)
    g = lorentz_factor(u)
    uv = _dot(u, v)
    coef = (g / (1.0 + g) * uv)[..., None]
    return (u + v / g[..., None] + coef * u) / (1.0 + uv)[..., None]


def gyro_neg(u):
    return -as_velocity(u)


def sample_velocity(rng, n=None, radius=SAMPLE_RADIUS):
    """Draw points uniformly by volume from the ball of the given radius.

    Direction comes from a normalized Gaussian triple, radius from
    ``radius * t**(1/3)`` with ``t`` uniform on [0, 1].
    """
    shape = () if n is None else (n,)
    direction = rng.standard_normal(shape + (3,))
    direction /= np.linalg.norm(direction, axis=-1, keepdims=True)
    t = rng.uniform(0.0, 1.0, size=shape)
    return radius * np.cbrt(t)[..., None] * direction
