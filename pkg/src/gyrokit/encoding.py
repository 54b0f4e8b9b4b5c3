"""JSON encoding of vectors and small matrices.

Vec3 is ``[x, y, z]``, a complex number is ``[re, im]``, a 2x2 complex
matrix is ``[[[re, im], [re, im]], [[re, im], [re, im]]]`` and a 3x3 real
matrix is a plain nested list.  Floats go through ``repr``, which is the
shortest string that round-trips a 64-bit float exactly.
"""

import json

import numpy as np

KIND_TAGS = ("density", "unitdet", "posdef", "unitary", "orthogonal")


def encode_vec3(v):
    return [float(x) for x in np.asarray(v, dtype=float).reshape(3)]


def encode_complex(z):
    z = complex(z)
    return [z.real, z.imag]


def encode_mat2c(m):
    m = np.asarray(m, dtype=complex).reshape(2, 2)
    return [[encode_complex(m[i, j]) for j in range(2)] for i in range(2)]


def encode_mat3r(m):
    m = np.asarray(m, dtype=float).reshape(3, 3)
    return [[float(m[i, j]) for j in range(3)] for i in range(3)]


def tagged(kind, m):
    if kind not in KIND_TAGS:
        raise ValueError(f"unknown kind {kind!r}")
    enc = encode_mat3r(m) if kind == "orthogonal" else encode_mat2c(m)
    return {"kind": kind, "matrix": enc}


def decode_vec3(obj):
    v = np.asarray(obj, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    return v


def decode_mat2c(obj):
    """Accept the complex encoding, a real 2x2 nested list, or a tagged object."""
    if isinstance(obj, dict):
        obj = obj["matrix"]
    a = np.asarray(obj, dtype=float)
    if a.shape == (2, 2, 2):
        return a[..., 0] + 1j * a[..., 1]
    if a.shape == (2, 2):
        return a.astype(complex)
    raise ValueError(f"expected a 2x2 matrix encoding, got shape {a.shape}")


def decode_mat3r(obj):
    if isinstance(obj, dict):
        obj = obj["matrix"]
    a = np.asarray(obj, dtype=float)
    if a.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {a.shape}")
    return a


def dumps(obj, **kwargs):
    return json.dumps(obj, allow_nan=False, **kwargs)
