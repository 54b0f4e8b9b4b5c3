"""Endomorphism families of the ball and its matrix models, homomorphism
checking, and black-box classification.

Descriptors are small immutable records; calling one applies the map.  All
descriptor maps broadcast over stacks of inputs.
"""

from dataclasses import dataclass, field
from typing import Callable, ClassVar, Optional

import numpy as np

from . import bridges, gyro, matalg
from . import smallmat as sm
from .encoding import decode_mat2c, decode_mat3r, encode_mat2c, encode_mat3r
from .errors import GyrokitError, OutOfBall, ProbeOutOfBall, StructureMismatch, Unclassified

PROBE_EPS = 1e-3
ZERO_THRESHOLD = 1e-8
POLAR_ITERATIONS = 20
MIN_PROBES = 64
DEFAULT_CLASSIFY_TOL = 1e-9


# --- structures -------------------------------------------------------------

@dataclass(frozen=True)
class Structure:
    name: str
    validate: Callable
    sample: Callable
    op: Callable
    # residual between two (stacks of) elements
    distance: Callable


def _ball_distance(x, y):
    return np.linalg.norm(x - y, axis=-1)


def _mat_distance(x, y):
    return sm.fro(x - y)


def _scaled_distance(x, y):
    # P2 is unnormalized and det^c factors span many decades
    return sm.fro(x - y) / np.maximum(1.0, sm.fro(y))


STRUCTURES = {
    "gyro": Structure("gyro", gyro.as_velocity, gyro.sample_velocity, gyro.einstein_add, _ball_distance),
    "D": Structure("D", matalg.as_density, matalg.sample_density, matalg.odot, _mat_distance),
    "P21": Structure("P21", matalg.as_unitdet, matalg.sample_unitdet, matalg.boxdot, _mat_distance),
    "P2": Structure("P2", matalg.as_posdef, matalg.sample_posdef, matalg.jordan_triple, _scaled_distance),
}
ALIASES = {"ball": "gyro", "B": "gyro", "density": "D", "unitdet": "P21", "posdef": "P2", "triple": "P2"}


def get_structure(name):
    try:
        return STRUCTURES[ALIASES.get(name, name)]
    except KeyError:
        raise StructureMismatch(f"unknown structure {name!r}") from None


# --- descriptors ------------------------------------------------------------

def _pow_det(a, e):
    return (sm.det_herm(a) ** e)[..., None, None]


def _conj(u, a):
    return u @ a @ sm.dagger(u)


@dataclass(frozen=True, eq=False)
class EndoDescriptor:
    structure: ClassVar[str] = ""
    form: ClassVar[str] = ""

    def __call__(self, x):
        return apply_endo(self, x)

    def _apply(self, x):
        raise NotImplementedError

    def to_json(self):
        out = {"form": self.form}
        for name, value in self.__dict__.items():
            if name in ("U", "V", "W"):
                out[name] = encode_mat2c(value)
            elif name == "O":
                out[name] = encode_mat3r(value)
            else:
                out[name] = float(value)
        return out


def _unitary_field():
    return field(default_factory=lambda: np.eye(2, dtype=complex))


@dataclass(frozen=True, eq=False)
class JTE1(EndoDescriptor):
    """``A -> det(A)^c U A U^*``."""

    structure: ClassVar[str] = "P2"
    form: ClassVar[str] = "JTE1"
    U: np.ndarray = _unitary_field()
    c: float = 0.0

    def _apply(self, a):
        return _pow_det(a, self.c) * _conj(self.U, a)


@dataclass(frozen=True, eq=False)
class JTE2(EndoDescriptor):
    """``A -> det(A)^d V A^{-1} V^*``."""

    structure: ClassVar[str] = "P2"
    form: ClassVar[str] = "JTE2"
    V: np.ndarray = _unitary_field()
    d: float = 0.0

    def _apply(self, a):
        return _pow_det(a, self.d) * _conj(self.V, sm.inv_herm(a))


@dataclass(frozen=True, eq=False)
class JTE3(EndoDescriptor):
    """``A -> W diag(det(A)^c1, det(A)^c2) W^*``."""

    structure: ClassVar[str] = "P2"
    form: ClassVar[str] = "JTE3"
    W: np.ndarray = _unitary_field()
    c1: float = 0.0
    c2: float = 0.0

    def _apply(self, a):
        det = sm.det_herm(a)
        return _conj(self.W, sm.diag2(det ** self.c1, det ** self.c2))


@dataclass(frozen=True, eq=False)
class P21Conj(EndoDescriptor):
    structure: ClassVar[str] = "P21"
    form: ClassVar[str] = "P21Conj"
    U: np.ndarray = _unitary_field()

    def _apply(self, a):
        return _conj(self.U, a)


@dataclass(frozen=True, eq=False)
class P21InvConj(EndoDescriptor):
    structure: ClassVar[str] = "P21"
    form: ClassVar[str] = "P21InvConj"
    V: np.ndarray = _unitary_field()

    def _apply(self, a):
        return _conj(self.V, sm.inv_herm(a))


@dataclass(frozen=True, eq=False)
class P21Const(EndoDescriptor):
    structure: ClassVar[str] = "P21"
    form: ClassVar[str] = "P21Const"

    def _apply(self, a):
        return np.broadcast_to(sm.I2, a.shape).copy()


@dataclass(frozen=True, eq=False)
class DConj(EndoDescriptor):
    structure: ClassVar[str] = "D"
    form: ClassVar[str] = "DConj"
    U: np.ndarray = _unitary_field()

    def _apply(self, a):
        return _conj(self.U, a)


@dataclass(frozen=True, eq=False)
class DInvConj(EndoDescriptor):
    """``A -> V A^{-1} V^* / Tr(A^{-1})``."""

    structure: ClassVar[str] = "D"
    form: ClassVar[str] = "DInvConj"
    V: np.ndarray = _unitary_field()

    def _apply(self, a):
        inv = sm.inv_herm(a)
        return _conj(self.V, inv) / sm.trace2(inv).real[..., None, None]


@dataclass(frozen=True, eq=False)
class DConst(EndoDescriptor):
    structure: ClassVar[str] = "D"
    form: ClassVar[str] = "DConst"

    def _apply(self, a):
        return np.broadcast_to(0.5 * sm.I2, a.shape).copy()


@dataclass(frozen=True, eq=False)
class BallOrtho(EndoDescriptor):
    structure: ClassVar[str] = "gyro"
    form: ClassVar[str] = "BallOrtho"
    O: np.ndarray = field(default_factory=lambda: np.eye(3))

    def _apply(self, v):
        return v @ self.O.T


@dataclass(frozen=True, eq=False)
class BallZero(EndoDescriptor):
    structure: ClassVar[str] = "gyro"
    form: ClassVar[str] = "BallZero"

    def _apply(self, v):
        return np.zeros_like(v)


FORMS = {
    cls.form: cls
    for cls in (JTE1, JTE2, JTE3, P21Conj, P21InvConj, P21Const, DConj, DInvConj, DConst, BallOrtho, BallZero)
}


def descriptor_from_json(obj):
    """Inverse of ``EndoDescriptor.to_json``; validates unitary/orthogonal fields."""
    try:
        cls = FORMS[obj["form"]]
    except (KeyError, TypeError):
        raise ValueError(f"unknown or missing endomorphism form in {obj!r}") from None
    kwargs = {}
    for name, value in obj.items():
        if name == "form":
            continue
        if name in ("U", "V", "W"):
            kwargs[name] = bridges.as_unitary(decode_mat2c(value))
        elif name == "O":
            kwargs[name] = bridges.as_orthogonal(decode_mat3r(value))
        else:
            kwargs[name] = float(value)
    try:
        return cls(**kwargs)
    except TypeError as exc:
        raise ValueError(f"bad fields for {cls.form}: {exc}") from None


def apply_endo(d, x):
    """Apply descriptor ``d`` to an element (or stack) of its structure.

    Raises :class:`StructureMismatch` if ``x`` is not a valid element of the
    structure ``d`` acts on.
    """
    st = get_structure(d.structure)
    try:
        x = st.validate(x)
    except (GyrokitError, ValueError) as exc:
        raise StructureMismatch(f"{d.form} acts on {st.name}: {type(exc).__name__}: {exc}") from None
    out = d._apply(x)
    if st.name != "gyro":
        out = sm.hermitize(out)
    return out


def psi_extend(d):
    """Extend a determinant-one endomorphism to all of P2.

    ``psi(A) = sqrt(det A) * phi(A / sqrt(det A))``; on determinant-one
    inputs this agrees with ``phi``.
    """
    if d.structure != "P21":
        raise StructureMismatch(f"psi extension needs a P21 form, got {d.form}")

    def psi(a):
        a = matalg.as_posdef(a)
        s = np.sqrt(sm.det_herm(a))[..., None, None]
        # a / s has det 1 only up to rounding; skip the P21 validator
        return sm.hermitize(s * d._apply(a / s))

    return psi


# --- homomorphism residuals --------------------------------------------------

@dataclass
class HomReport:
    samples: int
    max_residual: float
    mean_residual: float
    passed: bool
    tolerance: float
    structure: str = ""

    def to_json(self):
        return {
            "structure": self.structure,
            "samples": self.samples,
            "max_residual": self.max_residual,
            "mean_residual": self.mean_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def hom_residual(f, structure, n, tol, rng, g=None):
    """Measure how far ``f`` is from an endomorphism of ``structure``.

    Draws ``n`` pairs ``(x, y)`` from the structure's sampler (all of ``x``
    first, then all of ``y``), and evaluates ``|f(x*y) - g(x)*g(y)|`` where
    ``*`` is the structure's operation and ``g`` defaults to ``f``.  The
    triple product on P2 uses ``f(xyx)`` against ``g(x)g(y)g(x)``, with the
    Frobenius norm divided by ``max(1, |g(x)g(y)g(x)|)``.

    ``f`` and ``g`` are called once on the whole stack of samples.
    """
    if n < 1:
        raise ValueError("need at least one sample pair")
    g = f if g is None else g
    st = get_structure(structure)
    x = st.sample(rng, n)
    y = st.sample(rng, n)
    lhs = f(st.op(x, y))
    gx = g(x)
    gy = g(y)
    if st.name == "P2":
        # images of a generic map need not be positive definite
        rhs = gx @ gy @ gx
    else:
        rhs = st.op(gx, gy)
    res = st.distance(lhs, rhs)
    mx = float(np.max(res))
    return HomReport(
        samples=n,
        max_residual=mx,
        mean_residual=float(np.mean(res)),
        passed=bool(mx < tol),
        tolerance=tol,
        structure=st.name,
    )


# --- classification -------------------------------------------------------------

@dataclass
class BallClassification:
    verdict: str  # "zero" | "orthogonal" | "unclassified"
    matrix: Optional[np.ndarray] = None
    residual: float = 0.0

    def to_json(self):
        out = {"verdict": self.verdict}
        if self.matrix is not None:
            out["matrix"] = encode_mat3r(self.matrix)
        if self.verdict == "orthogonal":
            out["fit_residual"] = self.residual
        elif self.verdict == "unclassified":
            out["max_residual"] = self.residual
        return out


def axis_probes(eps=PROBE_EPS):
    e = np.eye(3) * eps
    return np.concatenate([e, -e])


def probe_set(rng, n=MIN_PROBES, eps=PROBE_EPS):
    """``+-eps e_i`` followed by random ball points, ``n`` points in total."""
    axes = axis_probes(eps)
    return np.concatenate([axes, gyro.sample_velocity(rng, max(n - len(axes), 0))])


def polar_orthogonal(m, iterations=POLAR_ITERATIONS):
    """Nearest orthogonal matrix via the Newton iteration ``X <- (X + X^-T)/2``."""
    x = np.asarray(m, dtype=float)
    for _ in range(iterations):
        x = 0.5 * (x + np.linalg.inv(x).T)
    return x


def _evaluate_probes(f, probes, vectorized=False):
    if vectorized:
        images = np.asarray(f(probes), dtype=float)
    else:
        images = np.array([np.asarray(f(p), dtype=float) for p in probes])
    if images.shape != probes.shape:
        raise ProbeOutOfBall(f"map returned shape {images.shape} for probes of shape {probes.shape}")
    norms = np.linalg.norm(images, axis=-1)
    bad = ~np.isfinite(norms) | (norms >= 1.0 - gyro.BALL_MARGIN)
    if np.any(bad):
        k = int(np.argmax(bad))
        raise ProbeOutOfBall(f"map sent {probes[k].tolist()} to {images[k].tolist()}, outside the ball")
    return images


def _axis_index(probes, eps):
    index = {}
    for i in range(3):
        for sign in (1.0, -1.0):
            target = np.zeros(3)
            target[i] = sign * eps
            hits = np.flatnonzero(np.all(probes == target, axis=-1))
            if len(hits):
                index[(i, sign)] = int(hits[0])
    if len(index) != 6:
        raise ValueError(f"probe set must contain all six +-{eps:g} e_i points")
    return index


def classify_ball_endo(f, tol=DEFAULT_CLASSIFY_TOL, rng=None, probes=None, eps=PROBE_EPS, vectorized=False):
    """Decide whether a black-box map of the ball is zero or orthogonal.

    ``f`` is called once per probe point, or once on the whole ``(n, 3)``
    probe stack when ``vectorized`` is set.  Columns of the candidate matrix
    are ``f(eps e_i) / eps``; after polar correction the fit residual is the
    largest ``|f(p) - O p|`` over the probes.  The verdict assumes ``f`` is a
    continuous endomorphism; maps outside that class come back
    ``unclassified`` together with the evidence.
    """
    if probes is None:
        if rng is None:
            rng = np.random.default_rng(0)
        probes = probe_set(rng, eps=eps)
    probes = np.asarray(probes, dtype=float)
    if len(probes) < MIN_PROBES:
        raise ValueError(f"need at least {MIN_PROBES} probes, got {len(probes)}")
    gyro.as_velocity(probes)
    index = _axis_index(probes, eps)
    images = _evaluate_probes(f, probes, vectorized)

    if np.max(np.linalg.norm(images, axis=-1)) < ZERO_THRESHOLD:
        return BallClassification("zero")

    raw = np.stack([images[index[(i, 1.0)]] / eps for i in range(3)], axis=-1)
    try:
        o = polar_orthogonal(raw)
    except np.linalg.LinAlgError:
        return BallClassification("unclassified", residual=float(np.max(np.linalg.norm(images, axis=-1))))
    r = float(np.max(np.linalg.norm(images - probes @ o.T, axis=-1)))
    if not np.isfinite(r) or r >= tol or sm.orthogonality_defect(o) > 1e-8:
        return BallClassification("unclassified", residual=r)
    return BallClassification("orthogonal", matrix=o, residual=r)


def ball_map_of_density(a):
    """Transport a map of density matrices to the ball through the Bloch map."""

    def beta(v):
        try:
            return bridges.bloch_inv(a(bridges.bloch(v)))
        except OutOfBall as exc:
            raise ProbeOutOfBall(str(exc)) from None

    return beta


def classify_density_endo(a, tol=DEFAULT_CLASSIFY_TOL, rng=None, probes=None, vectorized=False):
    """Identify a black-box endomorphism of density matrices.

    Returns ``(descriptor, residual)`` where the residual is the largest
    Frobenius distance between ``a`` and the recovered descriptor over the
    probes.  A recovered ball map with determinant -1 is read as the
    inversion form: its ball map is ``v -> -R v`` for the rotation ``R`` of
    the unitary, so the unitary is lifted from ``-O``.  Of the unitaries
    giving the same map, the :func:`bridges.su2_lift` representative is
    returned.

    Raises :class:`Unclassified` when no form fits within ``tol``.
    """
    if probes is None:
        if rng is None:
            rng = np.random.default_rng(0)
        probes = probe_set(rng)
    verdict = classify_ball_endo(ball_map_of_density(a), tol=tol, probes=probes, vectorized=vectorized)
    if verdict.verdict == "unclassified":
        raise Unclassified("induced ball map is neither zero nor orthogonal", verdict.residual)
    if verdict.verdict == "zero":
        desc = DConst()
    elif sm.det3(verdict.matrix) > 0:
        desc = DConj(U=bridges.su2_lift(verdict.matrix))
    else:
        desc = DInvConj(V=bridges.su2_lift(-verdict.matrix))
    mats = bridges.bloch(probes)
    images = np.asarray(a(mats)) if vectorized else np.array([np.asarray(a(m)) for m in mats])
    residual = float(np.max(sm.fro(images - desc(mats))))
    if residual >= tol:
        raise Unclassified(f"{desc.form} reconstruction residual {residual:.3g} >= {tol:g}", residual)
    return desc, residual


def transport_to_density(d):
    """Pull a P21 descriptor back to density matrices via ``tau``."""
    if d.structure != "P21":
        raise StructureMismatch(f"expected a P21 form, got {d.form}")
    return lambda a: bridges.tau_inv(d(bridges.tau(a)))


def probe_table(f, rng, n=MIN_PROBES, eps=PROBE_EPS):
    """Tabulate a ball map on a standard probe set, for offline classification."""
    pts = probe_set(rng, n, eps)
    return [{"in": [float(x) for x in p], "out": [float(x) for x in np.asarray(f(p), dtype=float)]} for p in pts]


def classify_probe_table(table, tol=DEFAULT_CLASSIFY_TOL):
    """Classify a map known only through ``[{"in": v, "out": w}, ...]``.

    The table must hold at least 64 rows including the six axis probes
    ``+-eps e_i`` for one common ``eps``.  Malformed tables raise
    ``ValueError``; outputs outside the ball raise :class:`ProbeOutOfBall`.
    """
    if not isinstance(table, list) or len(table) < MIN_PROBES:
        raise ValueError(f"probe table needs at least {MIN_PROBES} rows")
    try:
        ins = np.array([row["in"] for row in table], dtype=float)
        outs = np.array([row["out"] for row in table], dtype=float)
    except (KeyError, TypeError, ValueError):
        raise ValueError("each row must be {\"in\": [x, y, z], \"out\": [x, y, z]}") from None
    if ins.shape != (len(table), 3) or outs.shape != (len(table), 3):
        raise ValueError("probe rows must hold 3-vectors")
    try:
        gyro.as_velocity(ins)
    except OutOfBall as exc:
        raise ValueError(f"probe input outside the ball: {exc}") from None

    axis = [p for p in ins if np.count_nonzero(p) == 1]
    if not axis:
        raise ValueError("probe table has no axis probes")
    eps = float(np.max(np.abs(axis[0])))
    lookup = {tuple(p): y for p, y in zip(ins, outs)}
    return classify_ball_endo(lambda p: lookup[tuple(p)], tol=tol, probes=ins, eps=eps)
