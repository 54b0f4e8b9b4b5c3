"""Seeded verification suites.

Each suite returns a list of invariant records.  A record is either a
bound (``max_residual < tolerance``) or a witness (``max_residual >
tolerance``, i.e. some sample exhibits the defect).  Every suite draws from
its own generator seeded by ``(seed, suite id)``, so ``all`` reproduces the
individual suites exactly.
"""

import numpy as np

from . import bridges, endo, gyro, matalg
from . import smallmat as sm

SCHEMA = 1
N_PARAMS = 100
N_ROUNDTRIP = 1000
EXPONENT_RANGE = (-1.0, 1.0)
SHEAR = np.array([[1.0, 0.1, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])

SUITE_IDS = {"gyro": 1, "kim": 2, "tau": 3, "jte": 4, "corollaries": 5, "main": 6}
SUITES = tuple(SUITE_IDS) + ("all",)


def _record(name, values, tol, witness=False):
    mx = float(np.max(values))
    passed = mx > tol if witness else mx < tol
    return {
        "name": name,
        "max_residual": mx,
        "tolerance": tol,
        "comparison": ">" if witness else "<",
        "pass": bool(passed),
    }


def _hom_record(name, reports, tol):
    return _record(name, [r.max_residual for r in reports], tol)


def suite_rng(seed, suite):
    return np.random.default_rng([seed, SUITE_IDS[suite]])


def scaled_shear(v):
    return 0.5 * np.asarray(v) @ SHEAR.T


# --- suites -----------------------------------------------------------------------

def gyro_suite(rng, n, tol):
    u = gyro.sample_velocity(rng, n)
    v = gyro.sample_velocity(rng, n)
    w = gyro.sample_velocity(rng, n)
    zero = np.zeros_like(u)
    uv = gyro.einstein_add(u, v)
    vu = gyro.einstein_add(v, u)
    dist = lambda a, b: np.linalg.norm(a - b, axis=-1)
    assoc = dist(gyro.einstein_add(uv, w), gyro.einstein_add(u, gyro.einstein_add(v, w)))
    return [
        _record("closure |u+v|", np.linalg.norm(uv, axis=-1), 1.0),
        _record("right identity u+0=u", dist(gyro.einstein_add(u, zero), u), 1e-15),
        _record("left identity 0+v=v", dist(gyro.einstein_add(zero, v), v), 1e-15),
        _record("inverse u+(-u)=0", np.linalg.norm(gyro.einstein_add(u, gyro.gyro_neg(u)), axis=-1), 1e-14),
        _record("non-commutativity witness", dist(uv, vu), 0.01, witness=True),
        _record("non-associativity witness", assoc, 0.01, witness=True),
    ]


def kim_suite(rng, n, tol):
    u = gyro.sample_velocity(rng, n)
    v = gyro.sample_velocity(rng, n)
    ru, rv = bridges.bloch(u), bridges.bloch(v)
    kim = sm.fro(bridges.bloch(gyro.einstein_add(u, v)) - matalg.odot(ru, rv))
    inner = np.abs(bridges.herm_inner(bridges.gamma_map(u), bridges.gamma_map(v)) - np.sum(u * v, axis=-1))
    relation = sm.fro(bridges.gamma_map(u) - (2.0 * ru - sm.I2))
    inv = sm.inv_herm(ru)
    inversion = sm.fro(inv / sm.trace2(inv).real[..., None, None] - bridges.bloch(-u))
    roundtrip = np.linalg.norm(bridges.bloch_inv(ru) - u, axis=-1)
    return [
        _record("kim rho(u+v)=rho(u).rho(v)", kim, 1e-12),
        _record("gamma inner product", inner, 1e-13),
        _record("gamma(v)=2rho(v)-I", relation, 1e-14),
        _record("rho(v)^-1/Tr=rho(-v)", inversion, 1e-12),
        _record("bloch round trip", roundtrip, 1e-15),
    ]


def tau_suite(rng, n, tol):
    a = matalg.sample_density(rng, n)
    b = matalg.sample_density(rng, n)
    ab = matalg.odot(a, b)
    ta, tb = bridges.tau(a), bridges.tau(b)
    boxed = matalg.boxdot(ta, tb)
    trace_defect = np.abs(sm.trace2(ab) - 1.0)
    closure = np.maximum(sm.hermitian_defect(ab), trace_defect)
    return [
        _record("tau(A.B)=tau(A)[.]tau(B)", sm.fro(bridges.tau(ab) - boxed), 1e-12),
        _record("tau_inv(tau(A))=A", sm.fro(bridges.tau_inv(ta) - a), 1e-13),
        _record("tau(tau_inv(P))=P", sm.fro(bridges.tau(bridges.tau_inv(ta)) - ta), 1e-13),
        _record("odot closure (Hermitian, trace 1)", closure, 1e-12),
        _record("odot positivity (-min eig)", -sm.min_eig_herm(ab), 0.0),
        _record("boxdot closure det=1", np.abs(sm.det_herm(boxed) - 1.0), 1e-12),
        _record("odot non-commutativity witness", sm.fro(ab - matalg.odot(b, a)), 0.01, witness=True),
    ]


def random_jte(rng, form):
    u = bridges.sample_unitary(rng)
    c = rng.uniform(*EXPONENT_RANGE, size=2)
    if form == "JTE1":
        return endo.JTE1(U=u, c=c[0])
    if form == "JTE2":
        return endo.JTE2(V=u, d=c[0])
    return endo.JTE3(W=u, c1=c[0], c2=c[1])


def random_corollary(rng, form):
    cls = endo.FORMS[form]
    if form in ("P21Const", "DConst"):
        return cls()
    return cls(bridges.sample_unitary(rng))


def jte_suite(rng, n, tol, n_params=N_PARAMS):
    out = []
    for form in ("JTE1", "JTE2", "JTE3"):
        reports = [endo.hom_residual(random_jte(rng, form), "P2", n, tol, rng) for _ in range(n_params)]
        out.append(_hom_record(f"{form} triple law", reports, tol))
    for form in ("P21Conj", "P21InvConj", "P21Const"):
        agree = []
        reports = []
        for _ in range(n_params):
            d = random_corollary(rng, form)
            psi = endo.psi_extend(d)
            a = matalg.sample_unitdet(rng, n)
            agree.append(np.max(sm.fro(psi(a) - d(a))))
            reports.append(endo.hom_residual(psi, "P2", n, tol, rng))
        out.append(_record(f"psi({form}) agrees on P21", agree, 1e-13))
        out.append(_hom_record(f"psi({form}) triple law", reports, tol))
    return out


def corollaries_suite(rng, n, tol, n_params=N_PARAMS):
    out = []
    for form in ("P21Conj", "P21InvConj", "P21Const", "DConj", "DInvConj", "DConst"):
        reports = []
        for _ in range(n_params):
            d = random_corollary(rng, form)
            reports.append(endo.hom_residual(d, d.structure, n, tol, rng))
        op = "boxdot" if d.structure == "P21" else "odot"
        out.append(_hom_record(f"{form} {op}-homomorphism", reports, tol))
    return out


def _classify_orthogonal(o, rng):
    c = endo.classify_ball_endo(endo.BallOrtho(O=o), rng=rng, vectorized=True)
    if c.verdict != "orthogonal":
        return 1.0  # wrong verdict; any value far above the bound
    return float(np.max(np.abs(c.matrix - o)))


def _density_det_sign(a, rng):
    c = endo.classify_ball_endo(endo.ball_map_of_density(a), rng=rng, vectorized=True)
    return sm.det3(c.matrix) if c.verdict == "orthogonal" else 0.0


def main_suite(rng, n, tol, n_params=N_PARAMS):
    out = []
    ortho = bridges.sample_orthogonal(rng, n_params)
    reports = [endo.hom_residual(endo.BallOrtho(O=o), "gyro", n, tol, rng) for o in ortho]
    out.append(_hom_record("BallOrtho gyro-homomorphism", reports, tol))
    out.append(_hom_record("BallZero gyro-homomorphism", [endo.hom_residual(endo.BallZero(), "gyro", n, tol, rng)], tol))

    rots = bridges.sample_orthogonal(rng, n_params, reflections=False)
    out.append(_record("recover rotations (inf-norm)", [_classify_orthogonal(o, rng) for o in rots], 1e-10))
    out.append(_record("recover reflections (inf-norm)", [_classify_orthogonal(-o, rng) for o in rots], 1e-10))
    zero = endo.classify_ball_endo(endo.BallZero(), rng=rng, vectorized=True)
    out.append(_record("zero map verdict", [0.0 if zero.verdict == "zero" else 1.0], 0.5))

    # det +1 for conjugations, -1 for inversions
    conj_err = [abs(_density_det_sign(endo.DConj(U=u), rng) - 1.0) for u in bridges.sample_unitary(rng, n_params)]
    inv_err = [abs(_density_det_sign(endo.DInvConj(V=u), rng) + 1.0) for u in bridges.sample_unitary(rng, n_params)]
    out.append(_record("DConj induces det +1", conj_err, 1e-9))
    out.append(_record("DInvConj induces det -1", inv_err, 1e-9))

    o1 = bridges.sample_orthogonal(rng, n_params)
    o2 = bridges.sample_orthogonal(rng, n_params)
    comp = []
    for a, b in zip(o1, o2):
        da, db = endo.BallOrtho(O=a), endo.BallOrtho(O=b)
        c = endo.classify_ball_endo(lambda v: da(db(v)), rng=rng, vectorized=True)
        comp.append(np.max(np.abs(c.matrix - a @ b)) if c.verdict == "orthogonal" else 1.0)
    out.append(_record("composition closure", comp, 1e-9))

    u = bridges.sample_unitary(rng, n)
    v = bridges.sample_unitary(rng, n)
    ru, rv = bridges.adjoint_rotation(u), bridges.adjoint_rotation(v)
    hom = np.max(np.abs(bridges.adjoint_rotation(u @ v) - ru @ rv), axis=(-2, -1))
    out.append(_record("adjoint_rotation homomorphism", hom, 1e-12))
    out.append(_record("adjoint_rotation det=+1", np.abs(sm.det3(ru) - 1.0), 1e-12))
    r = bridges.sample_rotation(rng, min(n, N_ROUNDTRIP))
    rt = np.sqrt(np.sum((bridges.adjoint_rotation(bridges.su2_lift(r)) - r) ** 2, axis=(-2, -1)))
    out.append(_record("su2_lift round trip", rt, 1e-9))

    shear = endo.hom_residual(scaled_shear, "gyro", n, 1e-3, rng)
    out.append(_record("shear fails gyro-homomorphism", [shear.max_residual], 1e-3, witness=True))
    verdict = endo.classify_ball_endo(scaled_shear, rng=rng, vectorized=True)
    out.append(_record("shear verdict unclassified", [1.0 if verdict.verdict == "unclassified" else 0.0], 0.5, witness=True))
    return out


SUITE_FUNCS = {
    "gyro": gyro_suite,
    "kim": kim_suite,
    "tau": tau_suite,
    "jte": jte_suite,
    "corollaries": corollaries_suite,
    "main": main_suite,
}


def run_suite(suite, seed=42, samples=1000, tol=1e-11):
    """Run one suite (or ``"all"``) and return the report dict.

    ``tol`` applies to the endomorphism tests; identities keep their own
    fixed tolerances.
    """
    from . import __version__

    if samples < 1:
        raise ValueError("samples must be >= 1")
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    names = list(SUITE_IDS) if suite == "all" else [suite]
    invariants = []
    for name in names:
        for rec in SUITE_FUNCS[name](suite_rng(seed, name), samples, tol):
            if suite == "all":
                rec = dict(rec, name=f"{name}: {rec['name']}")
            invariants.append(rec)
    return {
        "schema": SCHEMA,
        "version": __version__,
        "suite": suite,
        "seed": seed,
        "samples": samples,
        "tolerance": tol,
        "invariants": invariants,
        "pass": all(r["pass"] for r in invariants),
    }


def format_table(report):
    rows = [(r["name"], f"{r['max_residual']:.3e}", r["comparison"], f"{r['tolerance']:.0e}", "PASS" if r["pass"] else "FAIL")
            for r in report["invariants"]]
    width = max(len(r[0]) for r in rows)
    lines = [f"suite {report['suite']}  seed {report['seed']}  samples {report['samples']}  tol {report['tolerance']:g}"]
    for name, val, cmp, tol, status in rows:
        lines.append(f"{name:<{width}}  {val:>10}  {cmp} {tol:>6}  {status}")
    lines.append("overall: " + ("PASS" if report["pass"] else "FAIL"))
    return "\n".join(lines)


__all__ = ["SUITES", "format_table", "run_suite", "scaled_shear"]
