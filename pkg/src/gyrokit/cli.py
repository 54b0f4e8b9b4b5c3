"""Command-line front end: ``gyrokit eval|verify|classify``.

Exit codes: 0 success, 1 verification failure or unclassified map,
2 malformed input or a violated invariant.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import bridges, endo, gyro, matalg
from .encoding import decode_mat2c, decode_vec3, dumps, encode_vec3, tagged
from .errors import GyrokitError
from .verify import SUITES, format_table, run_suite

DEFAULT_SEED = 42
SEED_ENV = "GYROKIT_SEED"


class InputError(Exception):
    pass


def default_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV}={raw!r} is not an integer") from None


def load_operand(text):
    """Parse inline JSON, or the contents of ``text`` if it names a file."""
    if os.path.isfile(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON operand: {exc}") from None


def _vec(text):
    return decode_vec3(load_operand(text))


def _mat(text):
    return decode_mat2c(load_operand(text))


EVAL_OPS = {
    "add": (2, lambda a, b: encode_vec3(gyro.einstein_add(_vec(a), _vec(b)))),
    "gamma-factor": (1, lambda a: float(gyro.lorentz_factor(_vec(a)))),
    "bloch": (1, lambda a: tagged("density", bridges.bloch(_vec(a)))),
    "bloch-inv": (1, lambda a: encode_vec3(bridges.bloch_inv(_mat(a)))),
    "tau": (1, lambda a: tagged("unitdet", bridges.tau(_mat(a)))),
    "odot": (2, lambda a, b: tagged("density", matalg.odot(_mat(a), _mat(b)))),
    "boxdot": (2, lambda a, b: tagged("unitdet", matalg.boxdot(_mat(a), _mat(b)))),
}


def cmd_eval(args):
    arity, fn = EVAL_OPS[args.op]
    if len(args.operands) != arity:
        raise InputError(f"{args.op} takes {arity} operand(s), got {len(args.operands)}")
    print(dumps(fn(*args.operands)))
    return 0


def cmd_verify(args):
    seed = default_seed() if args.seed is None else args.seed
    report = run_suite(args.suite, seed=seed, samples=args.samples, tol=args.tol)
    if args.json:
        print(dumps(report))
    else:
        print(format_table(report))
    return 0 if report["pass"] else 1


def _classify_descriptor(d, tol, rng):
    if d.structure == "gyro":
        f = d
    elif d.structure == "D":
        f = endo.ball_map_of_density(d)
    elif d.structure == "P21":
        f = endo.ball_map_of_density(endo.transport_to_density(d))
    else:
        raise GyrokitError(f"StructureMismatch: {d.form} acts on P2, which is not a model of the ball")
    probes = endo.probe_set(rng)
    verdict = endo.classify_ball_endo(f, tol=tol, probes=probes)
    out = verdict.to_json()
    if d.structure != "gyro" and verdict.verdict != "unclassified":
        a = d if d.structure == "D" else endo.transport_to_density(d)
        desc, residual = endo.classify_density_endo(a, tol=tol, probes=probes)
        out["density_form"] = desc.to_json()
        out["density_residual"] = residual
    return out


def cmd_classify(args):
    obj = load_operand(args.input)
    seed = default_seed() if args.seed is None else args.seed
    if isinstance(obj, dict):
        try:
            d = endo.descriptor_from_json(obj)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        out = _classify_descriptor(d, args.tol, np.random.default_rng(seed))
    else:
        try:
            out = endo.classify_probe_table(obj, tol=args.tol).to_json()
        except (ValueError, KeyError) as exc:
            if isinstance(exc, GyrokitError):
                raise
            raise InputError(f"malformed probe table: {exc}") from None
    print(dumps(out))
    return 1 if out["verdict"] == "unclassified" else 0


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="gyrokit", description="Einstein gyrogroup toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one operation on JSON operands")
    p.add_argument("op", choices=sorted(EVAL_OPS))
    p.add_argument("operands", nargs="+", help="inline JSON or a path to a JSON file")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="run a seeded verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or {DEFAULT_SEED}")
    p.add_argument("--samples", type=_positive_int, default=1000)
    p.add_argument("--tol", type=_positive_float, default=1e-11)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="classify a ball endomorphism")
    p.add_argument("--input", required=True, help="descriptor JSON or probe table (inline or file)")
    p.add_argument("--tol", type=_positive_float, default=endo.DEFAULT_CLASSIFY_TOL)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GyrokitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
