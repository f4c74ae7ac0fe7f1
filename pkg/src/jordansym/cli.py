"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for unreadable or invalid input.
"""

import argparse
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .acceptance import AcceptanceConfig, Tolerances, config_json, run_all
from .algebra import BlockAlgebra
from .bloch import orientation_of
from .errors import CheckFailed, InputError, ParseError
from .extraction import extract_unitary, verify_implementation
from .rand import random_canonical_form, random_pure_state
from .states import PureState, tp_all
from .symmetry import (CanonicalForm, JordanMap, check_herstein_identities, is_jordan_symmetry,
                       jordan_from_wigner)
from .thomsen import thomsen_decompose, verify_centrality

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def jsonable(obj):
    """Plain-Python copy of ``obj`` with non-finite floats spelled as strings."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    return obj


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def parse_dims(text) -> BlockAlgebra:
    try:
        dims = tuple(int(x) for x in text.replace("[", "").replace("]", "").split(",") if x.strip())
        return BlockAlgebra(dims)
    except ValueError as exc:
        raise ParseError(f"bad algebra spec {text!r}: expected e.g. 2,2 or [5,3,1]") from exc


def _load_map(path) -> JordanMap:
    return JordanMap.from_json(load_json(path))


def _tolerances(args) -> Tolerances:
    overrides = {name: getattr(args, f"tol_{name}") for name in Tolerances.names()
                 if getattr(args, f"tol_{name}", None) is not None}
    return replace(Tolerances(), **overrides)


# Each command returns (report dict, passed flag).

def cmd_tp(args, tol):
    algebra = parse_dims(args.algebra) if args.algebra else None
    w1 = PureState.from_json(load_json(args.state_a), algebra)
    w2 = PureState.from_json(load_json(args.state_b), algebra)
    vals = tp_all(w1, w2)
    passed = vals["max_deviation"] < tol.tp
    return {**vals, "passed": passed}, passed


def cmd_check_jordan(args, tol):
    J = _load_map(args.map)
    rep = is_jordan_symmetry(J, trials=args.trials, seed=args.seed, tol=tol.herstein)
    report = {"jordan": rep.to_json(), "herstein": None}
    passed = rep.passed
    if passed:
        h = check_herstein_identities(J, trials=args.trials, seed=args.seed, tol=tol.herstein)
        report["herstein"] = h.to_json()
        passed = h.passed
    report["passed"] = passed
    return report, passed


def cmd_decompose(args, tol):
    dec = thomsen_decompose(_load_map(args.map))
    central = verify_centrality(dec)
    return {**dec.to_json(), "centrality": central.to_json(), "passed": central.passed}, central.passed


def cmd_extract(args, tol):
    J = _load_map(args.map)
    op = extract_unitary(J, args.block, kind=args.kind)
    rep = verify_implementation(J, op, tol=tol.extraction)
    return {"operator": op.to_json(), "verification": rep.to_json(), "passed": rep.passed}, rep.passed


def cmd_reconstruct(args, tol):
    form = CanonicalForm.from_json(load_json(args.oracle_spec))
    J = jordan_from_wigner(form.oracle(), trials=args.trials, seed=args.seed)
    residual = float(np.linalg.norm(J.matrix - form.jordan().matrix))
    passed = residual < tol.reconstruction
    return {"jordan": J.to_json(), "residual": residual, "passed": passed}, passed


def cmd_orientation(args, tol):
    rep = orientation_of(_load_map(args.map), seed=args.seed)
    out = rep.to_json()
    passed = all(c["consistent"] and c["residual"] < tol.orientation for c in rep.corner_checks)
    out["passed"] = passed
    return out, passed


def _transpose_flags(text, algebra):
    if text == "random":
        return None
    if text in ("none", "all"):
        return text == "all"
    flags = [x.strip() for x in text.split(",")]
    if len(flags) != algebra.num_blocks or any(f not in ("0", "1") for f in flags):
        raise ParseError(f"--transpose wants random, none, all or one 0/1 per block, got {text!r}")
    return [f == "1" for f in flags]


def cmd_random(args, tol):
    algebra = parse_dims(args.algebra)
    rng = np.random.default_rng(args.seed)
    if args.kind == "state":
        return random_pure_state(algebra, rng).to_json(), True
    form = random_canonical_form(algebra, rng, _transpose_flags(args.transpose, algebra),
                                 permute=not args.no_permute)
    return (form.jordan() if args.kind == "jordan" else form).to_json(), True


def cmd_selftest(args, tol):
    cfg = AcceptanceConfig(seed=args.seed, scale=args.scale, tol=tol)
    results = run_all(cfg)
    passed = all(r.passed for r in results)
    report = {"config": config_json(cfg), "criteria": [r.to_json() for r in results],
              "passed": passed}
    # human-readable lines carry the timings, which JSON leaves out
    report["_lines"] = [r.line() for r in results]
    return report, passed


COMMANDS = {
    "tp": cmd_tp,
    "check-jordan": cmd_check_jordan,
    "decompose": cmd_decompose,
    "extract": cmd_extract,
    "reconstruct": cmd_reconstruct,
    "orientation": cmd_orientation,
    "random": cmd_random,
    "selftest": cmd_selftest,
}


def _seed(text):
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0, help="seed for every random choice")
    common.add_argument("--trials", type=int, default=200, help="random samples per check")
    common.add_argument("--output", help="write the report here instead of standard output")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    for name, default in Tolerances().__dict__.items():
        common.add_argument(f"--tol.{name}", dest=f"tol_{name}", type=float, default=None,
                            metavar="X", help=f"tolerance override (default {default:g})")

    parser = argparse.ArgumentParser(
        prog="jordansym",
        description="Symmetries of finite-dimensional C*-algebras (direct sums of matrix blocks).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tp", parents=[common], help="transition probability by three formulas")
    p.add_argument("state_a")
    p.add_argument("state_b")
    p.add_argument("--algebra", help="block sizes for state files that do not name their algebra")
    for name, helptext in (("check-jordan", "validate a Jordan map and Herstein's identities"),
                           ("decompose", "central (anti-)homomorphism decomposition"),
                           ("orientation", "orientation verdict with corner checks")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("map")
    p = sub.add_parser("extract", parents=[common], help="implementing (anti-)unitary of one block")
    p.add_argument("map")
    p.add_argument("block", type=int)
    p.add_argument("--kind", choices=["HOM", "ANTI"], default=None)
    p = sub.add_parser("reconstruct", parents=[common],
                       help="rebuild a Jordan map from a pure-state map in canonical form")
    p.add_argument("oracle_spec")
    p = sub.add_parser("random", parents=[common], help="seeded random map, oracle spec or pure state")
    p.add_argument("kind", choices=["jordan", "wigner", "state"])
    p.add_argument("--algebra", required=True, help="block sizes, e.g. 2,2 or [5,3,1]")
    p.add_argument("--transpose", default="random",
                   help="random (default), none, all, or one 0/1 flag per block")
    p.add_argument("--no-permute", action="store_true", help="keep equal blocks in place")
    p = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    p.add_argument("--scale", type=float, default=1.0, help="multiplier on sample counts")
    return parser


def _text(report) -> str:
    if "_lines" in report:
        return "\n".join(report["_lines"]) + "\n"
    lines = []
    for key in sorted(report):
        value = jsonable(report[key])
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        tol = _tolerances(args)
        report, passed = COMMANDS[args.command](args, tol)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CheckFailed as exc:
        print(f"check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    lines = report.pop("_lines", None)
    if args.json or args.command == "random":
        text = dumps(report)
    else:
        text = _text({**report, "_lines": lines} if lines else report)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if passed else EXIT_FAIL


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
