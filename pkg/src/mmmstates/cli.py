"""Command-line interface.

Machine-readable results go to stdout as JSON (the scan subcommand's grid
additionally lands in a CSV file); human-readable progress and error text
goes to stderr.  All numbers are formatted with 12 significant digits, so a
repeated invocation with identical arguments produces byte-identical output.

Exit codes
----------
0   success
1   malformed input (unreadable file, bad JSON shape, bad usage)
2   constraint violation (candidate matrix rejected)
3   blockwise/oracle invariant mismatch (``invariants``)
4   LU-inequivalent verdict (``compare``)
5   invariance violation under local rotations (``probe``)

The environment variable ``MMM_TOL`` overrides each subcommand's default
tolerance; an explicit ``--tol`` beats both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .alphas import (
    DEFAULT_TOL,
    NAMED_EXAMPLES,
    AlphaMatrix,
    ConstraintViolation,
    alpha_from_json,
    constraint_report,
    named_example,
    parse_alpha_json,
    qutrit_family,
)
from .invariants import (
    MODE_HS,
    VERDICT_INEQUIVALENT,
    block_invariants,
    canonical_mode,
    invariant_deviations,
    lu_discriminate,
    lu_probe,
    oracle_invariants,
)
from .linalg import MULTISET_TOL
from .qutrit import write_negativity_csv
from .states import build_state, certify, state_to_json_dict

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_CONSTRAINT = 2
EXIT_MISMATCH = 3
EXIT_INEQUIVALENT = 4
EXIT_INVARIANCE = 5

_MODE_CHOICES = ("hs-orthonormal", "raw", "paper-raw")


class UsageError(ValueError):
    """Bad combination of arguments; maps to exit code 1."""


def _jsonify(obj):
    """Recursively coerce to JSON-friendly types with 12-significant-digit floats."""
    if isinstance(obj, dict):
        return {key: _jsonify(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(value) for value in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonify(value) for value in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(f"{float(obj):.12g}")
    return obj


def _emit(payload) -> None:
    print(json.dumps(_jsonify(payload), indent=2))


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def _pick_tol(flag_value, env_tol, fallback: float) -> float:
    if flag_value is not None:
        return float(flag_value)
    if env_tol is not None:
        return float(env_tol)
    return fallback


def _add_input_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("path", nargs="?", help="parameter-matrix JSON file")
    sub.add_argument(
        "--family",
        nargs=2,
        type=float,
        metavar=("THETA", "PHI"),
        help="use the two-parameter qutrit family at this point",
    )
    sub.add_argument("--named", choices=NAMED_EXAMPLES, help="use a bundled example matrix")
    sub.add_argument("--d", type=int, default=3, help="local dimension for --named (default: 3)")
    sub.add_argument(
        "--no-validate",
        action="store_true",
        help="skip constraint validation of the input matrix",
    )


def _load_alpha(args, validation_tol: float) -> AlphaMatrix:
    chosen = [args.path is not None, args.family is not None, args.named is not None]
    if sum(chosen) != 1:
        raise UsageError("provide exactly one input: PATH, --family or --named")
    check = not args.no_validate
    if args.family is not None:
        theta, phi = args.family
        return qutrit_family(theta, phi, tol=validation_tol, check=check)
    if args.named is not None:
        return named_example(args.named, args.d)
    with open(args.path, encoding="utf-8") as fh:
        obj = json.load(fh)
    return alpha_from_json(obj, tol=validation_tol, check=check)


def cmd_validate(args, env_tol) -> int:
    tol = _pick_tol(args.tol, env_tol, DEFAULT_TOL)
    with open(args.path, encoding="utf-8") as fh:
        obj = json.load(fh)
    report = constraint_report(parse_alpha_json(obj))
    accepted = report.within(tol)
    _emit({"accepted": accepted, "tol": tol, "residuals": report.to_dict()})
    if not accepted:
        _log(f"rejected: max residual {report.max_residual:.3e} exceeds tolerance {tol:.1e}")
    return EXIT_OK if accepted else EXIT_CONSTRAINT


def cmd_build(args, env_tol) -> int:
    tol = _pick_tol(args.tol, env_tol, DEFAULT_TOL)
    a = _load_alpha(args, tol)
    state = build_state(a)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(_jsonify(state_to_json_dict(state)), fh, indent=2)
            fh.write("\n")
        _log(f"wrote {state.d * state.d}x{state.d * state.d} state to {args.out}")
        _emit({"d": state.d, "out": args.out, "certificate": certify(state).to_dict()})
    else:
        _emit(state_to_json_dict(state))
    return EXIT_OK


def cmd_invariants(args, env_tol) -> int:
    tol = _pick_tol(args.tol, env_tol, MULTISET_TOL)
    a = _load_alpha(args, _pick_tol(None, env_tol, DEFAULT_TOL))
    mode = canonical_mode(args.mode)
    shortcut = block_invariants(a, mode)
    oracle = oracle_invariants(build_state(a), mode)
    deltas = invariant_deviations(shortcut, oracle)
    consistent = max(deltas.values()) <= tol
    payload = {"d": a.d, **shortcut.to_json_dict(), "oracle_deltas": deltas, "tol": tol,
               "consistent": consistent}
    _emit(payload)
    if not consistent:
        _log(f"blockwise and oracle invariants disagree beyond {tol:.1e}: {deltas}")
    return EXIT_OK if consistent else EXIT_MISMATCH


def cmd_scan(args, env_tol) -> int:
    del env_tol  # the scan has no tolerance knob
    if args.resolution < 1:
        raise UsageError("--resolution must be a positive integer")
    summary = write_negativity_csv(args.out, args.resolution)
    _log(f"wrote {summary['rows']} rows to {args.out}")
    _emit(summary)
    return EXIT_OK


def cmd_compare(args, env_tol) -> int:
    tol = _pick_tol(args.tol, env_tol, MULTISET_TOL)
    validation_tol = _pick_tol(None, env_tol, DEFAULT_TOL)
    check = not args.no_validate
    matrices = []
    for path in (args.a, args.b):
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
        matrices.append(alpha_from_json(obj, tol=validation_tol, check=check))
    result = lu_discriminate(matrices[0], matrices[1], tol=tol)
    _emit({"d": matrices[0].d, **result.to_json_dict()})
    return EXIT_INEQUIVALENT if result.verdict == VERDICT_INEQUIVALENT else EXIT_OK


def cmd_probe(args, env_tol) -> int:
    tol = _pick_tol(args.tol, env_tol, MULTISET_TOL)
    a = _load_alpha(args, _pick_tol(None, env_tol, DEFAULT_TOL))
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    report = lu_probe(a, args.trials, args.seed, tol=tol)
    _emit(report.to_json_dict())
    if not report.within_tolerance:
        _log(f"invariants drifted beyond {tol:.1e} under local rotations")
    return EXIT_OK if report.within_tolerance else EXIT_INVARIANCE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mmmstates",
        description=(
            "Construct bipartite qudit states with maximally mixed marginals and "
            "compute their local-unitary invariants."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a parameter matrix against the constraints")
    p.add_argument("path", help="parameter-matrix JSON file")
    p.add_argument("--tol", type=float, default=None, help="acceptance tolerance (default: 1e-10)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("build", help="assemble the density matrix of a parameter matrix")
    _add_input_options(p)
    p.add_argument("--out", help="write the state JSON here instead of stdout")
    p.add_argument("--tol", type=float, default=None, help="validation tolerance (default: 1e-10)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("invariants", help="blockwise invariants with a full-matrix cross-check")
    _add_input_options(p)
    p.add_argument(
        "--mode",
        choices=_MODE_CHOICES,
        default=MODE_HS,
        help="basis normalisation; raw keeps clock elements at norm sqrt(d) "
        "(paper-raw is accepted as an alias)",
    )
    p.add_argument("--tol", type=float, default=None, help="cross-check tolerance (default: 1e-8)")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("scan", help="scan the qutrit family's negativity onto a CSV grid")
    p.add_argument("--resolution", type=int, required=True, help="grid points per axis")
    p.add_argument("--out", required=True, help="CSV output path")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("compare", help="compare two parameter matrices by their invariants")
    p.add_argument("a", help="first parameter-matrix JSON file")
    p.add_argument("b", help="second parameter-matrix JSON file")
    p.add_argument("--tol", type=float, default=None, help="multiset tolerance (default: 1e-8)")
    p.add_argument("--no-validate", action="store_true", help="skip constraint validation")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("probe", help="measure invariant drift under random local rotations")
    _add_input_options(p)
    p.add_argument("--trials", type=int, default=16, help="number of random rotations (default: 16)")
    p.add_argument("--seed", type=int, default=0, help="master seed (default: 0)")
    p.add_argument("--tol", type=float, default=None, help="drift tolerance (default: 1e-8)")
    p.set_defaults(func=cmd_probe)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, which would collide with the
        # constraint-violation code; remap while keeping --help at 0.
        return EXIT_OK if exc.code == 0 else EXIT_MALFORMED

    if "MMM_TOL" in os.environ:
        try:
            env_tol = float(os.environ["MMM_TOL"])
        except ValueError:
            _log(f"MMM_TOL must be a number, got {os.environ['MMM_TOL']!r}")
            return EXIT_MALFORMED
    else:
        env_tol = None

    try:
        return args.func(args, env_tol)
    except ConstraintViolation as exc:
        _emit({"accepted": False, "tol": exc.tol, "residuals": exc.report.to_dict()})
        _log(str(exc))
        return EXIT_CONSTRAINT
    except UsageError as exc:
        _log(f"usage error: {exc}")
        return EXIT_MALFORMED
    except json.JSONDecodeError as exc:
        _log(f"malformed JSON: {exc}")
        return EXIT_MALFORMED
    except OSError as exc:
        _log(f"i/o error: {exc}")
        return EXIT_MALFORMED
    except ValueError as exc:
        _log(f"invalid input: {exc}")
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
