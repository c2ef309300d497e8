"""Command-line front end for divergence evaluation, sweeps, and verification.

Exit codes are a stable contract: 0 for success, 1 when the verification
suite reports a failing check, 2 for argument or domain errors, 3 when a
numerical tolerance could not be met.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .distributions import Distribution, MixturePath, mixture
from .distributions import new_distribution
from .divergences import NAMED_IDENTIFIERS, named_divergence
from .errors import DomainError, SpecError, ToleranceError
from .operators import QuadratureConfig, psi_iter
from .polylog import polylog
from .sequences import pl, sl
from .verify import run_suite

_VALUE_FORMAT = "%.15g"
_SEQUENCES = {"pl": pl, "sl": sl}


def _load_pair(args) -> tuple[Distribution, Distribution]:
    if (args.pair is None) == (args.file is None):
        raise DomainError("exactly one of --pair and --file is required")
    if args.pair is not None:
        text = args.pair
    else:
        path = Path(args.file)
        if not path.is_file():
            raise DomainError(f"no such file: {args.file}")
        text = path.read_text(encoding="utf-8")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"pair input is not valid JSON: {exc}") from None
    if not isinstance(payload, dict) or "p" not in payload or "q" not in payload:
        raise DomainError('pair input must be an object with "p" and "q" arrays')
    return new_distribution(payload["p"]), new_distribution(payload["q"])


def _quad_config(tol: float | None) -> QuadratureConfig | None:
    if tol is None:
        return None
    return QuadratureConfig(rel_tol=tol, abs_tol=tol)


def _parse_grid(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"t-grid must look like start:stop:count, got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError:
        raise DomainError(f"t-grid must look like start:stop:count, got {text!r}") from None
    if count < 2:
        raise DomainError(f"t-grid count must be at least 2, got {count}")
    if not (0.0 <= start < stop <= 1.0):
        raise DomainError(
            f"t-grid must satisfy 0 <= start < stop <= 1, got {start}:{stop}"
        )
    return np.linspace(start, stop, count)


def _check_depth(depth: int) -> None:
    if depth < 0:
        raise DomainError(f"depth must be nonnegative, got {depth}")


def _sequence_levels(family, start, path, t: float, depth: int) -> list[float]:
    probe = mixture(path, t)
    return [family(k, start, probe) for k in range(depth + 1)]


def _cmd_eval(args) -> int:
    start, end = _load_pair(args)
    if (args.div is None) == (args.seq is None):
        raise DomainError("exactly one of --div and --seq is required")
    _check_depth(args.depth)
    if not 0.0 <= args.t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {args.t}")
    path = MixturePath(start, end)
    if args.div is not None:
        D = named_divergence(args.div)
        levels = psi_iter(
            D, args.depth, path, np.array([args.t]), _quad_config(args.tol)
        )
        value = float(levels[-1, 0])
    else:
        if args.k is None:
            raise DomainError("--k is required with --seq")
        if args.k < 0:
            raise DomainError(f"k must be nonnegative, got {args.k}")
        family = _SEQUENCES[args.seq]
        value = family(args.k, start, mixture(path, args.t))
    print(_VALUE_FORMAT % value)
    return 0


def _cmd_sweep(args) -> int:
    start, end = _load_pair(args)
    if (args.div is None) == (args.seq is None):
        raise DomainError("exactly one of --div and --seq is required")
    _check_depth(args.depth)
    grid = _parse_grid(args.t)
    path = MixturePath(start, end)
    if args.div is not None:
        D = named_divergence(args.div)
        levels = psi_iter(D, args.depth, path, grid, _quad_config(args.tol))
        columns = levels.T
    else:
        family = _SEQUENCES[args.seq]
        columns = [
            _sequence_levels(family, start, path, float(t), args.depth) for t in grid
        ]
    if args.format == "csv":
        print("t,k,value")
        for t, column in zip(grid, columns):
            for k, value in enumerate(column):
                print(f"{_VALUE_FORMAT % t},{k},{_VALUE_FORMAT % value}")
    else:
        for t, column in zip(grid, columns):
            for k, value in enumerate(column):
                print(json.dumps({"t": float(t), "k": k, "value": float(value)}))
    return 0


def _cmd_verify(args) -> int:
    report = run_suite(seed=args.seed, instances=args.instances)
    print(report.to_json())
    return 0 if report.all_passed else 1


def _cmd_polylog(args) -> int:
    print(_VALUE_FORMAT % polylog(args.k, args.z))
    return 0


def _add_pair_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--pair", help='inline JSON pair {"p": [..], "q": [..]}'
    )
    parser.add_argument("--file", help="path to a JSON file with the same shape")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divseq",
        description="Evaluate divergences, operator sweeps, and property checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="print a single value")
    _add_pair_flags(ev)
    ev.add_argument("--div", choices=NAMED_IDENTIFIERS)
    ev.add_argument("--seq", choices=sorted(_SEQUENCES))
    ev.add_argument("--k", type=int, help="sequence order (with --seq)")
    ev.add_argument("--t", type=float, default=1.0, help="path position in [0, 1]")
    ev.add_argument(
        "--depth", type=int, default=0, help="operator applications (with --div)"
    )
    ev.add_argument("--tol", type=float, help="quadrature tolerance override")
    ev.set_defaults(handler=_cmd_eval)

    sw = sub.add_parser("sweep", help="print a (t, k, value) table")
    _add_pair_flags(sw)
    sw.add_argument("--div", choices=NAMED_IDENTIFIERS)
    sw.add_argument("--seq", choices=sorted(_SEQUENCES))
    sw.add_argument(
        "--t", required=True, help="inclusive grid start:stop:count, count >= 2"
    )
    sw.add_argument("--depth", type=int, default=0, help="levels 0..depth per t")
    sw.add_argument("--tol", type=float, help="quadrature tolerance override")
    sw.add_argument("--format", choices=("csv", "json"), default="csv")
    sw.set_defaults(handler=_cmd_sweep)

    ve = sub.add_parser("verify", help="run the property-check suite")
    ve.add_argument("--seed", type=int, default=42)
    ve.add_argument("--instances", type=int, default=200)
    ve.set_defaults(handler=_cmd_verify)

    po = sub.add_parser("polylog", help="evaluate the polylogarithm")
    po.add_argument("--k", type=int, required=True, help="nonnegative integer order")
    po.add_argument("--z", type=float, required=True, help="real argument below 1")
    po.set_defaults(handler=_cmd_polylog)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (DomainError, SpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ToleranceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
