"""Command-line front end.

Every command prints one JSON report on stdout::

    {"command": {...}, "input": {"shape", "nnz", "sha256"}, "payload": ..., "status": "ok"}

Exit status is 0 on success, 1 when a mathematical precondition fails and
2 for unreadable input or invalid arguments.  Partitions are 1-based JSON
lists such as ``[[1],[2,3]]``.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .exceptions import ParseError, PreconditionError, SigmaPFError
from .io import digest, load_tensor
from .irreducibility import classify
from .partition import canonicalize, coarsest, coarsest_grouping, enumerate_partitions, from_json
from .solver import SolveConfig, power_method, random_start, solve_norm
from .spectral import build_problem
from .symmetry import eigenpair_residual
from .tensor import check_exponents


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", 2) from None


def _parse_p(text: str | None, d: int, default: float):
    if text is None:
        return check_exponents(default, d)
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise ParseError(f"--p must be a number or a comma list, got {text!r}") from None
    return check_exponents(values[0] if len(values) == 1 else values, d)


def _partitions(arg: str | None, shape, *, allow_all: bool):
    if arg is None:
        return enumerate_partitions(shape) if allow_all else [coarsest(shape)]
    if arg == "all":
        if not allow_all:
            raise ParseError('--sigma "all" is only accepted by classify')
        return enumerate_partitions(shape)
    return [from_json(arg, shape)]


def _config(args, sigma, p) -> SolveConfig:
    start = random_start(sigma, p, args.seed) if args.start == "random" else None
    method = None if args.method == "auto" else args.method
    return SolveConfig(method=method, tol=args.tol, max_iter=args.max_iter, start=start)


def cmd_info(args, T):
    grouping = coarsest_grouping(T.shape)
    perm, _ = canonicalize(grouping, T.shape)
    shape = tuple(T.shape[a] for a in perm)
    rows = []
    for sigma in enumerate_partitions(shape):
        row = {"sigma": sigma.to_json(), "d": sigma.d, "nu": list(sigma.nu), "n": list(sigma.n)}
        try:
            p = _parse_p(args.p, sigma.d, float(T.order))
        except SigmaPFError as exc:
            if args.p is None:
                raise
            row.update(p=None, rhoA=None, note=str(exc))
        else:
            prob = build_problem(T.transpose(perm), sigma, p)
            row.update(p=list(p), rhoA=prob.rhoA, rho_le_one=prob.rho_le_one)
        rows.append(row)
    return {
        "shape": list(T.shape),
        "permutation": [a + 1 for a in perm],
        "permuted_shape": list(shape),
        "partitions": rows,
    }


def cmd_classify(args, T):
    out = []
    for sigma in _partitions(args.sigma, T.shape, allow_all=True):
        out.append({"sigma": sigma.to_json(), **classify(T, sigma).to_json()})
    return out


def _solve_payload(args, T, norm: bool):
    (sigma,) = _partitions(args.sigma, T.shape, allow_all=False)
    p = _parse_p(args.p, sigma.d, float(T.order))
    cfg = _config(args, sigma, p)
    if norm:
        report = solve_norm(T, sigma, p, cfg)
    else:
        report = power_method(build_problem(T, sigma, p), cfg)
    return {"sigma": sigma.to_json(), "p": list(p), **report.to_json(history=args.history)}


def cmd_solve(args, T):
    return _solve_payload(args, T, norm=False)


def cmd_norm(args, T):
    return _solve_payload(args, T, norm=True)


def cmd_check(args, T):
    (sigma,) = _partitions(args.sigma, T.shape, allow_all=False)
    p = _parse_p(args.p, sigma.d, float(T.order))
    try:
        blocks = [np.asarray(b, dtype=float) for b in json.loads(_read(args.x_file))]
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise ParseError(f"--x-file must hold a JSON list of blocks: {exc}") from None
    residual = eigenpair_residual(T, sigma, p, args.lam, blocks)
    return {"sigma": sigma.to_json(), "p": list(p), "lambda": args.lam, "residual": residual}


COMMANDS = {
    "info": cmd_info,
    "classify": cmd_classify,
    "solve": cmd_solve,
    "norm": cmd_norm,
    "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigmapf",
        description="Perron-Frobenius tools for nonnegative tensors and shape partitions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(name, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("tensor", help='tensor file, or "-" for stdin')
        sp.add_argument("--format", choices=["coo", "binary27"], default="coo")
        return sp

    sp = common("info", "list shape partitions with rho(A)")
    sp.add_argument("--p", help="exponent, or comma list of length d (default: tensor order)")

    sp = common("classify", "strict nonnegativity and irreducibility")
    sp.add_argument("--sigma", default="all", help='1-based JSON partition or "all"')

    for name, help in [("solve", "dominant eigenpair"), ("norm", "(sigma,p)-norm")]:
        sp = common(name, help)
        sp.add_argument("--sigma", help="1-based JSON partition (default: coarsest)")
        sp.add_argument("--p")
        sp.add_argument("--tol", type=float, default=1e-10)
        sp.add_argument("--max-iter", type=int, default=100_000)
        sp.add_argument("--method", choices=["auto", "F", "G"], default="auto")
        sp.add_argument("--start", choices=["uniform", "random"], default="uniform")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--history", action="store_true", help="include the bracket history")

    sp = common("check", "eigenpair residual")
    sp.add_argument("--sigma")
    sp.add_argument("--p")
    sp.add_argument("--lambda", dest="lam", type=float, required=True)
    sp.add_argument("--x-file", required=True, help='JSON list of blocks, or "-" for stdin')
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, dict]:
    """Parse ``argv`` and execute; returns ``(exit_code, report)``."""
    args = build_parser().parse_args(argv)
    echo = {k: v for k, v in sorted(vars(args).items())}
    report = {"command": echo, "input": None, "payload": None}
    try:
        T = load_tensor(_read(args.tensor), args.format)
        report["input"] = digest(T)
        report["payload"] = COMMANDS[args.command](args, T)
    except CliError as exc:
        return exc.code, {**report, "status": "error", "error": str(exc)}
    except PreconditionError as exc:
        return 1, {**report, "status": "error", "error": f"{type(exc).__name__}: {exc}"}
    except SigmaPFError as exc:
        return 2, {**report, "status": "error", "error": f"{type(exc).__name__}: {exc}"}
    return 0, {**report, "status": "ok"}


def main(argv: Sequence[str] | None = None) -> int:
    code, report = run(argv)
    if "error" in report:
        print(report["error"], file=sys.stderr)
    print(json.dumps(report, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
