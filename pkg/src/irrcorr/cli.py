"""Command-line entry point: ``irrcorr <command> ...``.

States are read from JSON files (``-`` for stdin) in one of three forms::

    {"n": 3, "theta": {"330": 1.0, "303": 0.70710678, "001": 0.70710678}}
    {"n": 3, "eta": {"001": 0.5385, ...}}
    {"n": 1, "matrix": [[0.6, 0.0], [0.0, 0.0], [0.0, 0.0], [0.4, 0.0]]}

The matrix form is row-major with one ``[re, im]`` pair per entry.  Parties
are numbered from 1 in all output.

Exit codes: 0 success, 2 invalid input, 3 solver non-convergence,
4 mismatch against the counterexample reference values.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import classical, pauli
from .channels import run_counterexample
from .coords import (
    RANDOM_THETA_SCALE,
    EtaCoords,
    ThetaCoords,
    density_to_eta,
    density_to_theta,
    eta_to_density,
    random_theta,
    theta_to_density,
)
from .correlations import decompose
from .hermitian import InvalidStateError, as_density, party_count, relative_entropy, von_neumann_entropy
from .maxent import ConvergenceError, SolverOptions, extract_constraints, project

EXIT_OK, EXIT_INVALID, EXIT_NONCONVERGED, EXIT_PAPER = 0, 2, 3, 4
REPRESENTATIONS = ("theta", "eta", "matrix")


class InputError(ValueError):
    pass


def _round(obj):
    if isinstance(obj, float):
        return obj if not math.isfinite(obj) else float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, np.generic):
        return _round(obj.item())
    return obj


def dumps(obj) -> str:
    return json.dumps(_round(obj), indent=2)


def parse_state(spec: dict) -> np.ndarray:
    """Density matrix described by a state-spec mapping."""
    if not isinstance(spec, dict) or "n" not in spec:
        raise InputError('state spec must be a JSON object with an "n" field')
    present = [r for r in REPRESENTATIONS if r in spec]
    if len(present) != 1:
        raise InputError(f"state spec needs exactly one of {REPRESENTATIONS}, got {present}")
    n = spec["n"]
    try:
        pauli.check_party_count(n)
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from None
    kind = present[0]
    try:
        if kind == "theta":
            return theta_to_density(ThetaCoords.from_dict(n, spec["theta"]))
        if kind == "eta":
            return eta_to_density(EtaCoords.from_dict(n, spec["eta"]))
        entries = np.asarray(spec["matrix"], dtype=float)
        if entries.shape != (4**n, 2):
            raise InputError(f"matrix must be {4**n} [re, im] pairs, got shape {entries.shape}")
        d = 2**n
        return as_density((entries[:, 0] + 1j * entries[:, 1]).reshape(d, d))
    except (InvalidStateError, OverflowError) as exc:
        raise InputError(str(exc)) from None
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad {kind} spec: {exc}") from None


def format_state(rho, to: str) -> dict:
    rho = as_density(rho)
    n = party_count(rho.shape[0])
    if to == "theta":
        return {"n": n, "theta": density_to_theta(rho).to_dict()}
    if to == "eta":
        return {"n": n, "eta": density_to_eta(rho).to_dict()}
    if to == "matrix":
        flat = rho.reshape(-1)
        return {"n": n, "matrix": [[float(z.real), float(z.imag)] for z in flat]}
    raise ValueError(f"unknown representation {to!r}")


def load_state(path: str) -> np.ndarray:
    try:
        if path == "-":
            spec = json.load(sys.stdin)
        else:
            with open(path) as fh:
                spec = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_state(spec)


def _solver_opts(args) -> SolverOptions:
    opts = SolverOptions(tol=args.tol, max_iterations=args.max_iter)
    if args.verbose_trace:
        opts.callback = lambda it, res: print(f"iter {it:4d}  residual {res:.3e}", file=sys.stderr)
    return opts


def _unit(args) -> float:
    return 1 / math.log(2) if getattr(args, "bits", False) else 1.0


def cmd_decompose(args) -> int:
    rho = load_state(args.state)
    report = decompose(rho, _solver_opts(args))
    print(dumps(report.to_dict(bits=args.bits)))
    return EXIT_OK


def cmd_convert(args) -> int:
    print(dumps(format_state(load_state(args.state), args.to)))
    return EXIT_OK


def cmd_project(args) -> int:
    rho = load_state(args.state)
    n = party_count(rho.shape[0])
    if not 1 <= args.order <= n:
        raise InputError(f"--order must be in [1, {n}]")
    res = project(extract_constraints(rho, args.order), _solver_opts(args))
    out = {
        "n": n,
        "order": args.order,
        "theta": res.theta.to_dict(),
        "entropy": von_neumann_entropy(res.state) * _unit(args),
        "iterations": res.iterations,
        "residual": res.final_residual,
    }
    print(dumps(out))
    return EXIT_OK


def cmd_entropy(args) -> int:
    rho = load_state(args.state)
    print(dumps({"entropy": von_neumann_entropy(rho) * _unit(args), "unit": "bits" if args.bits else "nats"}))
    return EXIT_OK


def cmd_relent(args) -> int:
    rho, sigma = load_state(args.rho), load_state(args.sigma)
    if rho.shape != sigma.shape:
        raise InputError("states have different party counts")
    try:
        val = relative_entropy(rho, sigma)
    except InvalidStateError as exc:
        raise InputError(str(exc)) from None
    print(dumps({"relative_entropy": val * _unit(args), "unit": "bits" if args.bits else "nats"}))
    return EXIT_OK


def cmd_random(args) -> int:
    if not 1 <= args.n <= 4:
        raise InputError("--n must be in [1, 4]")
    if args.scale < 0:
        raise InputError("--scale must be nonnegative")
    theta = random_theta(args.n, args.seed, args.scale)
    if args.to == "theta":
        print(dumps({"n": args.n, "theta": theta.to_dict()}))
    else:
        print(dumps(format_state(theta_to_density(theta), args.to)))
    return EXIT_OK


def cmd_counterexample(args) -> int:
    report = run_counterexample(theta_tol=args.tol, eta_tol=args.eta_tol)
    print(dumps(report.to_dict()))
    if not report.passed:
        print(f"assertion failed: {report.failures[0]}", file=sys.stderr)
        return EXIT_PAPER
    return EXIT_OK


def cmd_oracle(args) -> int:
    rho = load_state(args.state)
    try:
        p = classical.diagonal_distribution(rho)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    c = classical.classical_connected_info(p)
    print(dumps({f"c{k}": v for k, v in c.items()} | {"c_total": classical.multi_information(p)}))
    return EXIT_OK


def _add_solver_flags(p):
    p.add_argument("--tol", type=float, default=1e-9, help="marginal residual tolerance (default 1e-9)")
    p.add_argument("--max-iter", type=int, default=500, help="iteration cap (default 500)")
    p.add_argument("--verbose-trace", action="store_true", help="log per-iteration residuals to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="irrcorr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("decompose", help="irreducible correlations by both definitions")
    p.add_argument("state")
    _add_solver_flags(p)
    p.add_argument("--bits", action="store_true", help="report in bits instead of nats")
    p.add_argument("--json", action="store_true", help="JSON output (always on)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("convert", help="convert between theta, eta and matrix specs")
    p.add_argument("state")
    p.add_argument("--to", choices=REPRESENTATIONS, required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("project", help="maximum-entropy projection keeping k-party marginals")
    p.add_argument("state")
    p.add_argument("--order", "-k", type=int, required=True)
    _add_solver_flags(p)
    p.add_argument("--bits", action="store_true")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("entropy", help="von Neumann entropy")
    p.add_argument("state")
    p.add_argument("--bits", action="store_true")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("relent", help="relative entropy S(rho||sigma)")
    p.add_argument("rho")
    p.add_argument("sigma")
    p.add_argument("--bits", action="store_true")
    p.set_defaults(func=cmd_relent)

    p = sub.add_parser("random", help="reproducible random full-rank state")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=float, default=RANDOM_THETA_SCALE,
                   help=f"standard deviation of each theta (default {RANDOM_THETA_SCALE})")
    p.add_argument("--to", choices=REPRESENTATIONS, default="theta")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("counterexample", help="reproduce the CNOT counterexample")
    p.add_argument("--tol", type=float, default=1e-3, help="tolerance on the reference theta values (three decimals)")
    p.add_argument("--eta-tol", type=float, default=1e-9, help="tolerance on the closed-form eta values")
    p.add_argument("--json", action="store_true", help="JSON output (always on)")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("oracle")  # undocumented debugging aid
    p.add_argument("state")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InvalidStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED


if __name__ == "__main__":
    sys.exit(main())
