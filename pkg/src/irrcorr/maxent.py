"""Maximum-entropy projection onto the order-k exponential family.

Given the expectations of all basis operators of weight <= k taken from a
source state, the maximum-entropy state with those expectations is the member
of the family E_k closest to the source in relative entropy.  It is found by
minimizing the strictly convex dual

    f(theta) = psi(theta) - sum_m eta_target^m theta^m

over theta supported on weight <= k, whose gradient is eta(theta) - eta_target.
The minimizer is a BFGS iteration started at theta = 0 (the maximally mixed
state) with a halving Armijo line search.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from . import pauli
from .coords import (
    THETA_L1_MAX,
    EtaCoords,
    ExponentialFamily,
    ThetaCoords,
    density_to_eta,
    gibbs,
    in_family,
)
from .hermitian import RankDeficientError, as_density, party_count, relative_entropy

log = logging.getLogger(__name__)

ARMIJO = 1e-4
MIN_STEP = 2.0**-60


class ConvergenceError(RuntimeError):
    """The solver stopped before reaching the requested residual."""

    def __init__(self, message: str, result: "ProjectionResult | None" = None):
        super().__init__(message)
        self.result = result


class InfeasibleError(ConvergenceError):
    """theta ran off towards the boundary of the state space."""


@dataclass
class SolverOptions:
    tol: float = 1e-9
    max_iterations: int = 500
    callback: Callable[[int, float], None] | None = None


@dataclass(frozen=True, eq=False)
class MarginalConstraints:
    """Target expectations for every index of weight <= ``order``."""

    n: int
    order: int
    targets: EtaCoords

    @property
    def family(self) -> ExponentialFamily:
        return ExponentialFamily(self.n, self.order)

    @property
    def mask(self) -> np.ndarray:
        return self.family.support()

    def target_map(self) -> dict[str, float]:
        keys = pauli.enumerate_indices(self.n)[1:]
        return {
            pauli.index_to_str(m): float(v)
            for m, v, on in zip(keys, self.targets.values, self.mask)
            if on
        }


@dataclass(eq=False)
class ProjectionResult:
    state: np.ndarray
    theta: ThetaCoords
    iterations: int
    final_residual: float
    converged: bool
    order: int
    objective: float = float("nan")
    history: list[float] = field(default_factory=list, repr=False)

    def summary(self) -> dict:
        return {
            "order": self.order,
            "iterations": self.iterations,
            "residual": self.final_residual,
            "converged": self.converged,
        }


def extract_constraints(rho, order: int) -> MarginalConstraints:
    rho = as_density(rho)
    n = party_count(rho.shape[0])
    if not 1 <= order <= n:
        raise ValueError(f"order must be in [1, {n}], got {order}")
    eta = density_to_eta(rho)
    mask = ExponentialFamily(n, order).support()
    return MarginalConstraints(n, order, EtaCoords(n, np.where(mask, eta.values, 0.0)))


def _bfgs(fg, x0, opts: SolverOptions):
    """Minimize a smooth convex function; returns (x, f, g, iterations, converged, history)."""
    x = np.array(x0, dtype=float)
    f, g = fg(x)
    eye = np.eye(x.size)
    hinv = None
    history = []
    it = 0
    while True:
        res = float(np.abs(g).max(initial=0.0))
        history.append(res)
        if opts.callback is not None:
            opts.callback(it, res)
        log.debug("iter %d residual %.3e objective %.15g", it, res, f)
        if res <= opts.tol:
            return x, f, g, it, True, history
        if it >= opts.max_iterations:
            return x, f, g, it, False, history

        p = -g if hinv is None else -hinv @ g
        slope = g @ p
        if slope >= 0:
            hinv, p = None, -g
            slope = g @ p
        # once the predicted decrease drops below `noise`, f is all roundoff; the
        # directional derivative is still accurate and decides instead (under a
        # quadratic model g_new.p <= |slope|/2 means a decrease of >= alpha*|slope|/4)
        noise = 4096 * np.finfo(float).eps * (1 + abs(f))
        alpha = 1.0
        while True:
            x_new = x + alpha * p
            try:
                f_new, g_new = fg(x_new)
            except (OverflowError, RankDeficientError):
                f_new, g_new = np.inf, None
            if g_new is not None:
                if -alpha * slope > noise:
                    if f_new <= f + ARMIJO * alpha * slope:
                        break
                elif g_new @ p <= -0.5 * slope:
                    break
            alpha /= 2
            if alpha < MIN_STEP:
                break
        if alpha < MIN_STEP:
            if np.abs(x).sum() > 0.9 * THETA_L1_MAX:
                return x, f, g, it, False, history
            if hinv is None:
                return x, f, g, it, False, history
            # stale curvature model; restart from steepest descent
            hinv = None
            continue

        s = x_new - x
        y = g_new - g
        sy = s @ y
        if sy > 1e-12 * np.sqrt((s @ s) * (y @ y)):
            if hinv is None:
                hinv = (sy / (y @ y)) * eye
            r = 1.0 / sy
            hy = hinv @ y
            hinv = hinv + r * ((1 + r * (y @ hy)) * np.outer(s, s) - np.outer(hy, s) - np.outer(s, hy))
        x, f, g = x_new, f_new, g_new
        it += 1


def _embed(n: int, mask: np.ndarray, x: np.ndarray) -> ThetaCoords:
    values = np.zeros(4**n - 1)
    values[mask] = x
    return ThetaCoords(n, values)


def _finish(n, order, mask, opts, x, f, g, it, ok, history) -> ProjectionResult:
    theta = _embed(n, mask, x)
    state = gibbs(theta)[0]
    res = float(np.abs(g).max(initial=0.0))
    result = ProjectionResult(state, theta, it, res, ok, order, float(f), history)
    if not ok and np.abs(x).sum() > 0.9 * THETA_L1_MAX:
        raise InfeasibleError(
            f"order-{order} projection ran into the theta guard (sum |theta| = {np.abs(x).sum():.3g}); "
            "the maximum-entropy state is numerically on the boundary",
            result,
        )
    if not ok:
        raise ConvergenceError(
            f"order-{order} projection did not converge after {it} iterations "
            f"(residual {res:.3e} > tol {opts.tol:.1e})",
            result,
        )
    return result


def project(constraints: MarginalConstraints, opts: SolverOptions | None = None) -> ProjectionResult:
    """Maximum-entropy state matching ``constraints``, found through the dual problem."""
    opts = opts or SolverOptions()
    n, order = constraints.n, constraints.order
    mask = constraints.mask
    target = constraints.targets.values[mask]

    def fg(x):
        theta = _embed(n, mask, x)
        rho, log_z = gibbs(theta)
        eta = pauli.expectations(rho)[1:][mask]
        return log_z - target @ x, eta - target

    x, f, g, it, ok, history = _bfgs(fg, np.zeros(int(mask.sum())), opts)
    return _finish(n, order, mask, opts, x, f, g, it, ok, history)


def minimize_divergence(rho_star, order: int, opts: SolverOptions | None = None) -> ProjectionResult:
    """State of E_k closest to ``rho_star`` in relative entropy ``S(rho_star || .)``.

    The objective is evaluated literally as a quantum relative entropy (through
    matrix logarithms), independent of the log-partition bookkeeping used by
    :func:`project`; only the descent loop is shared.
    """
    opts = opts or SolverOptions()
    rho_star = as_density(rho_star, full_rank=True)
    n = party_count(rho_star.shape[0])
    family = ExponentialFamily(n, order)
    mask = family.support()
    target = pauli.expectations(rho_star)[1:][mask]

    def fg(x):
        rho = gibbs(_embed(n, mask, x))[0]
        eta = pauli.expectations(rho)[1:][mask]
        return relative_entropy(rho_star, rho), eta - target

    x, f, g, it, ok, history = _bfgs(fg, np.zeros(int(mask.sum())), opts)
    return _finish(n, order, mask, opts, x, f, g, it, ok, history)


def pythagorean_check(rho_star, projection: ProjectionResult, probe, tol: float = 1e-8) -> tuple[float, float]:
    """``S(rho*||probe)`` against ``S(rho*||rho*_k) + S(rho*_k||probe)`` for a probe in E_k."""
    if not projection.converged:
        raise ValueError("projection did not converge")
    probe = as_density(probe, full_rank=True)
    family = ExponentialFamily(projection.theta.n, projection.order)
    if not in_family(probe, family, tol):
        raise ValueError(f"probe is not in the order-{projection.order} family")
    lhs = relative_entropy(rho_star, probe)
    rhs = relative_entropy(rho_star, projection.state) + relative_entropy(projection.state, probe)
    return lhs, rhs
