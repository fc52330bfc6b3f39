"""Classical maximum-entropy fitting used as an independent oracle.

A diagonal density matrix is a probability distribution over n bits (the
computational basis, party 0 as the most significant bit).  Its quantum
projections reduce to classical maximum-entropy fits, which iterative
proportional fitting computes without any matrix functions.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable

import numpy as np

from .hermitian import party_count


class IPFConvergenceError(RuntimeError):
    pass


def as_distribution(p) -> np.ndarray:
    """Validate a strictly positive distribution over n bits; returns shape ``(2,)*n``."""
    p = np.asarray(p, dtype=float)
    n = party_count(p.size)
    if np.any(p <= 0):
        raise ValueError("distribution must be strictly positive")
    if abs(p.sum() - 1) > 1e-12:
        raise ValueError(f"probabilities sum to {p.sum()!r}, expected 1")
    return p.reshape((2,) * n)


def diagonal_distribution(rho) -> np.ndarray:
    """Computational-basis populations of a diagonal state."""
    rho = np.asarray(rho)
    off = np.abs(rho - np.diag(np.diag(rho))).max()
    if off > 1e-12:
        raise ValueError(f"state is not diagonal (largest off-diagonal {off:.3e})")
    return as_distribution(np.diag(rho).real)


def shannon_entropy(p) -> float:
    p = np.asarray(p, dtype=float).ravel()
    p = p[p > 0]
    return float(-(p * np.log(p)).sum())


def kl_divergence(p, q) -> float:
    p = np.asarray(p, dtype=float).ravel()
    q = np.asarray(q, dtype=float).ravel()
    return float(np.sum(p * np.log(p / q)))


def _marginal(p: np.ndarray, subset: tuple[int, ...]) -> np.ndarray:
    other = tuple(i for i in range(p.ndim) if i not in subset)
    return p.sum(axis=other, keepdims=True)


def ipf_project(
    p,
    order: int,
    tol: float = 1e-10,
    max_iter: int = 10_000,
    callback: Callable[[int, np.ndarray], None] | None = None,
) -> np.ndarray:
    """Maximum-entropy distribution sharing all ``order``-variable marginals with ``p``.

    Starts from the uniform distribution and cycles through the variable
    subsets in lexicographic order, rescaling the iterate to match each
    marginal in turn.  ``callback(cycle, q)`` is called after every full cycle.

    Returns:
        Array with the same shape as ``p`` (flat input gives flat output).
    """
    shape = np.shape(p)
    target = as_distribution(p)
    n = target.ndim
    if not 1 <= order <= n:
        raise ValueError(f"order must be in [1, {n}], got {order}")
    subsets = list(itertools.combinations(range(n), order))
    margins = [_marginal(target, s) for s in subsets]
    q = np.full(target.shape, 1.0 / target.size)
    for cycle in range(1, max_iter + 1):
        for s, m in zip(subsets, margins):
            q = q * (m / _marginal(q, s))
        if callback is not None:
            callback(cycle, q)
        residual = max(np.abs(_marginal(q, s) - m).max() for s, m in zip(subsets, margins))
        if residual <= tol:
            return q.reshape(shape)
    raise IPFConvergenceError(f"IPF did not converge in {max_iter} cycles (residual {residual:.3e})")


def classical_connected_info(p, tol: float = 1e-10, max_iter: int = 10_000) -> dict[int, float]:
    """Connected information ``C_k = H(p*_{k-1}) - H(p*_k)`` for k = 2..n, in nats."""
    target = as_distribution(p)
    n = target.ndim
    h = {k: shannon_entropy(ipf_project(target, k, tol, max_iter)) for k in range(1, n)}
    h[n] = shannon_entropy(target)
    return {k: h[k - 1] - h[k] for k in range(2, n + 1)}


def multi_information(p) -> float:
    """``sum_i H(p_i) - H(p)``."""
    target = as_distribution(p)
    return sum(shannon_entropy(_marginal(target, (i,))) for i in range(target.ndim)) - shannon_entropy(target)
