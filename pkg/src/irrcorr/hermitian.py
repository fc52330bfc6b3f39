"""Dense Hermitian linear algebra on density matrices.

Everything here works through the eigendecomposition from :func:`numpy.linalg.eigh`,
which is deterministic for a fixed input.  Entropies are in nats.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
FULL_RANK_TOL = 1e-12
EXP_MAX = 700.0


class InvalidStateError(ValueError):
    """Matrix is not a legitimate density matrix."""


class RankDeficientError(InvalidStateError):
    """A strictly positive spectrum was required."""


class Spectrum(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitize(h, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``(h + h^dagger)/2``, refusing inputs whose asymmetry exceeds ``tol``.

    The tolerance is relative to ``max(1, max|h|)`` so large-norm operators
    such as matrix exponentials are judged at the same precision as states.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    asym = np.abs(h - h.conj().T).max(initial=0.0)
    if asym > tol * max(1.0, np.abs(h).max(initial=0.0)):
        raise ValueError(f"matrix is not Hermitian (max asymmetry {asym:.3e})")
    return (h + h.conj().T) / 2


def party_count(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if n < 1 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not 2**n for n >= 1")
    return n


def as_density(rho, full_rank: bool = False) -> np.ndarray:
    """Validate and return a density matrix (Hermitian, unit trace, PSD).

    With ``full_rank=True`` the smallest eigenvalue must exceed
    ``FULL_RANK_TOL``; otherwise a :class:`RankDeficientError` is raised.
    """
    try:
        rho = hermitize(rho)
    except ValueError as exc:
        raise InvalidStateError(str(exc)) from None
    party_count(rho.shape[0])
    tr = np.trace(rho).real
    if abs(tr - 1) > TRACE_TOL:
        raise InvalidStateError(f"trace is {tr!r}, expected 1")
    lmin = np.linalg.eigvalsh(rho)[0]
    if lmin < -PSD_TOL:
        raise InvalidStateError(
            f"not a legitimate state: smallest eigenvalue {lmin:.6g} is negative"
        )
    if full_rank and lmin <= FULL_RANK_TOL:
        raise RankDeficientError(
            f"state is rank deficient: smallest eigenvalue {lmin:.3e} <= {FULL_RANK_TOL:g}"
        )
    return rho


def eig_hermitian(h) -> Spectrum:
    """Eigenvalues (ascending) and unitary eigenvectors of a Hermitian matrix."""
    h = hermitize(h, tol=1e-10)
    if h.shape[0] > 2**6:
        raise ValueError(f"dimension {h.shape[0]} exceeds the supported 64")
    w, v = np.linalg.eigh(h)
    return Spectrum(w, v)


def spectral_apply(spec: Spectrum, values: np.ndarray) -> np.ndarray:
    v = spec.eigenvectors
    return (v * values) @ v.conj().T


def matrix_exp(h) -> np.ndarray:
    spec = eig_hermitian(h)
    if spec.eigenvalues[-1] > EXP_MAX:
        raise OverflowError(
            f"largest eigenvalue {spec.eigenvalues[-1]:.6g} exceeds {EXP_MAX:g}"
        )
    return spectral_apply(spec, np.exp(spec.eigenvalues))


def matrix_log(p) -> np.ndarray:
    spec = eig_hermitian(p)
    lmin = spec.eigenvalues[0]
    if lmin <= FULL_RANK_TOL:
        raise RankDeficientError(
            f"matrix_log needs a positive definite matrix; smallest eigenvalue is {lmin:.3e}"
        )
    return spectral_apply(spec, np.log(spec.eigenvalues))


def _xlogx(lam: np.ndarray) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    out = np.zeros_like(lam)
    pos = lam >= 1e-15
    out[pos] = lam[pos] * np.log(lam[pos])
    return out


def von_neumann_entropy(rho) -> float:
    """``-Tr(rho ln rho)`` in nats."""
    rho = as_density(rho)
    lam = np.linalg.eigvalsh(rho)
    return float(-_xlogx(lam).sum())


def relative_entropy(rho, sigma) -> float:
    """Quantum relative entropy ``Tr rho (ln rho - ln sigma)`` of full-rank states."""
    rho = as_density(rho, full_rank=True)
    sigma = as_density(sigma, full_rank=True)
    if rho.shape != sigma.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    lam = np.linalg.eigvalsh(rho)
    cross = np.sum(rho * matrix_log(sigma).T).real
    return float(_xlogx(lam).sum() - cross)


def partial_trace(rho, keep) -> np.ndarray:
    """Reduced state on the parties in ``keep`` (0-based), in ascending party order."""
    rho = as_density(rho)
    n = party_count(rho.shape[0])
    keep = sorted(set(int(k) for k in keep))
    if not keep or keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"keep must be a nonempty subset of 0..{n - 1}, got {keep}")
    traced = [q for q in range(n) if q not in keep]
    t = rho.reshape((2,) * (2 * n))
    # trace the highest axes first so lower axis numbers stay valid
    for q in reversed(traced):
        nleft = t.ndim // 2
        t = np.trace(t, axis1=q, axis2=q + nleft)
    d = 2 ** len(keep)
    return t.reshape(d, d)


def kron_all(mats) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out
