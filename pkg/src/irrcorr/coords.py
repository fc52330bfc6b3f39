"""Exponential (theta) and expectation (eta) coordinates of full-rank states.

A full-rank n-qubit state is written

    rho = exp(sum_m theta^m sigma_m - psi(theta) I),   psi = ln Tr exp(sum_m theta^m sigma_m)

or equivalently rho = sum_m eta^m sigma_m / 2**n with eta^0 = 1.  Both vectors
have 4**n - 1 entries (the identity coordinate is implied) laid out in the
base-4 order of :mod:`irrcorr.pauli`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import pauli
from .hermitian import (
    InvalidStateError,
    as_density,
    eig_hermitian,
    hermitize,
    matrix_log,
    party_count,
    relative_entropy,
    spectral_apply,
    von_neumann_entropy,
)

THETA_L1_MAX = 50.0
RANDOM_THETA_SCALE = 0.3


class _Coords:
    n: int
    values: np.ndarray

    def __post_init__(self):
        n = pauli.check_party_count(self.n)
        values = np.array(self.values, dtype=float).reshape(-1)
        if values.shape != (4**n - 1,):
            raise ValueError(f"expected {4**n - 1} coordinates for n={n}, got {values.size}")
        if not np.all(np.isfinite(values)):
            raise ValueError("coordinates must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "values", values)

    def __getitem__(self, m) -> float:
        if isinstance(m, str):
            m = pauli.str_to_index(m, self.n)
        pos = pauli.index_position(pauli.check_index(m, self.n))
        if pos == 0:
            raise KeyError("the identity coordinate is not stored")
        return float(self.values[pos - 1])

    @classmethod
    def zeros(cls, n: int):
        return cls(n, np.zeros(4**n - 1))

    @classmethod
    def from_dict(cls, n: int, mapping: dict[str, float]):
        """Build from ``{"330": 1.0, ...}``; omitted indices are zero."""
        values = np.zeros(4**n - 1)
        for key, val in mapping.items():
            pos = pauli.index_position(pauli.str_to_index(key, n))
            if pos == 0:
                raise ValueError("the identity coordinate cannot be set")
            values[pos - 1] = float(val)
        return cls(n, values)

    def to_dict(self, atol: float = 0.0) -> dict[str, float]:
        """Index-string map of entries with ``|value| > atol``."""
        keys = pauli.enumerate_indices(self.n)[1:]
        return {
            pauli.index_to_str(m): float(v) for m, v in zip(keys, self.values) if abs(v) > atol
        }


@dataclass(frozen=True, eq=False)
class ThetaCoords(_Coords):
    """Exponential-family parameters; the identity coordinate is ``-psi``."""

    n: int
    values: np.ndarray


@dataclass(frozen=True, eq=False)
class EtaCoords(_Coords):
    """Expectation values ``Tr(rho sigma_m)`` for every non-identity index.

    Entries outside [-1, 1] are accepted here; :func:`eta_to_density` is
    where an illegitimate vector gets rejected.
    """

    n: int
    values: np.ndarray


@dataclass(frozen=True)
class ExponentialFamily:
    """States whose theta vanishes on every index of weight above ``max_weight``."""

    n: int
    max_weight: int

    def __post_init__(self):
        pauli.check_party_count(self.n)
        if not 1 <= self.max_weight <= self.n:
            raise ValueError(f"max_weight must be in [1, {self.n}], got {self.max_weight}")

    def support(self) -> np.ndarray:
        """Boolean mask over the 4**n - 1 non-identity coordinates."""
        return pauli.weights(self.n)[1:] <= self.max_weight


def _hamiltonian(theta: ThetaCoords) -> np.ndarray:
    coeffs = np.concatenate(([0.0], theta.values))
    return pauli.combine(coeffs, theta.n)


def _check_overflow(theta: ThetaCoords):
    l1 = np.abs(theta.values).sum()
    if l1 > THETA_L1_MAX:
        raise OverflowError(f"sum |theta| = {l1:.6g} exceeds the guard {THETA_L1_MAX:g}")


def gibbs(theta: ThetaCoords) -> tuple[np.ndarray, float]:
    """Normalized state and ``psi`` computed with a shifted spectrum."""
    _check_overflow(theta)
    spec = eig_hermitian(_hamiltonian(theta))
    lam = spec.eigenvalues
    top = lam[-1]
    w = np.exp(lam - top)
    z = w.sum()
    rho = spectral_apply(spec, w / z)
    return hermitize(rho), float(top + np.log(z))


def theta_to_density(theta: ThetaCoords) -> np.ndarray:
    return gibbs(theta)[0]


def psi(theta: ThetaCoords) -> float:
    """Log-partition function ``ln Tr exp(sum theta^m sigma_m)``."""
    return gibbs(theta)[1]


def density_to_eta(rho) -> EtaCoords:
    rho = as_density(rho)
    return EtaCoords(party_count(rho.shape[0]), pauli.expectations(rho)[1:])


def eta_to_density(eta: EtaCoords) -> np.ndarray:
    """``sum_m eta^m sigma_m / 2**n`` with ``eta^0 = 1``; must be positive semidefinite."""
    n = eta.n
    rho = pauli.combine(np.concatenate(([1.0], eta.values)), n) / 2**n
    lmin = np.linalg.eigvalsh(rho)[0]
    if lmin < -1e-10:
        raise InvalidStateError(
            f"not a legitimate state: smallest eigenvalue {lmin:.6g} is negative"
        )
    return as_density(rho)


def density_to_theta(rho) -> ThetaCoords:
    rho = as_density(rho, full_rank=True)
    n = party_count(rho.shape[0])
    return ThetaCoords(n, pauli.expectations(matrix_log(rho))[1:] / 2**n)


def phi(eta: EtaCoords) -> float:
    """Negative von Neumann entropy as a function of the expectation coordinates."""
    rho = as_density(eta_to_density(eta), full_rank=True)
    return -von_neumann_entropy(rho)


def legendre_residual(rho) -> float:
    """``phi(eta) + psi(theta) - <eta, theta>`` for a single state (zero in exact arithmetic)."""
    theta = density_to_theta(rho)
    eta = density_to_eta(rho)
    return phi(eta) + psi(theta) - float(eta.values @ theta.values)


def mixed_identity_check(rho, rho_p, rho_pp) -> tuple[float, float]:
    """Both sides of the three-state relative-entropy identity.

    ``S(rho||rho'') - S(rho||rho') - S(rho'||rho'')`` against
    ``sum_m (eta - eta')^m (theta' - theta'')^m``.
    """
    rho, rho_p, rho_pp = (as_density(r, full_rank=True) for r in (rho, rho_p, rho_pp))
    if not rho.shape == rho_p.shape == rho_pp.shape:
        raise ValueError("all three states must have the same dimension")
    lhs = (
        relative_entropy(rho, rho_pp)
        - relative_entropy(rho, rho_p)
        - relative_entropy(rho_p, rho_pp)
    )
    d_eta = density_to_eta(rho).values - density_to_eta(rho_p).values
    d_theta = density_to_theta(rho_p).values - density_to_theta(rho_pp).values
    return float(lhs), float(d_eta @ d_theta)


def in_family(state, family: ExponentialFamily, tol: float = 1e-10) -> bool:
    """Whether ``state`` (ThetaCoords or density matrix) lies in ``family`` to within ``tol``."""
    theta = state if isinstance(state, ThetaCoords) else density_to_theta(state)
    if theta.n != family.n:
        raise ValueError(f"party count {theta.n} does not match family ({family.n})")
    outside = theta.values[~family.support()]
    return bool(np.all(np.abs(outside) <= tol))


def random_theta(
    n: int,
    rng: np.random.Generator | int | None = None,
    scale: float = RANDOM_THETA_SCALE,
    family: ExponentialFamily | None = None,
) -> ThetaCoords:
    """I.i.d. Gaussian theta with standard deviation ``scale``, optionally restricted to a family."""
    rng = np.random.default_rng(rng)
    values = scale * rng.standard_normal(4**n - 1)
    if family is not None:
        values = np.where(family.support(), values, 0.0)
    return ThetaCoords(n, values)


def random_state(n: int, rng=None, scale: float = RANDOM_THETA_SCALE, family=None) -> np.ndarray:
    return theta_to_density(random_theta(n, rng, scale, family))
