"""Local operations on multi-qubit states and the CNOT counterexample.

Parties are 0-based here.  Matrices use the big-endian convention of
``numpy.kron``: party 0 is the most significant bit of a computational basis
label.

The counterexample follows this recipe.  A three-qubit state with only
pairwise theta terms is prepared.  An ancilla is attached as party 3, and a
CNOT is applied with the ancilla as control and qubit 1 (party 0) as target.
Tracing the ancilla out leaves a state with a nonzero three-body coordinate
theta^331.  The system qubits 1, 2, 3 sit at parties 0, 1, 2 and the ancilla
"a" at party 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coords import EtaCoords, ThetaCoords, density_to_eta, density_to_theta, theta_to_density
from .correlations import decompose_entropic
from .hermitian import as_density, hermitize, kron_all, partial_trace, party_count
from .maxent import SolverOptions
from .pauli import SIGMA

UNITARY_TOL = 1e-10

INITIAL_THETA = {"330": 1.0, "303": 2**-0.5, "001": 2**-0.5}
ANCILLA_THETA = {"3": 1.0}
ANCILLA_PARTY = 3
TARGET_PARTY = 0

_T = np.tanh(1.0)
FINAL_ETA = {
    "001": _T / np.sqrt(2),
    "033": _T**2 / np.sqrt(2),
    "303": _T**2 / np.sqrt(2),
    "330": _T**2,
    "331": _T**3 / np.sqrt(2),
}
# reference values, three decimals
FINAL_THETA = {"001": 0.650, "033": 0.336, "303": 0.336, "330": 0.543, "331": 0.048}


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """Single-qubit channel ``rho -> sum_j K_j rho K_j^dagger`` acting on ``party``."""

    party: int
    operators: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.operators)
        if not ops or any(k.shape != (2, 2) for k in ops):
            raise ValueError("Kraus operators must be a nonempty sequence of 2x2 matrices")
        completeness = sum(k.conj().T @ k for k in ops)
        err = np.abs(completeness - np.eye(2)).max()
        if err > 1e-10:
            raise ValueError(f"Kraus operators are not complete (max deviation {err:.3e})")
        object.__setattr__(self, "operators", ops)


def embed(op: np.ndarray, party: int, n: int) -> np.ndarray:
    """``I x ... x op x ... x I`` with ``op`` on ``party``."""
    if not 0 <= party < n:
        raise IndexError(f"party {party} out of range for {n} parties")
    return kron_all([op if q == party else np.eye(2) for q in range(n)])


def attach_ancilla(rho, ancilla) -> np.ndarray:
    """Tensor ``ancilla`` onto ``rho`` as the new last party."""
    return as_density(np.kron(as_density(rho), as_density(ancilla)))


def cnot_unitary(control: int, target: int, n: int) -> np.ndarray:
    """Permutation matrix flipping ``target`` whenever ``control`` is 1."""
    if control == target:
        raise ValueError("control and target must differ")
    for q in (control, target):
        if not 0 <= q < n:
            raise IndexError(f"party {q} out of range for {n} parties")
    d = 2**n
    cbit = 1 << (n - 1 - control)
    tbit = 1 << (n - 1 - target)
    cols = np.arange(d)
    rows = np.where(cols & cbit, cols ^ tbit, cols)
    u = np.zeros((d, d))
    u[rows, cols] = 1.0
    return u


def check_unitary(u) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    err = np.abs(u.conj().T @ u - np.eye(u.shape[0])).max()
    if err > UNITARY_TOL:
        raise ValueError(f"matrix is not unitary (max deviation {err:.3e})")
    return u


def apply_unitary(rho, u) -> np.ndarray:
    rho = as_density(rho)
    u = check_unitary(u)
    if u.shape != rho.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {rho.shape}")
    return hermitize(u @ rho @ u.conj().T)


def apply_kraus(rho, channel: KrausChannel) -> np.ndarray:
    rho = as_density(rho)
    n = party_count(rho.shape[0])
    out = np.zeros_like(rho)
    for k in channel.operators:
        big = embed(k, channel.party, n)
        out += big @ rho @ big.conj().T
    return as_density(hermitize(out))


def local_unitary(unitaries) -> np.ndarray:
    return kron_all(check_unitary(u) for u in unitaries)


def random_unitary(rng=None, dim: int = 2) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a complex Ginibre matrix."""
    rng = np.random.default_rng(rng)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_channel(party: int, rng=None, n_kraus: int = 3) -> KrausChannel:
    """Random single-qubit channel cut from a random ``2*n_kraus x 2`` isometry."""
    rng = np.random.default_rng(rng)
    v = random_unitary(rng, 2 * n_kraus)[:, :2]
    return KrausChannel(party, tuple(v[2 * j : 2 * j + 2] for j in range(n_kraus)))


def depolarizing(party: int, p: float) -> KrausChannel:
    """``rho -> (1 - p) rho + p I/2`` on one qubit."""
    if not 0 <= p <= 1:
        raise ValueError(f"p must be in [0, 1], got {p}")
    ops = [np.sqrt(1 - 3 * p / 4) * SIGMA[0]] + [np.sqrt(p / 4) * SIGMA[i] for i in (1, 2, 3)]
    return KrausChannel(party, tuple(ops))


def cnot_kraus(ancilla, target: int) -> KrausChannel:
    """Channel on ``target`` induced by CNOT from an ancilla control that is then discarded.

    Only the ancilla's computational-basis populations survive:
    ``rho -> p0 rho + p1 X rho X``.
    """
    ancilla = as_density(ancilla)
    if ancilla.shape != (2, 2):
        raise ValueError("ancilla must be a single qubit")
    p0, p1 = np.clip(np.diag(ancilla).real, 0, None)
    return KrausChannel(target, (np.sqrt(p0) * SIGMA[0], np.sqrt(p1) * SIGMA[1]))


def counterexample_states() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(rho_initial, ancilla, rho_final)`` of the CNOT counterexample."""
    rho_i = theta_to_density(ThetaCoords.from_dict(3, INITIAL_THETA))
    anc = theta_to_density(ThetaCoords.from_dict(1, ANCILLA_THETA))
    joint = attach_ancilla(rho_i, anc)
    joint = apply_unitary(joint, cnot_unitary(ANCILLA_PARTY, TARGET_PARTY, 4))
    rho_f = partial_trace(joint, [0, 1, 2])
    return rho_i, anc, rho_f


@dataclass(eq=False)
class CounterexampleReport:
    rho_initial: np.ndarray
    rho_final: np.ndarray
    eta_final: EtaCoords
    theta_final: ThetaCoords
    c3_before: float
    c3_after: float
    eta_errors: dict[str, float]
    theta_errors: dict[str, float]
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    @property
    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, ok, detail in self.checks if not ok]

    def to_dict(self) -> dict:
        return {
            "operation": f"CNOT, control ancilla (party {ANCILLA_PARTY + 1}), target qubit {TARGET_PARTY + 1}",
            "c3_before": self.c3_before,
            "c3_after": self.c3_after,
            "eta_final": self.eta_final.to_dict(atol=1e-12),
            "theta_final": self.theta_final.to_dict(atol=1e-12),
            "theta_initial": dict(INITIAL_THETA),
            "eta_errors": self.eta_errors,
            "theta_errors": self.theta_errors,
            "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in self.checks],
            "passed": self.passed,
        }


def run_counterexample(
    theta_tol: float = 1e-3,
    eta_tol: float = 1e-9,
    opts: SolverOptions | None = None,
) -> CounterexampleReport:
    """Reproduce the counterexample and compare against the reference values."""
    rho_i, _, rho_f = counterexample_states()
    eta = density_to_eta(rho_f)
    theta = density_to_theta(rho_f)
    eta_err = {k: abs(eta[k] - v) for k, v in FINAL_ETA.items()}
    theta_err = {k: abs(theta[k] - v) for k, v in FINAL_THETA.items()}
    c3_before = decompose_entropic(rho_i, opts).c[3]
    c3_after = decompose_entropic(rho_f, opts).c[3]

    checks = []
    for k, err in eta_err.items():
        checks.append((f"eta^{k}", err <= eta_tol, f"|{eta[k]:.12g} - {FINAL_ETA[k]:.12g}| = {err:.3e}"))
    for k, err in theta_err.items():
        checks.append((f"theta^{k}", err <= theta_tol, f"|{theta[k]:.12g} - {FINAL_THETA[k]}| = {err:.3e}"))
    checks.append(("c3_before", c3_before < 1e-7, f"C3(rho_i) = {c3_before:.3e}"))
    checks.append(("c3_after", c3_after > 1e-6, f"C3(rho_f) = {c3_after:.6e}"))
    return CounterexampleReport(rho_i, rho_f, eta, theta, c3_before, c3_after, eta_err, theta_err, checks)
