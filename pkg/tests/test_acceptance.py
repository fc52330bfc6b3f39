"""The ten acceptance criteria, each timed against its runtime budget.

Every test appends one PASS/FAIL line to the terminal summary.
"""

import time
from contextlib import contextmanager

import numpy as np
import pytest

from irrcorr import classical
from irrcorr.channels import (
    FINAL_ETA,
    FINAL_THETA,
    apply_kraus,
    counterexample_states,
    random_channel,
)
from irrcorr.coords import (
    EtaCoords,
    ExponentialFamily,
    ThetaCoords,
    density_to_eta,
    density_to_theta,
    legendre_residual,
    mixed_identity_check,
    phi,
    psi,
    random_state,
    random_theta,
    theta_to_density,
)
from irrcorr.correlations import decompose_divergence, decompose_entropic, total_correlation
from irrcorr.hermitian import kron_all, partial_trace, relative_entropy
from irrcorr.maxent import SolverOptions, extract_constraints, minimize_divergence, pythagorean_check

from .conftest import ACCEPTANCE_LINES

C3_FINAL = 4.950922680e-4


@contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    status = "FAIL"
    detail = ""
    try:
        yield
        elapsed = time.perf_counter() - start
        detail = f"{elapsed:.2f}s of {budget:g}s"
        assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget:g}s"
        status = "PASS"
    except BaseException as exc:
        detail = detail or f"{type(exc).__name__}: {exc}".splitlines()[0]
        raise
    finally:
        line = f"[{status}] criterion {number:2d}: {title} ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)


def _states(count, seed, **kw):
    rng = np.random.default_rng(seed)
    return [random_state(3, rng, **kw) for _ in range(count)]


def _central(f, x, h=1e-5):
    grad = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        grad[i] = (f(x + e) - f(x - e)) / (2 * h)
    return grad


def test_01_counterexample_eta():
    with criterion(1, "counterexample eta within 1e-9", 1.0):
        _, _, rho_f = counterexample_states()
        eta = density_to_eta(rho_f)
        for k, v in FINAL_ETA.items():
            assert abs(eta[k] - v) <= 1e-9, k


def test_02_counterexample_theta():
    with criterion(2, "counterexample theta within 1e-3", 1.0):
        _, _, rho_f = counterexample_states()
        theta = density_to_theta(rho_f)
        for k, v in FINAL_THETA.items():
            assert abs(theta[k] - v) <= 1e-3, k


def test_03_correlation_creation():
    with criterion(3, "C3 created by the local CNOT", 5.0):
        rho_i, _, rho_f = counterexample_states()
        assert decompose_entropic(rho_i).c[3] < 1e-7
        values = [decompose_entropic(rho_f, SolverOptions(tol=t)).c[3] for t in (1e-8, 1e-10)]
        assert min(values) > 1e-6
        assert abs(values[0] - values[1]) < 1e-8
        assert values[1] == pytest.approx(C3_FINAL, abs=1e-9)


def test_04_definitions_agree():
    with criterion(4, "entropic and divergence definitions agree on 100 states", 60.0):
        worst = 0.0
        for rho in _states(100, 404):
            a = decompose_entropic(rho).measures()
            b = decompose_divergence(rho).measures()
            worst = max(worst, max(abs(a[k] - b[k]) for k in a))
        assert worst < 1e-6, worst


def test_05_pythagorean():
    with criterion(5, "Pythagorean identity on E1 and E2", 30.0):
        rng = np.random.default_rng(505)
        for order in (1, 2):
            family = ExponentialFamily(3, order)
            for _ in range(20):
                rho = random_state(3, rng)
                proj = minimize_divergence(rho, order)
                probe = random_state(3, rng, family=family)
                lhs, rhs = pythagorean_check(rho, proj, probe)
                assert abs(lhs - rhs) < 1e-7, (order, lhs, rhs)


def test_06_mixed_identity():
    with criterion(6, "mixed-coordinate identity on 100 triples", 10.0):
        rng = np.random.default_rng(606)
        for _ in range(100):
            lhs, rhs = mixed_identity_check(*(random_state(3, rng) for _ in range(3)))
            assert abs(lhs - rhs) < 1e-8


def test_07_duality():
    with criterion(7, "Legendre duality and potential gradients", 20.0):
        rng = np.random.default_rng(707)
        for _ in range(20):
            theta = random_theta(3, rng)
            rho = theta_to_density(theta)
            eta = density_to_eta(rho)
            assert abs(legendre_residual(rho)) < 1e-9
            d_psi = _central(lambda v: psi(ThetaCoords(3, v)), theta.values)
            assert np.abs(d_psi - eta.values).max() < 1e-5
            d_phi = _central(lambda v: phi(EtaCoords(3, v)), eta.values)
            assert np.abs(d_phi - density_to_theta(rho).values).max() < 1e-5


def test_08_monotonicity():
    with criterion(8, "monotonicity under local channels and partial trace", 60.0):
        rng = np.random.default_rng(808)
        for rho in _states(20, 809):
            before = total_correlation(rho)
            for _ in range(50):
                channel = random_channel(int(rng.integers(3)), rng)
                after = total_correlation(apply_kraus(rho, channel))
                assert after <= before + 1e-7, (before, after)
        for _ in range(100):
            rho, sigma = random_state(3, rng), random_state(3, rng)
            keep = sorted(rng.choice(3, size=int(rng.integers(1, 3)), replace=False).tolist())
            full = relative_entropy(rho, sigma)
            reduced = relative_entropy(partial_trace(rho, keep), partial_trace(sigma, keep))
            assert reduced <= full + 1e-8


def test_09_classical_oracle():
    with criterion(9, "diagonal states agree with classical IPF", 30.0):
        rng = np.random.default_rng(909)
        for _ in range(20):
            p = rng.uniform(0.05, 1.0, 8)
            p /= p.sum()
            quantum = decompose_entropic(np.diag(p).astype(complex))
            ipf = classical.classical_connected_info(p)
            for k in (2, 3):
                assert abs(quantum.c[k] - ipf[k]) < 1e-6
            assert abs(quantum.c_total - classical.multi_information(p)) < 1e-6


def test_10_faithfulness():
    with criterion(10, "no spurious correlation for products and E2 states", 30.0):
        rng = np.random.default_rng(1010)
        cases = []
        for _ in range(10):
            product = kron_all(random_state(1, rng, scale=0.5) for _ in range(3))
            cases.append((product, True))
            cases.append((random_state(3, rng), False))
        for rho, is_product in cases:
            c_total = total_correlation(rho)
            assert (abs(c_total) < 1e-7) == is_product, c_total
        e2 = ExponentialFamily(3, 2)
        for _ in range(20):
            assert abs(decompose_entropic(random_state(3, rng, family=e2)).c[3]) < 1e-7
