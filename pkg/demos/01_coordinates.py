# coding: utf-8

# # Two coordinate systems for a qubit register
#
# Every full-rank state of n qubits can be written as rho = exp(sum_m theta^m sigma_m - psi),
# and it can equally be described by its Pauli expectation values eta^m = Tr(rho sigma_m).
# This script moves a random three-qubit state between the two descriptions.

# %%

import numpy as np

from irrcorr import (
    ExponentialFamily,
    density_to_eta,
    density_to_theta,
    eta_to_density,
    in_family,
    legendre_residual,
    random_theta,
    theta_to_density,
)

rng = np.random.default_rng(1)
theta = random_theta(3, rng)
rho = theta_to_density(theta)
print("eigenvalues:", np.round(np.linalg.eigvalsh(rho), 4))

# %%
# Expectation coordinates and the way back.

eta = density_to_eta(rho)
back = density_to_theta(eta_to_density(eta))
print("largest theta round-trip error:", np.abs(back.values - theta.values).max())

# %%
# The two potentials are Legendre duals, so phi(eta) + psi(theta) = <eta, theta>.

print("Legendre residual:", legendre_residual(rho))

# %%
# Zeroing every theta that touches all three qubits lands the state in E_2,
# the family with only pairwise interactions.

e2 = ExponentialFamily(3, 2)
pairwise = random_theta(3, rng, family=e2)
print("in E_2:", in_family(pairwise, e2), " in E_1:", in_family(pairwise, ExponentialFamily(3, 1)))
print("theta^333 of the pairwise state:", pairwise["333"])
