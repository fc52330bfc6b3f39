# coding: utf-8

# # A local operation can create three-party correlation
#
# Start from a three-qubit state whose exponent has only two-body terms,
# theta^330 = 1 and theta^303 = theta^001 = 1/sqrt(2).  Attach an ancilla with
# theta^3 = 1 and apply a CNOT with the ancilla as control and qubit 1 as
# target.  Discarding the ancilla is a local channel on qubit 1, yet the
# result has a genuine three-body term theta^331.

# %%

import numpy as np

from irrcorr import decompose, density_to_eta, density_to_theta
from irrcorr.channels import FINAL_ETA, cnot_kraus, apply_kraus, counterexample_states

rho_i, ancilla, rho_f = counterexample_states()

# %%
# The same state again, this time from the single-qubit channel the CNOT induces.

print("channel form agrees:", np.abs(apply_kraus(rho_i, cnot_kraus(ancilla, 0)) - rho_f).max() < 1e-14)

# %%
# Expectation values against their closed forms in tanh(1).

eta = density_to_eta(rho_f)
for k, v in FINAL_ETA.items():
    print(f"eta^{k} = {eta[k]:.12f}   closed form {v:.12f}")
print("nonzero eta:", sorted(eta.to_dict(atol=1e-12)))

# %%

theta = density_to_theta(rho_f).to_dict(atol=1e-10)
for k, v in sorted(theta.items()):
    print(f"theta^{k} = {v:+.5f}")

# %%
# Irreducible correlations before and after, in nats.

for name, rho in [("before", rho_i), ("after", rho_f)]:
    report = decompose(rho)
    print(f"{name:6s} C2 = {report.c[2]:.6e}  C3 = {report.c[3]:.6e}  C_T = {report.c_total:.6f}")
