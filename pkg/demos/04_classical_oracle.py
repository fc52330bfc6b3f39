# coding: utf-8

# # Diagonal states are classical distributions
#
# For a diagonal density matrix every maximum-entropy projection stays
# diagonal, so the quantum hierarchy must match the classical connected
# information computed by iterative proportional fitting.

# %%

import numpy as np

from irrcorr import classical, decompose_entropic

rng = np.random.default_rng(4)
p = rng.dirichlet(np.ones(8))
quantum = decompose_entropic(np.diag(p).astype(complex))
ipf = classical.classical_connected_info(p)

for k in (2, 3):
    print(f"C{k}: quantum {quantum.c[k]:.10f}   IPF {ipf[k]:.10f}")
print(f"C_T: quantum {quantum.c_total:.10f}   multi-information {classical.multi_information(p):.10f}")

# %%
# The parity distribution: uniform on even-weight strings.  Every pair of bits
# looks independent, so all of its correlation is three-body, exactly ln 2.

parity = np.array([1, 0, 0, 1, 0, 1, 1, 0], float) + 1e-9
parity /= parity.sum()
print("parity:", {k: round(v, 6) for k, v in classical.classical_connected_info(parity).items()})
