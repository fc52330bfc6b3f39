# coding: utf-8

# # Two definitions, one hierarchy
#
# C_k can be defined through entropies of maximum-entropy projections or
# through relative entropies between the nearest members of nested
# exponential families.  The two routes run separate optimizations here,
# so their agreement is a real test.

# %%

import numpy as np

from irrcorr import ExponentialFamily, decompose, minimize_divergence, pythagorean_check, random_state

rng = np.random.default_rng(3)
gaps = []
for _ in range(20):
    report = decompose(random_state(3, rng))
    gaps.append(report.definition_gap)
print(f"largest disagreement over 20 states: {max(gaps):.2e} nats")

# %%
# The projection onto E_2 splits relative entropy to any member of E_2.

rho = random_state(3, rng)
proj = minimize_divergence(rho, 2)
probe = random_state(3, rng, family=ExponentialFamily(3, 2))
lhs, rhs = pythagorean_check(rho, proj, probe)
print(f"S(rho||probe) = {lhs:.10f}")
print(f"S(rho||rho*) + S(rho*||probe) = {rhs:.10f}")
print(proj.summary())
