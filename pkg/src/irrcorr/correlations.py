"""Degrees of irreducible k-party correlation.

Two routes give the same numbers:

* entropic: ``C_k = S(rho*_{k-1}) - S(rho*_k)`` where ``rho*_k`` is the
  maximum-entropy state sharing all k-party marginals with ``rho`` (and
  ``rho*_n = rho``); the total correlation is ``S(rho*_1) - S(rho)``.
* divergence: ``C'_k = S(rho*_k || rho*_{k-1})`` with ``rho*_k`` the closest
  state of the order-k exponential family to ``rho``; the total is
  ``S(rho || rho*_1)``.

:func:`decompose_entropic` and :func:`decompose_divergence` run their own
projections and evaluate their own formulas, so comparing them is a real check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .hermitian import as_density, party_count, relative_entropy, von_neumann_entropy
from .maxent import ProjectionResult, SolverOptions, extract_constraints, minimize_divergence, project


@dataclass(eq=False)
class CorrelationReport:
    n: int
    definition: str
    c: dict[int, float]
    c_total: float
    projected_entropies: dict[int, float]
    entropy: float
    projections: dict[int, ProjectionResult] = field(repr=False)
    definition_gap: float | None = None
    alternate: "CorrelationReport | None" = field(default=None, repr=False)

    def measures(self) -> dict[str, float]:
        out = {f"c{k}": v for k, v in self.c.items()}
        out["c_total"] = self.c_total
        return out

    def to_dict(self, bits: bool = False) -> dict:
        scale = 1 / np.log(2) if bits else 1.0
        out = {"n": self.n, "definition": self.definition, "unit": "bits" if bits else "nats"}
        out.update({k: v * scale for k, v in self.measures().items()})
        out["entropy"] = self.entropy * scale
        out["projected_entropies"] = {str(k): v * scale for k, v in self.projected_entropies.items()}
        out["definition_gap"] = None if self.definition_gap is None else self.definition_gap * scale
        out["projections"] = [p.summary() for p in self.projections.values()]
        if self.alternate is not None:
            alt = self.alternate
            out[alt.definition] = {k: v * scale for k, v in alt.measures().items()}
            out[alt.definition]["projections"] = [p.summary() for p in alt.projections.values()]
        return out


def _prepare(rho, opts):
    rho = as_density(rho, full_rank=True)
    return rho, party_count(rho.shape[0]), opts or SolverOptions()


def decompose_entropic(rho, opts: SolverOptions | None = None) -> CorrelationReport:
    """Correlation hierarchy from entropy differences of maximum-entropy projections."""
    rho, n, opts = _prepare(rho, opts)
    projections = {k: project(extract_constraints(rho, k), opts) for k in range(1, n)}
    ent = {k: von_neumann_entropy(p.state) for k, p in projections.items()}
    s_rho = von_neumann_entropy(rho)
    ladder = {**ent, n: s_rho}
    c = {k: ladder[k - 1] - ladder[k] for k in range(2, n + 1)}
    c_total = ladder[1] - s_rho
    return CorrelationReport(n, "entropic", c, c_total, ent, s_rho, projections)


def decompose_divergence(rho, opts: SolverOptions | None = None) -> CorrelationReport:
    """Correlation hierarchy from relative entropies to the nearest family members."""
    rho, n, opts = _prepare(rho, opts)
    projections = {k: minimize_divergence(rho, k, opts) for k in range(1, n)}
    ladder = {k: p.state for k, p in projections.items()}
    ladder[n] = rho
    c = {k: relative_entropy(ladder[k], ladder[k - 1]) for k in range(2, n + 1)}
    c_total = relative_entropy(rho, ladder[1])
    ent = {k: von_neumann_entropy(p.state) for k, p in projections.items()}
    return CorrelationReport(n, "divergence", c, c_total, ent, von_neumann_entropy(rho), projections)


def _gap(a: CorrelationReport, b: CorrelationReport) -> float:
    ma, mb = a.measures(), b.measures()
    return max((abs(ma[k] - mb[k]) for k in ma), default=0.0)


def verify_equivalence(rho, opts: SolverOptions | None = None) -> float:
    """Largest disagreement between the two definitions over all measures."""
    return _gap(decompose_entropic(rho, opts), decompose_divergence(rho, opts))


def decompose(rho, opts: SolverOptions | None = None) -> CorrelationReport:
    """Entropic report with the divergence route attached and the gap filled in."""
    ent = decompose_entropic(rho, opts)
    div = decompose_divergence(rho, opts)
    ent.definition_gap = div.definition_gap = _gap(ent, div)
    ent.alternate = div
    return ent


def total_correlation(rho, opts: SolverOptions | None = None) -> float:
    """``S(rho*_1) - S(rho)`` using only the order-1 projection."""
    rho, _, opts = _prepare(rho, opts)
    star = project(extract_constraints(rho, 1), opts)
    return von_neumann_entropy(star.state) - von_neumann_entropy(rho)
