"""Parameter sweeps behind the correlation-curve and scatter outputs."""

from __future__ import annotations

import numpy as np

from . import correlations, states, tomography

SWEEP_COLUMNS = ("C", "C_std", "Cprime", "Cprime_std", "Q", "Q_std", "Im")


def family_state(family, p=0.5, m=0.5, epsilon=0.5):
    if family == "rank2":
        return states.rank2(p, epsilon)
    if family == "rank3":
        return states.rank3(m, epsilon)
    if family == "mdms":
        return states.mdms(states.StateParams(p=p, m=m, epsilon=epsilon))
    raise ValueError(f"unknown family {family!r} (expected rank2, rank3 or mdms)")


def sweep(family, var="epsilon", start=0.0, stop=1.0, step=0.05,
          p=0.5, m=0.5, epsilon=0.5, noise=None,
          config=correlations.OptimizerConfig()):
    """Sweep one parameter; yields rows (value, dict of SWEEP_COLUMNS).

    With a tomography.NoiseConfig the std columns come from the noise Monte
    Carlo, otherwise they are zero and the values are noiseless.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    n = int(round((stop - start) / step))
    values = start + step * np.arange(n + 1)
    values = values[values <= stop + 1e-12]
    rows = []
    for v in values:
        v = float(min(max(v, 0.0), 1.0))
        kwargs = {"p": p, "m": m, "epsilon": epsilon, var: v}
        rho = family_state(family, **kwargs)
        if noise is None:
            rep = correlations.correlation_report(rho, config)
            row = {
                "C": rep.classical_correlation, "C_std": 0.0,
                "Cprime": rep.concurrence, "Cprime_std": 0.0,
                "Q": rep.discord, "Q_std": 0.0,
                "Im": rep.mutual_information,
            }
        else:
            stats = tomography.monte_carlo_correlations(rho, noise, config)
            row = {
                "C": stats.mean["C"], "C_std": stats.std["C"],
                "Cprime": stats.mean["Cprime"], "Cprime_std": stats.std["Cprime"],
                "Q": stats.mean["Q"], "Q_std": stats.std["Q"],
                "Im": stats.mean["Im"],
            }
        rows.append((v, row))
    return rows


def scatter(step=0.01, config=correlations.OptimizerConfig()):
    """(C, Q) samples for the rank-2 family over (p, eps) and the rank-3
    family over (m, eps) with a balanced Bell part.

    Returns a list of (family, param1, epsilon, C, Q) tuples in deterministic
    grid order.
    """
    if not 0.0 < step <= 0.1:
        raise ValueError("step must lie in (0, 0.1]")
    n = int(round(1.0 / step))
    grid = np.clip(step * np.arange(n + 1), 0.0, 1.0)
    out = []
    for p in grid:
        for eps in grid:
            rho = states.rank2(float(p), float(eps))
            c, _, _ = correlations.classical_correlation(rho, config)
            q = correlations.mutual_information(rho) - c
            out.append(("rank2", float(p), float(eps), c, max(q, 0.0)))
    for m in grid:
        for eps in grid:
            rho = states.rank3(float(m), float(eps))
            # degenerate family members (m in {0,1} or eps = 1) are rank <= 2
            # and already covered by the other series
            if np.sum(np.linalg.eigvalsh(rho) > 1e-10) < 3:
                continue
            c, _, _ = correlations.classical_correlation(rho, config)
            q = correlations.mutual_information(rho) - c
            out.append(("rank3", float(m), float(eps), c, max(q, 0.0)))
    return out
