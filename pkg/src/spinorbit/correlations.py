"""Mutual information, classical correlation, quantum discord and concurrence
for a two-qubit density matrix.

The classical correlation optimizes a projective measurement on the mode
qubit (B).  The measurement ket is
|Psi> = cos(theta/2)|0> + sin(theta/2) e^{i phi} |1>, with orthogonal
complement |Psi_perp> = sin(theta/2)|0> - cos(theta/2) e^{i phi} |1>.
Optimization is a coarse grid followed by Nelder-Mead refinement from the
best grid point; refinement never regresses below the grid value.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from . import qmath

# measurement outcomes with probability below this are skipped
PROB_FLOOR = 1e-12
# discord values in (-DISCORD_CLAMP, 0) are reported as 0
DISCORD_CLAMP = 1e-9


@dataclass(frozen=True)
class MeasurementAngles:
    theta: float  # in [0, pi]
    phi: float    # in [0, 2 pi)


@dataclass(frozen=True)
class OptimizerConfig:
    grid_theta: int = 64
    grid_phi: int = 64
    refine: bool = True
    max_evals: int = 500
    simplex_tol: float = 1e-6


@dataclass
class CorrelationReport:
    mutual_information: float
    classical_correlation: float
    discord: float
    concurrence: float
    optimal_angles: MeasurementAngles
    converged: bool = True

    def as_dict(self):
        return {
            "mutual_information": self.mutual_information,
            "classical_correlation": self.classical_correlation,
            "discord": self.discord,
            "concurrence": self.concurrence,
            "optimal_angles": {
                "theta": self.optimal_angles.theta,
                "phi": self.optimal_angles.phi,
            },
            "converged": self.converged,
        }


def mutual_information(rho):
    """S(rho_A) + S(rho_B) - S(rho), in bits."""
    rho = qmath.check_density(rho)
    return (
        qmath.von_neumann_entropy(qmath.partial_trace(rho, "A"))
        + qmath.von_neumann_entropy(qmath.partial_trace(rho, "B"))
        - qmath.von_neumann_entropy(rho)
    )


def _binary_entropy_of_2x2(tr, det):
    """Entropy in bits of 2x2 PSD matrices given trace/determinant arrays,
    normalized to unit trace.  Entries with trace below PROB_FLOOR give 0."""
    tr = np.asarray(tr, dtype=float)
    det = np.asarray(det, dtype=float)
    disc = np.sqrt(np.clip(tr * tr - 4.0 * det, 0.0, None))
    lam1 = np.clip((tr + disc) / 2.0, 0.0, None)
    lam2 = np.clip((tr - disc) / 2.0, 0.0, None)
    safe_tr = np.where(tr > PROB_FLOOR, tr, 1.0)
    out = np.zeros_like(tr)
    for lam in (lam1, lam2):
        q = lam / safe_tr
        mask = q > qmath.EIG_FLOOR
        out = out - np.where(mask, q * np.log2(np.where(mask, q, 1.0)), 0.0)
    return np.where(tr > PROB_FLOOR, out, 0.0)


def conditional_entropy_grid(rho, theta, phi):
    """Vectorized sum_k p_k S(rho_k) for B-side projective measurements.

    theta and phi are broadcastable float arrays; returns an array of the
    broadcast shape.  Uses the 2x2 conditional block <psi|_B rho |psi>_B,
    whose spectrum carries the full entropy of the collapsed state.
    """
    rho4 = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    c = np.cos(theta / 2.0)
    s = np.sin(theta / 2.0) * np.exp(1j * phi)
    total = np.zeros(theta.shape, dtype=float)
    # outcome kets: |Psi> = (c, s), |Psi_perp> = (|s|, -c e^{i phi}) pattern
    for psi0, psi1 in ((c, s), (np.sin(theta / 2.0), -np.cos(theta / 2.0) * np.exp(1j * phi))):
        # A_{a a'} = sum_{b b'} rho[a b a' b'] conj(psi_b) psi_b'
        a00 = (
            rho4[0, 0, 0, 0] * np.abs(psi0) ** 2
            + rho4[0, 0, 0, 1] * np.conj(psi0) * psi1
            + rho4[0, 1, 0, 0] * psi0 * np.conj(psi1)
            + rho4[0, 1, 0, 1] * np.abs(psi1) ** 2
        )
        a11 = (
            rho4[1, 0, 1, 0] * np.abs(psi0) ** 2
            + rho4[1, 0, 1, 1] * np.conj(psi0) * psi1
            + rho4[1, 1, 1, 0] * psi0 * np.conj(psi1)
            + rho4[1, 1, 1, 1] * np.abs(psi1) ** 2
        )
        a01 = (
            rho4[0, 0, 1, 0] * np.abs(psi0) ** 2
            + rho4[0, 0, 1, 1] * np.conj(psi0) * psi1
            + rho4[0, 1, 1, 0] * psi0 * np.conj(psi1)
            + rho4[0, 1, 1, 1] * np.abs(psi1) ** 2
        )
        tr = np.real(a00 + a11)
        det = np.real(a00 * a11 - a01 * np.conj(a01))
        total = total + tr * _binary_entropy_of_2x2(tr, det)
    return total


def _conditional_entropy_scalar(rho4, theta, phi):
    """Scalar fast path of conditional_entropy_grid (plain Python complex
    arithmetic; the simplex refinement calls this thousands of times)."""
    import math

    c = math.cos(theta / 2.0)
    s_abs = math.sin(theta / 2.0)
    e = complex(math.cos(phi), math.sin(phi))
    total = 0.0
    for psi0, psi1 in ((c, s_abs * e), (s_abs, -c * e)):
        # psi0 is real in both outcomes, so conj(psi0) psi1 = psi0 psi1
        p00, p11 = psi0 * psi0, abs(psi1) ** 2
        cross = psi0 * psi1
        crossc = cross.conjugate()
        a00 = (rho4[0, 0, 0, 0] * p00 + rho4[0, 0, 0, 1] * cross
               + rho4[0, 1, 0, 0] * crossc + rho4[0, 1, 0, 1] * p11)
        a11 = (rho4[1, 0, 1, 0] * p00 + rho4[1, 0, 1, 1] * cross
               + rho4[1, 1, 1, 0] * crossc + rho4[1, 1, 1, 1] * p11)
        a01 = (rho4[0, 0, 1, 0] * p00 + rho4[0, 0, 1, 1] * cross
               + rho4[0, 1, 1, 0] * crossc + rho4[0, 1, 1, 1] * p11)
        tr = (a00 + a11).real
        if tr <= PROB_FLOOR:
            continue
        det = (a00 * a11 - a01 * a01.conjugate()).real
        disc = math.sqrt(max(tr * tr - 4.0 * det, 0.0))
        for lam in ((tr + disc) / 2.0, (tr - disc) / 2.0):
            q = max(lam, 0.0) / tr
            if q > qmath.EIG_FLOOR:
                total -= tr * q * math.log2(q)
    return total


def measured_conditional_entropy(rho, angles: MeasurementAngles):
    """sum_k p_k S(rho_k) for the measurement basis set by ``angles``."""
    rho = qmath.check_density(rho)
    return _conditional_entropy_scalar(rho.reshape(2, 2, 2, 2), angles.theta, angles.phi)


def _canonical_angles(theta, phi):
    theta = theta % (2.0 * np.pi)
    if theta > np.pi:
        # (2pi - theta, phi + pi) describes the same measurement basis
        theta = 2.0 * np.pi - theta
        phi = phi + np.pi
    return theta, phi % (2.0 * np.pi)


def classical_correlation(rho, config: OptimizerConfig = OptimizerConfig()):
    """Measurement-optimized classical correlation in bits.

    Returns (value, optimal MeasurementAngles, converged flag).  The value is
    S(rho_A) minus the minimized conditional entropy; the Nelder-Mead stage
    never reports worse than the grid stage.
    """
    rho = qmath.check_density(rho)
    s_a = qmath.von_neumann_entropy(qmath.partial_trace(rho, "A"))

    thetas = np.linspace(0.0, np.pi, config.grid_theta)
    phis = np.linspace(0.0, 2.0 * np.pi, config.grid_phi, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    grid = conditional_entropy_grid(rho, tt, pp)
    idx = np.unravel_index(np.argmin(grid), grid.shape)
    best_val = float(grid[idx])
    best_theta = float(tt[idx])
    best_phi = float(pp[idx])
    converged = True

    if config.refine:
        rho4 = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)

        def objective(x):
            return _conditional_entropy_scalar(rho4, float(x[0]), float(x[1]))

        res = minimize(
            objective,
            x0=np.array([best_theta, best_phi]),
            method="Nelder-Mead",
            options={
                "maxfev": config.max_evals,
                "xatol": config.simplex_tol,
                "fatol": config.simplex_tol**2,
            },
        )
        converged = bool(res.success) or res.fun <= best_val
        if res.fun < best_val:
            best_val = float(res.fun)
            best_theta, best_phi = float(res.x[0]), float(res.x[1])

    theta, phi = _canonical_angles(best_theta, best_phi)
    return s_a - best_val, MeasurementAngles(theta, phi), converged


def quantum_discord(rho, config: OptimizerConfig = OptimizerConfig()):
    """Mutual information minus classical correlation, clamped at 0."""
    im = mutual_information(rho)
    c, _, converged = classical_correlation(rho, config)
    q = im - c
    if -DISCORD_CLAMP < q < 0.0:
        q = 0.0
    return q, converged


_YY = np.kron(qmath.SIGMA_Y, qmath.SIGMA_Y)


def concurrence(rho):
    """Wootters concurrence max(0, l1 - l2 - l3 - l4)."""
    rho = qmath.check_density(rho)
    # Hermitian form sqrt(rho) YY rho* YY sqrt(rho): same spectrum as
    # rho YY rho* YY but numerically stable near zero eigenvalues
    vals, vecs = np.linalg.eigh(rho)
    sq = (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.conj().T
    r = sq @ _YY @ rho.conj() @ _YY @ sq
    vals = np.clip(np.linalg.eigvalsh(r).real, 0.0, None)
    # floor spectral noise before the square root (sqrt(1e-17) ~ 3e-9 would
    # otherwise leak into the difference of the four roots)
    vals[vals < 1e-14] = 0.0
    lams = np.sort(np.sqrt(vals))[::-1]
    return float(max(0.0, lams[0] - lams[1] - lams[2] - lams[3]))


def xstate_concurrence(rho, tol=1e-10):
    """Closed form for X-shaped states: 2 max(0, |r14|-sqrt(r22 r33),
    |r23|-sqrt(r11 r44)).  Raises on non-X input."""
    rho = qmath.as_matrix(rho, 4)
    off = [(0, 1), (0, 2), (1, 0), (2, 0), (1, 3), (3, 1), (2, 3), (3, 2)]
    if any(abs(rho[i, j]) > tol for i, j in off):
        raise ValueError("matrix is not an X-state within tolerance")
    d = rho.diagonal().real
    c1 = abs(rho[0, 3]) - np.sqrt(max(d[1] * d[2], 0.0))
    c2 = abs(rho[1, 2]) - np.sqrt(max(d[0] * d[3], 0.0))
    return float(2.0 * max(0.0, c1, c2))


def correlation_report(rho, config: OptimizerConfig = OptimizerConfig()):
    """Full report: I_m, C, Q, concurrence and the optimal angles."""
    im = mutual_information(rho)
    c, angles, converged = classical_correlation(rho, config)
    q = im - c
    if -DISCORD_CLAMP < q < 0.0:
        q = 0.0
    return CorrelationReport(
        mutual_information=im,
        classical_correlation=c,
        discord=q,
        concurrence=concurrence(rho),
        optimal_angles=angles,
        converged=converged,
    )
