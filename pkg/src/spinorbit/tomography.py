"""Two-qubit tomography simulation and component-noise Monte Carlo.

Each of the 16 measurement configurations projects onto a product analyzer
state built from wave plates: per qubit, a half-wave plate (plus a
quarter-wave plate for the circular setting) followed by a polarizing
splitter.  The mode qubit uses the Dove-prism analogues of the same Jones
matrices.  Noise enters as uniform jitter on the analysis wave-plate angles
and as an intensity imbalance of the analyzing splitter arms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import correlations, qmath

SETTING_NAMES = ("Z+", "Z-", "X+", "Y+")

# nominal wave-plate angles realizing each single-qubit analyzer
# (hwp angle, qwp angle or None), in radians
_SETTING_PLATES = {
    "Z+": (0.0, None),
    "Z-": (np.pi / 4, None),
    "X+": (np.pi / 8, None),
    "Y+": (0.0, np.pi / 4),
}


class TomographyConfigError(Exception):
    """Raised when a projector set cannot support linear inversion."""


@dataclass(frozen=True)
class NoiseConfig:
    hwp_jitter_deg: float = 0.0   # half-range of uniform angle error
    bs_r: float = 0.5             # intensity reflectance of analysis splitter
    bs_t: float = 0.5             # intensity transmittance
    runs: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.hwp_jitter_deg < 0:
            raise ValueError("hwp_jitter must be >= 0")
        if self.bs_r + self.bs_t > 1.0 + 1e-12:
            raise ValueError("bs_r + bs_t must not exceed 1")


@dataclass
class CorrelationStats:
    mean: dict
    std: dict
    raw: dict  # measure name -> list of per-run values

    def as_dict(self):
        return {"mean": self.mean, "std": self.std, "raw": self.raw}


def _hwp(a):
    c, s = np.cos(2 * a), np.sin(2 * a)
    return np.array([[c, s], [s, -c]], dtype=complex)


def _qwp(a):
    c, s = np.cos(a), np.sin(a)
    rot = np.array([[c, -s], [s, c]])
    return rot @ np.diag([1.0, 1.0j]) @ rot.T


def analyzer_state(setting, hwp_err=0.0, qwp_err=0.0):
    """Single-qubit analyzer ket for one setting, with wave-plate angle
    errors in radians.  Zero error reproduces |0>, |1>, |+>, |+i> exactly."""
    hwp_a, qwp_a = _SETTING_PLATES[setting]
    ket = _hwp(hwp_a + hwp_err) @ np.array([1.0, 0.0], dtype=complex)
    if qwp_a is not None:
        ket = _qwp(qwp_a + qwp_err).conj().T @ ket
    return ket


def projector_set():
    """16 product projectors over the setting pairs, row-major over
    (pol setting, mode setting)."""
    projs = []
    labels = []
    for sa in SETTING_NAMES:
        for sb in SETTING_NAMES:
            ka = analyzer_state(sa)
            kb = analyzer_state(sb)
            ket = np.kron(ka, kb)
            projs.append(np.outer(ket, ket.conj()))
            labels.append((sa, sb))
    return projs, labels


def projection_probabilities(rho, projs):
    """p_i = Tr[rho Pi_i] for each projector."""
    rho = qmath.as_matrix(rho, 4)
    return np.array([np.trace(rho @ pi).real for pi in projs])


def _design_matrix(projs):
    """Map from the 16 Pauli expectations to the 16 probabilities."""
    paulis = [np.kron(a, b) for a in qmath.PAULIS for b in qmath.PAULIS]
    a = np.empty((len(projs), 16))
    for i, pi in enumerate(projs):
        for j, s in enumerate(paulis):
            a[i, j] = np.trace(pi @ s).real / 4.0
    return a, paulis


def project_psd(rho):
    """Clip negative eigenvalues to zero and renormalize the trace."""
    vals, vecs = np.linalg.eigh((rho + rho.conj().T) / 2)
    vals = np.clip(vals, 0.0, None)
    out = (vecs * vals) @ vecs.conj().T
    return out / np.trace(out).real


def reconstruct(probs, projs, psd=True):
    """Linear-inversion reconstruction from the 16 projector probabilities."""
    a, paulis = _design_matrix(projs)
    try:
        r = np.linalg.solve(a, np.asarray(probs, dtype=float))
    except np.linalg.LinAlgError:
        raise TomographyConfigError("projector set is not informationally complete")
    rho = sum(rj * sj for rj, sj in zip(r, paulis)) / 4.0
    rho = (rho + rho.conj().T) / 2
    if psd:
        rho = project_psd(rho)
    return rho


def _run_rng(noise: NoiseConfig, run_index):
    # counter-derived stream: runs are order-independent
    return np.random.default_rng([noise.seed, run_index])


def perturb_and_measure(rho_true, noise: NoiseConfig, run_index):
    """One noisy tomography pass; deterministic given (seed, run_index)."""
    rho_true = qmath.check_density(rho_true)
    rng = _run_rng(noise, run_index)
    jitter = np.deg2rad(noise.hwp_jitter_deg)
    probs = np.empty(16)
    i = 0
    for sa in SETTING_NAMES:
        for sb in SETTING_NAMES:
            errs = rng.uniform(-jitter, jitter, size=4)
            ka = analyzer_state(sa, errs[0], errs[1])
            kb = analyzer_state(sb, errs[2], errs[3])
            ket = np.kron(ka, kb)
            p = np.real(np.vdot(ket, rho_true @ ket))
            p = min(max(p, 0.0), 1.0)
            # splitter imbalance between the click arm and its complement,
            # renormalized per setting pair
            num = noise.bs_r * p
            den = num + noise.bs_t * (1.0 - p)
            probs[i] = num / den if den > 0 else 0.0
            i += 1
    projs, _ = projector_set()
    return reconstruct(probs, projs)


def monte_carlo_correlations(rho_true, noise: NoiseConfig,
                             config: correlations.OptimizerConfig = correlations.OptimizerConfig()):
    """Correlation statistics over noisy tomography runs."""
    if noise.runs < 2:
        raise ValueError("need at least 2 runs for statistics")
    raw = {"C": [], "Cprime": [], "Q": [], "Im": []}
    for k in range(noise.runs):
        rho = perturb_and_measure(rho_true, noise, k)
        rep = correlations.correlation_report(rho, config)
        raw["C"].append(rep.classical_correlation)
        raw["Cprime"].append(rep.concurrence)
        raw["Q"].append(rep.discord)
        raw["Im"].append(rep.mutual_information)
    mean = {k: float(np.mean(v)) for k, v in raw.items()}
    std = {k: float(np.std(v, ddof=1)) for k, v in raw.items()}
    return CorrelationStats(mean=mean, std=std, raw=raw)
