"""Transverse detection-probability maps for spin-orbit states.

The mode qubit maps to the first-order Hermite-Gauss waist-plane modes:
|h> is HG01 (horizontal nodal line y = 0, lobes stacked along y) and |v>
is HG10 (vertical nodal line, lobes along x).  Both are real and
L2-normalized at the waist.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from . import qmath


@dataclass(frozen=True)
class GridConfig:
    half_width: float = 4.0      # in units of the waist
    samples_per_axis: int = 256
    waist: float = 1.0

    def __post_init__(self):
        if self.samples_per_axis < 16:
            raise ValueError("samples_per_axis must be >= 16")
        if self.half_width <= 0:
            raise ValueError("half_width must be positive")

    def axes(self):
        x = np.linspace(-self.half_width, self.half_width, self.samples_per_axis)
        return x, x.copy()

    def cell_area(self):
        step = 2.0 * self.half_width / (self.samples_per_axis - 1)
        return step * step


@dataclass
class IntensityMap:
    values: np.ndarray  # [iy, ix], non-negative
    grid: GridConfig

    def integral(self):
        return float(np.sum(self.values) * self.grid.cell_area())


def hg_amplitude(mode, x, y, w=1.0):
    """Real waist-plane amplitude of HG01 (mode 'h') or HG10 (mode 'v')."""
    if w <= 0:
        raise ValueError("waist must be positive")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    envelope = np.sqrt(8.0 / np.pi) / w**2 * np.exp(-(x**2 + y**2) / w**2)
    if mode == "h":
        return envelope * y
    if mode == "v":
        return envelope * x
    raise ValueError(f"mode must be 'h' or 'v', got {mode!r}")


def intensity_map(rho, grid: GridConfig = GridConfig()):
    """Polarization-summed detection density I(x, y) of a spin-orbit state."""
    rho = qmath.check_density(rho)
    xs, ys = grid.axes()
    xx, yy = np.meshgrid(xs, ys)
    u_h = hg_amplitude("h", xx, yy, grid.waist)
    u_v = hg_amplitude("v", xx, yy, grid.waist)
    vals, vecs = qmath.hermitian_eigensystem(rho)
    out = np.zeros_like(u_h)
    for lam, psi in zip(vals, vecs.T):
        if lam <= qmath.EIG_FLOOR:
            continue
        # amplitude for each polarization: a_{Ph} u_h + a_{Pv} u_v
        amp_h = psi[0] * u_h + psi[1] * u_v
        amp_v = psi[2] * u_h + psi[3] * u_v
        out += lam * (np.abs(amp_h) ** 2 + np.abs(amp_v) ** 2)
    return IntensityMap(values=out, grid=grid)


def mode_fractions(rho):
    """Intensity fraction carried by each transverse mode of a state."""
    rho_b = qmath.partial_trace(qmath.check_density(rho), "B")
    return {"h": float(rho_b[0, 0].real), "v": float(rho_b[1, 1].real)}


def write_pgm(m: IntensityMap, path):
    """16-bit plain (P2) PGM, row-major, peak scaled to 65535."""
    peak = float(np.max(m.values))
    scale = 65535.0 / peak if peak > 0 else 0.0
    pix = np.round(m.values * scale).astype(int)
    n = m.grid.samples_per_axis
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"P2\n{n} {n}\n65535\n")
        for row in pix:
            fh.write(" ".join(str(v) for v in row) + "\n")


def write_csv(m: IntensityMap, path):
    """Long-format CSV with columns x, y, intensity."""
    xs, ys = m.grid.axes()
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y", "intensity"])
        for iy, y in enumerate(ys):
            for ix, x in enumerate(xs):
                writer.writerow([f"{x:.9g}", f"{y:.9g}", f"{m.values[iy, ix]:.12g}"])
