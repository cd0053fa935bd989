"""Jones-calculus engine for spin-orbit branches on named paths.

A photon state lives in the 4-dimensional {|Hh>, |Hv>, |Vh>, |Vv>} space.
Branches carry a statistical weight (source population), a path label and a
possibly sub-normalized ket (norm^2 is the survival probability through
filters and splitters).  Branches from the same source recombine coherently
when they meet on a path; branches from distinct sources only ever mix at
the density-matrix stage.

Conventions: reflection at a PBS/BS multiplies the amplitude by i; mirror
phases are absorbed pairwise (every interferometer arm holds one mirror).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qmath

ELEMENT_KINDS = ("HWP", "DP", "PBS", "BS", "NF", "PHASE", "MASK", "POLPREP", "BLOCK")

# amplitudes below this are dropped when a splitter produces an empty port
AMP_FLOOR = 1e-15


class DegenerateStateError(Exception):
    """Raised when an ensemble carries no detectable probability."""


@dataclass(frozen=True)
class Element:
    kind: str
    path: str
    angle: float = 0.0          # HWP/DP/PHASE, radians
    r: float = 0.0              # BS reflection amplitude
    t: float = 1.0              # BS/NF transmission amplitude
    mode: str = ""              # MASK: h|v, POLPREP: H|V
    out: tuple = ()             # PBS: (out_H, out_V); BS: (out_t, out_r)

    def __post_init__(self):
        if self.kind not in ELEMENT_KINDS:
            raise ValueError(f"unknown element kind {self.kind!r}")
        if self.kind == "BS" and self.r**2 + self.t**2 > 1.0 + 1e-9:
            raise ValueError("BS amplitudes must satisfy r^2 + t^2 <= 1")
        if self.kind == "NF" and not 0.0 <= self.t <= 1.0:
            raise ValueError("NF transmission must lie in [0, 1]")
        if self.kind in ("PBS", "BS"):
            if len(self.out) != 2:
                raise ValueError(f"{self.kind} needs two output paths")
            if self.path in self.out:
                raise ValueError(f"{self.kind} routes back onto its input path (cyclic routing)")
        if self.kind == "MASK" and self.mode not in ("h", "v"):
            raise ValueError("MASK mode must be 'h' or 'v'")
        if self.kind == "POLPREP" and self.mode not in ("H", "V"):
            raise ValueError("POLPREP polarization must be 'H' or 'V'")


@dataclass(frozen=True)
class Source:
    path: str
    weight: float
    ket: np.ndarray


@dataclass(frozen=True)
class Circuit:
    sources: tuple
    elements: tuple
    sinks: tuple

    def paths(self):
        declared = {s.path for s in self.sources}
        for e in self.elements:
            declared.update(e.out)
        return declared


@dataclass
class Branch:
    weight: float
    path: str
    ket: np.ndarray
    source: int = 0


@dataclass
class Ensemble:
    branches: list

    def total_probability(self):
        return float(sum(b.weight * np.vdot(b.ket, b.ket).real for b in self.branches))


def _rotator_jones(angle):
    """Half-wave-plate-style Jones matrix at fast-axis angle (also the Dove
    prism acting on the first-order mode basis)."""
    c, s = np.cos(2.0 * angle), np.sin(2.0 * angle)
    return np.array([[c, s], [s, -c]], dtype=complex)


def _prepare_qubit(ket, which, target_index):
    """Collapse one qubit of a product-like ket onto a basis state with unit
    efficiency, keeping the other qubit's amplitudes (mask/SLM model)."""
    k = ket.reshape(2, 2)
    if which == "B":
        comps = k            # rows: A index, columns: B index
    else:
        comps = k.T
    out = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        vec = comps[i]
        mag = np.linalg.norm(vec)
        if mag > AMP_FLOOR:
            lead = vec[np.argmax(np.abs(vec))]
            out[i, target_index] = mag * lead / abs(lead)
    if which == "A":
        out = out.T
    return out.reshape(4)


def apply_element(e: Element, b: Branch):
    """Apply one optical element to one branch; returns 0, 1 or 2 branches."""
    if b.path != e.path:
        raise ValueError(f"branch on path {b.path!r} does not match element placement {e.path!r}")
    ket = b.ket
    if e.kind == "HWP":
        new = np.kron(_rotator_jones(e.angle), qmath.I2) @ ket
        return [replace_ket(b, new)]
    if e.kind == "DP":
        new = np.kron(qmath.I2, _rotator_jones(e.angle)) @ ket
        return [replace_ket(b, new)]
    if e.kind == "PHASE":
        return [replace_ket(b, np.exp(1j * e.angle) * ket)]
    if e.kind == "NF":
        return [replace_ket(b, e.t * ket)]
    if e.kind == "MASK":
        return [replace_ket(b, _prepare_qubit(ket, "B", 0 if e.mode == "h" else 1))]
    if e.kind == "POLPREP":
        return [replace_ket(b, _prepare_qubit(ket, "A", 0 if e.mode == "H" else 1))]
    if e.kind == "BLOCK":
        return []
    if e.kind == "PBS":
        h_part = np.array([ket[0], ket[1], 0, 0], dtype=complex)
        v_part = np.array([0, 0, ket[2], ket[3]], dtype=complex)
        out = []
        if np.linalg.norm(h_part) > AMP_FLOOR:
            out.append(Branch(b.weight, e.out[0], h_part, b.source))
        if np.linalg.norm(v_part) > AMP_FLOOR:
            out.append(Branch(b.weight, e.out[1], 1j * v_part, b.source))
        return out
    if e.kind == "BS":
        out = []
        if e.t > AMP_FLOOR:
            out.append(Branch(b.weight, e.out[0], e.t * ket, b.source))
        if e.r > AMP_FLOOR:
            out.append(Branch(b.weight, e.out[1], 1j * e.r * ket, b.source))
        return out
    raise ValueError(f"unknown element kind {e.kind!r}")


def replace_ket(b: Branch, ket):
    return Branch(b.weight, b.path, ket, b.source)


def _merge(branches):
    """Coherently sum branches sharing (source, path); order-stable."""
    merged = {}
    order = []
    for b in branches:
        key = (b.source, b.path)
        if key in merged:
            merged[key] = replace_ket(merged[key], merged[key].ket + b.ket)
        else:
            merged[key] = b
            order.append(key)
    return [merged[k] for k in order]


def run_circuit(c: Circuit):
    """Propagate all source branches through the element list in order."""
    declared = c.paths()
    for e in c.elements:
        if e.path not in declared:
            raise ValueError(f"element {e.kind} placed on undeclared path {e.path!r}")
    for s in c.sinks:
        if s not in declared:
            raise ValueError(f"sink refers to undeclared path {s!r}")
    branches = [
        Branch(s.weight, s.path, np.asarray(s.ket, dtype=complex), i)
        for i, s in enumerate(c.sources)
    ]
    for e in c.elements:
        nxt = []
        for b in branches:
            if b.path == e.path:
                nxt.extend(apply_element(e, b))
            else:
                nxt.append(b)
        branches = _merge(nxt)
    sinks = set(c.sinks)
    return Ensemble([b for b in branches if b.path in sinks])


def ensemble_density(e: Ensemble):
    """Incoherent mixture sum_i w_i |k_i><k_i| renormalized to unit trace."""
    rho = np.zeros((4, 4), dtype=complex)
    for b in e.branches:
        rho += b.weight * np.outer(b.ket, b.ket.conj())
    tr = np.trace(rho).real
    if tr <= 1e-12:
        raise DegenerateStateError("ensemble has no detectable probability")
    return rho / tr


def source_ket(pol, mode):
    """Product ket |pol, mode> with pol in {H, V} and mode in {h, v}."""
    ip = {"H": 0, "V": 1}[pol]
    im = {"h": 0, "v": 1}[mode]
    ket = np.zeros(4, dtype=complex)
    ket[2 * ip + im] = 1.0
    return ket


# Two PBS reflections around the interferometer contribute i*i = -1; the
# piezo phase is calibrated so the declared phi is the net arm phase.
_PZT_OFFSET = np.pi


def mz_circuit(theta, phi, input_mode="h"):
    """Wave plate + polarizing Mach-Zehnder with a Dove prism in the
    reflected arm: |Hh> -> cos(2 theta)|Hh> + e^{i phi} sin(2 theta)|Vv>.

    Feeding mode 'v' instead yields the odd-parity superposition
    cos(2 theta)|Hv> + e^{i phi} sin(2 theta)|Vh>.
    """
    elements = (
        Element("HWP", "in", angle=theta),
        Element("PBS", "in", out=("arm_t", "arm_r")),
        Element("DP", "arm_r", angle=np.pi / 4),
        Element("PHASE", "arm_r", angle=phi + _PZT_OFFSET),
        Element("PBS", "arm_t", out=("out", "w1")),
        Element("PBS", "arm_r", out=("w2", "out")),
    )
    return Circuit(
        sources=(Source("in", 1.0, source_ket("H", input_mode)),),
        elements=elements,
        sinks=("out",),
    )


def mdms_circuit(theta, phi, m, epsilon, source_probs=(1.0, 1.0, 1.0)):
    """Full preparation circuit: unbalanced Bell branch through the
    interferometer plus two product-state branches, incoherently mixed on
    the final beam splitter.

    Unequal source probabilities reweight the mixture as well as the global
    success probability; the defaults leave the normalized state exact.
    """
    for name, val in (("m", m), ("epsilon", epsilon)):
        if not 0.0 <= val <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {val}")
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    elements = (
        # source I: unbalanced Bell branch
        Element("MASK", "s1", mode="h"),
        Element("HWP", "s1", angle=theta),
        Element("PBS", "s1", out=("mz_t", "mz_r")),
        Element("DP", "mz_r", angle=np.pi / 4),
        Element("PHASE", "mz_r", angle=phi + _PZT_OFFSET),
        Element("PBS", "mz_t", out=("mz_out", "w1")),
        Element("PBS", "mz_r", out=("w2", "mz_out")),
        Element("NF", "mz_out", t=np.sqrt(epsilon)),
        Element("BS", "mz_out", r=inv_sqrt2, t=inv_sqrt2, out=("bb", "out")),
        # source II: |Hv> branch
        Element("POLPREP", "s2", mode="H"),
        Element("MASK", "s2", mode="v"),
        Element("NF", "s2", t=np.sqrt(m)),
        Element("PBS", "s2", out=("prod", "w3")),
        # source III: |Vh> branch
        Element("POLPREP", "s3", mode="V"),
        Element("MASK", "s3", mode="h"),
        Element("NF", "s3", t=np.sqrt(1.0 - m)),
        Element("PBS", "s3", out=("w4", "prod")),
        # shared attenuation and mixing splitter
        Element("NF", "prod", t=np.sqrt(1.0 - epsilon)),
        Element("BS", "prod", r=inv_sqrt2, t=inv_sqrt2, out=("out", "bb")),
        Element("BLOCK", "bb"),
    )
    p1, p2, p3 = source_probs
    return Circuit(
        sources=(
            Source("s1", p1, source_ket("H", "h")),
            Source("s2", p2, source_ket("H", "h")),
            Source("s3", p3, source_ket("V", "h")),
        ),
        elements=elements,
        sinks=("out",),
    )
