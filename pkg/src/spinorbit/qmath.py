"""Small fixed-dimension complex linear algebra and entropy primitives.

Everything here works on plain numpy arrays.  The two-qubit computational
basis is fixed globally as {|Hh>, |Hv>, |Vh>, |Vv>} <-> {|00>, |01>, |10>,
|11>}, with the polarization qubit (A) as the left tensor factor and the
transverse-mode qubit (B) as the right one.
"""

from __future__ import annotations

import numpy as np

# eigenvalues at or below this are treated as exactly zero in entropies
EIG_FLOOR = 1e-12

BASIS_LABELS = ("Hh", "Hv", "Vh", "Vv")

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, SIGMA_X, SIGMA_Y, SIGMA_Z)


def as_matrix(m, dim=None):
    """Coerce to a square complex array, optionally checking the dimension."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if dim is not None and a.shape[0] != dim:
        raise ValueError(f"expected dimension {dim}, got {a.shape[0]}")
    return a


def tensor_product(a, b):
    """Kronecker product of two single-qubit operators, A-factor on the left."""
    a = as_matrix(a, 2)
    b = as_matrix(b, 2)
    return np.kron(a, b)


def hermitian_eigensystem(m, tol=1e-9):
    """Eigenvalues (descending) and orthonormal eigenvector columns of a
    Hermitian matrix.

    Raises ValueError if the input is not Hermitian within ``tol``.
    """
    a = as_matrix(m)
    if np.max(np.abs(a - a.conj().T)) > tol:
        raise ValueError("matrix is not Hermitian within tolerance")
    vals, vecs = np.linalg.eigh(a)
    order = np.argsort(vals)[::-1]
    return vals[order], vecs[:, order]


def von_neumann_entropy(rho):
    """Entropy in bits, -sum(lam * log2 lam) over eigenvalues above EIG_FLOOR."""
    a = as_matrix(rho)
    vals = np.linalg.eigvalsh(a)
    vals = vals[vals > EIG_FLOOR]
    if vals.size == 0:
        return 0.0
    return float(-np.sum(vals * np.log2(vals)))


def shannon_entropy(probs):
    """Shannon entropy in bits of a probability vector (floored like above)."""
    p = np.asarray(probs, dtype=float)
    p = p[p > EIG_FLOOR]
    if p.size == 0:
        return 0.0
    return float(-np.sum(p * np.log2(p)))


def partial_trace(rho, keep):
    """Reduced 2x2 state of subsystem ``keep`` ('A' polarization / 'B' mode)."""
    a = as_matrix(rho, 4).reshape(2, 2, 2, 2)
    if keep == "A":
        return np.trace(a, axis1=1, axis2=3)
    if keep == "B":
        return np.trace(a, axis1=0, axis2=2)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def validate_density(m, tol=1e-9):
    """Check Hermiticity, unit trace and positivity.

    Returns (ok, diagnostics); diagnostics names the first violated property.
    """
    try:
        a = as_matrix(m)
    except ValueError as exc:
        return False, str(exc)
    if a.shape[0] not in (2, 4):
        return False, f"dimension must be 2 or 4, got {a.shape[0]}"
    herm_err = float(np.max(np.abs(a - a.conj().T)))
    if herm_err > tol:
        return False, f"not Hermitian: max |M - M^dag| = {herm_err:.3e}"
    tr = np.trace(a)
    if abs(tr.imag) > tol or abs(tr.real - 1.0) > tol:
        return False, f"trace is {tr:.6g}, expected 1"
    min_eig = float(np.min(np.linalg.eigvalsh((a + a.conj().T) / 2)))
    if min_eig < -max(tol, 1e-10):
        return False, f"not PSD: smallest eigenvalue = {min_eig:.3e}"
    return True, "ok"


def check_density(m, tol=1e-9):
    """validate_density that raises instead of reporting."""
    ok, why = validate_density(m, tol)
    if not ok:
        raise ValueError(f"invalid density matrix: {why}")
    return as_matrix(m)


def fidelity(rho, sigma):
    """Uhlmann fidelity F(rho, sigma) = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2."""
    rho = as_matrix(rho)
    sigma = as_matrix(sigma)
    vals, vecs = np.linalg.eigh(rho)
    sq = vecs @ np.diag(np.sqrt(np.clip(vals, 0.0, None))) @ vecs.conj().T
    inner = sq @ sigma @ sq
    ivals = np.linalg.eigvalsh((inner + inner.conj().T) / 2)
    return float(np.sum(np.sqrt(np.clip(ivals, 0.0, None))) ** 2)
