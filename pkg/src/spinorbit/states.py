"""Analytic constructors for the unbalanced-Bell / product-mix state families.

These serve both as ground truth for the circuit simulation and as oracles
for the correlation tests.  Basis order follows qmath.BASIS_LABELS.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _check_prob(name, value):
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class StateParams:
    """p: Bell imbalance; m: product-mix weight; epsilon: coherent weight."""

    p: float
    m: float
    epsilon: float

    def __post_init__(self):
        _check_prob("p", self.p)
        _check_prob("m", self.m)
        _check_prob("epsilon", self.epsilon)


def partial_bell(p):
    """Unbalanced Bell ket sqrt(p)|00> + sqrt(1-p)|11>, real amplitudes."""
    _check_prob("p", p)
    return np.array([np.sqrt(p), 0.0, 0.0, np.sqrt(1.0 - p)], dtype=complex)


def ket_01():
    return np.array([0, 1, 0, 0], dtype=complex)


def ket_10():
    return np.array([0, 0, 1, 0], dtype=complex)


def mdms(params: StateParams):
    """eps |Phi+(p)><Phi+(p)| + (1-eps)[m |01><01| + (1-m) |10><10|]."""
    phi = partial_bell(params.p)
    eps = params.epsilon
    m = params.m
    rho = eps * np.outer(phi, phi.conj())
    rho += (1.0 - eps) * m * np.outer(ket_01(), ket_01())
    rho += (1.0 - eps) * (1.0 - m) * np.outer(ket_10(), ket_10())
    return rho


def rank2(p, epsilon):
    """(p, eps) family: eps |Phi+(p)><Phi+(p)| + (1-eps)|01><01|."""
    return mdms(StateParams(p=p, m=1.0, epsilon=epsilon))


def rank3(m, epsilon):
    """(m, eps) family with balanced Bell part (p = 1/2)."""
    return mdms(StateParams(p=0.5, m=m, epsilon=epsilon))
