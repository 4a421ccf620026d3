"""Quantum model that violates the two-setting inequality.

Each of the two parties holds one half of a singlet; the other halves go to
the measuring device, which performs a noisy Bell-state measurement on them.
Qubit order of the global 4-qubit state is

    (party-0 system, party-0 ancilla, party-1 system, party-1 ancilla)

with the singlets on (0,1) and (2,3).  Party j measures its system qubit
along O_x = (sigma_Z + (-1)^x sigma_X)/sqrt(2); party 0 assigns output a to
projector (1 + (-1)^a O_x)/2, party 1 uses the opposite sign, (1 - (-1)^b
O_y)/2.  The opposite sign on exactly one party is part of the convention:
flipping it negates both correlator averages.

The Bell-state measurement with sharpness p in [0, 1] has elements

    E_c = p |beta_c><beta_c| + (1 - p) I/4,

with the two-bit outcome c = (c_0, c_1) labeling the Bell basis as
00 -> psi-, 01 -> psi+, 10 -> phi-, 11 -> phi+ (frozen; tests pin it).

The exact behavior is

    P(a, b, c0 c1 | x, y)
        = (1/16) (1 + p (-1)^(a+b) [(-1)^c0 + (-1)^(x+y+c1)] / 2),

giving M = N = p/2, statistic sqrt(2p), which exceeds the classical bound 1
exactly when p > 1/2.
"""
import itertools
from dataclasses import dataclass

import numpy as np

from .behavior import BehaviorTensor, ScenarioShape
from .linalg import (
    ID2,
    PHI_MINUS,
    PHI_PLUS,
    PSI_MINUS,
    PSI_PLUS,
    SIGMA_X,
    SIGMA_Z,
    embed_operator,
    kron_all,
    proj,
)

BELL_LABELING = (
    ("psi_minus", PSI_MINUS),
    ("psi_plus", PSI_PLUS),
    ("phi_minus", PHI_MINUS),
    ("phi_plus", PHI_PLUS),
)

POVM_TOL = 1e-10


def party_observable(x):
    """System-qubit observable for setting x in {0, 1}."""
    return (SIGMA_Z + (-1) ** x * SIGMA_X) / np.sqrt(2)


def party_projector(party, outcome, setting):
    """Rank-1 projector party j applies for the given outcome and setting."""
    sign = (-1) ** outcome * (1 if party == 0 else -1)
    return (ID2 + sign * party_observable(setting)) / 2


def _bsm_elements(p):
    """Noisy Bell-state measurement elements for any real p (no range check)."""
    return tuple(
        p * proj(vec) + (1 - p) * np.eye(4, dtype=complex) / 4
        for _, vec in BELL_LABELING
    )


def noisy_bsm(p):
    """The four POVM elements E_c = p |beta_c><beta_c| + (1-p) I/4.

    Outcome order follows the two-bit label (c_0, c_1) read as a binary
    number: psi-, psi+, phi-, phi+.  Raises unless 0 <= p <= 1.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"sharpness p must lie in [0, 1], got {p}")
    return _bsm_elements(p)


def validate_povm(elements, tol=POVM_TOL):
    """Return a list of POVM violations: non-Hermitian or non-positive
    elements, or completeness failure (sum != identity), checked within tol."""
    problems = []
    elements = [np.asarray(e, dtype=complex) for e in elements]
    if not elements:
        return ["no elements given"]
    dim = elements[0].shape[0]
    for idx, el in enumerate(elements):
        if el.shape != (dim, dim):
            problems.append(f"element {idx} has shape {el.shape}, expected ({dim}, {dim})")
            continue
        herm = np.abs(el - el.conj().T).max()
        if herm > tol:
            problems.append(f"element {idx} deviates from Hermitian by {herm:.3e}")
            continue
        low = np.linalg.eigvalsh(el).min()
        if low < -tol:
            problems.append(f"element {idx} has negative eigenvalue {low:.3e}")
    total = sum(elements)
    if total.shape == (dim, dim):
        gap = np.abs(total - np.eye(dim)).max()
        if gap > tol:
            problems.append(f"elements sum to identity only within {gap:.3e}")
    return problems


def quantum_behavior(p):
    """Behavior tensor of the singlet-pair model, by full density-matrix
    simulation of the 4-qubit state."""
    povm = noisy_bsm(p)
    rho = np.kron(proj(PSI_MINUS), proj(PSI_MINUS))
    arr = np.empty((2, 2, 2, 2, 2, 2))
    for x, y in itertools.product(range(2), repeat=2):
        for a, b in itertools.product(range(2), repeat=2):
            local = kron_all(
                party_projector(0, a, x), ID2, party_projector(1, b, y), ID2
            )
            for c0, c1 in itertools.product(range(2), repeat=2):
                joint = embed_operator(povm[2 * c0 + c1], [1, 3], 4)
                arr[x, y, a, b, c0, c1] = np.trace(rho @ local @ joint).real
    return BehaviorTensor(ScenarioShape(2, 2), arr)


def closed_form_behavior(p):
    """The same behavior directly from its exact closed form."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"sharpness p must lie in [0, 1], got {p}")
    arr = np.empty((2, 2, 2, 2, 2, 2))
    for x, y, a, b, c0, c1 in itertools.product(range(2), repeat=6):
        bracket = ((-1.0) ** c0 + (-1.0) ** (x + y + c1)) / 2.0
        arr[x, y, a, b, c0, c1] = (1.0 + p * (-1.0) ** (a + b) * bracket) / 16.0
    return BehaviorTensor(ScenarioShape(2, 2), arr)


@dataclass(frozen=True)
class QuantumScenario:
    """The singlet-pair model at a fixed measurement sharpness."""

    sharpness: float

    def __post_init__(self):
        if not 0.0 <= self.sharpness <= 1.0:
            raise ValueError(f"sharpness must lie in [0, 1], got {self.sharpness}")

    def povm(self):
        return noisy_bsm(self.sharpness)

    def behavior(self):
        return quantum_behavior(self.sharpness)

    def closed_form(self):
        return closed_form_behavior(self.sharpness)
