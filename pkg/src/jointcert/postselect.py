"""Post-selected view of the quantum model, and the certification gap.

Conditioning the two parties' system qubits on a Bell-measurement outcome c
swaps the entanglement inward: the induced two-qubit state is exactly the
Werner state

    rho_c = p |beta_c><beta_c| + (1 - p) I/4

with the same Bell label the measuring device announced, each outcome having
probability 1/4.  Werner states with visibility below 0.66 are known to admit
a local hidden-variable model for projective measurements (a published
sufficient threshold), and their largest CHSH value is 2*sqrt(2)*p, crossing
the local bound 2 only at p = 1/sqrt(2).

The certification gap: for 1/2 < p < 0.66 the joint statistic sqrt(2p)
already exceeds its classical bound while every post-selected state is
LHV-simulable, so the violation is attributable to the measurement itself.
"""
from dataclasses import dataclass

import numpy as np

from .inequalities import evaluate_mn
from .linalg import PAULIS, PSI_MINUS, embed_operator, partial_trace, proj, trace_distance
from .quantum import BELL_LABELING, noisy_bsm, quantum_behavior

WERNER_LHV_THRESHOLD = 0.66
VERDICT_TOL = 1e-9


def induced_state(p, outcome):
    """Conditional state of the two system qubits given outcome c, with its
    probability.  Returns (rho, probability); rho is a 4x4 density matrix."""
    if not 0 <= outcome < 4:
        raise ValueError(f"outcome must be one of 0..3, got {outcome}")
    povm = noisy_bsm(p)
    rho = np.kron(proj(PSI_MINUS), proj(PSI_MINUS))
    element = embed_operator(povm[outcome], [1, 3], 4)
    unnorm = partial_trace(rho @ element, keep=[0, 2], n_qubits=4)
    prob = float(np.trace(unnorm).real)
    return unnorm / prob, prob


def werner_visibility(rho, target):
    """Visibility of the Werner state closest to rho around the pure state
    target (a 4-vector), plus the trace-distance residual of that fit.

    Uses v = (4 F - 1) / 3 with F the fidelity <target|rho|target>; the
    residual is 0 exactly when rho is of Werner form.
    """
    target = np.asarray(target, dtype=complex).reshape(4)
    fidelity = float(np.real(target.conj() @ rho @ target))
    v = (4.0 * fidelity - 1.0) / 3.0
    model = v * proj(target) + (1.0 - v) * np.eye(4, dtype=complex) / 4.0
    return v, trace_distance(rho, model)


def correlation_matrix(rho):
    """T[i, j] = Tr[rho sigma_i x sigma_j] for i, j over (X, Y, Z)."""
    t = np.empty((3, 3))
    for i, si in enumerate(PAULIS):
        for j, sj in enumerate(PAULIS):
            t[i, j] = np.trace(rho @ np.kron(si, sj)).real
    return t


def chsh_max(rho):
    """Largest CHSH value reachable with projective measurements on rho:
    2 sqrt(s1^2 + s2^2) over the two largest singular values of the
    correlation matrix."""
    s = np.linalg.svd(correlation_matrix(rho), compute_uv=False)
    return 2.0 * float(np.sqrt(s[0] ** 2 + s[1] ** 2))


@dataclass(frozen=True)
class GapReport:
    sharpness: float
    statistic: float
    components: tuple
    chsh_max: float
    werner_visibility: float
    werner_residual: float
    jointly_nonclassical: bool
    postselected_lhv_simulable: bool
    gap_witness: bool


def gap_report(p, tol=VERDICT_TOL):
    """Evaluate the joint statistic and every post-selected state at sharpness p.

    jointly_nonclassical requires the statistic to exceed its bound by more
    than tol; postselected_lhv_simulable requires the worst-case visibility to
    stay strictly below the LHV threshold; gap_witness is their conjunction.
    """
    report = evaluate_mn(quantum_behavior(p))
    worst_v = -np.inf
    worst_chsh = -np.inf
    worst_residual = 0.0
    for outcome, (_, target) in enumerate(BELL_LABELING):
        rho, _ = induced_state(p, outcome)
        v, residual = werner_visibility(rho, target)
        worst_v = max(worst_v, v)
        worst_chsh = max(worst_chsh, chsh_max(rho))
        worst_residual = max(worst_residual, residual)
    nonclassical = report.statistic > report.bound + tol
    simulable = worst_v < WERNER_LHV_THRESHOLD
    return GapReport(
        sharpness=float(p),
        statistic=report.statistic,
        components=report.components,
        chsh_max=worst_chsh,
        werner_visibility=worst_v,
        werner_residual=worst_residual,
        jointly_nonclassical=nonclassical,
        postselected_lhv_simulable=simulable,
        gap_witness=nonclassical and simulable,
    )
