"""Classical causal models for the joint-measurement scenario.

A classical strategy consists of, for each party j:

 - an output table P(a_j | x_j), shape (k, 2), one row per setting;
 - a hidden-source distribution P(lambda_j), shape (L,), where L is the
   hidden alphabet size shared by all parties;

plus a response table for the measuring device, P(c | lambda_1 .. lambda_n)
of shape (L,)*n + (2,)*k.  The hidden sources do not depend on the settings;
this is the constraint that makes the inequality bounds hold, and behaviors
generated here factorize as P(a|x) * P(c).

The module provides exact conversion to behavior tensors, exhaustive
enumeration of deterministic strategies, a known family saturating the
two-setting bound, and a seeded multi-restart ascent optimizer over the full
(continuous) strategy class.
"""
import itertools
import json
from dataclasses import dataclass

import numpy as np

from .behavior import BehaviorTensor, InvalidBehaviorError, ScenarioShape
from .inequalities import evaluate_chain

ROW_TOL = 1e-12


@dataclass(frozen=True)
class ClassicalStrategy:
    shape: ScenarioShape
    hidden_alphabet: int
    output_tables: tuple  # n arrays of shape (k, 2)
    hidden_dists: tuple  # n arrays of shape (L,)
    charlie_table: np.ndarray  # shape (L,)*n + (2,)*k

    def __post_init__(self):
        n, k = self.shape.n, self.shape.k
        L = int(self.hidden_alphabet)
        if L < 1:
            raise ValueError(f"hidden alphabet size must be >= 1, got {L}")
        object.__setattr__(self, "hidden_alphabet", L)
        tables = tuple(np.asarray(t, dtype=float) for t in self.output_tables)
        dists = tuple(np.asarray(d, dtype=float) for d in self.hidden_dists)
        charlie = np.asarray(self.charlie_table, dtype=float)
        if len(tables) != n or any(t.shape != (k, 2) for t in tables):
            raise ValueError(f"need {n} output tables of shape ({k}, 2)")
        if len(dists) != n or any(d.shape != (L,) for d in dists):
            raise ValueError(f"need {n} hidden distributions of shape ({L},)")
        expect = (L,) * n + (2,) * k
        if charlie.shape != expect:
            raise ValueError(f"charlie table has shape {charlie.shape}, expected {expect}")
        object.__setattr__(self, "output_tables", tables)
        object.__setattr__(self, "hidden_dists", dists)
        object.__setattr__(self, "charlie_table", charlie)


def validate_strategy(strategy):
    """Return a list of probability-invariant violations (empty iff valid)."""
    problems = []
    n = strategy.shape.n

    def check_rows(name, rows):
        rows = rows.reshape(-1, rows.shape[-1])
        if rows.min() < -ROW_TOL:
            problems.append(f"{name} has a negative entry {rows.min():.3e}")
        err = np.abs(rows.sum(axis=-1) - 1.0).max()
        if err > ROW_TOL:
            problems.append(f"{name} rows off normalization by {err:.3e}")

    for j in range(n):
        check_rows(f"output table {j}", strategy.output_tables[j])
        check_rows(f"hidden distribution {j}", strategy.hidden_dists[j][None, :])
    flat = strategy.charlie_table.reshape(strategy.hidden_alphabet**n, -1)
    check_rows("charlie table", flat)
    return problems


def strategy_to_behavior(strategy):
    """Exact behavior tensor P(a, c | x) produced by a classical strategy."""
    shape = strategy.shape
    n = shape.n
    # output part: outer product over parties, axes (x_1, a_1, x_2, a_2, ..)
    out = np.ones(())
    for table in strategy.output_tables:
        out = np.multiply.outer(out, table)
    perm = [2 * j for j in range(n)] + [2 * j + 1 for j in range(n)]
    out = out.transpose(perm)  # (k,)*n + (2,)*n
    # measuring-device part: average the response table over the hidden sources
    cdist = strategy.charlie_table
    for dist in strategy.hidden_dists:
        cdist = np.tensordot(dist, cdist, axes=([0], [0]))
    return BehaviorTensor(shape, np.multiply.outer(out, cdist))


def saturation_strategy(r):
    """A strategy family meeting the two-setting classical bound exactly.

    Both parties output 0 deterministically at setting 0 and output 0 with
    probability r at setting 1; the measuring device always announces (0, 0).
    The resulting correlator averages are (r**2, (1-r)**2), so the statistic
    sqrt|M| + sqrt|N| equals 1 for every r in [0, 1].
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must lie in [0, 1], got {r}")
    shape = ScenarioShape(2, 2)
    table = np.array([[1.0, 0.0], [r, 1.0 - r]])
    charlie = np.zeros((2, 2, 2, 2))
    charlie[:, :, 0, 0] = 1.0
    return ClassicalStrategy(
        shape=shape,
        hidden_alphabet=2,
        output_tables=(table, table.copy()),
        hidden_dists=(np.array([0.5, 0.5]), np.array([0.5, 0.5])),
        charlie_table=charlie,
    )


def deterministic_count(shape, hidden_alphabet):
    """Number of deterministic strategies: output functions x_j -> a_j per
    party, a point-mass hidden value per party, and a response function
    lambda -> c for the measuring device."""
    n, k = shape.n, shape.k
    L = hidden_alphabet
    return (2**k) ** n * L**n * (2**k) ** (L**n)


def enumerate_deterministic(shape, hidden_alphabet, cap=10**8):
    """Yield every deterministic strategy of the given shape.

    Refuses upfront (ValueError) when the total count exceeds cap.
    """
    n, k = shape.n, shape.k
    L = hidden_alphabet
    total = deterministic_count(shape, hidden_alphabet)
    if total > cap:
        raise ValueError(f"{total} deterministic strategies exceeds cap {cap}")

    table_pool = []
    for func in itertools.product(range(2), repeat=k):
        table = np.zeros((k, 2))
        for x, a in enumerate(func):
            table[x, a] = 1.0
        table_pool.append(table)
    dist_pool = [np.eye(L)[v] for v in range(L)]

    n_cells = L**n
    n_outcomes = 2**k
    for out_choice in itertools.product(range(len(table_pool)), repeat=n):
        tables = tuple(table_pool[c] for c in out_choice)
        for hid_choice in itertools.product(range(L), repeat=n):
            dists = tuple(dist_pool[v] for v in hid_choice)
            for response in itertools.product(range(n_outcomes), repeat=n_cells):
                charlie = np.zeros((n_cells, n_outcomes))
                charlie[np.arange(n_cells), response] = 1.0
                yield ClassicalStrategy(
                    shape=shape,
                    hidden_alphabet=L,
                    output_tables=tables,
                    hidden_dists=dists,
                    charlie_table=charlie.reshape((L,) * n + (2,) * k),
                )


def save_strategy(strategy, path):
    """Write a strategy as JSON with flat row-major float lists (17 digits)."""

    def fmt(arr):
        return "[%s]" % ", ".join("%.17g" % v for v in np.asarray(arr).reshape(-1))

    parts = [
        '"n": %d' % strategy.shape.n,
        '"k": %d' % strategy.shape.k,
        '"hidden_alphabet": %d' % strategy.hidden_alphabet,
        '"output_tables": [%s]' % ", ".join(fmt(t) for t in strategy.output_tables),
        '"hidden_dists": [%s]' % ", ".join(fmt(d) for d in strategy.hidden_dists),
        '"charlie_table": %s' % fmt(strategy.charlie_table),
    ]
    with open(path, "w") as fh:
        fh.write("{" + ", ".join(parts) + "}\n")


def load_strategy(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidBehaviorError(f"not valid JSON: {exc}") from exc
    try:
        shape = ScenarioShape(int(doc["n"]), int(doc["k"]))
        L = int(doc["hidden_alphabet"])
        n, k = shape.n, shape.k
        tables = tuple(
            np.asarray(t, dtype=float).reshape(k, 2) for t in doc["output_tables"]
        )
        dists = tuple(
            np.asarray(d, dtype=float).reshape(L) for d in doc["hidden_dists"]
        )
        charlie = np.asarray(doc["charlie_table"], dtype=float).reshape(
            (L,) * n + (2,) * k
        )
        return ClassicalStrategy(shape, L, tables, dists, charlie)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidBehaviorError(f"bad strategy file: {exc}") from exc


# --- optimizer over the continuous strategy class -------------------------
#
# Strategies are parameterized by unconstrained logits (softmax per row), the
# chain statistic is evaluated through its product decomposition
#
#     I_i = Gamma_i * prod_j hbar_j(i),
#     hbar_j(i) = (<A_i> + sigma_i <A_{i+1 mod k}>) / 2,   sigma_i = -1 at i = k-1,
#     Gamma_i = sum_lambda w_lambda <C^i>_lambda,
#
# and ascent directions come from central differences evaluated in grouped
# form: each coordinate perturbs exactly one softmax row, so only the pieces
# of the decomposition touching that row are recomputed.  Everything is
# batched over restarts.


def _softmax(z):
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def _charlie_signs(k):
    """Matrix S of shape (2**k, k): S[c, i] = (-1)**(bit i of outcome c),
    with bit 0 the most significant (row-major outcome flattening)."""
    c = np.arange(2**k)
    i = np.arange(k)
    bits = (c[:, None] >> (k - 1 - i[None, :])) & 1
    return 1.0 - 2.0 * bits


def _party_letters(n):
    return "abcdefgh"[:n]


def _hidden_weights(hid_probs):
    """Joint hidden weight w[r, lambda_flat] from per-party dists (R, n, L)."""
    n = hid_probs.shape[1]
    letters = _party_letters(n)
    spec = ",".join("r" + let for let in letters) + "->r" + letters
    w = np.einsum(spec, *[hid_probs[:, j] for j in range(n)])
    return w.reshape(hid_probs.shape[0], -1)


def _charlie_partials(c_corr, hid_probs, L):
    """T[r, j, v, i]: Gamma_i contribution with party j's hidden value pinned
    to v and every other party averaged.  Gamma_i = sum_v hid[j, v] T[j, v, i]."""
    R, n = hid_probs.shape[0], hid_probs.shape[1]
    k = c_corr.shape[-1]
    grid = c_corr.reshape((R,) + (L,) * n + (k,))
    letters = _party_letters(n)
    out = np.empty((R, n, L, k))
    for j in range(n):
        others = [jp for jp in range(n) if jp != j]
        terms = ["r" + letters + "i"] + ["r" + letters[jp] for jp in others]
        spec = ",".join(terms) + "->r" + letters[j] + "i"
        out[:, j] = np.einsum(spec, grid, *[hid_probs[:, jp] for jp in others])
    return out


def _decompose(out_logits, hid_logits, cha_logits, n, k, L):
    """All intermediate quantities of the fast statistic, batched over axis 0."""
    out_probs = _softmax(out_logits)  # (R, n, k, 2)
    hid_probs = _softmax(hid_logits)  # (R, n, L)
    cha_probs = _softmax(cha_logits)  # (R, L**n, 2**k)
    means = out_probs[..., 0] - out_probs[..., 1]  # (R, n, k)
    sigma = np.ones(k)
    sigma[k - 1] = -1.0
    nxt = (np.arange(k) + 1) % k
    h = 0.5 * (means + sigma * means[..., nxt])  # (R, n, k)
    hprod = h.prod(axis=1)  # (R, k)
    c_corr = cha_probs @ _charlie_signs(k)  # (R, L**n, k)
    w = _hidden_weights(hid_probs)  # (R, L**n)
    gamma = np.einsum("rm,rmi->ri", w, c_corr)  # (R, k)
    comps = gamma * hprod  # (R, k)
    stat = (np.abs(comps) ** (1.0 / n)).sum(axis=-1)  # (R,)
    return {
        "out_probs": out_probs,
        "hid_probs": hid_probs,
        "cha_probs": cha_probs,
        "means": means,
        "sigma": sigma,
        "h": h,
        "hprod": hprod,
        "c_corr": c_corr,
        "w": w,
        "gamma": gamma,
        "comps": comps,
        "stat": stat,
    }


def _batched_statistic(out_logits, hid_logits, cha_logits, n, k, L):
    return _decompose(out_logits, hid_logits, cha_logits, n, k, L)["stat"]


def _batched_gradient(out_logits, hid_logits, cha_logits, n, k, L, step):
    """Central-difference gradient of the chain statistic in logit space.

    Returns (g_out, g_hid, g_cha, stat) with gradients shaped like the inputs.
    """
    d = _decompose(out_logits, hid_logits, cha_logits, n, k, L)
    R = out_logits.shape[0]
    root = 1.0 / n
    stat = d["stat"]
    sigma, means, h, gamma, comps = d["sigma"], d["means"], d["h"], d["gamma"], d["comps"]
    part = np.abs(comps) ** root  # (R, k)
    bump = step * np.array([1.0, -1.0])  # sign axis

    # product over parties except j, per component
    excl = np.empty((R, n, k))
    for j in range(n):
        others = [jp for jp in range(n) if jp != j]
        excl[:, j] = h[:, others].prod(axis=1) if others else 1.0

    # output coordinates: logit (j, x, b) alters <A_x> for party j only,
    # touching components x and (x-1) mod k
    eye2 = np.eye(2)
    bumped = (
        out_logits[:, :, :, None, None, :]
        + eye2[None, None, None, :, None, :] * bump[None, None, None, None, :, None]
    )  # (R, n, k, b, s, comp)
    p = _softmax(bumped)
    means_new = p[..., 0] - p[..., 1]  # (R, n, k, b, s)
    prev = (np.arange(k) - 1) % k
    nxt = (np.arange(k) + 1) % k
    # component i1 = x: h' = (A'_x + sigma_x A_{x+1}) / 2
    h_i1 = 0.5 * (
        means_new + sigma[None, None, :, None, None] * means[..., nxt][:, :, :, None, None]
    )
    # component i0 = (x-1) mod k: h' = (A_{x-1} + sigma_{x-1} A'_x) / 2
    h_i0 = 0.5 * (
        means[..., prev][:, :, :, None, None]
        + sigma[prev][None, None, :, None, None] * means_new
    )
    i1_new = gamma[:, None, :, None, None] * excl[:, :, :, None, None] * h_i1
    i0_new = (
        np.take(gamma, prev, axis=1)[:, None, :, None, None]
        * np.take(excl, prev, axis=2)[:, :, :, None, None]
        * h_i0
    )
    drop = (
        part[:, None, :, None, None]
        + np.take(part, prev, axis=1)[:, None, :, None, None]
    )
    s_out = (
        stat[:, None, None, None, None]
        - drop
        + np.abs(i1_new) ** root
        + np.abs(i0_new) ** root
    )  # (R, n, k, b, s)
    g_out = (s_out[..., 0] - s_out[..., 1]) / (2.0 * step)

    # hidden coordinates: logit (j, v) reweights Gamma through the partials T
    T = _charlie_partials(d["c_corr"], d["hid_probs"], L)  # (R, n, L, k)
    eyeL = np.eye(L)
    bumped = (
        hid_logits[:, :, None, None, :]
        + eyeL[None, None, :, None, :] * bump[None, None, None, :, None]
    )  # (R, n, v, s, comp)
    hid_new = _softmax(bumped)
    gamma_new = np.einsum("rjvsu,rjui->rjvsi", hid_new, T)
    comps_new = gamma_new * d["hprod"][:, None, None, None, :]
    s_hid = (np.abs(comps_new) ** root).sum(axis=-1)  # (R, n, v, s)
    g_hid = (s_hid[..., 0] - s_hid[..., 1]) / (2.0 * step)

    # charlie coordinates: logit (m, c) changes one response row, a rank-one
    # update to Gamma
    M, C = cha_logits.shape[1], cha_logits.shape[2]
    eyeC = np.eye(C)
    bumped = (
        cha_logits[:, :, None, None, :]
        + eyeC[None, None, :, None, :] * bump[None, None, None, :, None]
    )  # (R, m, c, s, comp)
    rows_new = _softmax(bumped)
    corr_new = rows_new @ _charlie_signs(k)  # (R, m, c, s, i)
    delta = corr_new - d["c_corr"][:, :, None, None, :]
    gamma_new = gamma[:, None, None, None, :] + d["w"][:, :, None, None, None] * delta
    comps_new = gamma_new * d["hprod"][:, None, None, None, :]
    s_cha = (np.abs(comps_new) ** root).sum(axis=-1)  # (R, m, c, s)
    g_cha = (s_cha[..., 0] - s_cha[..., 1]) / (2.0 * step)

    return g_out, g_hid, g_cha, stat


def _normalize_logits(z):
    return np.clip(z - z.max(axis=-1, keepdims=True), -60.0, 0.0)


def optimize_classical(
    shape,
    hidden_alphabet=2,
    restarts=20,
    seed=0,
    iterations=500,
    step=1e-6,
):
    """Seeded multi-restart ascent over the continuous classical strategy class.

    Maximizes the chain statistic.  Restart r draws its starting point from
    numpy's default generator seeded with seed + r, so results are fully
    reproducible; ties resolve to the lowest restart index.  Returns
    (report, strategy) where the report is computed through the public
    behavior-tensor route on the best strategy found.
    """
    n, k = shape.n, shape.k
    L = int(hidden_alphabet)
    if L < 1:
        raise ValueError(f"hidden alphabet size must be >= 1, got {L}")
    if restarts < 1:
        raise ValueError("need at least one restart")
    M, C = L**n, 2**k

    out_logits = np.empty((restarts, n, k, 2))
    hid_logits = np.empty((restarts, n, L))
    cha_logits = np.empty((restarts, M, C))
    for r in range(restarts):
        rng = np.random.default_rng(seed + r)
        out_logits[r] = rng.normal(size=(n, k, 2))
        hid_logits[r] = rng.normal(size=(n, L))
        cha_logits[r] = rng.normal(size=(M, C))
    out_logits = _normalize_logits(out_logits)
    hid_logits = _normalize_logits(hid_logits)
    cha_logits = _normalize_logits(cha_logits)

    eta = np.full(restarts, 0.5)
    for _ in range(iterations):
        g_out, g_hid, g_cha, stat = _batched_gradient(
            out_logits, hid_logits, cha_logits, n, k, L, step
        )
        e1 = eta[:, None, None, None]
        cand_out = _normalize_logits(out_logits + e1 * g_out)
        cand_hid = _normalize_logits(hid_logits + eta[:, None, None] * g_hid)
        cand_cha = _normalize_logits(cha_logits + e1[:, :, :, 0] * g_cha)
        cand_stat = _batched_statistic(cand_out, cand_hid, cand_cha, n, k, L)
        accept = cand_stat > stat
        out_logits = np.where(accept[:, None, None, None], cand_out, out_logits)
        hid_logits = np.where(accept[:, None, None], cand_hid, hid_logits)
        cha_logits = np.where(accept[:, None, None], cand_cha, cha_logits)
        eta = np.clip(np.where(accept, eta * 1.25, eta * 0.5), 1e-12, 1e6)

    final = _batched_statistic(out_logits, hid_logits, cha_logits, n, k, L)
    best = int(np.argmax(final))
    strategy = ClassicalStrategy(
        shape=shape,
        hidden_alphabet=L,
        output_tables=tuple(_softmax(out_logits[best, j]) for j in range(n)),
        hidden_dists=tuple(_softmax(hid_logits[best, j]) for j in range(n)),
        charlie_table=_softmax(cha_logits[best]).reshape((L,) * n + (2,) * k),
    )
    report = evaluate_chain(strategy_to_behavior(strategy))
    return report, strategy
