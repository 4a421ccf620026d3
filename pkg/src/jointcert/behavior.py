"""Behavior tensors for n preparation devices feeding one joint measurement.

A scenario has n parties, each with a setting x_j in {0..k-1} and a binary
output a_j, plus a single measuring device with no input whose outcome is a
k-bit string c = (c_0 .. c_{k-1}).  A behavior is the conditional distribution
P(a_1..a_n, c_0..c_{k-1} | x_1..x_n), stored as a float64 array of shape

    (k,)*n + (2,)*n + (2,)*k

indexed [x_1, .., x_n, a_1, .., a_n, c_0, .., c_{k-1}] so each per-setting
probability slice is a contiguous row-major block.

Tolerances: entries may be negative down to -1e-12 (clamped to 0 on load),
and each setting slice must sum to 1 within 1e-10.
"""
import itertools
import json
import re
from dataclasses import dataclass, field

import numpy as np

NEGATIVITY_TOL = 1e-12
NORMALIZATION_TOL = 1e-10


class InvalidBehaviorError(ValueError):
    """A behavior file or tensor violates a structural or probability invariant."""


@dataclass(frozen=True)
class ScenarioShape:
    """Number of preparation parties n >= 1 and settings per party k >= 2."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one party, got n={self.n}")
        if self.k < 2:
            raise ValueError(f"need at least two settings, got k={self.k}")

    @property
    def tensor_shape(self):
        return (self.k,) * self.n + (2,) * self.n + (2,) * self.k

    @property
    def settings_shape(self):
        return (self.k,) * self.n

    @property
    def cells_per_setting(self):
        # joint outcomes per setting tuple: n binary outputs, k Charlie bits
        return 2 ** (self.n + self.k)


@dataclass(frozen=True)
class BehaviorTensor:
    shape: ScenarioShape
    probabilities: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.probabilities, dtype=float)
        if arr.shape != self.shape.tensor_shape:
            raise InvalidBehaviorError(
                f"probability array has shape {arr.shape}, expected {self.shape.tensor_shape}"
            )
        object.__setattr__(self, "probabilities", arr)

    @classmethod
    def uniform(cls, shape):
        arr = np.full(shape.tensor_shape, 1.0 / shape.cells_per_setting)
        return cls(shape, arr)


@dataclass(frozen=True)
class CorrelatorSpec:
    """One full-correlator query: a setting per party, which Charlie bit, and
    optional per-party sign flips (used to express wrapped settings A_k = -A_0)."""

    settings: tuple
    charlie_bit: int
    sign_flips: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "settings", tuple(int(s) for s in self.settings))
        if self.sign_flips is None:
            object.__setattr__(self, "sign_flips", (False,) * len(self.settings))
        else:
            object.__setattr__(self, "sign_flips", tuple(bool(f) for f in self.sign_flips))
        if len(self.sign_flips) != len(self.settings):
            raise ValueError("sign_flips length must match settings length")


def validate_behavior(behavior):
    """Return a list of human-readable constraint violations (empty iff valid)."""
    problems = []
    shape = behavior.shape
    arr = behavior.probabilities
    if arr.min() < -NEGATIVITY_TOL:
        idx = np.unravel_index(arr.argmin(), arr.shape)
        problems.append(
            f"negative probability {arr.min():.3e} at index {idx} (tolerance -{NEGATIVITY_TOL:g})"
        )
    sums = arr.reshape(shape.settings_shape + (-1,)).sum(axis=-1)
    bad = np.abs(sums - 1.0) > NORMALIZATION_TOL
    if bad.any():
        for st in zip(*np.nonzero(bad)):
            problems.append(
                f"setting {tuple(int(s) for s in st)} sums to {sums[st]:.12f}, "
                f"expected 1 within {NORMALIZATION_TOL:g}"
            )
    return problems


def marginal_party(behavior, party):
    """Output marginal of one party and its stability across the other settings.

    Returns (table, residual): table[x, a] is P(a_party = a | x_party = x)
    averaged uniformly over the other parties' settings, and residual is the
    largest total-variation distance between any fixed-setting marginal
    P(a_party | full setting tuple) and that average.  For a non-signalling
    behavior the residual is 0.
    """
    shape = behavior.shape
    n, k = shape.n, shape.k
    if not 0 <= party < n:
        raise ValueError(f"party index {party} out of range for n={n}")
    arr = behavior.probabilities
    # sum out every output/outcome axis except this party's output
    keep_out = n + party
    sum_axes = tuple(ax for ax in range(n, 2 * n + k) if ax != keep_out)
    per_setting = arr.sum(axis=sum_axes)  # shape (k,)*n + (2,)
    move = np.moveaxis(per_setting, party, 0)  # (k, other settings..., 2)
    flat = move.reshape(k, -1, 2)
    table = flat.mean(axis=1)
    residual = float(0.5 * np.abs(flat - table[:, None, :]).sum(axis=-1).max())
    return table, residual


def independence_check(behavior):
    """Largest total-variation gap between the joint output marginal P(a_1..a_n|x)
    and the product of single-party marginals, over all setting tuples."""
    shape = behavior.shape
    n, k = shape.n, shape.k
    arr = behavior.probabilities
    joint = arr.sum(axis=tuple(range(2 * n, 2 * n + k)))  # (k,)*n + (2,)*n
    worst = 0.0
    for setting in itertools.product(range(k), repeat=n):
        block = joint[setting]  # (2,)*n
        product = np.ones(())
        for j in range(n):
            single = block.sum(axis=tuple(ax for ax in range(n) if ax != j))
            product = np.multiply.outer(product, single)
        worst = max(worst, 0.5 * float(np.abs(block - product).sum()))
    return worst


def correlator(behavior, spec):
    """Full correlator <A^1_{x_1} .. A^n_{x_n} C^i> = sum (-1)^(a_1+..+a_n+c_i) P,
    with any sign-flipped party contributing an extra factor -1."""
    shape = behavior.shape
    n, k = shape.n, shape.k
    if len(spec.settings) != n:
        raise ValueError(f"expected {n} settings, got {len(spec.settings)}")
    if any(not 0 <= s < k for s in spec.settings):
        raise ValueError(f"settings {spec.settings} out of range for k={k}")
    if not 0 <= spec.charlie_bit < k:
        raise ValueError(f"charlie bit {spec.charlie_bit} out of range for k={k}")
    block = behavior.probabilities[spec.settings]  # (2,)*n + (2,)*k
    sign = np.array([1.0, -1.0])
    total = block
    for ax in range(n):  # party outputs
        total = np.tensordot(sign, total, axes=([0], [0]))
    # party axes consumed; Charlie bit axes remain in order
    total = np.moveaxis(total, spec.charlie_bit, 0)
    total = np.tensordot(sign, total, axes=([0], [0]))
    value = float(total.sum())
    for flip in spec.sign_flips:
        if flip:
            value = -value
    return value


def save_behavior(behavior, path):
    """Write the behavior as JSON with a flat row-major probability list.

    Floats are written with 17 significant digits, which round-trips float64
    exactly, so save -> load -> save is byte-identical.
    """
    flat = behavior.probabilities.reshape(-1)
    body = ", ".join("%.17g" % v for v in flat)
    text = '{"n": %d, "k": %d, "probabilities": [%s]}\n' % (
        behavior.shape.n,
        behavior.shape.k,
        body,
    )
    with open(path, "w") as fh:
        fh.write(text)


def load_behavior(path, strict=False):
    """Read a behavior JSON file.

    Structural problems (bad JSON, missing keys, wrong entry count) always
    raise InvalidBehaviorError.  Probability-invariant violations raise only
    when strict is set; otherwise the behavior is returned as stored, with
    entries in [-1e-12, 0) clamped to exact zeros.
    """
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidBehaviorError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InvalidBehaviorError("top level must be a JSON object")
    for key in ("n", "k", "probabilities"):
        if key not in doc:
            raise InvalidBehaviorError(f"missing required key {key!r}")
    try:
        shape = ScenarioShape(int(doc["n"]), int(doc["k"]))
    except (TypeError, ValueError) as exc:
        raise InvalidBehaviorError(f"bad scenario shape: {exc}") from exc
    values = doc["probabilities"]
    expected = int(np.prod(shape.tensor_shape))
    if not isinstance(values, list) or len(values) != expected:
        got = len(values) if isinstance(values, list) else type(values).__name__
        raise InvalidBehaviorError(
            f"probabilities must be a list of {expected} numbers, got {got}"
        )
    arr = np.asarray(values, dtype=float).reshape(shape.tensor_shape)
    arr = np.where((arr < 0) & (arr >= -NEGATIVITY_TOL), 0.0, arr)
    behavior = BehaviorTensor(shape, arr)
    if strict:
        problems = validate_behavior(behavior)
        if problems:
            raise InvalidBehaviorError("; ".join(problems))
    return behavior
