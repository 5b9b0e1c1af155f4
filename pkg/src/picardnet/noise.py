"""Deterministic, order-independent noise indexed by integer tuples.

A :class:`NoiseTree` plays the role of one fixed random outcome: for every
index tuple theta it provides one uniform variate on [0, 1] and one Brownian
path sampled on the finest dyadic-style grid {k T / m^grid_levels}.  Every
value is a pure function of (master_seed, theta, query), so evaluation order
is irrelevant and distinct theta behave like independent streams.

Streams are derived with a SplitMix64-style bit finalizer: the tuple is
folded into a 64-bit key, and the key plus a counter times the golden-ratio
constant is finalized into each output word.  The scalar path uses Python
integers; the batch path uses uint64 arrays; both compute the same values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtri

ThetaIndex = tuple[int, ...]

_MASK = (1 << 64) - 1
_PHI = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB

_PHI_U = np.uint64(_PHI)
_MUL1_U = np.uint64(_MUL1)
_MUL2_U = np.uint64(_MUL2)


def _mix(x: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer."""
    x &= _MASK
    x = ((x ^ (x >> 30)) * _MUL1) & _MASK
    x = ((x ^ (x >> 27)) * _MUL2) & _MASK
    return x ^ (x >> 31)


def _mix_array(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64, copy=True)
    x ^= x >> np.uint64(30)
    x *= _MUL1_U
    x ^= x >> np.uint64(27)
    x *= _MUL2_U
    x ^= x >> np.uint64(31)
    return x


def _to_unit(v):
    """Map 64-bit words to the open interval (0, 1)."""
    return ((v >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0 ** -53


def theta_key(master_seed: int, theta: ThetaIndex) -> int:
    """64-bit stream key for one index tuple."""
    if len(theta) == 0:
        raise ValueError("theta must be a nonempty tuple")
    h = master_seed & _MASK
    for e in theta:
        if e < 0:
            raise ValueError(f"theta entries must be nonnegative, got {theta}")
        h = _mix(h ^ _mix((e + _PHI) & _MASK))
    return h


def fold_keys(keys: np.ndarray, element: int) -> np.ndarray:
    """Extend a batch of stream keys by one further tuple element."""
    salt = np.uint64(_mix((element + _PHI) & _MASK))
    return _mix_array(keys ^ salt)


def base_keys(master_seed: int, bases: np.ndarray) -> np.ndarray:
    """Stream keys for the single-element tuples (b,) for each b in bases."""
    b = np.asarray(bases, dtype=np.uint64)
    seed = np.uint64(master_seed & _MASK)
    return _mix_array(np.full_like(b, seed) ^ _mix_array(b + _PHI_U))


def _values(key_arr: np.ndarray, counters: np.ndarray) -> np.ndarray:
    """Output words for keys (broadcast) at 1-based value counters."""
    return _mix_array(key_arr + counters * _PHI_U)


@dataclass
class NoiseTree:
    """One fixed noise realization over the whole index-tuple family.

    grid_levels fixes the finest Brownian grid step T / m**grid_levels; every
    time queried by the estimator at recursion level <= grid_levels lies on
    this grid.  Brownian paths are cached per tuple after first access.
    """

    master_seed: int
    T: float
    d: int
    grid_levels: int
    m: int
    _paths: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.T <= 0 or self.d < 1 or self.grid_levels < 0 or self.m < 1:
            raise ValueError("need T > 0, d >= 1, grid_levels >= 0, m >= 1")

    @property
    def grid_size(self) -> int:
        return self.m ** self.grid_levels


def uniform_time(tree: NoiseTree, theta: ThetaIndex) -> float:
    """The uniform variate on (0, 1) attached to one index tuple."""
    h = theta_key(tree.master_seed, tuple(theta))
    v = _mix(h + _PHI)
    return float((((v >> 11)) + 0.5) * 2.0 ** -53)


def uniform_time_batch(keys: np.ndarray) -> np.ndarray:
    """Vector of uniforms for a batch of pre-folded stream keys."""
    return _to_unit(_values(keys, np.uint64(1)))


def brownian_path(tree: NoiseTree, theta: ThetaIndex) -> np.ndarray:
    """Cumulative Brownian values, shape (grid_size + 1, d), row 0 zero."""
    theta = tuple(theta)
    cached = tree._paths.get(theta)
    if cached is not None:
        return cached
    h = theta_key(tree.master_seed, theta)
    path = _paths_from_keys(np.array([h], dtype=np.uint64), tree)[0]
    path.flags.writeable = False
    tree._paths[theta] = path
    return path


def _paths_from_keys(keys: np.ndarray, tree: NoiseTree) -> np.ndarray:
    """Brownian paths for a key batch, shape (len(keys), grid_size + 1, d)."""
    G, d = tree.grid_size, tree.d
    counters = np.arange(2, G * d + 2, dtype=np.uint64) * _PHI_U
    words = _values(keys[:, None], counters[None, :])
    z = ndtri(_to_unit(words)).reshape(len(keys), G, d)
    dt = tree.T / G
    out = np.zeros((len(keys), G + 1, d))
    np.cumsum(z, axis=1, out=out[:, 1:, :])
    out[:, 1:, :] *= np.sqrt(dt)
    return out


def brownian_path_batch(tree: NoiseTree, keys: np.ndarray) -> np.ndarray:
    """Uncached batch variant of :func:`brownian_path`."""
    return _paths_from_keys(np.asarray(keys, dtype=np.uint64), tree)


def grid_index(tree: NoiseTree, t: float) -> int:
    """Index of a finest-grid time, rejecting off-grid queries."""
    G = tree.grid_size
    pos = t / tree.T * G
    k = int(round(pos))
    if k < 0 or k > G or abs(pos - k) > 1e-6:
        raise ValueError(f"time {t} is not on the grid with step T/{G}")
    return k


def brownian_at(tree: NoiseTree, theta: ThetaIndex, t: float) -> np.ndarray:
    """Brownian value W^theta(t) at a finest-grid time, shape (d,)."""
    return brownian_path(tree, theta)[grid_index(tree, t)]
