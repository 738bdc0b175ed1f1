"""Pure-numpy implementations of the hot kernels.

Fallback path for environments without numba; selected via the
``HIERVOTE_BACKEND`` environment variable.  Monte Carlo counts are
bit-identical to the numba backend because both consume the same
splitmix64 stream.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"

_GOLD = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_ONE = np.uint64(1)
_INV53 = 2.0**-53

# elements per chunk of the (trials x voters) uniform matrix
_CHUNK = 2_000_000


def _mix_array(key: np.uint64, idx: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer over ``key`` combined with each index."""
    with np.errstate(over="ignore"):
        z = key + (idx + _ONE) * _GOLD
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))


def _uniforms(tkeys: np.ndarray, n_voters: int) -> np.ndarray:
    """(len(tkeys) x n_voters) matrix of uniforms in [0, 1)."""
    vidx = np.arange(n_voters, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = tkeys[:, None] + (vidx[None, :] + _ONE) * _GOLD
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        z ^= z >> np.uint64(31)
    return (z >> np.uint64(11)).astype(np.float64) * _INV53


def tail_sum(n: int, m: int, ratio: float, log_t0: float) -> float:
    """Sum of binomial upper-tail terms j = m..n from the central log term.

    Terms follow t_{j+1} = t_j * (n - j) / (j + 1) * ratio, which is
    strictly decreasing for ratio < 1, so the series is summed from the
    smallest term upward.
    """
    t0 = np.exp(log_t0)
    if t0 == 0.0 or m == n:
        return float(t0)
    j = np.arange(m, n, dtype=np.float64)
    ratios = (n - j) / (j + 1.0) * ratio
    terms = np.empty(n - m + 1)
    terms[0] = 1.0
    np.cumprod(ratios, out=terms[1:])
    return float(np.sum(terms[::-1]) * t0)


def count_regular_tree(
    layer_sizes: np.ndarray, probs: np.ndarray, trials: int, key: np.uint64
) -> int:
    """Number of trials whose recursive majority yields the correct outcome.

    Bottom-layer voter v of trial t votes correctly iff
    u(key, t, v) < probs[v]; each layer takes strict majorities of
    consecutive blocks.
    """
    n = int(probs.shape[0])
    sizes = [int(k) for k in layer_sizes]
    per = max(1, _CHUNK // max(n, 1))
    correct = 0
    done = 0
    while done < trials:
        mtr = min(per, trials - done)
        tids = np.arange(done, done + mtr, dtype=np.uint64)
        state = _uniforms(_mix_array(key, tids), n) < probs[None, :]
        state = state.astype(np.int64)
        for k in sizes:
            blocks = state.reshape(mtr, -1, k).sum(axis=2)
            state = (2 * blocks > k).astype(np.int64)
        correct += int(state[:, 0].sum())
        done += mtr
    return correct


def count_two_level(
    group_sizes: np.ndarray, probs: np.ndarray, trials: int, key: np.uint64
) -> int:
    """Two-level variant allowing different per-group sizes."""
    n = int(probs.shape[0])
    sizes = np.asarray(group_sizes, dtype=np.int64)
    l = sizes.shape[0]
    bounds = np.concatenate(([0], np.cumsum(sizes)))
    per = max(1, _CHUNK // max(n, 1))
    correct = 0
    done = 0
    while done < trials:
        mtr = min(per, trials - done)
        tids = np.arange(done, done + mtr, dtype=np.uint64)
        bits = _uniforms(_mix_array(key, tids), n) < probs[None, :]
        wins = np.zeros(mtr, dtype=np.int64)
        for g in range(l):
            cnt = bits[:, bounds[g] : bounds[g + 1]].sum(axis=1)
            wins += 2 * cnt > sizes[g]
        correct += int((2 * wins > l).sum())
        done += mtr
    return correct
