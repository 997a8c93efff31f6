"""Portable deterministic random streams.

The generator is SplitMix64 used as a counter hash: draw ``k`` is the mixed
value of ``seed + (k+1) * GOLDEN`` (mod 2^64).  Gaussian variates come from
the Box-Muller transform of those uniforms.  Both steps are fixed arithmetic
on 64-bit integers and binary64 floats, so identical seeds give bitwise
identical streams on every platform — no library sampler is involved.

Stream-split rule for independent trials: trial ``k`` of a run seeded with
``s`` uses ``derive_seed(s, k)``.
"""
from __future__ import annotations

import numpy as np

__all__ = ["SplitMix64", "derive_seed", "mix64"]

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def derive_seed(base_seed: int, index: int) -> int:
    """Seed for trial ``index`` of a run seeded with ``base_seed``."""
    if index < 0:
        raise ValueError("trial index must be nonnegative")
    return mix64((base_seed + (index + 1) * _GOLDEN) & _MASK)


class SplitMix64:
    """Counter-based SplitMix64 stream with Box-Muller Gaussian draws."""

    def __init__(self, seed: int):
        self._seed = np.uint64(seed & _MASK)
        self._counter = 0

    def raw(self, count: int) -> np.ndarray:
        """Next ``count`` raw 64-bit outputs as uint64."""
        idx = np.arange(self._counter + 1, self._counter + count + 1, dtype=np.uint64)
        self._counter += count
        with np.errstate(over="ignore"):
            z = self._seed + idx * np.uint64(_GOLDEN)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
            return z ^ (z >> np.uint64(31))

    def uniforms(self, count: int) -> np.ndarray:
        """Doubles in [0, 1) from the top 53 bits of each raw draw."""
        return (self.raw(count) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def normals(self, count: int) -> np.ndarray:
        """Standard normal variates via Box-Muller on uniform pairs."""
        m = (count + 1) // 2
        u1 = self.uniforms(m)
        u2 = self.uniforms(m)
        # 1 - u1 lies in (0, 1], so the log is finite.
        r = np.sqrt(-2.0 * np.log(1.0 - u1))
        theta = 2.0 * np.pi * u2
        return np.concatenate([r * np.cos(theta), r * np.sin(theta)])[:count]

    def complex_normals(self, count: int) -> np.ndarray:
        """Complex Gaussians with E|z|^2 = 1 (real/imag parts N(0, 1/2))."""
        x = self.normals(count)
        y = self.normals(count)
        return (x + 1j * y) / np.sqrt(2.0)
