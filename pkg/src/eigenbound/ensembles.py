"""Seeded random matrix ensembles for the property and acceptance suites.

Every ensemble is a pure function of (kind, n, seed, scale): calling
:func:`generate` twice with the same spec yields bitwise-identical matrices.
Trials of a sweep derive their seeds with :func:`trial_spec`, which applies
the stream-split rule from :mod:`eigenbound.rng`.

Kinds and what they exercise:

- ``ginibre_complex``   i.i.d. complex Gaussian entries; generic non-normal.
- ``gaussian_real``     i.i.d. real Gaussian entries; conjugate-pair spectra.
- ``hermitian``         (G + G*)/2 of a Ginibre draw; real spectra, zero
                        imaginary part.
- ``normal_conjugated`` U D U* with Householder-product unitary U; commutator
                        defect at rounding level, the equality-case feedstock.
- ``jordan_nilpotent``  single nilpotent Jordan block, scale on the
                        superdiagonal: q = (n-1) scale^2, delta = scale^4,
                        multiplicity 1 at eigenvalue 0.
- ``diagonal_repeated`` diagonal with one value repeated 2 or 3 times
                        (seed-dependent, capped at n) and the rest separated
                        by at least 0.05 * scale: exact known multiplicities.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .linalg import dense_matrix
from .rng import SplitMix64, derive_seed

__all__ = [
    "KINDS",
    "EnsembleSpec",
    "generate",
    "trial_spec",
    "householder_unitary",
    "build_normal_conjugated",
    "build_diagonal_repeated",
]

KINDS = (
    "ginibre_complex",
    "gaussian_real",
    "hermitian",
    "normal_conjugated",
    "jordan_nilpotent",
    "diagonal_repeated",
)

_MIN_SEPARATION = 0.05  # in units of scale, between distinct diagonal values


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str
    n: int
    seed: int
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}; choose from {KINDS}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if not self.scale > 0:
            raise ValueError("scale must be positive")


def trial_spec(base: EnsembleSpec, index: int) -> EnsembleSpec:
    """Spec for trial ``index`` of a sweep seeded with ``base.seed``."""
    return replace(base, seed=derive_seed(base.seed, index))


def householder_unitary(rng: SplitMix64, n: int) -> np.ndarray:
    """Product of n complex Householder reflectors; unitary to rounding."""
    u = np.eye(n, dtype=np.complex128)
    for _ in range(n):
        v = rng.complex_normals(n)
        v /= np.linalg.norm(v)
        u = u - 2.0 * np.outer(v, v.conj() @ u)
    return u


def _ginibre(rng: SplitMix64, n: int, scale: float) -> np.ndarray:
    return (rng.complex_normals(n * n) * scale).reshape(n, n)


def build_normal_conjugated(n: int, seed: int, scale: float = 1.0):
    """(matrix, diagonal, unitary) with matrix = U diag U*.

    Exposed separately so known-spectrum tests can check the oracle against
    the diagonal that built the matrix.
    """
    rng = SplitMix64(seed)
    d = rng.complex_normals(n) * scale
    u = householder_unitary(rng, n)
    a = (u * d) @ u.conj().T
    return a, d, u


def build_diagonal_repeated(n: int, seed: int, scale: float = 1.0):
    """(matrix, repeated_value, repeat_count) for the repeated-diagonal kind.

    The repeat count is 2 or 3 (seed bit, capped at n); the remaining values
    keep every pairwise distance at least 0.05 * scale so the repeated
    eigenvalue's multiplicity is unambiguous at any sane rank tolerance.
    """
    rng = SplitMix64(seed)
    r = 2 if rng.uniforms(1)[0] < 0.5 else 3
    r = min(r, n)
    k = n - r + 1
    for _ in range(1000):
        vals = rng.complex_normals(k) * scale
        if k == 1:
            break
        dists = np.abs(vals[:, None] - vals[None, :])[np.triu_indices(k, 1)]
        if dists.min() >= _MIN_SEPARATION * scale:
            break
    else:
        raise RuntimeError("could not draw separated diagonal values")
    diag = np.concatenate([np.repeat(vals[0], r), vals[1:]])
    return np.diag(diag), complex(vals[0]), r


def generate(spec: EnsembleSpec) -> np.ndarray:
    """Draw the matrix described by ``spec`` (deterministic in the spec)."""
    rng = SplitMix64(spec.seed)
    n, scale = spec.n, spec.scale
    if spec.kind == "ginibre_complex":
        a = _ginibre(rng, n, scale)
    elif spec.kind == "gaussian_real":
        a = (rng.normals(n * n) * scale).reshape(n, n).astype(np.complex128)
    elif spec.kind == "hermitian":
        g = _ginibre(rng, n, scale)
        a = (g + g.conj().T) / 2.0
    elif spec.kind == "normal_conjugated":
        a, _, _ = build_normal_conjugated(n, spec.seed, scale)
    elif spec.kind == "jordan_nilpotent":
        a = np.diag(np.full(n - 1, scale, dtype=np.complex128), k=1) if n > 1 \
            else np.zeros((1, 1), dtype=np.complex128)
    else:  # diagonal_repeated
        a, _, _ = build_diagonal_repeated(n, spec.seed, scale)
    return dense_matrix(a)
