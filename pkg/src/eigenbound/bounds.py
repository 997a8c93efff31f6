"""Trace-centered localization discs and the inequalities that support them.

Every disc is centered at tr(A)/n.  Two scalar statistics drive the radii:

    q     = ||A||_F^2 - |tr A|^2 / n          (spectral variance proxy, >= 0)
    delta = ||A A* - A* A||_F^2 / 2           (commutator defect; 0 iff normal)

For an eigenvalue of geometric multiplicity t the defect-corrected disc is

    |lambda - tr(A)/n| <= sqrt( (n-t)/((2n-t) t) )
                          * sqrt( (n-t)/n * q + sqrt( q^2 - (2n-t) t / n^2 * delta ) )

which collapses for normal matrices (delta = 0) to the envelope radius

    sqrt( (n-t)/(n t) * q )

applied here to the Hermitian parts (A + A*)/2 and (A - A*)/(2i).  The
classical modulus interval used for sharpness comparison is

    |tr A|/n <= |lambda|_max <= |tr A|/n + sqrt( (n-1)/n * q ).

Two trace identities of the shifted matrix M = lam*I - A are exposed as
checkable quantities: |tr M|^2 = n^2 s and ||M||_F^4 = (n s + q)^2, with
s = |lam - tr(A)/n|^2.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from . import linalg
from .oracle import MultiplicityEstimate, RankEstimate, Spectrum

__all__ = [
    "BoundInputs",
    "Disc",
    "DerivationProbe",
    "ClusterComparison",
    "DiscriminantError",
    "DISC_SOURCES",
    "bound_inputs",
    "theorem1_radius",
    "normal_case_radius",
    "theorem2_discs",
    "classical_interval",
    "classical_width",
    "envelope_radius",
    "lemma1_gap",
    "lemma2_gap",
    "shift_identity_gap",
    "compare_bounds",
]

DISC_SOURCES = ("theorem1", "theorem2_re", "theorem2_im", "classical")

_EPS = float(np.finfo(np.float64).eps)


class DiscriminantError(ValueError):
    """Inner square root of the defect-corrected radius is negative beyond
    rounding: the supplied multiplicity is inconsistent with the matrix."""


@dataclass(frozen=True)
class BoundInputs:
    """The scalar statistics every radius formula consumes."""

    n: int
    trace: complex
    frob_sq: float
    q: float
    delta: float

    @property
    def center(self) -> complex:
        return self.trace / self.n


@dataclass(frozen=True)
class Disc:
    """Localization region {z : |z - center| <= radius}."""

    center: complex
    radius: float
    source: str
    t_used: int | None

    def __post_init__(self):
        if self.source not in DISC_SOURCES:
            raise ValueError(f"unknown disc source {self.source!r}")
        if not (self.radius >= 0.0 and np.isfinite(self.radius)):
            raise ValueError(f"radius must be finite and nonnegative, got {self.radius}")


@dataclass(frozen=True)
class DerivationProbe:
    """Shift-identity scalars at one probe point lam."""

    lam: complex
    s: float       # |lam - tr(A)/n|^2
    sigma: float   # n|lam|^2 - lam tr(A*) - conj(lam) tr(A); real by cancellation


@dataclass(frozen=True)
class ClusterComparison:
    """All bounds evaluated at one eigenvalue cluster representative."""

    representative: complex
    t: int
    theorem1: Disc
    envelope_radius: float
    classical_lower: float
    classical_upper: float
    distance: float
    slack_theorem1: float
    slack_envelope: float
    sharpness_ratio: float | None


def bound_inputs(a: np.ndarray) -> BoundInputs:
    """Compute (n, tr, ||A||^2, q, delta) for a matrix.

    q is analytically nonnegative; rounding negatives within 1e-12 * ||A||^2
    clamp to zero, anything larger is an internal inconsistency.
    """
    n = a.shape[0]
    tr = linalg.trace(a)
    frob_sq = linalg.frobenius_norm_sq(a)
    q_raw = frob_sq - abs(tr) ** 2 / n
    if q_raw < -1e-12 * frob_sq:
        raise ValueError(f"q = {q_raw} is negative beyond rounding; inconsistent inputs")
    return BoundInputs(n=n, trace=tr, frob_sq=frob_sq, q=max(q_raw, 0.0),
                       delta=linalg.commutator_defect(a))


def _check_t(n: int, t: int) -> None:
    if not 1 <= t <= n:
        raise ValueError(f"multiplicity t={t} outside 1..{n}")


def theorem1_radius(inp: BoundInputs, t: int) -> Disc:
    """Defect-corrected disc radius for an eigenvalue of multiplicity t.

    The inner discriminant q^2 - (2n-t) t / n^2 * delta is nonnegative when t
    is a true geometric multiplicity; fractional negatives within
    1e-10 * max(q^2, 1) clamp to zero, larger ones raise DiscriminantError
    because they signal a wrong t that the caller must see.
    """
    n, q, delta = inp.n, inp.q, inp.delta
    _check_t(n, t)
    coeff = (2.0 * n - t) * t / (n * n)
    disc = q * q - coeff * delta
    eps_clamp = 1e-10 * max(q * q, 1.0)
    if disc < -eps_clamp:
        raise DiscriminantError(
            f"discriminant {disc:.6e} negative beyond clamp {eps_clamp:.1e}: "
            f"t={t} is inconsistent with the disc premises for this matrix")
    inner = (n - t) / n * q + sqrt(max(disc, 0.0))
    radius = sqrt((n - t) / ((2.0 * n - t) * t) * inner)
    return Disc(center=inp.center, radius=radius, source="theorem1", t_used=t)


def normal_case_radius(inp: BoundInputs, t: int, source: str = "theorem2_re") -> Disc:
    """Envelope radius sqrt((n-t)/(n t) * q), exact for normal matrices."""
    n, q = inp.n, inp.q
    _check_t(n, t)
    if source not in ("theorem2_re", "theorem2_im"):
        raise ValueError(f"source must name a Hermitian part, got {source!r}")
    radius = sqrt((n - t) / (n * t) * max(q, 0.0))
    return Disc(center=inp.center, radius=radius, source=source, t_used=t)


def theorem2_discs(a: np.ndarray, t_re: int, t_im: int) -> tuple[Disc, Disc]:
    """Envelope discs for the Hermitian real and imaginary parts of A."""
    disc_re = normal_case_radius(bound_inputs(linalg.hermitian_real_part(a)),
                                 t_re, source="theorem2_re")
    disc_im = normal_case_radius(bound_inputs(linalg.hermitian_imag_part(a)),
                                 t_im, source="theorem2_im")
    return disc_re, disc_im


def classical_interval(inp: BoundInputs) -> tuple[float, float]:
    """Modulus interval |tr A|/n <= |lambda|_max <= |tr A|/n + width."""
    lower = abs(inp.trace) / inp.n
    return lower, lower + classical_width(inp)


def classical_width(inp: BoundInputs) -> float:
    """sqrt((n-1)/n * q), the width of the classical modulus interval."""
    return sqrt((inp.n - 1) / inp.n * max(inp.q, 0.0))


def envelope_radius(inp: BoundInputs, t: int) -> float:
    """sqrt((n-t)/(n t) * q) as a bare number (no disc wrapper)."""
    _check_t(inp.n, t)
    return sqrt((inp.n - t) / (inp.n * t) * max(inp.q, 0.0))


def _sqrt_frob4_minus_delta(inp: BoundInputs) -> float:
    """sqrt(||A||^4 - delta) with the same clamp policy as the radii."""
    inner = inp.frob_sq * inp.frob_sq - inp.delta
    eps_clamp = 1e-10 * max(inp.frob_sq * inp.frob_sq, 1.0)
    if inner < -eps_clamp:
        raise ValueError(
            f"||A||^4 - delta = {inner:.6e} negative beyond clamp; inconsistent inputs")
    return sqrt(max(inner, 0.0))


def lemma1_gap(inp: BoundInputs, spec: Spectrum) -> float:
    """sqrt(||A||^4 - delta) - sum |lambda_j|^2; nonnegative up to oracle error."""
    moment = float((np.abs(spec.eigenvalues) ** 2).sum())
    return _sqrt_frob4_minus_delta(inp) - moment


def lemma2_gap(inp: BoundInputs, rank: RankEstimate) -> float:
    """rank(A) * sqrt(||A||^4 - delta) - |tr A|^2; nonnegative up to rank error."""
    return rank.rank * _sqrt_frob4_minus_delta(inp) - abs(inp.trace) ** 2


def shift_identity_gap(a: np.ndarray, lam: complex) -> tuple[float, DerivationProbe]:
    """Defect of ||lam*I - A||_F^2 = n s + q at an arbitrary probe point.

    The Frobenius norm of the shift is computed entrywise, so the returned
    gap genuinely tests the identity rather than restating it.  The companion
    identity |tr(lam*I - A)|^2 = n^2 s is asserted here at 1e-10 relative
    (with a rounding floor); it cannot fail on finite input.
    """
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    lam = complex(lam)
    tr = linalg.trace(a)
    frob_sq = linalg.frobenius_norm_sq(a)
    q_raw = frob_sq - abs(tr) ** 2 / n

    s = abs(lam - tr / n) ** 2
    sigma_c = n * abs(lam) ** 2 - lam * np.conj(tr) - np.conj(lam) * tr
    if abs(sigma_c.imag) > 1e-12 * max(1.0, abs(sigma_c)):
        raise ValueError(f"sigma has imaginary leakage {sigma_c.imag:.3e}")

    shifted = lam * np.eye(n, dtype=np.complex128) - a
    frob_sq_shift = linalg.frobenius_norm_sq(shifted)
    gap = frob_sq_shift - (n * s + q_raw)

    tr_shift_sq = abs(linalg.trace(shifted)) ** 2
    n2s = n * n * s
    floor = 16.0 * (_EPS * (n * abs(lam) + abs(tr) + 1.0)) ** 2
    if abs(tr_shift_sq - n2s) > 1e-10 * max(tr_shift_sq, n2s) + floor:
        raise ValueError(
            f"trace-shift identity violated: |tr(lam I - A)|^2 = {tr_shift_sq!r} "
            f"vs n^2 s = {n2s!r}")
    return gap, DerivationProbe(lam=lam, s=s, sigma=float(sigma_c.real))


def compare_bounds(a: np.ndarray,
                   multiplicities: list[MultiplicityEstimate]) -> list[ClusterComparison]:
    """Evaluate every bound at each eigenvalue representative.

    The sharpness ratio (defect-corrected radius over classical width) is
    recorded only for t = 1, where the two live on the same modulus axis.
    """
    inp = bound_inputs(a)
    lower, upper = classical_interval(inp)
    width = upper - lower
    out = []
    for m in multiplicities:
        disc = theorem1_radius(inp, m.t)
        env = envelope_radius(inp, m.t)
        dist = abs(m.eigenvalue - inp.center)
        ratio = disc.radius / width if (m.t == 1 and width > 0.0) else None
        out.append(ClusterComparison(
            representative=m.eigenvalue, t=m.t, theorem1=disc,
            envelope_radius=env, classical_lower=lower, classical_upper=upper,
            distance=dist, slack_theorem1=disc.radius - dist,
            slack_envelope=env - dist, sharpness_ratio=ratio))
    return out
