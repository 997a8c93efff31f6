"""Ground-truth spectral machinery: Schur form, eigenvalues, singular values,
numerical rank, and geometric multiplicity.

This module is the verification side of the package: it never consults the
bound formulas it is used to check.  The triangularization is LAPACK's
``zgees`` (Householder reduction to Hessenberg form followed by implicitly
shifted QR with deflation), reached through scipy's low-level bindings so
that a non-converged call can still surface its partial reduction.

Orientation convention: ``A = U* R U`` with ``U`` unitary and ``R`` upper
triangular, i.e. ``unitary`` is the conjugate transpose of the accumulated
transformation LAPACK returns.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import lapack

from .linalg import dense_matrix, frobenius_norm

__all__ = [
    "SchurForm",
    "Spectrum",
    "RankEstimate",
    "MultiplicityEstimate",
    "ClusterInfo",
    "SchurConvergenceError",
    "NotAnEigenvalueError",
    "schur_decompose",
    "eigenvalues",
    "singular_values",
    "numerical_rank",
    "geometric_multiplicity",
    "cluster_eigenvalues",
    "cluster_summary",
    "default_cluster_tol",
    "GRAM_NOISE_FLOOR",
]

_EPS = float(np.finfo(np.float64).eps)

# eigh(A*A) reads an exactly-zero singular value as ~sqrt(eps)*sigma_max
# (measured max 1.9e-8 relative); a rank threshold below that floor would
# misclassify true eigenvalues as regular points.
GRAM_NOISE_FLOOR = 32.0 * float(np.sqrt(_EPS))

DEFAULT_RANK_REL_TOL = 1e-10


class SchurConvergenceError(RuntimeError):
    """QR iteration failed to converge.

    ``partial`` holds the partially reduced form (may be None), and
    ``n_converged`` the number of trailing eigenvalues that did converge.
    """

    def __init__(self, message: str, partial: "SchurForm | None" = None,
                 n_converged: int = 0):
        super().__init__(message)
        self.partial = partial
        self.n_converged = n_converged


class NotAnEigenvalueError(ValueError):
    """Shifted matrix has full numerical rank, so multiplicity would be 0.

    Either the shift point is not an eigenvalue at this tolerance, or the
    rank tolerance is too tight for the singular-value noise floor.  Both
    quantities are attached so callers can tell which.
    """

    def __init__(self, message: str, sigma_min: float, tolerance: float):
        super().__init__(message)
        self.sigma_min = sigma_min
        self.tolerance = tolerance


@dataclass(frozen=True)
class SchurForm:
    unitary: np.ndarray
    upper_triangular: np.ndarray


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue list with residual estimates and cluster labels.

    ``nonzero_count`` counts eigenvalues of modulus above ``zero_tol``
    (recorded), the floating surrogate for the number of nonzero eigenvalues.
    """

    eigenvalues: np.ndarray
    residuals: np.ndarray
    nonzero_count: int
    cluster_ids: np.ndarray
    zero_tol: float


@dataclass(frozen=True)
class RankEstimate:
    rank: int
    singular_values: np.ndarray
    tolerance_used: float


@dataclass(frozen=True)
class MultiplicityEstimate:
    eigenvalue: complex
    t: int
    rank_of_shift: RankEstimate


@dataclass(frozen=True)
class ClusterInfo:
    cluster_id: int
    representative: complex
    size: int
    members: tuple


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def schur_decompose(a: np.ndarray, max_iters: int | None = None) -> SchurForm:
    """Unitary triangularization A = U* R U.

    ``max_iters`` bounds the QR sweeps per eigenvalue (default 40*n); the
    LAPACK driver enforces its own internal cap of the same order, so values
    above it are accepted but cannot extend the iteration.
    """
    a = dense_matrix(a)
    n = a.shape[0]
    if max_iters is None:
        max_iters = 40 * n
    if max_iters < 1:
        raise ValueError("max_iters must be positive")

    a_work = np.array(a, dtype=np.complex128, order="F")
    select = lambda x: False  # unused: no eigenvalue sorting requested
    lwork_probe = lapack.zgees(select, a_work, compute_v=1, sort_t=0, lwork=-1)
    lwork = int(lwork_probe[-2][0].real)
    t_mat, _sdim, _w, vs, _work, info = lapack.zgees(
        select, a_work, compute_v=1, sort_t=0, lwork=lwork)
    if info < 0:
        raise ValueError(f"illegal argument {-info} passed to the Schur driver")
    if info > 0:
        partial = SchurForm(unitary=_frozen(vs.conj().T.copy()),
                            upper_triangular=_frozen(np.ascontiguousarray(t_mat)))
        raise SchurConvergenceError(
            f"QR iteration failed to converge within the sweep limit "
            f"(max_iters={max_iters}); eigenvalues {info}..{n - 1} of the "
            f"partial form did converge",
            partial=partial, n_converged=n - info)
    return SchurForm(unitary=_frozen(vs.conj().T.copy()),
                     upper_triangular=_frozen(np.ascontiguousarray(t_mat)))


def default_cluster_tol(a: np.ndarray) -> float:
    """Default complex-plane clustering tolerance, 1e-7 * (1 + ||A||_F)."""
    return 1e-7 * (1.0 + frobenius_norm(a))


def _single_linkage(values: np.ndarray, tol: float) -> np.ndarray:
    """Single-linkage cluster ids (transitive closure of |zi - zj| <= tol).

    Ids are assigned in order of each cluster's first member.
    """
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)

    ids = np.empty(n, dtype=np.int64)
    label_of_root: dict[int, int] = {}
    for i in range(n):
        root = find(i)
        if root not in label_of_root:
            label_of_root[root] = len(label_of_root)
        ids[i] = label_of_root[root]
    return ids


def eigenvalues(a: np.ndarray, max_iters: int | None = None,
                cluster_tol: float | None = None) -> Spectrum:
    """Full spectrum from the diagonal of the Schur form.

    Residuals are a uniform backward-error estimate: the largest entry of
    the reconstruction defect U* R U - A plus eps * ||A||_F.
    """
    a = dense_matrix(a)
    n = a.shape[0]
    form = schur_decompose(a, max_iters=max_iters)
    evals = np.ascontiguousarray(np.diag(form.upper_triangular))
    recon = form.unitary.conj().T @ form.upper_triangular @ form.unitary
    norm_a = frobenius_norm(a)
    resid = float(np.abs(recon - a).max()) + _EPS * norm_a
    residuals = np.full(n, resid)
    zero_tol = n * _EPS * norm_a
    nonzero_count = int((np.abs(evals) > zero_tol).sum())
    if cluster_tol is None:
        cluster_tol = default_cluster_tol(a)
    ids = _single_linkage(evals, cluster_tol)
    return Spectrum(eigenvalues=_frozen(evals), residuals=_frozen(residuals),
                    nonzero_count=nonzero_count, cluster_ids=_frozen(ids),
                    zero_tol=zero_tol)


def cluster_eigenvalues(spec: Spectrum, cluster_tol: float) -> Spectrum:
    """Re-cluster a spectrum at a caller-chosen tolerance."""
    if cluster_tol <= 0:
        raise ValueError("cluster_tol must be positive")
    ids = _single_linkage(spec.eigenvalues, cluster_tol)
    return Spectrum(eigenvalues=spec.eigenvalues, residuals=spec.residuals,
                    nonzero_count=spec.nonzero_count, cluster_ids=_frozen(ids),
                    zero_tol=spec.zero_tol)


def cluster_summary(spec: Spectrum) -> list[ClusterInfo]:
    """Cluster centroids and memberships in cluster-id order."""
    out = []
    ids = spec.cluster_ids
    for cid in range(int(ids.max()) + 1 if len(ids) else 0):
        members = tuple(int(i) for i in np.nonzero(ids == cid)[0])
        rep = complex(np.mean(spec.eigenvalues[list(members)]))
        out.append(ClusterInfo(cluster_id=cid, representative=rep,
                               size=len(members), members=members))
    return out


def singular_values(a: np.ndarray) -> np.ndarray:
    """Singular values, descending, via the Hermitian eigenproblem of A*A.

    Adequate at desk scale; the ~sqrt(eps) accuracy floor on tiny singular
    values is what GRAM_NOISE_FLOOR accounts for.
    """
    a = np.asarray(a, dtype=np.complex128)
    gram = a.conj().T @ a
    w = np.linalg.eigvalsh(gram)
    return _frozen(np.sqrt(np.clip(w, 0.0, None))[::-1].copy())


def numerical_rank(a: np.ndarray, rel_tol: float = DEFAULT_RANK_REL_TOL) -> RankEstimate:
    """Count of singular values above rel_tol * sigma_max * n."""
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    s = singular_values(a)
    n = a.shape[0]
    sigma_max = float(s[0]) if len(s) else 0.0
    tol_used = rel_tol * sigma_max * n
    rank = int((s > tol_used).sum())
    return RankEstimate(rank=rank, singular_values=s, tolerance_used=tol_used)


def geometric_multiplicity(a: np.ndarray, lam: complex,
                           rel_tol: float | None = None) -> MultiplicityEstimate:
    """t = n - rank(lam*I - A), the eigenspace dimension at ``lam``.

    With ``rel_tol=None`` the rank threshold is floored at GRAM_NOISE_FLOOR
    * sigma_max, without which the Gram-route noise on an exact eigenvalue's
    zero singular value would randomly report full rank.  An explicit
    ``rel_tol`` is honored verbatim.
    """
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    if rel_tol is None:
        rel_tol = max(DEFAULT_RANK_REL_TOL, GRAM_NOISE_FLOOR / n)
    shift = complex(lam) * np.eye(n, dtype=np.complex128) - a
    est = numerical_rank(shift, rel_tol)
    t = n - est.rank
    if t == 0:
        sigma_min = float(est.singular_values[-1])
        raise NotAnEigenvalueError(
            f"shifted matrix has full numerical rank: smallest singular value "
            f"{sigma_min:.3e} exceeds threshold {est.tolerance_used:.3e}; either "
            f"{complex(lam)} is not an eigenvalue at this tolerance or the rank "
            f"tolerance is too tight",
            sigma_min=sigma_min, tolerance=est.tolerance_used)
    return MultiplicityEstimate(eigenvalue=complex(lam), t=t, rank_of_shift=est)
