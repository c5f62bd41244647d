"""Normalized motif Laplacian, its Fiedler pair, and the motif-conductance sweep."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg, sparse
from scipy.sparse.linalg import LinearOperator, eigsh

from .graph import group_labels
from .motif import MotifAdjacency, instance_degree

DENSE_LIMIT = 512


class NoMotifStructure(ValueError):
    """Every vertex has zero motif degree."""


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class MotifLaplacian:
    """``I - D^-1/2 W D^-1/2`` over the vertices of positive motif degree.

    Row ``i`` of ``L`` corresponds to vertex ``active[i]`` of the adjacency.
    """

    L: sparse.csr_matrix
    normalized: sparse.csr_matrix
    active: np.ndarray
    zero_degree: np.ndarray
    sqrt_degree: np.ndarray

    @property
    def n(self) -> int:
        return len(self.active)


def build_laplacian(adj: MotifAdjacency) -> MotifLaplacian:
    deg = adj.degree
    active = np.flatnonzero(deg > 0)
    if not len(active):
        raise NoMotifStructure("motif adjacency is empty")
    W = adj.W if len(active) == adj.n else adj.W[active][:, active]
    W = W.tocsr()
    sq = np.sqrt(deg[active].astype(float))
    inv = 1.0 / sq
    rows = np.repeat(np.arange(len(active)), np.diff(W.indptr))
    normalized = sparse.csr_matrix(
        (W.data * inv[rows] * inv[W.indices], W.indices, W.indptr), shape=W.shape
    )
    L = (sparse.identity(len(active), format="csr") - normalized).tocsr()
    return MotifLaplacian(L, normalized, active, np.flatnonzero(deg == 0), sq)


def motif_components(adj: MotifAdjacency) -> list[np.ndarray]:
    """Connected components of ``W`` over vertices of positive motif degree."""
    active = np.flatnonzero(adj.degree > 0)
    if not len(active):
        return []
    return instance_components(adj.instances, adj.n, active)


def instance_components(instances: np.ndarray, n: int, active: np.ndarray | None = None) -> list[np.ndarray]:
    """Groups of vertices linked through shared motif instances.

    Only vertices in ``active`` (default: those in some instance) are
    reported. Labels are found by min-label hooking with pointer jumping,
    which avoids building a matrix for the many small calls the recursive
    clustering makes.
    """
    if active is None:
        active = np.flatnonzero(instance_degree(instances, n) > 0)
    if not len(active):
        return []
    lab = np.arange(n)
    while True:
        low = lab[instances].min(axis=1)
        new = lab.copy()
        np.minimum.at(new, lab[instances].ravel(), np.repeat(low, instances.shape[1]))
        while True:
            jumped = new[new]
            if np.array_equal(jumped, new):
                break
            new = jumped
        new = new[lab]
        if np.array_equal(new, lab):
            break
        lab = new
    return [active[g] for g in group_labels(lab[active])]


def _fix_sign(z: np.ndarray) -> np.ndarray:
    z = z / np.linalg.norm(z)
    nz = np.flatnonzero(np.abs(z) > 1e-12 * np.abs(z).max())
    if len(nz) and z[nz[0]] < 0:
        z = -z
    return z


def _lanczos(lap: MotifLaplacian, tol: float, maxiter: int) -> tuple[float, np.ndarray]:
    # Largest eigenpair of the normalized adjacency with the known top
    # eigenvector D^1/2 1 moved to -2, below the spectrum; merely projecting
    # it out would leave it at 0, above every eigenvalue when lambda_2 > 1.
    n = lap.n
    v1 = lap.sqrt_degree / np.linalg.norm(lap.sqrt_degree)
    N = lap.normalized

    def matvec(x):
        x = np.ravel(x)
        c = v1 @ x
        y = N @ (x - v1 * c)
        return y - v1 * (v1 @ y + 2.0 * c)

    op = LinearOperator((n, n), matvec=matvec, dtype=float)
    v0 = np.random.default_rng(0).standard_normal(n)
    v0 -= v1 * (v1 @ v0)
    vals, vecs = eigsh(op, k=1, which="LA", tol=tol * 1e-3, maxiter=maxiter, v0=v0)
    return 1.0 - float(vals[0]), vecs[:, 0]


def fiedler_vector(
    lap: MotifLaplacian,
    tol: float = 1e-8,
    method: str = "auto",
    maxiter: int | None = None,
) -> tuple[float, np.ndarray]:
    """Second-smallest eigenpair of the motif Laplacian.

    Systems up to ``DENSE_LIMIT`` vertices are solved densely, larger ones
    by Lanczos iteration with the null vector deflated. The returned vector
    has unit norm and its first nonzero entry is positive.
    """
    n = lap.n
    if n < 2:
        raise ValueError("need at least two vertices with motif degree > 0")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if method == "auto":
        method = "dense" if n <= DENSE_LIMIT else "lanczos"
    if method == "dense":
        L = lap.L.toarray()
        vals, vecs = linalg.eigh(L, subset_by_index=[0, 1], driver="evr")
        lam, z = float(vals[1]), vecs[:, 1]
        if np.linalg.norm(L @ z - lam * z) > tol:
            # the subset solver can lose accuracy on clustered eigenvalues such as a repeated zero
            vals, vecs = linalg.eigh(L, driver="evd")
            lam, z = float(vals[1]), vecs[:, 1]
    elif method == "lanczos":
        if n < 4:
            raise ValueError("lanczos path needs at least four vertices")
        try:
            lam, z = _lanczos(lap, tol, maxiter or 10 * n)
        except Exception as exc:  # ArpackNoConvergence and friends
            raise ConvergenceError(f"eigensolver did not converge: {exc}") from exc
    else:
        raise ValueError(f"unknown method {method!r}")
    z = _fix_sign(z)
    resid = float(np.linalg.norm(lap.L @ z - lam * z))
    if resid > tol:
        raise ConvergenceError(f"Fiedler residual {resid:.3e} exceeds tolerance {tol:.1e}")
    return lam, z


@dataclass(frozen=True)
class SweepResult:
    ordering: np.ndarray
    best_prefix: int
    best_conductance: float
    cluster: np.ndarray
    complement: np.ndarray
    profile: np.ndarray  # conductance of each prefix 1..len(ordering)-1


def sweep_cut(adj: MotifAdjacency, lap: MotifLaplacian, z: np.ndarray) -> SweepResult:
    """Minimum motif-conductance prefix of the spectral ordering.

    Vertices are sorted by ``D^-1/2 z`` (ties by vertex index). The cut and
    both volumes are tracked incrementally: an instance is cut exactly for
    the prefixes that contain its earliest vertex but not its latest.
    """
    active = lap.active
    na = len(active)
    if na < 2:
        raise ValueError("sweep needs at least two active vertices")
    x = z / lap.sqrt_degree
    ordering = active[np.lexsort((active, x))]
    pos = np.full(adj.n, -1, dtype=np.int64)
    pos[ordering] = np.arange(na)
    p = pos[adj.instances]
    first, last = p.min(axis=1), p.max(axis=1)
    diff = np.zeros(na + 1, dtype=np.int64)
    np.add.at(diff, first + 1, 1)
    np.add.at(diff, last + 1, -1)
    cut = np.cumsum(diff)[1:na]
    vol = np.cumsum(instance_degree(adj.instances, adj.n)[ordering])[: na - 1]
    total = adj.instances.size
    profile = cut / np.minimum(vol, total - vol)
    i = int(np.argmin(profile))
    best = i + 1
    prefix, suffix = ordering[:best], ordering[best:]
    if len(prefix) <= len(suffix):
        cluster, comp = prefix, suffix
    else:
        cluster, comp = suffix, prefix
    return SweepResult(ordering, best, float(profile[i]), np.sort(cluster), np.sort(comp), profile)
