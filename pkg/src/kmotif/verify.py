"""Numerical audits of the spectral claims behind the decompose-then-cluster scheme.

Three checks, all by dense symmetric eigensolves:

* the minimum adjacency eigenvalue moves by at most the spectral norm of
  the removed-edge matrix;
* two-sided bounds on how the minimum normalized-Laplacian eigenvalue moves;
* the zero eigenvalue of a motif Laplacian has one copy per motif component.

Reports record every quantity, so a failed inequality can be archived and
inspected rather than only flagged.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy import linalg
from scipy.sparse import csgraph

from .graph import Graph
from .kcc import Decomposition, decompose
from .spectral import MotifLaplacian

TOL = 1e-8


def _eigvalsh(M: np.ndarray) -> np.ndarray:
    try:
        return linalg.eigvalsh(M)
    except linalg.LinAlgError as exc:
        raise RuntimeError(f"eigensolver did not converge: {exc}") from exc


def _lmax(M: np.ndarray) -> float:
    return float(_eigvalsh(M)[-1]) if M.size else 0.0


def _lmin(M: np.ndarray) -> float:
    return float(_eigvalsh(M)[0]) if M.size else 0.0


def split_adjacency(g: Graph, dec: Decomposition) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dense ``(A_G, A_k, A_removed)`` with ``A_G = A_k + A_removed``."""
    A = g.to_sparse(weighted=False).toarray()
    lab = dec.labels()
    same = (lab[:, None] == lab[None, :]) & (lab[:, None] >= 0)
    Ak = np.where(same, A, 0.0)
    return A, Ak, A - Ak


def _sym_normalized(A: np.ndarray, d: np.ndarray) -> np.ndarray:
    s = 1.0 / np.sqrt(d)
    return A * s[:, None] * s[None, :]


@dataclass
class PerturbationReport:
    k: int
    lambda_min_A_G: float
    lambda_min_A_k: float
    delta: float
    holds: bool
    laplacian_diff: float = float("nan")
    laplacian_lower: float = float("nan")
    laplacian_upper: float = float("nan")
    lower_holds: bool = True
    upper_holds: bool = True
    laplacian_holds: bool = True
    removed_edges: int = 0
    compared_vertices: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


def check_adjacency_perturbation(g: Graph, k: int, dec: Decomposition | None = None) -> PerturbationReport:
    """Compare ``|lambda_min(A_k) - lambda_min(A_G)|`` with the norm of the removed edges."""
    if g.n == 0:
        raise ValueError("empty graph")
    dec = dec or decompose(g, k)
    A, Ak, At = split_adjacency(g, dec)
    lg, lk = _lmin(A), _lmin(Ak)
    delta = float(np.sqrt(max(_lmax(At.T @ At), 0.0)))
    return PerturbationReport(
        k=k,
        lambda_min_A_G=lg,
        lambda_min_A_k=lk,
        delta=delta,
        holds=abs(lk - lg) <= delta + TOL,
        removed_edges=int(len(dec.removed_edges)),
    )


def laplacian_bounds(g: Graph, k: int, dec: Decomposition | None = None) -> dict[str, float]:
    """Both sides of the Laplacian perturbation inequality, on vertices kept by the decomposition.

    Vertices with no edge inside a piece make ``D_k`` singular and are left
    out; ``A_G`` and ``D_G`` are taken on the same vertex set. Spectra of
    ``D^-1 A`` are read off the similar symmetric matrix ``D^-1/2 A D^-1/2``.
    """
    dec = dec or decompose(g, k)
    A, Ak, At = split_adjacency(g, dec)
    dk = Ak.sum(axis=1)
    keep = np.flatnonzero(dk > 0)
    if not len(keep):
        raise ValueError("decomposition keeps no edges; nothing to compare")
    ix = np.ix_(keep, keep)
    A, Ak, At, dk = A[ix], Ak[ix], At[ix], dk[keep]
    dg = A.sum(axis=1)
    lam_LG = 1.0 - _lmax(_sym_normalized(A, dg))
    lam_Lk = 1.0 - _lmax(_sym_normalized(Ak, dk))
    lower = _lmax(_sym_normalized(A, dg)) - _lmax(_sym_normalized(A, dk)) + _lmax(_sym_normalized(At, dk))
    upper = _lmax(A) / float(dg.min()) - _lmax(_sym_normalized(Ak, dk))
    return {
        "diff": lam_Lk - lam_LG,
        "lower": lower,
        "upper": upper,
        "vertices": float(len(keep)),
    }


def check_laplacian_perturbation(g: Graph, k: int, dec: Decomposition | None = None) -> PerturbationReport:
    """Adjacency check plus the two Laplacian bounds, each tested at tolerance ``TOL``."""
    dec = dec or decompose(g, k)
    rep = check_adjacency_perturbation(g, k, dec)
    b = laplacian_bounds(g, k, dec)
    rep.laplacian_diff = b["diff"]
    rep.laplacian_lower = b["lower"]
    rep.laplacian_upper = b["upper"]
    rep.lower_holds = b["lower"] <= b["diff"] + TOL
    rep.upper_holds = b["diff"] <= b["upper"] + TOL
    rep.laplacian_holds = rep.lower_holds and rep.upper_holds
    rep.compared_vertices = int(b["vertices"])
    return rep


def zero_multiplicity(lap: MotifLaplacian, tol: float = TOL) -> int:
    return int(np.count_nonzero(np.abs(_eigvalsh(lap.L.toarray())) <= tol))


def check_spectral_ordering(lap: MotifLaplacian, components: int | None = None, tol: float = TOL) -> bool:
    """Whether the zero eigenvalue has exactly one copy per motif-connected component.

    ``components`` defaults to a BFS count on the nonzero pattern of ``L``.
    """
    if components is None:
        components, _ = csgraph.connected_components(lap.normalized, directed=False)
    return zero_multiplicity(lap, tol) == components
