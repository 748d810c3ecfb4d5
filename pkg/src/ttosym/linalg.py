"""Rank-revealing SVD helpers shared by the subspace computations."""

from __future__ import annotations

import numpy as np


class RankDecisionError(RuntimeError):
    """The singular values do not separate cleanly at the requested threshold."""


def _split(s, tol, gap):
    """Index where singular values (descending) drop to or below ``tol * s[0]``."""
    if s.size == 0 or s[0] == 0:
        return 0, np.inf
    rel = s / s[0]
    keep = int(np.sum(rel > tol))
    smallest_kept = rel[keep - 1] if keep > 0 else np.inf
    largest_dropped = rel[keep] if keep < rel.size else 0.0
    if gap is not None and keep < rel.size and smallest_kept - largest_dropped < gap * tol:
        raise RankDecisionError(
            f"ambiguous rank: smallest kept {smallest_kept:.3e}, largest dropped {largest_dropped:.3e}, "
            f"threshold {tol:.1e}"
        )
    return keep, smallest_kept


def orthonormal_span(columns: np.ndarray, tol: float = 1e-8, gap: float | None = None) -> np.ndarray:
    """Orthonormal basis (as columns) for the column span of ``columns``."""
    columns = np.asarray(columns)
    if columns.shape[1] == 0:
        return np.zeros((columns.shape[0], 0), dtype=columns.dtype)
    u, s, _ = np.linalg.svd(columns, full_matrices=False)
    keep, _ = _split(s, tol, gap)
    return u[:, :keep]


def null_space(matrix: np.ndarray, tol: float = 1e-8, gap: float | None = None):
    """Orthonormal null-space basis of ``matrix`` and its singular values.

    Singular values are measured relative to the largest one. With ``gap`` set,
    raises ``RankDecisionError`` unless the smallest kept value exceeds the
    largest discarded one by at least ``gap * tol``.
    """
    matrix = np.asarray(matrix)
    n = matrix.shape[1]
    if matrix.shape[0] == 0:
        return np.eye(n, dtype=matrix.dtype), np.zeros(0)
    _, s, vh = np.linalg.svd(matrix, full_matrices=True)
    padded = np.zeros(n)
    padded[: s.size] = s
    keep, _ = _split(padded, tol, gap)
    return vh[keep:].conj().T, s


def projector(basis: np.ndarray) -> np.ndarray:
    return basis @ basis.conj().T


def projector_distance(basis_a: np.ndarray, basis_b: np.ndarray) -> float:
    """Frobenius distance between orthogonal projectors onto two column spans."""
    # explicit projectors: the trace identity cancels down to sqrt(eps) accuracy
    return float(np.linalg.norm(projector(basis_a) - projector(basis_b)))
