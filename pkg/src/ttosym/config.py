"""Shared numerical settings: grid sizes, tolerances, and the fixed disc sample grid."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

DEFAULT_GRID_SIZE = 2048
DEFAULT_SEED = 42

# zeros closer than this to the circle are rejected
ZERO_MODULUS_GUARD = 1e-9
# default angular exclusion radius around atoms for boundary evaluation
ATOM_CUTOFF = 1e-6


@dataclass(frozen=True)
class Tolerances:
    """Tolerance set carried through every computation and report."""

    rank: float = 1e-8
    identity: float = 1e-10
    rank_gap: float = 10.0
    membership: float = 1e-7
    sarason: float = 1e-9
    theorem_distance: float = 1e-7
    symmetry: float = 1e-9
    moebius: float = 1e-7

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()


def disc_grid(radii=None, n_angles: int = 32) -> np.ndarray:
    """Published disc sample grid: 8 radii in [0.1, 0.95] times 32 equispaced angles."""
    if radii is None:
        radii = np.linspace(0.1, 0.95, 8)
    angles = 2 * np.pi * np.arange(n_angles) / n_angles
    return (np.asarray(radii, dtype=float)[:, None] * np.exp(1j * angles)[None, :]).ravel()


def near_boundary_ring(radius: float = 0.999, n_angles: int = 32) -> np.ndarray:
    angles = 2 * np.pi * np.arange(n_angles) / n_angles
    return radius * np.exp(1j * angles)
