"""Model spaces ``K_u = H^2 - uH^2`` for finite Blaschke products, realized on a boundary grid.

All inner products are trapezoid sums over the ``M``-th roots of unity with weight
``1/M``. For rational functions with poles off the closed disc this converges
geometrically in ``M``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_GRID_SIZE
from .inner import BlaschkeProduct, blaschke_eval, blaschke_factor, divides
from .linalg import null_space


@dataclass(frozen=True)
class QuadratureGrid:
    M: int = DEFAULT_GRID_SIZE
    nodes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.M < 1 or self.M & (self.M - 1):
            raise ValueError(f"grid size must be a power of two, got {self.M}")
        nodes = np.exp(2j * np.pi * np.arange(self.M) / self.M)
        nodes.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)

    @property
    def weight(self) -> float:
        return 1.0 / self.M

    def inner(self, f, g) -> complex:
        """``<f, g>`` for sampled functions; conjugate-linear in ``g``."""
        return complex(np.mean(np.asarray(f) * np.conj(g)))

    def gram(self, F, G) -> np.ndarray:
        """Matrix of ``<F[:, j], G[:, k]>`` arranged as ``[k, j]`` (columns are samples)."""
        return G.conj().T @ F / self.M


def takenaka_basis(zeros, z) -> np.ndarray:
    """Columns ``gamma_k(z) = sqrt(1-|a_k|^2)/(1 - conj(a_k) z) * prod_{j<k} b_{a_j}(z)``."""
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape + (len(zeros),), dtype=complex)
    prefix = np.ones(z.shape, dtype=complex)
    for k, a in enumerate(zeros):
        out[..., k] = np.sqrt(1 - abs(a) ** 2) / (1 - np.conj(a) * z) * prefix
        prefix = prefix * blaschke_factor(a, z)
    return out


@dataclass(frozen=True, eq=False)
class ModelSpace:
    """``K_u`` with its ordered Takenaka-Malmquist orthonormal basis sampled on ``grid``."""

    u: BlaschkeProduct
    grid: QuadratureGrid
    samples: np.ndarray = field(repr=False)  # (M, n): basis function k in column k

    @property
    def dim(self) -> int:
        return self.u.degree

    @property
    def M(self) -> int:
        return self.grid.M

    def basis_at(self, z) -> np.ndarray:
        """Basis functions evaluated at arbitrary points of the closed disc."""
        return takenaka_basis(self.u.zeros, z)

    def u_samples(self) -> np.ndarray:
        return blaschke_eval(self.u, self.grid.nodes)

    def synthesize(self, coeffs) -> np.ndarray:
        """Boundary samples of ``sum_k coeffs[k] gamma_k``."""
        return self.samples @ np.asarray(coeffs, dtype=complex)

    def coordinates(self, samples) -> np.ndarray:
        """Grid inner products of ``samples`` (one function or columns of several) with the basis."""
        samples = np.asarray(samples, dtype=complex)
        return self.samples.conj().T @ samples / self.M

    def vector(self, coeffs) -> "ModelVector":
        return ModelVector(np.asarray(coeffs, dtype=complex), self)


@dataclass(frozen=True, eq=False)
class ModelVector:
    coeffs: np.ndarray
    space: ModelSpace

    def __post_init__(self):
        if self.coeffs.shape != (self.space.dim,):
            raise ValueError(f"expected {self.space.dim} coefficients, got shape {self.coeffs.shape}")

    def samples(self) -> np.ndarray:
        return self.space.synthesize(self.coeffs)

    def __call__(self, z):
        return self.space.basis_at(z) @ self.coeffs

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def inner(self, other: "ModelVector") -> complex:
        _same_space(self.space, other.space)
        return complex(np.vdot(other.coeffs, self.coeffs))


def _same_space(a: ModelSpace, b: ModelSpace):
    if a is not b and (a.u != b.u or a.M != b.M):
        raise ValueError("vectors belong to different model spaces")


def build_model_space(u: BlaschkeProduct, M: int = DEFAULT_GRID_SIZE) -> ModelSpace:
    if u.degree < 1:
        raise ValueError("model space of a constant inner function is trivial; degree must be >= 1")
    if M < 32 * u.degree:
        raise ValueError(f"grid size {M} too small for degree {u.degree}; need M >= {32 * u.degree}")
    grid = QuadratureGrid(M)
    samples = takenaka_basis(u.zeros, grid.nodes)
    samples.setflags(write=False)
    return ModelSpace(u, grid, samples)


def project(space: ModelSpace, samples) -> ModelVector:
    """Orthogonal projection of a sampled L^2 function onto ``K_u``."""
    samples = np.asarray(samples, dtype=complex)
    if samples.shape != (space.M,):
        raise ValueError(f"expected {space.M} samples, got shape {samples.shape}")
    return space.vector(space.coordinates(samples))


def reproducing_kernel(space: ModelSpace, w: complex) -> ModelVector:
    """``k_w(z) = (1 - conj(u(w)) u(z)) / (1 - conj(w) z)``, so that ``<f, k_w> = f(w)``."""
    w = complex(w)
    if not abs(w) < 1:
        raise ValueError("reproducing kernel needs |w| < 1")
    z = space.grid.nodes
    kw = (1 - np.conj(blaschke_eval(space.u, w)) * space.u_samples()) / (1 - np.conj(w) * z)
    return project(space, kw)


def backward_shift_of_u(space: ModelSpace) -> ModelVector:
    """``S^* u = conj(chi) (u - u(0))`` projected to ``K_u``."""
    z = space.grid.nodes
    u0 = blaschke_eval(space.u, 0.0)
    return project(space, np.conj(z) * (space.u_samples() - u0))


def ku0_basis(space: ModelSpace) -> np.ndarray:
    """Orthonormal basis of ``K_u^0`` as an ``n x (n-1)`` coordinate matrix."""
    q = backward_shift_of_u(space).coeffs
    q = q / np.linalg.norm(q)
    basis, _ = null_space(q.conj()[None, :])
    return basis


def ku0_subspace(space: ModelSpace) -> list:
    basis = ku0_basis(space)
    return [space.vector(basis[:, i]) for i in range(basis.shape[1])]


def embed(space_u: ModelSpace, v: BlaschkeProduct) -> np.ndarray:
    """Isometry ``E`` (n x m) taking ``K_v`` coordinates to ``K_u`` coordinates."""
    if not divides(v, space_u.u):
        raise ValueError("embedding requires v to divide u")
    if v.degree == 0:
        return np.zeros((space_u.dim, 0), dtype=complex)
    space_v = subspace(space_u, v)
    return space_u.coordinates(space_v.samples)


def subspace(space_u: ModelSpace, v: BlaschkeProduct) -> ModelSpace:
    """``K_v`` on the same grid as ``space_u``."""
    if not divides(v, space_u.u):
        raise ValueError("v does not divide u")
    return build_model_space(v, space_u.M)
