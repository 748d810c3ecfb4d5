"""The conjugation ``C_u f = u conj(chi f)`` on ``K_u`` and complex-symmetry tests.

An antilinear map is stored as a matrix ``J`` acting by ``x -> J @ conj(x)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .inner import BlaschkeProduct, blaschke_eval, quotient
from .modelspace import ModelSpace, ModelVector, QuadratureGrid


@dataclass(frozen=True, eq=False)
class Conjugation:
    J: np.ndarray = field(repr=False)
    space: ModelSpace

    def __call__(self, x):
        return self.J @ np.conj(x)

    def unitarity_error(self) -> float:
        return float(np.linalg.norm(self.J @ self.J.conj().T - np.eye(self.J.shape[0])))

    def symmetry_error(self) -> float:
        return float(np.linalg.norm(self.J - self.J.T))


def conjugate_samples(w: BlaschkeProduct, nodes, samples):
    """``C_w g = w conj(chi g)`` applied pointwise on the circle."""
    return blaschke_eval(w, nodes) * np.conj(nodes * samples)


def conjugation_matrix(space: ModelSpace) -> np.ndarray:
    images = conjugate_samples(space.u, space.grid.nodes[:, None], space.samples)
    return space.coordinates(images)


def build_conjugation(space: ModelSpace) -> Conjugation:
    return Conjugation(conjugation_matrix(space), space)


def apply(c: Conjugation, f: ModelVector) -> ModelVector:
    if f.space is not c.space:
        raise ValueError("vector is not in the conjugation's model space")
    return f.space.vector(c(f.coeffs))


def lemma1_check(u: BlaschkeProduct, v: BlaschkeProduct, f) -> float:
    """Max over grid nodes of ``|C_u(C_{u/v} f) - v f|``, both maps applied on L^2.

    ``f`` holds samples at the ``len(f)``-th roots of unity.
    """
    w = quotient(u, v)  # raises for non-divisors
    f = np.asarray(f, dtype=complex)
    nodes = QuadratureGrid(f.size).nodes
    inner = conjugate_samples(w, nodes, f)
    outer = conjugate_samples(u, nodes, inner)
    return float(np.max(np.abs(outer - blaschke_eval(v, nodes) * f)))


def symmetry_residual(A: np.ndarray, J: np.ndarray) -> float:
    """``||A^* - J conj(A) conj(J)||_F``, the matrix form of ``A^* = C A C``."""
    A = np.asarray(A)
    if A.shape != J.shape:
        raise ValueError(f"operator shape {A.shape} does not match conjugation {J.shape}")
    return float(np.linalg.norm(A.conj().T - J @ A.conj() @ J.conj()))


@dataclass
class SymmetryResult:
    symmetric: bool
    residual: float
    quadratic_form_residual: float

    def __bool__(self):
        return self.symmetric


def is_c_symmetric(A, c: Conjugation, tol: float = 1e-10, probes: int = 10, seed: int = 0) -> SymmetryResult:
    """Matrix test for ``A^* = CAC`` with a quadratic-form cross-check on random vectors."""
    A = getattr(A, "matrix", A)
    residual = symmetry_residual(A, c.J)
    rng = np.random.default_rng(seed)
    n = A.shape[0]
    qf = 0.0
    for _ in range(probes):
        f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        f /= np.linalg.norm(f)
        cf = c(f)
        qf = max(qf, abs(np.vdot(f, A @ f) - np.vdot(cf, A @ cf)))
    return SymmetryResult(residual <= tol, residual, float(qf))


def symmetrize(A, J) -> np.ndarray:
    """``(A + C A^* C) / 2``, which is always C-symmetric."""
    A = np.asarray(A)
    return (A + J @ A.T @ J.conj()) / 2
