"""The unitary ``omega_a f = sqrt(1-|a|^2) / (1 - conj(a) chi) * (f o b_a)`` from ``K_u`` onto
``K_{u o b_a}``, its intertwining with the conjugations, and transport of TTOs.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .config import ZERO_MODULUS_GUARD
from .conjugation import conjugation_matrix
from .inner import BlaschkeProduct, blaschke_eval, blaschke_factor
from .linalg import orthonormal_span, projector_distance
from .modelspace import ModelSpace, build_model_space
from .tto import build_tto_space


def composed_product(u: BlaschkeProduct, a: complex) -> BlaschkeProduct:
    """``u o b_a`` as a Blaschke product, including its unimodular constant.

    The zeros are ``b_{-a}(a_k)``; the constant is fixed by matching values at
    ``z = 0``, or at ``z = 1`` when the zero-free part vanishes at the origin.
    """
    a = complex(a)
    zeros = tuple(complex(blaschke_factor(-a, ak)) for ak in u.zeros)
    bare = BlaschkeProduct(zeros)
    probe = 0.0 if abs(blaschke_eval(bare, 0.0)) > 1e-3 else 1.0
    target = blaschke_eval(u, blaschke_factor(a, probe))
    c = target / blaschke_eval(bare, probe)
    return BlaschkeProduct(zeros, c / abs(c))


def omega_samples(space_u: ModelSpace, a: complex, nodes) -> np.ndarray:
    """``omega_a gamma_j`` for every basis function, evaluated at ``nodes``."""
    a = complex(a)
    prefactor = np.sqrt(1 - abs(a) ** 2) / (1 - np.conj(a) * nodes)
    return prefactor[:, None] * space_u.basis_at(blaschke_factor(a, nodes))


def _check_target(space_u: ModelSpace, a: complex, space_target: ModelSpace):
    expected = composed_product(space_u.u, a)
    got = space_target.u
    if got.degree != expected.degree or not np.allclose(got.zeros, expected.zeros, atol=1e-12) \
            or abs(got.constant - expected.constant) > 1e-10:
        raise ValueError("target space is not built from u o b_a")
    if space_target.M != space_u.M:
        raise ValueError("source and target grids differ")


def target_space(space_u: ModelSpace, a: complex) -> ModelSpace:
    return build_model_space(composed_product(space_u.u, a), space_u.M)


def omega_matrix(space_u: ModelSpace, a: complex, space_target: ModelSpace | None = None) -> np.ndarray:
    """``W[k, j] = <omega_a gamma^u_j, gamma^target_k>`` over the target grid."""
    if not abs(a) < 1 - ZERO_MODULUS_GUARD:
        raise ValueError(f"|a| must be < 1, got {abs(a)}")
    if space_target is None:
        space_target = target_space(space_u, a)
    else:
        _check_target(space_u, a, space_target)
    return space_target.coordinates(omega_samples(space_u, a, space_target.grid.nodes))


def unitarity_residual(W: np.ndarray) -> float:
    return float(np.linalg.norm(W.conj().T @ W - np.eye(W.shape[1])))


def _intertwining(W, space_u, target) -> float:
    return float(np.linalg.norm(W @ conjugation_matrix(space_u) - conjugation_matrix(target) @ W.conj()))


def _transport(W, space_u, target, tol):
    n = space_u.dim
    T_u = build_tto_space(space_u, tol)
    T_t = build_tto_space(target, tol)
    moved = np.stack([(W @ T_u.basis[:, i].reshape(n, n) @ W.conj().T).ravel() for i in range(T_u.dim)], axis=1)
    return projector_distance(orthonormal_span(moved, tol), T_t.basis), T_u.dim, T_t.dim


def intertwining_residual(space_u: ModelSpace, a: complex) -> float:
    """``||W J_u - J_target conj(W)||_F``, the matrix form of ``omega_a C_u = C_{u o b_a} omega_a``."""
    target = target_space(space_u, a)
    return _intertwining(omega_matrix(space_u, a, target), space_u, target)


def transport_check(space_u: ModelSpace, a: complex, tol: float = 1e-8) -> float:
    """Projector distance between ``W T_u W^*`` and ``T_{u o b_a}``."""
    target = target_space(space_u, a)
    return _transport(omega_matrix(space_u, a, target), space_u, target, tol)[0]


@dataclass
class CrofootReport:
    unitarity: float
    intertwining: float
    transport: float
    dim_source: int
    dim_target: int

    def as_dict(self):
        return asdict(self)


def crofoot_report(space_u: ModelSpace, a: complex, tol: float = 1e-8) -> CrofootReport:
    target = target_space(space_u, a)
    W = omega_matrix(space_u, a, target)
    transport, d_u, d_t = _transport(W, space_u, target, tol)
    return CrofootReport(unitarity_residual(W), _intertwining(W, space_u, target), transport, d_u, d_t)
