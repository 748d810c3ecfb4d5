"""Truncated Toeplitz operators on ``K_u``: symbols, the space of all TTOs, Sarason's
criterion, divisor compressions, and the two-symmetry characterization solver.

Operators are square matrices in the ordered Takenaka-Malmquist basis of their
model space. Subspaces of operators are handled as orthonormal columns of
row-major vectorized matrices (Frobenius geometry).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .conjugation import conjugate_samples, conjugation_matrix, symmetry_residual
from .inner import BlaschkeProduct, blaschke_eval, quotient
from .linalg import RankDecisionError, null_space, orthonormal_span, projector_distance
from .modelspace import ModelSpace, embed, ku0_basis, subspace


@dataclass(frozen=True, eq=False)
class ModelOperator:
    matrix: np.ndarray = field(repr=False)
    space: ModelSpace

    def __post_init__(self):
        n = self.space.dim
        if self.matrix.shape != (n, n):
            raise ValueError(f"operator must be {n}x{n}, got {self.matrix.shape}")

    def quadratic_form(self, x) -> complex:
        """``Q_A(f) = <Af, f>`` for coordinates ``x``."""
        x = np.asarray(x, dtype=complex)
        return complex(np.vdot(x, self.matrix @ x))


def _matrix(A):
    return A.matrix if isinstance(A, ModelOperator) else np.asarray(A)


def tto_matrix(space: ModelSpace, symbol) -> np.ndarray:
    """``A[k, j] = <symbol * gamma_j, gamma_k>`` on the grid."""
    symbol = np.asarray(symbol, dtype=complex)
    if symbol.shape != (space.M,):
        raise ValueError(f"symbol must have {space.M} samples, got shape {symbol.shape}")
    return space.coordinates(symbol[:, None] * space.samples)


def tto_from_symbol(space: ModelSpace, symbol) -> ModelOperator:
    return ModelOperator(tto_matrix(space, symbol), space)


def compressed_shift(space: ModelSpace) -> ModelOperator:
    return tto_from_symbol(space, space.grid.nodes)


def monomial_symbols(space: ModelSpace):
    """Symbols ``chi^0..chi^{n-1}`` followed by ``conj(chi)^1..conj(chi)^{n-1}``."""
    z = space.grid.nodes
    n = space.dim
    return [z**k for k in range(n)] + [np.conj(z) ** k for k in range(1, n)]


@dataclass(frozen=True, eq=False)
class TTOSpace:
    space: ModelSpace
    span: list = field(repr=False)
    basis: np.ndarray = field(repr=False)  # (n*n, d) orthonormal columns

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def project(self, A) -> np.ndarray:
        n = self.space.dim
        a = _matrix(A).ravel()
        return (self.basis @ (self.basis.conj().T @ a)).reshape(n, n)

    def element(self, coeffs) -> ModelOperator:
        n = self.space.dim
        return ModelOperator((self.basis @ np.asarray(coeffs, dtype=complex)).reshape(n, n), self.space)


def build_tto_space(space: ModelSpace, tol: float = DEFAULT_TOLERANCES.rank) -> TTOSpace:
    span = [tto_from_symbol(space, phi) for phi in monomial_symbols(space)]
    stacked = np.stack([A.matrix.ravel() for A in span], axis=1)
    stacked = stacked / np.linalg.norm(stacked, axis=0)
    basis = orthonormal_span(stacked, tol)
    return TTOSpace(space, span, basis)


def sarason_residual(A, space: ModelSpace | None = None) -> float:
    """Max over pairs of ``|<A S g_i, S g_j> - <A g_i, g_j>|`` for an orthonormal basis of ``K_u^0``."""
    if space is None:
        space = A.space
    A = _matrix(A)
    G = ku0_basis(space)
    if G.shape[1] == 0:
        return 0.0
    shift = tto_matrix(space, space.grid.nodes)
    SG = shift @ G
    diff = SG.conj().T @ A @ SG - G.conj().T @ A @ G
    return float(np.max(np.abs(diff)))


def membership_distance(A, T: TTOSpace) -> float:
    """Frobenius distance from ``A`` to the span of ``T``."""
    A = _matrix(A)
    n = T.space.dim
    if A.shape != (n, n):
        raise ValueError(f"operator shape {A.shape} does not match TTO space of dimension {n}")
    return float(np.linalg.norm(A - T.project(A)))


def compression(A: ModelOperator, v: BlaschkeProduct) -> ModelOperator:
    """``P_v A | K_v`` in the basis of ``K_v`` (same grid)."""
    E = embed(A.space, v)  # raises for non-divisors
    return ModelOperator(E.conj().T @ A.matrix @ E, subspace(A.space, v))


def _real_basis_stack(n):
    """The ``2 n^2`` real basis matrices ``E_kl`` then ``i E_kl``."""
    eye = np.eye(n * n).reshape(n * n, n, n).astype(complex)
    return np.concatenate([eye, 1j * eye])


def _as_real_rows(images):
    """Columns of real constraint rows from a stack of complex matrices."""
    flat = images.reshape(images.shape[0], -1)
    return np.concatenate([flat.real, flat.imag], axis=1).T


def _zero_of(u: BlaschkeProduct, a: complex, tol: float = 1e-9) -> complex:
    if abs(blaschke_eval(u, a)) > tol or not u.zeros:
        raise ValueError(f"{a} is not a zero of u")
    return min(u.zeros, key=lambda x: abs(x - a))


@dataclass
class ConstraintSpace:
    basis: np.ndarray  # (n*n, d) orthonormal complex columns
    real_dim: int
    singular_values: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def symmetry_constraint_space(space: ModelSpace, a: complex, tol: float = DEFAULT_TOLERANCES.rank,
                              gap: float = DEFAULT_TOLERANCES.rank_gap) -> ConstraintSpace:
    """Operators that are ``C_u``-symmetric and satisfy ``Q_A(C_v f) = Q_A(f)`` on ``K_v``, ``v = u / b_a``.

    Both conditions are written as real-linear equations on the ``2 n^2`` real
    unknowns of ``A``; the solution set is the SVD null space.
    """
    u = space.u
    a = _zero_of(u, a)
    v = quotient(u, BlaschkeProduct((a,)))
    n = space.dim
    J = conjugation_matrix(space)
    B = _real_basis_stack(n)

    # C_u-symmetry: A^* - J conj(A) conj(J) = 0
    rows = [_as_real_rows(B.conj().transpose(0, 2, 1) - J @ B.conj() @ J.conj())]

    if v.degree > 0:
        F = embed(space, v)
        space_v = subspace(space, v)
        CF = space.coordinates(conjugate_samples(v, space.grid.nodes[:, None], space_v.samples))
        # polarized form: <A C f_i, C f_j> = <A f_j, f_i>, i.e. (CF^* A CF)^T = F^* A F
        lhs = CF.conj().T @ B @ CF
        rhs = F.conj().T @ B @ F
        rows.append(_as_real_rows(lhs.transpose(0, 2, 1) - rhs))

    return _solve(np.concatenate(rows, axis=0), n, tol, gap)


def c_symmetric_space(space: ModelSpace, tol: float = DEFAULT_TOLERANCES.rank,
                      gap: float = DEFAULT_TOLERANCES.rank_gap) -> ConstraintSpace:
    """All ``C_u``-symmetric operators on ``K_u`` (the first constraint family alone)."""
    n = space.dim
    J = conjugation_matrix(space)
    B = _real_basis_stack(n)
    return _solve(_as_real_rows(B.conj().transpose(0, 2, 1) - J @ B.conj() @ J.conj()), n, tol, gap)


def _solve(system, n, tol, gap) -> ConstraintSpace:
    real_null, s = null_space(system, tol, gap)
    r = real_null.shape[1]
    if r % 2:
        raise RankDecisionError(f"real null-space dimension {r} is odd")
    complex_vectors = real_null[: n * n] + 1j * real_null[n * n:]
    basis = orthonormal_span(complex_vectors, tol, gap)
    if 2 * basis.shape[1] != r:
        raise RankDecisionError(f"complex dimension {basis.shape[1]} inconsistent with real dimension {r}")
    return ConstraintSpace(basis, r, s)


@dataclass
class TheoremReport:
    dim_S: int
    dim_T: int
    projector_distance: float
    sarason_max_residual: float
    symmetry_max_residual: float

    def passed(self, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
        return (self.dim_S == self.dim_T
                and self.projector_distance < tol.theorem_distance
                and self.sarason_max_residual < tol.sarason)

    def as_dict(self) -> dict:
        return asdict(self)


def theorem_check(space: ModelSpace, a: complex, tol: Tolerances = DEFAULT_TOLERANCES) -> TheoremReport:
    """Compare the two-symmetry solution space with the space of TTOs."""
    S = symmetry_constraint_space(space, a, tol.rank, tol.rank_gap)
    T = build_tto_space(space, tol.rank)
    n = space.dim
    sarason = max((sarason_residual(S.basis[:, i].reshape(n, n), space) for i in range(S.dim)), default=0.0)
    J = conjugation_matrix(space)
    sym = max((symmetry_residual(T.basis[:, i].reshape(n, n), J) for i in range(T.dim)), default=0.0)
    return TheoremReport(S.dim, T.dim, projector_distance(S.basis, T.basis), sarason, sym)


def constraint_residuals(A, a: complex) -> tuple:
    """Residuals of the two symmetry conditions for a single operator."""
    space = A.space
    u = space.u
    a = _zero_of(u, a)
    v = quotient(u, BlaschkeProduct((a,)))
    M = A.matrix
    r1 = symmetry_residual(M, conjugation_matrix(space))
    if v.degree == 0:
        return r1, 0.0
    F = embed(space, v)
    space_v = subspace(space, v)
    CF = space.coordinates(conjugate_samples(v, space.grid.nodes[:, None], space_v.samples))
    r2 = float(np.linalg.norm((CF.conj().T @ M @ CF).T - F.conj().T @ M @ F))
    return r1, r2


def zero_submultisets(u: BlaschkeProduct) -> list:
    """Every divisor of ``u`` given by a sub-multiset of its zeros, smallest degree first."""
    from itertools import combinations

    seen, out = set(), []
    for k in range(u.degree + 1):
        for idx in combinations(range(u.degree), k):
            v = BlaschkeProduct(tuple(u.zeros[i] for i in idx))
            if v.zeros not in seen:
                seen.add(v.zeros)
                out.append(v)
    return out


def divisor_symmetry_residuals(A: ModelOperator, divisors) -> list:
    """``C_v``-symmetry residual of ``P_v A | K_v`` for each divisor (trivial divisors give 0)."""
    out = []
    for v in divisors:
        if v.degree == 0:
            out.append((v, 0.0))
            continue
        B = compression(A, v)
        out.append((v, symmetry_residual(B.matrix, conjugation_matrix(B.space))))
    return out
