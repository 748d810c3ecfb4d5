"""Arc/measure sequences for atomic singular measures and the limit diagnostics built on them.

For an atomic measure ``nu`` and a distinguished atom at angle ``eta`` we form the
closed arcs ``I_n`` centred at ``eta`` of normalized length ``1/n`` and the
rescaled restrictions ``mu_n = sqrt(|I_n| / nu(I_n)) * nu|I_n``. The checks
below track ``e_{mu_n}`` on a fixed disc grid as ``n`` grows.

Several thresholds are scaled by the Herglotz factor ``(1+|z|)/(1-|z|)``, the
largest possible modulus of ``(zeta+z)/(zeta-z)``; without it, first-order
errors at points close to ``eta`` exceed any fixed multiple of the mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import ATOM_CUTOFF, disc_grid, near_boundary_ring
from .inner import AtomicMeasure, SingularInner, angular_distance, boundary_eval, restrict_to_arc, singular_eval

SLOPE_WINDOW = (25, 400)


@dataclass(frozen=True)
class ArcSequenceItem:
    n: int
    center: float
    length: float
    mu: AtomicMeasure
    mass: float
    arc_mass: float  # nu(I_n)

    @property
    def half_width(self) -> float:
        """Half-width in radians."""
        return math.pi * self.length

    @property
    def inner(self) -> SingularInner:
        return SingularInner(self.mu)


def build_sequence(nu: AtomicMeasure, eta: float, N: int) -> list:
    if N < 1:
        raise ValueError("N must be at least 1")
    if not nu.has_atom(eta):
        raise ValueError(f"eta={eta} is not an atom of nu")
    eta = float(eta) % (2 * math.pi)
    items = []
    for n in range(1, N + 1):
        length = 1.0 / n
        arc_mass = restrict_to_arc(nu, eta, math.pi * length).total_mass
        scale = math.sqrt(length / arc_mass)
        mu = restrict_to_arc(nu, eta, math.pi * length, scale)
        items.append(ArcSequenceItem(n, eta, length, mu, mu.total_mass, arc_mass))
    return items


def herglotz_factor(z) -> np.ndarray:
    r = np.abs(z)
    return (1 + r) / (1 - r)


def _values(seq, z) -> np.ndarray:
    """``e_{mu_n}(z)`` with rows indexed by n."""
    return np.stack([singular_eval(item.inner, z) for item in seq])


def _window(seq, window=SLOPE_WINDOW):
    ns = np.array([item.n for item in seq])
    return (ns >= window[0]) & (ns <= window[1])


def _loglog_slope(ns, values) -> float:
    ok = values > 0
    if ok.sum() < 2:
        return float("nan")
    return float(np.polyfit(np.log(ns[ok]), np.log(values[ok]), 1)[0])


def asymptotic_mask(seq, z, window=SLOPE_WINDOW, level: float = 0.5) -> np.ndarray:
    """Grid points where ``mass * herglotz_factor <= level`` from the start of the window on."""
    start = next((item for item in seq if item.n >= window[0]), seq[-1])
    return start.mass * herglotz_factor(z) <= level


def _monotone_from(errors) -> int:
    """Smallest index after which every column of ``errors`` is nonincreasing."""
    worst = 0
    diffs = np.diff(errors, axis=0) > 1e-15
    for col in diffs.T:
        bad = np.flatnonzero(col)
        if bad.size:
            worst = max(worst, int(bad[-1]) + 1)
    return worst


@dataclass
class PointwiseReport:
    ns: np.ndarray = field(repr=False)
    errors: np.ndarray = field(repr=False)  # (N, P)
    origin_errors: np.ndarray = field(repr=False)
    final_max: float
    final_max_over_mass: float
    scaled_final_max: float  # max of err / (mass_N * herglotz_factor)
    decay_slope: float
    origin_slope: float
    asymptotic_points: int
    monotone_from_n: int
    passed: bool


def pointwise_limit_check(seq, z=None, window=SLOPE_WINDOW) -> PointwiseReport:
    """``|e_{mu_n}(z) - 1| -> 0`` on the disc grid."""
    z = disc_grid() if z is None else np.asarray(z, dtype=complex)
    ns = np.array([item.n for item in seq])
    errors = np.abs(_values(seq, z) - 1)
    origin = np.abs(_values(seq, np.zeros(1)) - 1)[:, 0]
    mass_N = seq[-1].mass
    scaled = errors[-1] / (mass_N * herglotz_factor(z)) if mass_N > 0 else np.zeros_like(errors[-1])
    w = _window(seq, window)
    mask = asymptotic_mask(seq, z, window)
    slope = _loglog_slope(ns[w], errors[w][:, mask].max(axis=1)) if mask.any() and w.sum() > 1 else float("nan")
    origin_slope = _loglog_slope(ns[w], origin[w]) if w.sum() > 1 else float("nan")
    return PointwiseReport(
        ns=ns, errors=errors, origin_errors=origin,
        final_max=float(errors[-1].max()),
        final_max_over_mass=float(errors[-1].max() / mass_N) if mass_N > 0 else 0.0,
        scaled_final_max=float(scaled.max()),
        decay_slope=slope, origin_slope=origin_slope,
        asymptotic_points=int(mask.sum()),
        monotone_from_n=int(ns[min(_monotone_from(errors), len(ns) - 1)]),
        passed=bool(np.all(scaled <= 10)),
    )


def limit_kernel(z, eta: float):
    """``(z + eta) / (z - eta)`` with ``eta`` given as an angle."""
    e = np.exp(1j * eta)
    return (z + e) / (z - e)


@dataclass
class RatioReport:
    ns: np.ndarray = field(repr=False)
    errors: np.ndarray = field(repr=False)
    final_max: float
    final_max_over_mass: float
    decay_slope: float
    remainder_ratio: float  # err(N) / (err(N/4) * mass(N) / mass(N/4))
    passed: bool


def ratio_limit_check(seq, z=None, window=SLOPE_WINDOW) -> RatioReport:
    """``(e_{mu_n}(z) - 1) / mu_n(T) -> (z + eta) / (z - eta)``."""
    z = disc_grid() if z is None else np.asarray(z, dtype=complex)
    ns = np.array([item.n for item in seq])
    masses = np.array([item.mass for item in seq])
    eta = seq[0].center
    ratios = (_values(seq, z) - 1) / masses[:, None]
    errors = np.abs(ratios - limit_kernel(z, eta))
    w = _window(seq, window)
    mask = asymptotic_mask(seq, z, window)
    slope = _loglog_slope(ns[w], errors[w][:, mask].max(axis=1)) if mask.any() and w.sum() > 1 else float("nan")
    # first-order remainder scaling from n = N/4 to n = N, on the full grid
    full = errors.max(axis=1)
    hi = len(ns) - 1
    lo = max(int(np.searchsorted(ns, ns[-1] // 4)), 0)
    remainder_ratio = float(full[hi] / (full[lo] * masses[hi] / masses[lo])) if full[lo] > 0 else 0.0
    return RatioReport(
        ns=ns, errors=errors,
        final_max=float(full[-1]), final_max_over_mass=float(full[-1] / masses[-1]),
        decay_slope=slope, remainder_ratio=remainder_ratio,
        passed=bool(remainder_ratio < 2),
    )


@dataclass
class UniformBoundReport:
    ns: np.ndarray = field(repr=False)
    per_n: np.ndarray = field(repr=False)  # sup over the grid for each n
    near_field: np.ndarray = field(repr=False)  # 20 sqrt(|I_n| / nu(I_n))
    statistic: float
    bound: float
    passed: bool


def uniform_bound_statistic(seq, z) -> np.ndarray:
    eta = np.exp(1j * seq[0].center)
    masses = np.array([item.mass for item in seq])
    vals = np.abs(z - eta)[None, :] * np.abs(_values(seq, z) - 1) / masses[:, None]
    return vals.max(axis=1)


def uniform_bound_check(seq, nu: AtomicMeasure, z=None) -> UniformBoundReport:
    """``sup |z - eta| |e_{mu_n}(z) - 1| / mu_n(T)`` against ``6 exp(3 nu(T)) + 1``."""
    if z is None:
        z = np.concatenate([disc_grid(), near_boundary_ring()])
    ns = np.array([item.n for item in seq])
    per_n = uniform_bound_statistic(seq, z)
    near = np.array([20 * math.sqrt(item.length / item.arc_mass) for item in seq])
    bound = 6 * math.exp(3 * nu.total_mass) + 1
    stat = float(per_n.max())
    return UniformBoundReport(ns, per_n, near, stat, bound, stat <= bound)


@dataclass
class WeakConvergenceReport:
    ns: np.ndarray = field(repr=False)
    norms: np.ndarray = field(repr=False)  # boundary H^2 norms of h_n
    pointwise_errors: np.ndarray = field(repr=False)  # |h_n(z) - (z+eta) g(z)|, rows by n
    sup_norm: float
    norm_cap: float
    final_pointwise_max: float
    final_pointwise_over_mass: float
    scaled_pointwise_max: float  # final error / (mass_N * herglotz_factor)
    norm_gap: float  # | ||e (chi-eta) g|| - ||(chi-eta) g|| | at n = N
    norm_distance: float  # || e (chi-eta) g - (chi-eta) g || at n = N
    dropped_nodes: int
    passed: bool


def _kept_nodes(measure: AtomicMeasure, theta, cutoff):
    if not measure.atoms:
        return np.ones(theta.shape, dtype=bool)
    return np.all(angular_distance(theta[:, None], measure.angles[None, :]) > cutoff, axis=1)


def weak_convergence_check(seq, g, nu: AtomicMeasure, z=None, M: int = 4096,
                           cutoff: float = ATOM_CUTOFF) -> WeakConvergenceReport:
    """Norm bound plus pointwise limit for ``h_n = (e_{mu_n} - 1) / mu_n(T) * (chi - eta) * g``.

    ``g`` is a vectorized callable, analytic across the closed disc. Boundary
    norms drop grid nodes within ``cutoff`` of any atom of ``nu`` and average
    over the rest.
    """
    z = disc_grid() if z is None else np.asarray(z, dtype=complex)
    eta = np.exp(1j * seq[0].center)
    theta = 2 * np.pi * np.arange(M) / M
    keep = _kept_nodes(nu, theta, cutoff)
    theta_k = theta[keep]
    zeta = np.exp(1j * theta_k)
    g_b = g(zeta)
    base = (zeta - eta) * g_b
    norms, point_err = [], []
    target = (z + eta) * g(z)
    for item in seq:
        e_b = boundary_eval(item.inner, theta_k, cutoff)
        norms.append(np.sqrt(np.mean(np.abs((e_b - 1) / item.mass * base) ** 2)))
        h = (singular_eval(item.inner, z) - 1) / item.mass * (z - eta) * g(z)
        point_err.append(np.abs(h - target))
    norms = np.array(norms)
    point_err = np.array(point_err)
    g_norm = float(np.sqrt(np.mean(np.abs(g_b) ** 2)))
    cap = 2 * (6 * math.exp(3 * nu.total_mass) + 1) * g_norm
    last = seq[-1]
    e_last = boundary_eval(last.inner, theta_k, cutoff)
    norm_gap = abs(np.sqrt(np.mean(np.abs(e_last * base) ** 2)) - np.sqrt(np.mean(np.abs(base) ** 2)))
    norm_dist = np.sqrt(np.mean(np.abs(e_last * base - base) ** 2))
    scaled = point_err[-1] / (last.mass * herglotz_factor(z))
    return WeakConvergenceReport(
        ns=np.array([item.n for item in seq]), norms=norms, pointwise_errors=point_err,
        sup_norm=float(norms.max()), norm_cap=cap,
        final_pointwise_max=float(point_err[-1].max()),
        final_pointwise_over_mass=float(point_err[-1].max() / last.mass),
        scaled_pointwise_max=float(scaled.max()),
        norm_gap=float(norm_gap), norm_distance=float(norm_dist),
        dropped_nodes=int(M - keep.sum()),
        passed=bool(norms.max() <= cap and np.all(scaled <= 5) and norm_gap < 1e-3),
    )
