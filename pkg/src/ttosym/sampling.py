"""Seeded random inner functions, operators and test functions."""

from __future__ import annotations

import numpy as np

from .inner import BlaschkeProduct


def random_disc_points(rng: np.random.Generator, size, max_modulus: float = 0.9) -> np.ndarray:
    """Uniform in the disc of radius ``max_modulus``."""
    r = max_modulus * np.sqrt(rng.uniform(size=size))
    return r * np.exp(2j * np.pi * rng.uniform(size=size))


def random_blaschke(rng: np.random.Generator, degree: int, max_modulus: float = 0.9,
                    repeat: bool = False) -> BlaschkeProduct:
    """Random product of the given degree; with ``repeat`` at least one zero is doubled."""
    zeros = list(random_disc_points(rng, degree, max_modulus))
    if repeat and degree >= 2:
        i, j = rng.choice(degree, size=2, replace=False)
        zeros[j] = zeros[i]
    return BlaschkeProduct(tuple(zeros))


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Independent standard complex Gaussians (unit variance)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_operator(rng: np.random.Generator, n: int) -> np.ndarray:
    return complex_gaussian(rng, (n, n))


def random_rational_samples(rng: np.random.Generator, nodes, n_terms: int = 3,
                            max_modulus: float = 0.8, antianalytic: bool = True) -> np.ndarray:
    """Samples of ``sum_j c_j / (1 - conj(p_j) z)`` plus, optionally, a conjugate-analytic part."""
    nodes = np.asarray(nodes)
    poles = random_disc_points(rng, n_terms, max_modulus)
    coeffs = complex_gaussian(rng, n_terms)
    f = sum(c / (1 - np.conj(p) * nodes) for c, p in zip(coeffs, poles))
    if antianalytic:
        poles = random_disc_points(rng, n_terms, max_modulus)
        coeffs = complex_gaussian(rng, n_terms)
        f = f + sum(c * np.conj(nodes) / (1 - p * np.conj(nodes)) for c, p in zip(coeffs, poles))
    return f
