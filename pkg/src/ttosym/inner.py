"""Inner functions: finite Blaschke products and atomic singular inner functions.

Blaschke factors use the unnormalized convention ``b_a(z) = (z - a) / (1 - conj(a) z)``,
so ``b_0`` is the coordinate function. Zeros are kept in a canonical order, sorted
by (modulus, angle in [0, 2pi)) with ties resolved by insertion order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import ATOM_CUTOFF, ZERO_MODULUS_GUARD

ZERO_MATCH_TOL = 1e-12


class InnerSpecError(ValueError):
    """Raised for malformed inner-function or measure descriptions."""


def _canonical_order(zeros):
    keyed = [(abs(a), math.atan2(a.imag, a.real) % (2 * math.pi), i, a) for i, a in enumerate(zeros)]
    keyed.sort(key=lambda t: (t[0], t[1], t[2]))
    return tuple(t[3] for t in keyed)


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite Blaschke product ``constant * prod_k b_{a_k}``.

    ``constant`` is a unimodular scalar; it is 1 except for products produced by
    composition with a disc automorphism, where it is needed to make
    ``u o b_a`` exact rather than exact up to rotation.
    """

    zeros: tuple = ()
    constant: complex = 1.0 + 0j

    def __post_init__(self):
        zs = tuple(complex(a) for a in self.zeros)
        for a in zs:
            if not abs(a) < 1 - ZERO_MODULUS_GUARD:
                raise ValueError(f"zero {a} is too close to the unit circle")
        c = complex(self.constant)
        if abs(abs(c) - 1) > 1e-12:
            raise ValueError(f"constant {c} is not unimodular")
        object.__setattr__(self, "zeros", _canonical_order(zs))
        object.__setattr__(self, "constant", c)

    @classmethod
    def monomial(cls, k: int) -> "BlaschkeProduct":
        """chi**k."""
        return cls((0j,) * k)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z):
        return blaschke_eval(self, z)

    def __mul__(self, other: "BlaschkeProduct") -> "BlaschkeProduct":
        return BlaschkeProduct(self.zeros + other.zeros, self.constant * other.constant)


def blaschke_factor(a: complex, z):
    z = np.asarray(z, dtype=complex)
    return (z - a) / (1 - np.conj(a) * z)


def blaschke_eval(b: BlaschkeProduct, z):
    """Evaluate ``b`` at a point or array of points with ``|z| <= 1``."""
    z = np.asarray(z, dtype=complex)
    out = np.full(z.shape, b.constant, dtype=complex)
    for a in b.zeros:
        out = out * blaschke_factor(a, z)
    return out if out.ndim else complex(out)


def _match_index(zeros, a, used):
    for i, x in enumerate(zeros):
        if i not in used and abs(x - a) <= ZERO_MATCH_TOL:
            return i
    return None


def divides(v: BlaschkeProduct, u: BlaschkeProduct) -> bool:
    """True iff the zero multiset of ``v`` is contained in that of ``u``."""
    used: set = set()
    for a in v.zeros:
        i = _match_index(u.zeros, a, used)
        if i is None:
            return False
        used.add(i)
    return True


def quotient(u: BlaschkeProduct, v: BlaschkeProduct) -> BlaschkeProduct:
    """The Blaschke product ``u / v``; raises ``ValueError`` if ``v`` does not divide ``u``."""
    used: set = set()
    for a in v.zeros:
        i = _match_index(u.zeros, a, used)
        if i is None:
            raise ValueError(f"{v} does not divide {u}")
        used.add(i)
    rest = tuple(a for i, a in enumerate(u.zeros) if i not in used)
    return BlaschkeProduct(rest, u.constant / v.constant)


@dataclass(frozen=True)
class AtomicMeasure:
    """Finite positive atomic measure on the circle, masses in normalized arclength units."""

    atoms: tuple = ()
    total_mass: float = field(init=False)

    def __post_init__(self):
        atoms = []
        for theta, w in self.atoms:
            theta, w = float(theta), float(w)
            if not w > 0:
                raise ValueError(f"atom weight must be positive, got {w}")
            atoms.append((theta % (2 * math.pi), w))
        angles = [t for t, _ in atoms]
        if len(set(angles)) != len(angles):
            raise ValueError("atom angles must be pairwise distinct")
        object.__setattr__(self, "atoms", tuple(atoms))
        object.__setattr__(self, "total_mass", math.fsum(w for _, w in atoms))

    @property
    def angles(self) -> np.ndarray:
        return np.array([t for t, _ in self.atoms], dtype=float)

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms], dtype=float)

    def has_atom(self, theta: float, tol: float = 1e-12) -> bool:
        return any(angular_distance(t, theta) <= tol for t, _ in self.atoms)

    def weight_at(self, theta: float, tol: float = 1e-12) -> float:
        return math.fsum(w for t, w in self.atoms if angular_distance(t, theta) <= tol)


def angular_distance(s, t):
    d = np.abs(np.mod(np.asarray(s) - np.asarray(t) + np.pi, 2 * np.pi) - np.pi)
    return d if d.ndim else float(d)


def _herglotz_sum(measure: AtomicMeasure, z):
    z = np.asarray(z, dtype=complex)
    total = np.zeros(z.shape, dtype=complex)
    for theta, w in measure.atoms:
        zeta = np.exp(1j * theta)
        total = total + w * (zeta + z) / (zeta - z)
    return total


@dataclass(frozen=True)
class SingularInner:
    """Singular inner function ``exp(-sum_j w_j (zeta_j + z) / (zeta_j - z))``."""

    measure: AtomicMeasure

    def __call__(self, z):
        return singular_eval(self, z)


def singular_eval(s: SingularInner, z):
    """Evaluate on the open disc; boundary points are rejected."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise ValueError("singular_eval needs |z| < 1; use boundary_eval on the circle")
    if not s.measure.atoms:
        out = np.ones(z.shape, dtype=complex)
    else:
        out = np.exp(-_herglotz_sum(s.measure, z))
    return out if out.ndim else complex(out)


def boundary_eval(s: SingularInner, theta, cutoff: float = ATOM_CUTOFF):
    """Boundary values at angle(s) ``theta``, which must keep ``cutoff`` away from every atom."""
    theta = np.asarray(theta, dtype=float)
    if s.measure.atoms:
        d = angular_distance(theta[..., None], s.measure.angles)
        if np.any(d <= cutoff):
            raise ValueError(f"boundary point within {cutoff} rad of an atom")
    zeta = np.exp(1j * theta)
    exponent = _herglotz_sum(s.measure, zeta)
    # the exponent is purely imaginary on the circle; drop rounding in the real part
    out = np.exp(-1j * exponent.imag)
    return out if out.ndim else complex(out)


def restrict_to_arc(measure: AtomicMeasure, center: float, half_width: float, scale: float = 1.0) -> AtomicMeasure:
    """Atoms within ``half_width`` radians of ``center`` (closed arc), weights times ``scale``."""
    kept = [(t, w * scale) for t, w in measure.atoms if angular_distance(t, center) <= half_width]
    return AtomicMeasure(tuple(kept))


# JSON interchange -------------------------------------------------------------

def _number(obj, path):
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise InnerSpecError(f"{path}: expected a number, got {obj!r}")
    return float(obj)


def _complex_field(obj, path):
    if not isinstance(obj, dict):
        raise InnerSpecError(f"{path}: expected an object with 're' and 'im'")
    for key in ("re", "im"):
        if key not in obj:
            raise InnerSpecError(f"{path}.{key}: missing")
    return complex(_number(obj["re"], f"{path}.re"), _number(obj["im"], f"{path}.im"))


def parse_inner(obj):
    """Build a ``BlaschkeProduct`` or ``SingularInner`` from its JSON form."""
    if not isinstance(obj, dict):
        raise InnerSpecError("inner function: expected a JSON object")
    kind = obj.get("type")
    if kind == "blaschke":
        zeros = obj.get("zeros")
        if not isinstance(zeros, list):
            raise InnerSpecError("zeros: expected a list")
        zs = [_complex_field(z, f"zeros[{i}]") for i, z in enumerate(zeros)]
        constant = 1.0
        if "constant" in obj:
            constant = _complex_field(obj["constant"], "constant")
        try:
            return BlaschkeProduct(tuple(zs), constant)
        except ValueError as exc:
            raise InnerSpecError(f"zeros: {exc}") from exc
    if kind == "singular":
        return SingularInner(parse_measure(obj))
    raise InnerSpecError(f"type: expected 'blaschke' or 'singular', got {kind!r}")


def parse_measure(obj) -> AtomicMeasure:
    atoms = obj.get("atoms") if isinstance(obj, dict) else None
    if not isinstance(atoms, list):
        raise InnerSpecError("atoms: expected a list")
    parsed = []
    for i, atom in enumerate(atoms):
        if not isinstance(atom, dict):
            raise InnerSpecError(f"atoms[{i}]: expected an object with 'angle' and 'weight'")
        for key in ("angle", "weight"):
            if key not in atom:
                raise InnerSpecError(f"atoms[{i}].{key}: missing")
        w = _number(atom["weight"], f"atoms[{i}].weight")
        if not w > 0:
            raise InnerSpecError(f"atoms[{i}].weight: must be positive")
        parsed.append((_number(atom["angle"], f"atoms[{i}].angle"), w))
    try:
        return AtomicMeasure(tuple(parsed))
    except ValueError as exc:
        raise InnerSpecError(f"atoms: {exc}") from exc


def inner_to_json(f) -> dict:
    if isinstance(f, BlaschkeProduct):
        out = {"type": "blaschke", "zeros": [{"re": a.real, "im": a.imag} for a in f.zeros]}
        if f.constant != 1:
            out["constant"] = {"re": f.constant.real, "im": f.constant.imag}
        return out
    if isinstance(f, SingularInner):
        return {"type": "singular", "atoms": [{"angle": t, "weight": w} for t, w in f.measure.atoms]}
    raise TypeError(f"not an inner function: {f!r}")
