"""Points and tangent vectors of complex projective space.

Points are stored as unit-norm representatives with a canonical phase (the
entry of largest modulus is real and positive, ties broken by lowest index),
so no charts are ever needed. Tangent vectors are horizontal lifts: ambient
complex vectors orthogonal, in the real sense, to both the representative and
its i-rotation, which is the same as complex orthogonality to the
representative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ProjectivePoint",
    "ProjectiveTangent",
    "proj_normalize",
    "horizontal_project",
    "quadric_residual",
    "in_hyperplane",
    "same_point",
    "projective_defect",
    "sample_projective",
    "sample_horizontal",
]


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    """Point of CP^n held as a unit-norm complex representative."""

    rep: np.ndarray

    @property
    def dim(self) -> int:
        return self.rep.size - 1

    def residuals(self) -> tuple[float, float]:
        """(norm defect, canonical-phase defect) of the stored representative."""
        norm_defect = abs(np.linalg.norm(self.rep) - 1.0)
        k = int(np.argmax(np.abs(self.rep)))
        entry = self.rep[k]
        phase_defect = abs(entry.imag) + max(0.0, -entry.real)
        return norm_defect, phase_defect


@dataclass(frozen=True, eq=False)
class ProjectiveTangent:
    """Horizontal ambient vector at a point's representative."""

    base: ProjectivePoint
    vec: np.ndarray

    def residuals(self) -> tuple[float, float]:
        product = np.vdot(self.base.rep, self.vec)
        return abs(product.real), abs(product.imag)


def proj_normalize(z: np.ndarray) -> ProjectivePoint:
    """Canonical-phase unit representative of the projective class [z].

    Raises ValueError on near-zero input (degenerate point).
    """
    z = np.asarray(z, dtype=complex)
    mags = np.abs(z)
    norm = np.sqrt(float(mags @ mags))
    if norm <= 1e-12:
        raise ValueError("degenerate point: representative norm below 1e-12")
    k = int(np.argmax(mags))
    z = z * (z[k].conjugate() / (mags[k] * norm))
    # force the pivot entry exactly real; its imaginary part is rounding noise
    z[k] = z[k].real
    return ProjectivePoint(rep=z)


def horizontal_project(point: ProjectivePoint, v: np.ndarray) -> ProjectiveTangent:
    """Project an ambient complex vector onto the horizontal space at ``point``.

    Subtracting the real components along rep and i*rep equals the complex
    projection v - <rep, v> rep.
    """
    v = np.asarray(v, dtype=complex)
    vec = v - np.vdot(point.rep, v) * point.rep
    return ProjectiveTangent(base=point, vec=vec)


def quadric_residual(point: ProjectivePoint) -> complex:
    """Sum of squared representative entries; zero iff the point is on the quadric."""
    return complex(np.sum(point.rep * point.rep))


def in_hyperplane(point: ProjectivePoint, i: int, tol: float = 1e-10) -> bool:
    """True iff the i-th homogeneous coordinate vanishes to within ``tol``."""
    if not 0 <= i < point.rep.size:
        raise IndexError(f"coordinate index {i} out of range for CP^{point.dim}")
    return bool(abs(point.rep[i]) <= tol)


def same_point(a: ProjectivePoint, b: ProjectivePoint, tol: float = 1e-9) -> bool:
    """Projective equality: |<rep_a, rep_b>| >= 1 - tol. Chart-free."""
    return bool(abs(np.vdot(a.rep, b.rep)) >= 1.0 - tol)


def projective_defect(a: ProjectivePoint, b: ProjectivePoint) -> float:
    """1 - |<rep_a, rep_b>|; zero iff the two classes coincide."""
    return float(1.0 - abs(np.vdot(a.rep, b.rep)))


def sample_projective(n: int, rng: np.random.Generator) -> ProjectivePoint:
    """Uniform point of CP^n (normalized complex Gaussian)."""
    z = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    return proj_normalize(z)


def sample_horizontal(
    point: ProjectivePoint, rng: np.random.Generator, unit: bool = True
) -> ProjectiveTangent:
    """Random horizontal tangent at ``point``, unit ambient norm by default."""
    v = rng.standard_normal(point.rep.size) + 1j * rng.standard_normal(point.rep.size)
    tangent = horizontal_project(point, v)
    if unit:
        norm = np.linalg.norm(tangent.vec)
        if norm <= 1e-12:
            return sample_horizontal(point, rng, unit=unit)
        tangent = ProjectiveTangent(base=point, vec=tangent.vec / norm)
    return tangent
