"""Cotangent bundles of round spheres, embedded in R^{n+1} + R^{n+1}.

A point is a pair (p, q) with |p| equal to the base radius and <p, q> = 0;
q is the fiber coordinate. Disc and sphere sub-bundles are sampled with
explicit generator streams, and the antipodal map and the "evening" rescale
are provided as exact formulas.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "CotangentPoint",
    "CotangentTangent",
    "sample_disc_bundle",
    "sample_cosphere",
    "tangent_basis",
    "antipode",
    "even_rescale",
    "even_rescale_inverse",
    "retract",
    "sample_tangent",
]


@dataclass(frozen=True, eq=False)
class CotangentPoint:
    """Pair (p, q) with |p| = base_radius and <p, q> = 0."""

    p: np.ndarray
    q: np.ndarray
    base_radius: float = 1.0

    @property
    def n(self) -> int:
        return self.p.size - 1

    def residuals(self) -> tuple[float, float]:
        """(base-norm defect, orthogonality defect)."""
        return (
            abs(float(np.linalg.norm(self.p)) - self.base_radius),
            abs(float(self.p @ self.q)),
        )

    def validate(self, tol: float = 1e-12) -> "CotangentPoint":
        base_defect, ortho_defect = self.residuals()
        if base_defect > tol or ortho_defect > tol:
            raise ValueError(
                f"constraint violation: |p| off by {base_defect:.3e}, <p,q> = {ortho_defect:.3e}"
            )
        return self


@dataclass(frozen=True, eq=False)
class CotangentTangent:
    """Linearized-constraint solution (u, w): <p,u> = 0 and <u,q> + <p,w> = 0."""

    at: CotangentPoint
    u: np.ndarray
    w: np.ndarray

    def residuals(self) -> tuple[float, float]:
        return (
            abs(float(self.at.p @ self.u)),
            abs(float(self.u @ self.at.q) + float(self.at.p @ self.w)),
        )


def sample_disc_bundle(
    n: int, base_radius: float, fiber_radius: float, rng: np.random.Generator
) -> CotangentPoint:
    """Volume-uniform sample of the open radius-``fiber_radius`` disc bundle.

    p is uniform on the base sphere (normalized Gaussian); q is a Gaussian
    projected onto the p-orthogonal complement, scaled to |q| =
    fiber_radius * u^(1/n) with u uniform in (0, 1). The u^(1/n) radial law
    makes fiber discs uniform by volume.
    """
    if base_radius <= 0 or fiber_radius <= 0:
        raise ValueError("radii must be positive")
    p = rng.standard_normal(n + 1)
    p *= base_radius / np.linalg.norm(p)
    q = _fiber_direction(p, rng)
    u = rng.uniform()
    if u == 0.0:
        u = 0.5
    point = CotangentPoint(p=p, q=q * (fiber_radius * u ** (1.0 / n)), base_radius=base_radius)
    return point.validate()


def sample_cosphere(
    n: int, base_radius: float, fiber_radius: float, rng: np.random.Generator
) -> CotangentPoint:
    """As :func:`sample_disc_bundle` but with |q| = fiber_radius exactly."""
    if base_radius <= 0 or fiber_radius <= 0:
        raise ValueError("radii must be positive")
    p = rng.standard_normal(n + 1)
    p *= base_radius / np.linalg.norm(p)
    q = _fiber_direction(p, rng)
    point = CotangentPoint(p=p, q=q * fiber_radius, base_radius=base_radius)
    return point.validate()


def _fiber_direction(p: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Unit vector orthogonal to p, uniform on the fiber sphere.

    Projects twice: a draw nearly parallel to p leaves a tiny residual whose
    normalization would amplify the first projection's rounding error.
    """
    pp = p @ p
    while True:
        g = rng.standard_normal(p.size)
        g -= (p @ g) / pp * p
        norm = np.linalg.norm(g)
        if norm > 1e-6:
            g /= norm
            g -= (p @ g) / pp * p
            return g / np.linalg.norm(g)


def tangent_basis(m: CotangentPoint) -> list[CotangentTangent]:
    """Orthonormal basis (ambient inner product) of the constraint tangent space.

    The two linearized constraints are rows of a 2 x 2(n+1) matrix whose null
    space has dimension exactly 2n for every valid point; a deficient rank
    signals numerically degenerate input.
    """
    d = m.p.size
    rows = np.zeros((2, 2 * d))
    rows[0, :d] = m.p
    rows[1, :d] = m.q
    rows[1, d:] = m.p
    _, svals, vh = np.linalg.svd(rows)
    rank = int(np.sum(svals > 1e-10 * svals[0]))
    basis = vh[rank:]
    if basis.shape[0] != 2 * m.n:
        raise RuntimeError(
            f"numerical rank failure: expected tangent dimension {2 * m.n}, got {basis.shape[0]}"
        )
    return [CotangentTangent(at=m, u=row[:d].copy(), w=row[d:].copy()) for row in basis]


def sample_tangent(
    m: CotangentPoint, rng: np.random.Generator, unit: bool = True
) -> CotangentTangent:
    """Random constraint-tangent vector at ``m``."""
    basis = tangent_basis(m)
    coeff = rng.standard_normal(len(basis))
    if unit:
        coeff /= np.linalg.norm(coeff)
    u = sum(c * b.u for c, b in zip(coeff, basis))
    w = sum(c * b.w for c, b in zip(coeff, basis))
    return CotangentTangent(at=m, u=u, w=w)


def antipode(m: CotangentPoint) -> CotangentPoint:
    """(p, q) -> (-p, -q); an involution preserving both constraints."""
    return CotangentPoint(p=-m.p, q=-m.q, base_radius=m.base_radius)


def even_rescale(m: CotangentPoint, r: float) -> CotangentPoint:
    """Even out a radius-r disc bundle over the unit sphere.

    (p, q) -> (sqrt(r) p, q / sqrt(r)) maps the bundle over S^n(1) with fiber
    bound r onto the bundle over S^n(sqrt(r)) with fiber bound sqrt(r); the
    rescale preserves omega_std because the sqrt(r) factors cancel in
    sum dp_k ^ dq_k.
    """
    if r <= 0:
        raise ValueError("rescale parameter r must be positive")
    if abs(m.base_radius - 1.0) > 1e-12:
        raise ValueError("even_rescale expects a point over the unit base sphere")
    s = np.sqrt(r)
    return CotangentPoint(p=s * m.p, q=m.q / s, base_radius=s)


def even_rescale_inverse(m: CotangentPoint, r: float) -> CotangentPoint:
    """Explicit inverse of :func:`even_rescale`."""
    if r <= 0:
        raise ValueError("rescale parameter r must be positive")
    s = np.sqrt(r)
    if abs(m.base_radius - s) > 1e-9:
        raise ValueError("point is not on the evened bundle for this r")
    return CotangentPoint(p=m.p / s, q=m.q * s, base_radius=1.0)


def retract(p: np.ndarray, q: np.ndarray, base_radius: float) -> CotangentPoint:
    """Project an ambient (p, q) pair back onto the constraint set.

    Normalizes p to the base radius and removes the p-component of q; used
    after finite-difference offsets and integrator steps.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    norm = np.linalg.norm(p)
    if norm <= 1e-12:
        raise ValueError("cannot retract: base point collapsed to the origin")
    p = p * (base_radius / norm)
    q = q - (p @ q) / (p @ p) * p
    return CotangentPoint(p=p, q=q, base_radius=base_radius)
