"""Shared numerical primitives.

Finite-difference Jacobians, counter-based seeded sampling streams, and
tensor-product Gauss-Legendre quadrature. Everything downstream (pullback
checks, flow comparisons, period integrals) is built on these three
ingredients, so their contracts are kept deliberately small: pure functions,
explicit generator state, no hidden caches.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "ToleranceProfile",
    "DEFAULT_PROFILE",
    "STRICT_PROFILE",
    "PROFILES",
    "jacobian",
    "derive_stream",
    "sample_gaussian",
    "gauss_legendre_2d",
    "realify",
    "complexify",
]


@dataclass(frozen=True)
class ToleranceProfile:
    """Numerical knobs shared by every module.

    fd_step balances O(h^2) truncation against double-precision cancellation;
    branch_margin keeps the square-root lift of the pushed-down form away from
    the branch locus where its derivative blows up.
    """

    fd_step: float = 1e-5
    residual_tol: float = 1e-10
    flow_tol: float = 1e-12
    quadrature_tol: float = 1e-6
    branch_margin: float = 1e-3

    def __post_init__(self) -> None:
        for field in ("fd_step", "residual_tol", "flow_tol", "quadrature_tol", "branch_margin"):
            if not getattr(self, field) > 0.0:
                raise ValueError(f"{field} must be strictly positive")
        if self.fd_step >= 1e-3:
            raise ValueError("fd_step must be below 1e-3")


DEFAULT_PROFILE = ToleranceProfile()
STRICT_PROFILE = ToleranceProfile(residual_tol=1e-11, flow_tol=1e-13, quadrature_tol=1e-7)
PROFILES = {"default": DEFAULT_PROFILE, "strict": STRICT_PROFILE}


def jacobian(f: Callable[[np.ndarray], np.ndarray], x: np.ndarray, h: float = 1e-5) -> np.ndarray:
    """Central-difference Jacobian of ``f`` at ``x``.

    Parameters
    ----------
    f : callable
        Map from R^m to R^k, evaluable at the 2m axis offsets ``x +- h e_j``.
    x : array_like
        Base point, length m.
    h : float
        Step size.

    Returns
    -------
    ndarray, shape (k, m)
        ``J[i, j] = (f_i(x + h e_j) - f_i(x - h e_j)) / (2 h)``; error O(h^2)
        for thrice-differentiable f.

    Raises
    ------
    ValueError
        If evaluation fails at an offset point (e.g. the offset leaves the
        map's domain); the message names the offending offset.
    """
    x = np.asarray(x, dtype=float)
    m = x.size
    cols = []
    for j in range(m):
        step = np.zeros(m)
        step[j] = h
        vals = []
        for sgn, pt in (("+", x + step), ("-", x - step)):
            try:
                vals.append(np.asarray(f(pt), dtype=float))
            except Exception as exc:
                raise ValueError(
                    f"evaluation failed at offset x {sgn} {h:g}*e_{j}: {exc}"
                ) from exc
        cols.append((vals[0] - vals[1]) / (2.0 * h))
    return np.stack(cols, axis=1)


def derive_stream(master_seed: int, name: str) -> np.random.Generator:
    """Independent counter-based stream keyed by (master seed, name).

    Philox is counter-based, so streams with distinct keys never collide and
    every named consumer owns its own reproducible sequence.
    """
    digest = hashlib.sha256(f"{master_seed}:{name}".encode()).digest()
    key = int.from_bytes(digest[:16], "big")
    return np.random.Generator(np.random.Philox(key=key))


def sample_gaussian(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Standard-normal vector of length ``dim``; advances the stream state."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    return rng.standard_normal(dim)


def gauss_legendre_2d(
    g: Callable[[float, float], float],
    a: float,
    b: float,
    c: float,
    d: float,
    nodes_per_axis: int = 200,
) -> float:
    """Tensor-product Gauss-Legendre estimate of a double integral.

    ``g`` must be continuous on the closed rectangle [a, b] x [c, d]; a
    non-finite value at any node is raised as an evaluation error rather than
    silently summed.
    """
    if nodes_per_axis < 2:
        raise ValueError("nodes_per_axis must be >= 2")
    xs, wx = np.polynomial.legendre.leggauss(nodes_per_axis)
    us = 0.5 * (b - a) * xs + 0.5 * (a + b)
    vs = 0.5 * (d - c) * xs + 0.5 * (c + d)
    wu = 0.5 * (b - a) * wx
    wv = 0.5 * (d - c) * wx
    total = 0.0
    for i, u in enumerate(us):
        row = 0.0
        for j, v in enumerate(vs):
            val = g(u, v)
            if not np.isfinite(val):
                raise ValueError(f"integrand returned non-finite value {val} at ({u}, {v})")
            row += wv[j] * val
        total += wu[i] * row
    return total


def realify(z: np.ndarray) -> np.ndarray:
    """Complex C^m vector as real R^{2m}: real parts first, imaginary second."""
    z = np.asarray(z, dtype=complex)
    return np.concatenate([z.real, z.imag])


def complexify(x: np.ndarray) -> np.ndarray:
    """Inverse of :func:`realify`; requires even length."""
    x = np.asarray(x, dtype=float)
    if x.size % 2:
        raise ValueError("cannot pair coordinates of an odd-length vector")
    m = x.size // 2
    return x[:m] + 1j * x[m:]
