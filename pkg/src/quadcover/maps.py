"""The explicit maps of the compactification construction.

Ball embedding into projective space, cotangent bundle into the quadric,
cosphere boundary onto the lower quadric, coordinate-dropping branched double
cover with its deck involution, the twisted Segre identification of the
quadric surface with a product of lines, and the locus classifiers for the
conic and the real points of the plane.

All maps operate on canonical representatives and re-normalize outputs;
identities between them are asserted through the projective equality
predicate, never entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cotangent import CotangentPoint
from .forms import BoxSpace, CotangentSpace, ProductSpace, ProjectiveSpace, SmoothMap
from .numerics import complexify
from .projective import ProjectivePoint, proj_normalize

__all__ = [
    "ball_to_projective",
    "ball_embedding",
    "cotangent_to_quadric",
    "cotangent_embedding",
    "quadric_to_cotangent",
    "cosphere_boundary",
    "branched_cover",
    "branched_cover_map",
    "quadric_fiber",
    "deck",
    "deck_map",
    "segre_unitary",
    "segre_map",
    "swap_factors",
    "swap_map",
    "antipodal_cp1",
    "locus_classify",
    "MapCatalogEntry",
    "map_catalog",
]

ROOT2 = float(np.sqrt(2.0))


def ball_to_projective(z: np.ndarray, r: float) -> ProjectivePoint:
    """Embed the open radius-r complex ball: z -> [z : i sqrt(r^2 - |z|^2)].

    The image misses the last coordinate hyperplane; |z| >= r is a domain
    error.
    """
    z = np.asarray(z, dtype=complex)
    rad2 = float(r) ** 2 - float(np.vdot(z, z).real)
    if rad2 <= 0.0:
        raise ValueError(f"point with |z| = {np.linalg.norm(z):.6g} is outside the open ball B({r:g})")
    return proj_normalize(np.concatenate([z, [1j * np.sqrt(rad2)]]))


def ball_embedding(n: int, r: float) -> SmoothMap:
    """Ball embedding as a smooth map from real coordinates R^{2(n+1)} to CP^{n+1}."""
    return SmoothMap(
        domain=BoxSpace(2 * (n + 1)),
        target=ProjectiveSpace(n + 1),
        func=lambda x: ball_to_projective(complexify(np.asarray(x, dtype=float)), r),
        name=f"ball({r:g})->CP{n + 1}",
    )


def cotangent_to_quadric(m: CotangentPoint) -> ProjectivePoint:
    """Embed the open unit disc bundle into the quadric: (p, q) -> [p + iq : i sqrt(1 - |q|^2)].

    This is the radius-sqrt(2) ball embedding applied to z = p + iq; the image
    satisfies sum z_k^2 = 0 because |p| = 1 and <p, q> = 0.
    """
    if abs(m.base_radius - 1.0) > 1e-12:
        raise ValueError("quadric embedding expects the unit base sphere")
    if np.linalg.norm(m.q) >= 1.0:
        raise ValueError("quadric embedding expects |q| < 1 (open disc bundle)")
    return ball_to_projective(m.p + 1j * m.q, ROOT2)


def cotangent_embedding(n: int) -> SmoothMap:
    return SmoothMap(
        domain=CotangentSpace(n, 1.0),
        target=ProjectiveSpace(n + 1),
        func=cotangent_to_quadric,
        name=f"T*S{n}->Q{n}",
    )


def quadric_to_cotangent(point: ProjectivePoint) -> CotangentPoint:
    """Inverse affine chart: an off-hyperplane quadric point back to (p, q).

    Rescales the representative to norm sqrt(2) with last coordinate i*t,
    t > 0; the first block then splits as p + iq with |p| = 1, <p, q> = 0
    exactly when the input is on the quadric.
    """
    rep = point.rep
    last = rep[-1]
    if abs(last) <= 1e-12:
        raise ValueError("point lies on the last coordinate hyperplane; chart does not apply")
    gauge = 1j * last.conjugate() / abs(last)
    z = ROOT2 * gauge * rep[:-1]
    return CotangentPoint(p=z.real.copy(), q=z.imag.copy(), base_radius=1.0)


def cosphere_boundary(m: CotangentPoint) -> ProjectivePoint:
    """Boundary map of the cut: a unit cosphere point to [p + iq : 0].

    The image lies on both the quadric and the last hyperplane, hence on the
    lower quadric.
    """
    if abs(m.base_radius - 1.0) > 1e-12:
        raise ValueError("boundary map expects the unit base sphere")
    fiber = float(np.linalg.norm(m.q))
    if abs(fiber - 1.0) > 1e-10:
        raise ValueError(f"boundary map expects |q| = 1, got {fiber:.12g}")
    z = m.p + 1j * m.q
    return proj_normalize(np.concatenate([z, [0.0 + 0.0j]]))


def branched_cover(point: ProjectivePoint) -> ProjectivePoint:
    """Drop the last homogeneous coordinate: [z_0 : ... : z_{n+1}] -> [z_0 : ... : z_n].

    Undefined at the center point [0 : ... : 0 : 1].
    """
    head = point.rep[:-1]
    if np.linalg.norm(head) <= 1e-12:
        raise ValueError("branched cover is undefined at the center point [0:...:0:1]")
    return proj_normalize(head)


def branched_cover_map(n: int) -> SmoothMap:
    return SmoothMap(
        domain=ProjectiveSpace(n + 1),
        target=ProjectiveSpace(n),
        func=branched_cover,
        name=f"CP{n + 1}->CP{n}",
    )


def quadric_fiber(point: ProjectivePoint, tol: float = 1e-10) -> list[ProjectivePoint]:
    """Preimages on the quadric upstairs of a point of CP^n.

    Solving w^2 = -sum z_k^2 gives two sheets off the branch quadric and a
    single point [z : 0] on it.
    """
    rep = point.rep
    s = complex(np.sum(rep * rep))
    if abs(s) <= tol:
        return [proj_normalize(np.concatenate([rep, [0.0 + 0.0j]]))]
    w = 1j * np.sqrt(s)
    return [
        proj_normalize(np.concatenate([rep, [w]])),
        proj_normalize(np.concatenate([rep, [-w]])),
    ]


def deck(point: ProjectivePoint) -> ProjectivePoint:
    """Deck involution of the cover: negate the last homogeneous coordinate."""
    rep = point.rep.copy()
    rep[-1] = -rep[-1]
    return proj_normalize(rep)


def deck_map(n: int) -> SmoothMap:
    return SmoothMap(
        domain=ProjectiveSpace(n + 1),
        target=ProjectiveSpace(n + 1),
        func=deck,
        name=f"deck(CP{n + 1})",
    )


def segre_unitary(a: ProjectivePoint, b: ProjectivePoint) -> ProjectivePoint:
    """Twisted Segre map ([x:y], [a:b]) -> [xa+yb : i(xa-yb) : i(xb+ya) : xb-ya].

    Composition of the Segre embedding with a unitary (up to scale) change of
    coordinates; the image lies on the quadric surface in CP^3.
    """
    x, y = a.rep
    s, t = b.rep
    return proj_normalize(
        np.array(
            [
                x * s + y * t,
                1j * (x * s - y * t),
                1j * (x * t + y * s),
                x * t - y * s,
            ]
        )
    )


def segre_map() -> SmoothMap:
    p1 = ProjectiveSpace(1)
    return SmoothMap(
        domain=ProductSpace(p1, p1),
        target=ProjectiveSpace(3),
        func=lambda pair: segre_unitary(pair[0], pair[1]),
        name="CP1xCP1->Q2",
    )


def swap_factors(pair: tuple[ProjectivePoint, ProjectivePoint]):
    """Exchange the two factors of a product point."""
    return (pair[1], pair[0])


def swap_map() -> SmoothMap:
    p1 = ProjectiveSpace(1)
    space = ProductSpace(p1, p1)
    return SmoothMap(domain=space, target=space, func=swap_factors, name="swap")


def antipodal_cp1(a: ProjectivePoint) -> ProjectivePoint:
    """Fixed-point-free involution of CP^1: [x : y] -> [-conj(y) : conj(x)]."""
    x, y = a.rep
    return proj_normalize(np.array([-y.conjugate(), x.conjugate()]))


def locus_classify(point: ProjectivePoint, tol: float = 1e-9) -> str:
    """Classify a point of CP^2 as ``on_Q1``, ``on_RP2``, or ``generic``.

    Real points are detected gauge-freely: some phase makes all coordinates
    real iff Im(z_j conj(z_k)) vanishes for every pair (j, k).
    """
    rep = point.rep
    if abs(np.sum(rep * rep)) < tol:
        return "on_Q1"
    pairwise = np.abs(np.imag(np.outer(rep, rep.conjugate())))
    if float(pairwise.max()) < tol:
        return "on_RP2"
    return "generic"


@dataclass(frozen=True)
class MapCatalogEntry:
    name: str
    map: SmoothMap
    statement: str


def map_catalog(n: int = 2, r: float = ROOT2) -> list[MapCatalogEntry]:
    """Named catalog of the construction's maps at a given dimension.

    Names are unique; the statement strings record the defining property each
    map is checked against.
    """
    entries = [
        MapCatalogEntry(
            name="ball-embedding",
            map=ball_embedding(n, r),
            statement="open radius-r ball onto the complement of the last hyperplane",
        ),
        MapCatalogEntry(
            name="cotangent-embedding",
            map=cotangent_embedding(n),
            statement="open unit disc bundle onto the quadric minus the lower quadric",
        ),
        MapCatalogEntry(
            name="branched-cover",
            map=branched_cover_map(n),
            statement="coordinate-dropping double cover branched along the lower quadric",
        ),
        MapCatalogEntry(
            name="deck",
            map=deck_map(n),
            statement="sign flip of the last coordinate; generates the cover's deck group",
        ),
        MapCatalogEntry(
            name="segre-unitary",
            map=segre_map(),
            statement="product of lines onto the quadric surface, unitary twist of Segre",
        ),
        MapCatalogEntry(
            name="factor-swap",
            map=swap_map(),
            statement="involution of the product intertwined with the deck map",
        ),
    ]
    names = [e.name for e in entries]
    if len(set(names)) != len(names):
        raise ValueError("catalog names must be unique")
    return entries
