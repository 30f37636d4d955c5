"""Named verification registry, runner, and machine-readable reporting.

Every computationally checkable statement of the compactification
construction is bound to one check id with a pinned tolerance. Residual-style
checks sample inputs from a private generator stream and report the worst
residual; witness-style checks (the negative statements) search for a single
input exceeding a threshold and report the best witness found. A check can be
re-run on a serialized witness to reproduce its residual exactly.
"""

from __future__ import annotations

import fnmatch
import time
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from .cotangent import (
    CotangentPoint,
    antipode,
    even_rescale,
    even_rescale_inverse,
    sample_cosphere,
    sample_disc_bundle,
    sample_tangent,
)
from .dynamics import (
    HamiltonianSpec,
    flow_closed_form,
    flow_uneven_cosphere,
    rk4_integrate,
    scalar_action,
)
from .forms import (
    BoxSpace,
    CotangentSpace,
    ProjectiveSpace,
    SmoothMap,
    _omega_std_ambient,
    cotangent_omega_std,
    fubini_study_form,
    integrate_surface,
    omega_r,
    product_form,
    pullback,
    scaled_form,
)
from .maps import (
    antipodal_cp1,
    ball_embedding,
    branched_cover,
    branched_cover_map,
    cosphere_boundary,
    cotangent_to_quadric,
    deck,
    locus_classify,
    quadric_fiber,
    quadric_to_cotangent,
    segre_map,
    segre_unitary,
)
from .numerics import (
    DEFAULT_PROFILE,
    PROFILES,
    ToleranceProfile,
    derive_stream,
    realify,
)
from .projective import (
    ProjectivePoint,
    horizontal_project,
    in_hyperplane,
    proj_normalize,
    projective_defect,
    quadric_residual,
    sample_horizontal,
    sample_projective,
)

__all__ = [
    "Check",
    "CheckReport",
    "SuiteConfig",
    "UsageError",
    "VERIFIED_STATEMENTS",
    "build_registry",
    "run_check",
    "run_suite",
    "emit_report",
    "render_text",
    "render_json",
]

TWO_PI = 2.0 * np.pi
ROOT2 = float(np.sqrt(2.0))

# a residual far above every tolerance, used when a structural expectation
# (membership, classification, fiber count) fails outright
SENTINEL = 1.0


class UsageError(ValueError):
    """Bad invocation: unknown check id, invalid params, or an empty match."""


# ---------------------------------------------------------------------------
# Statements covered by the registry. A self-test compares this manifest
# against the union of `covers` over all checks.
# ---------------------------------------------------------------------------

VERIFIED_STATEMENTS: dict[str, str] = {
    "ball-embedding-pullback": "the radius-r ball embeds with pullback r^2 omega_FS = omega_std",
    "cotangent-to-quadric-image": "the open unit disc bundle fills the quadric minus the lower quadric",
    "unit-cosphere-cut": "the cosphere collapses along the circle action onto the lower quadric",
    "branched-double-cover": "dropping the last coordinate is a double cover with deck sign flip",
    "branch-locus-degeneracy": "the pulled-back form degenerates along the branch locus",
    "quadric-product-structure": "the quadric surface is a product of lines via the twisted Segre map",
    "evened-disc-bundle": "rescaling evens the disc bundle so flow and scalar action agree",
    "pushed-down-form": "the quotient form descends with 2r scaling and matching periods",
    "zero-section-image": "the zero section maps to the real locus and the boundary to the conic",
}


# ---------------------------------------------------------------------------
# Serialization helpers: every sampled input is a plain-JSON dict so the
# worst case can be stored as a witness and replayed bit-for-bit.
# ---------------------------------------------------------------------------


def _cvec(z: np.ndarray) -> dict:
    z = np.asarray(z, dtype=complex)
    return {"re": [float(v) for v in z.real], "im": [float(v) for v in z.imag]}


def _uncvec(d: dict) -> np.ndarray:
    return np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)


def _floats(x) -> list[float]:
    return [float(v) for v in np.asarray(x, dtype=float)]


def _point(d: dict) -> CotangentPoint:
    return CotangentPoint(
        p=np.asarray(d["p"], dtype=float),
        q=np.asarray(d["q"], dtype=float),
        base_radius=float(d.get("k", 1.0)),
    )


def _projective(d: dict) -> ProjectivePoint:
    return proj_normalize(_uncvec(d))


def _dist(a: CotangentPoint, b: CotangentPoint) -> float:
    return max(float(np.max(np.abs(a.p - b.p))), float(np.max(np.abs(a.q - b.q))))


# ---------------------------------------------------------------------------
# Shared geometry helpers.
# ---------------------------------------------------------------------------


def _ball_sample(n: int, r: float, rng: np.random.Generator) -> np.ndarray:
    """Volume-uniform interior point of the open complex ball.

    Kept within 0.95 r: the embedding's square root loses derivatives at the
    boundary faster than central differences at step 1e-5 can tolerate.
    """
    z = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    z /= np.linalg.norm(z)
    radius = 0.95 * r * rng.uniform() ** (1.0 / (2 * (n + 1)))
    return radius * z


def _unit_real(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def _quadric_frame(rep: np.ndarray) -> np.ndarray:
    """Complex orthonormal rows spanning the quadric tangent space at rep.

    Tangency means complex orthogonality to both rep (horizontality) and
    conj(rep) (the quadric constraint sum z_k v_k = 0); the two are
    independent everywhere on the quadric because sum rep^2 = 0.
    """
    rows = np.stack([np.conj(rep), rep])
    _, svals, vh = np.linalg.svd(rows)
    rank = int(np.sum(svals > 1e-10 * svals[0]))
    if rank != 2:
        raise RuntimeError("degenerate quadric tangent frame")
    return np.conj(vh[rank:])


def _quadric_tangent(rep: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    frame = _quadric_frame(rep)
    coeff = rng.standard_normal(frame.shape[0]) + 1j * rng.standard_normal(frame.shape[0])
    v = coeff @ frame
    return v / np.linalg.norm(v)


def _sphere_chart() -> SmoothMap:
    """Polar-angle chart of the projective line covering all of CP^1.

    (theta, phi) -> [cos(theta/2) : sin(theta/2) e^{i phi}] on the closed
    rectangle [0, pi] x [0, 2 pi].
    """

    def func(x):
        theta, phi = float(x[0]), float(x[1])
        return proj_normalize(
            np.array([np.cos(theta / 2.0), np.sin(theta / 2.0) * np.exp(1j * phi)])
        )

    bounds = (np.array([0.0, 0.0]), np.array([np.pi, TWO_PI]))
    return SmoothMap(
        domain=BoxSpace(2, bounds), target=ProjectiveSpace(1), func=func, name="CP1-chart"
    )


def _conic_chart() -> SmoothMap:
    """The degree-2 curve [x:y] -> [x^2+y^2 : i(x^2-y^2) : 2ixy] over the CP^1 chart."""
    chart = _sphere_chart()

    def func(x):
        a = chart(x)
        s, t = a.rep
        return proj_normalize(np.array([s * s + t * t, 1j * (s * s - t * t), 2j * s * t]))

    return SmoothMap(
        domain=chart.domain, target=ProjectiveSpace(2), func=func, name="Q1-chart"
    )


def _diagonal_chart() -> SmoothMap:
    chart = _sphere_chart()
    segre = segre_map()

    def func(x):
        a = chart(x)
        return (a, a)

    return SmoothMap(domain=chart.domain, target=segre.domain, func=func, name="diagonal-chart")


def _evened_rescale_map(n: int, r: float) -> SmoothMap:
    return SmoothMap(
        domain=CotangentSpace(n, 1.0),
        target=CotangentSpace(n, float(np.sqrt(r))),
        func=lambda m: even_rescale(m, r),
        name=f"even_rescale({r:g})",
    )


# ---------------------------------------------------------------------------
# Check implementations: a generator of serializable inputs plus a pure
# residual (or witness score) per input.
# ---------------------------------------------------------------------------


def _gen_projemb(params, rng):
    inputs = []
    for n in params["n"]:
        for r in params["r"]:
            for _ in range(params["samples"]):
                z = _ball_sample(n, r, rng)
                for _ in range(params["pairs"]):
                    inputs.append(
                        {
                            "n": int(n),
                            "r": float(r),
                            "z": _cvec(z),
                            "v1": _floats(_unit_real(2 * (n + 1), rng)),
                            "v2": _floats(_unit_real(2 * (n + 1), rng)),
                        }
                    )
    return inputs


def _res_projemb(inp, profile):
    n, r = inp["n"], inp["r"]
    emb = ball_embedding(n, r)
    target = scaled_form(fubini_study_form(n + 1), r * r)
    x = realify(_uncvec(inp["z"]))
    v1 = np.asarray(inp["v1"], dtype=float)
    v2 = np.asarray(inp["v2"], dtype=float)
    value = pullback(emb, target, x, v1, v2)
    return abs(value - _omega_std_ambient(v1, v2))


def _gen_sphereembedding(params, rng):
    inputs = []
    for n in params["n"]:
        for _ in range(params["samples"]):
            m = sample_disc_bundle(n, 1.0, 1.0, rng)
            inputs.append({"n": int(n), "p": _floats(m.p), "q": _floats(m.q)})
    return inputs


def _res_sphereembedding(inp, profile):
    n = inp["n"]
    image = cotangent_to_quadric(_point(inp))
    if in_hyperplane(image, n + 1, tol=profile.residual_tol):
        return SENTINEL
    return abs(quadric_residual(image))


def _gen_sphereembedding_lift(params, rng):
    inputs = []
    for n in params["n"]:
        count = 0
        while count < params["samples"]:
            z = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
            s = complex(np.sum(z * z))
            point = proj_normalize(np.concatenate([z, [1j * np.sqrt(s)]]))
            if abs(point.rep[-1]) <= 1e-6:
                continue
            inputs.append({"n": int(n), "z": _cvec(point.rep)})
            count += 1
    return inputs


def _res_sphereembedding_lift(inp, profile):
    point = _projective(inp["z"])
    m = quadric_to_cotangent(point)
    base_defect = abs(float(np.linalg.norm(m.p)) - 1.0)
    ortho_defect = abs(float(m.p @ m.q))
    roundtrip = projective_defect(cotangent_to_quadric(m), point)
    return max(base_defect, ortho_defect, roundtrip)


def _gen_unitcut_boundary(params, rng):
    inputs = []
    for n in params["n"]:
        for _ in range(params["samples"]):
            m = sample_cosphere(n, 1.0, 1.0, rng)
            inputs.append({"n": int(n), "p": _floats(m.p), "q": _floats(m.q)})
    return inputs


def _res_unitcut_boundary(inp, profile):
    n = inp["n"]
    m = _point(inp)
    image = cosphere_boundary(m)
    if not in_hyperplane(image, n + 1, tol=profile.residual_tol):
        return SENTINEL
    worst = abs(quadric_residual(image))
    for t in np.linspace(0.0, TWO_PI, 17)[1:]:
        orbit = cosphere_boundary(scalar_action(m, float(t)))
        worst = max(worst, projective_defect(orbit, image))
    return worst


def _gen_unitcut_flow(params, rng):
    inputs = []
    for n in params["n"]:
        for _ in range(params["samples"]):
            m = sample_cosphere(n, 1.0, 1.0, rng)
            inputs.append(
                {"n": int(n), "p": _floats(m.p), "q": _floats(m.q), "t_grid": int(params["t_grid"])}
            )
    return inputs


def _res_unitcut_flow(inp, profile):
    m = _point(inp)
    worst = 0.0
    for t in np.linspace(0.0, TWO_PI, inp["t_grid"]):
        worst = max(worst, _dist(flow_closed_form(m, float(t)), scalar_action(m, float(t))))
    return worst


def _gen_unitcut_rk4(params, rng):
    inputs = []
    for n in params["n"]:
        for _ in range(params["trajectories"]):
            m = sample_cosphere(n, 1.0, 1.0, rng)
            inputs.append(
                {
                    "n": int(n),
                    "p": _floats(m.p),
                    "q": _floats(m.q),
                    "dt": float(params["dt"]),
                    "t_final": float(params["t_final"]),
                }
            )
    return inputs


def _res_unitcut_rk4(inp, profile):
    m = _point(inp)
    result = rk4_integrate(HamiltonianSpec(1.0), m, inp["t_final"], inp["dt"], profile)
    return _dist(result.endpoint, flow_closed_form(m, inp["t_final"]))


def _gen_unitcut_rk4_order(params, rng):
    inputs = []
    for n in params["n"]:
        for _ in range(params["trajectories"]):
            m = sample_cosphere(n, 1.0, 1.0, rng)
            inputs.append(
                {
                    "n": int(n),
                    "p": _floats(m.p),
                    "q": _floats(m.q),
                    "dt0": float(params["dt0"]),
                    "t_final": float(params["t_final"]),
                }
            )
    return inputs


def _res_unitcut_rk4_order(inp, profile):
    # endpoint error must fall ~16x when the step is halved (fourth order);
    # measured at coarse steps where truncation dominates the noise floor
    m = _point(inp)
    ham = HamiltonianSpec(1.0)
    exact = flow_closed_form(m, inp["t_final"])
    errs = []
    for dt in (inp["dt0"], inp["dt0"] / 2.0):
        result = rk4_integrate(ham, m, inp["t_final"], dt, profile)
        errs.append(_dist(result.endpoint, exact))
    if errs[1] <= 0.0:
        return SENTINEL
    return abs(errs[0] / errs[1] - 16.0)


def _gen_branchedcover_deck(params, rng):
    inputs = []
    for n in params["n"]:
        for _ in range(params["samples"]):
            m = sample_disc_bundle(n, 1.0, 1.0, rng)
            inputs.append({"n": int(n), "p": _floats(m.p), "q": _floats(m.q)})
    return inputs


def _res_branchedcover_deck(inp, profile):
    m = _point(inp)
    upstairs = cotangent_to_quadric(m)
    flipped = deck(upstairs)
    equivariance = projective_defect(flipped, cotangent_to_quadric(antipode(m)))
    collapse = projective_defect(branched_cover(flipped), branched_cover(upstairs))
    return max(equivariance, collapse)


def _gen_branchedcover_fibers(params, rng):
    inputs = []
    for n in params["n"]:
        half = params["samples"] // 2
        count = 0
        while count < half:
            point = sample_projective(n, rng)
            if abs(quadric_residual(point)) <= 1e-3:
                continue
            inputs.append({"kind": "off", "expected": 2, "z": _cvec(point.rep)})
            count += 1
        for _ in range(params["samples"] - half):
            m = sample_cosphere(n, 1.0, 1.0, rng)
            point = proj_normalize(m.p + 1j * m.q)
            inputs.append({"kind": "on", "expected": 1, "z": _cvec(point.rep)})
    return inputs


def _res_branchedcover_fibers(inp, profile):
    point = _projective(inp["z"])
    fiber = quadric_fiber(point, tol=profile.residual_tol)
    if len(fiber) != inp["expected"]:
        return SENTINEL
    worst = 0.0
    for lift in fiber:
        worst = max(worst, abs(quadric_residual(lift)))
        worst = max(worst, projective_defect(branched_cover(lift), point))
    return worst


def _gen_pi_not_symplectic(params, rng):
    inputs = []
    for n in params["n"]:
        for _ in range(params["samples"]):
            m = sample_cosphere(n, 1.0, 1.0, rng)
            inputs.append({"n": int(n), "p": _floats(m.p), "q": _floats(m.q)})
    return inputs


def _res_pi_not_symplectic(inp, profile):
    # at a branch point the vertical direction is tangent to the quadric and
    # killed by the cover, yet pairs nontrivially with its i-rotation upstairs
    n = inp["n"]
    branch = cosphere_boundary(_point(inp))
    rep = branch.rep
    vertical = np.zeros(n + 2, dtype=complex)
    vertical[-1] = 1.0
    if _omega_std_ambient(realify(vertical), realify(1j * vertical)) <= 0.1:
        return SENTINEL
    cover = branched_cover_map(n)
    fs_downstairs = fubini_study_form(n)
    image = cover(branch)
    w_vert = cover.differential(branch, realify(vertical))
    worst = 0.0
    for row in _quadric_frame(rep):
        for tangent in (row, 1j * row):
            w_tan = cover.differential(branch, realify(tangent))
            worst = max(worst, abs(fs_downstairs(image, w_vert, w_tan)))
    return worst


def _gen_segre_pullback(params, rng):
    inputs = []
    for _ in range(params["samples"]):
        a = sample_projective(1, rng)
        b = sample_projective(1, rng)
        v1 = np.concatenate(
            [realify(sample_horizontal(a, rng).vec), realify(sample_horizontal(b, rng).vec)]
        )
        v2 = np.concatenate(
            [realify(sample_horizontal(a, rng).vec), realify(sample_horizontal(b, rng).vec)]
        )
        inputs.append(
            {"a": _cvec(a.rep), "b": _cvec(b.rep), "v1": _floats(v1), "v2": _floats(v2)}
        )
    return inputs


def _res_segre_pullback(inp, profile):
    a = _projective(inp["a"])
    b = _projective(inp["b"])
    image = segre_unitary(a, b)
    if abs(quadric_residual(image)) > profile.residual_tol:
        return SENTINEL
    fs1 = scaled_form(fubini_study_form(1), 2.0)
    expected_form = product_form(fs1, fs1)
    v1 = np.asarray(inp["v1"], dtype=float)
    v2 = np.asarray(inp["v2"], dtype=float)
    value = pullback(segre_map(), scaled_form(fubini_study_form(3), 2.0), (a, b), v1, v2)
    return abs(value - expected_form((a, b), v1, v2))


def _gen_segre_equivariance(params, rng):
    inputs = []
    for _ in range(params["samples"]):
        a = sample_projective(1, rng)
        b = sample_projective(1, rng)
        inputs.append({"a": _cvec(a.rep), "b": _cvec(b.rep)})
    return inputs


def _res_segre_equivariance(inp, profile):
    a = _projective(inp["a"])
    b = _projective(inp["b"])
    swap = projective_defect(deck(segre_unitary(a, b)), segre_unitary(b, a))
    diagonal = projective_defect(deck(segre_unitary(a, a)), segre_unitary(a, a))
    return max(swap, diagonal)


def _gen_diag_antidiag(params, rng):
    inputs = []
    for _ in range(params["samples"]):
        a = sample_projective(1, rng)
        inputs.append({"a": _cvec(a.rep)})
    return inputs


def _res_diag_antidiag(inp, profile):
    a = _projective(inp["a"])
    on_conic = branched_cover(segre_unitary(a, a))
    if locus_classify(on_conic) != "on_Q1":
        return SENTINEL
    on_real = branched_cover(segre_unitary(a, antipodal_cp1(a)))
    if locus_classify(on_real) != "on_RP2":
        return SENTINEL
    rep = on_real.rep
    imag_defect = float(np.max(np.abs(np.imag(np.outer(rep, rep.conjugate())))))
    return max(abs(quadric_residual(on_conic)), imag_defect)


def _gen_evenedrescale(params, rng):
    inputs = []
    for n in params["n"]:
        per_r = max(1, params["samples"] // (2 * len(params["r"])))
        for r in params["r"]:
            for _ in range(per_r):
                m = sample_disc_bundle(n, 1.0, r, rng)
                t1 = sample_tangent(m, rng)
                t2 = sample_tangent(m, rng)
                inputs.append(
                    {
                        "part": "form",
                        "n": int(n),
                        "r": float(r),
                        "p": _floats(m.p),
                        "q": _floats(m.q),
                        "v1": _floats(np.concatenate([t1.u, t1.w])),
                        "v2": _floats(np.concatenate([t2.u, t2.w])),
                    }
                )
            for _ in range(per_r):
                m = sample_cosphere(n, 1.0, r, rng)
                inputs.append(
                    {
                        "part": "flow",
                        "n": int(n),
                        "r": float(r),
                        "p": _floats(m.p),
                        "q": _floats(m.q),
                        "t": float(rng.uniform(0.0, TWO_PI)),
                    }
                )
    return inputs


def _res_evenedrescale(inp, profile):
    n, r = inp["n"], inp["r"]
    m = _point(inp)
    if inp["part"] == "form":
        rescale = _evened_rescale_map(n, r)
        omega = cotangent_omega_std(n, float(np.sqrt(r)))
        v1 = np.asarray(inp["v1"], dtype=float)
        v2 = np.asarray(inp["v2"], dtype=float)
        value = pullback(rescale, omega, m, v1, v2)
        form_defect = abs(value - _omega_std_ambient(v1, v2))
        roundtrip = _dist(even_rescale_inverse(even_rescale(m, r), r), m)
        return max(form_defect, roundtrip)
    # flow part: rescaling intertwines the radius-r trajectory with the
    # evened closed form at the same time parameter
    t = inp["t"]
    lhs = even_rescale(flow_uneven_cosphere(m, t), r)
    rhs = flow_closed_form(even_rescale(m, r), t)
    return _dist(lhs, rhs)


def _gen_evenedflow_restored(params, rng):
    inputs = []
    for n in params["n"]:
        for _ in range(params["trajectories"]):
            m = sample_cosphere(n, 1.0, params["r_uneven"], rng)
            for t in params["t_checks"]:
                inputs.append(
                    {
                        "n": int(n),
                        "r": float(params["r_uneven"]),
                        "p": _floats(m.p),
                        "q": _floats(m.q),
                        "t": float(t),
                        "dt": float(params["dt"]),
                    }
                )
    return inputs


def _res_evenedflow_restored(inp, profile):
    r = inp["r"]
    evened = even_rescale(_point(inp), r)
    ham = HamiltonianSpec(evened.base_radius)
    result = rk4_integrate(ham, evened, inp["t"], inp["dt"], profile)
    return _dist(result.endpoint, scalar_action(evened, inp["t"]))


def _gen_uneven_flow(params, rng):
    inputs = []
    for n in params["n"]:
        for _ in range(params["trajectories"]):
            m = sample_cosphere(n, 1.0, params["r"], rng)
            inputs.append(
                {
                    "n": int(n),
                    "r": float(params["r"]),
                    "p": _floats(m.p),
                    "q": _floats(m.q),
                    "dt": float(params["dt"]),
                    "ts": [float(t) for t in params["t_checks"]],
                }
            )
    return inputs


def _score_uneven_flow(inp, profile):
    # witness search: how far the true flow drifts from the scalar action
    m = _point(inp)
    ham = HamiltonianSpec(1.0)
    best = 0.0
    current = m
    t_done = 0.0
    for t in inp["ts"]:
        result = rk4_integrate(ham, current, t - t_done, inp["dt"], profile)
        current = result.endpoint
        t_done = t
        best = max(best, _dist(current, scalar_action(m, t)))
    return best


def _gen_omega_r_descent(params, rng):
    inputs = []
    margin = 2.5 * DEFAULT_PROFILE.branch_margin
    for n in params["n"]:
        radii = list(params["r"])
        for i in range(params["samples"]):
            r = radii[i % len(radii)]
            while True:
                m = sample_disc_bundle(n, 1.0, 1.0, rng)
                q2 = float(m.q @ m.q)
                if (1.0 - q2) / (1.0 + q2) > margin:
                    break
            upstairs = cotangent_to_quadric(m)
            v1 = _quadric_tangent(upstairs.rep, rng)
            v2 = _quadric_tangent(upstairs.rep, rng)
            inputs.append(
                {
                    "n": int(n),
                    "r": float(r),
                    "z": _cvec(upstairs.rep),
                    "v1": _cvec(v1),
                    "v2": _cvec(v2),
                }
            )
    return inputs


def _res_omega_r_descent(inp, profile):
    n, r = inp["n"], inp["r"]
    upstairs = _projective(inp["z"])
    v1 = realify(_uncvec(inp["v1"]))
    v2 = realify(_uncvec(inp["v2"]))
    cover = branched_cover_map(n)
    image = cover(upstairs)
    w1 = cover.differential(upstairs, v1)
    w2 = cover.differential(upstairs, v2)
    value = omega_r(image, w1, w2, r, profile)
    expected = 2.0 * r * _omega_std_ambient(v1, v2)
    return abs(value - expected)


def _gen_omega_r_not_fs(params, rng):
    inputs = []
    margin = 2.0 * DEFAULT_PROFILE.branch_margin
    for n in params["n"]:
        for _ in range(params["samples"]):
            while True:
                point = sample_projective(n, rng)
                if abs(quadric_residual(point)) > margin:
                    break
            dirs = [_cvec(sample_horizontal(point, rng).vec) for _ in range(params["pairs"])]
            inputs.append(
                {"n": int(n), "r": float(params["r"][0]), "z": _cvec(point.rep), "dirs": dirs}
            )
    return inputs


def _score_omega_r_not_fs(inp, profile):
    # ratios omega_r(v, iv) / omega_FS(v, iv) across directions at one point;
    # omega_FS(v, iv) = |v|^2 = 1 for unit horizontal v
    point = _projective(inp["z"])
    ratios = []
    for d in inp["dirs"]:
        v = _uncvec(d)
        ratios.append(omega_r(point, v, 1j * v, inp["r"], profile))
    return max(ratios) - min(ratios)


def _gen_period_cp1(params, rng):
    return [{"nodes": int(params["nodes"])}]


def _res_period_cp1(inp, profile):
    value = integrate_surface(_sphere_chart(), fubini_study_form(1), nodes=inp["nodes"])
    return abs(value - np.pi)


def _gen_period_q1(params, rng):
    return [{"nodes": int(params["nodes"])}]


def _res_period_q1(inp, profile):
    form = scaled_form(fubini_study_form(2), 2.0)
    value = integrate_surface(_conic_chart(), form, nodes=inp["nodes"])
    return abs(value - 4.0 * np.pi)


def _gen_period_match(params, rng):
    return [{"nodes": int(params["nodes"]), "r": float(r)} for r in params["r"]]


def _res_period_match(inp, profile):
    r = inp["r"]
    fs1 = scaled_form(fubini_study_form(1), 2.0 * r)
    diag = integrate_surface(_diagonal_chart(), product_form(fs1, fs1), nodes=inp["nodes"])
    conic = integrate_surface(
        _conic_chart(), scaled_form(fubini_study_form(2), 2.0 * r), nodes=inp["nodes"]
    )
    return abs(diag - conic)


def _gen_zerosection(params, rng):
    inputs = []
    for n in params["n"]:
        half = params["samples"] // 2
        for _ in range(half):
            p = _unit_real(n + 1, rng)
            inputs.append({"kind": "zero", "n": int(n), "p": _floats(p), "q": _floats(np.zeros(n + 1))})
        for _ in range(params["samples"] - half):
            m = sample_cosphere(n, 1.0, 1.0, rng)
            inputs.append({"kind": "boundary", "n": int(n), "p": _floats(m.p), "q": _floats(m.q)})
    return inputs


def _res_zerosection(inp, profile):
    m = _point(inp)
    if inp["kind"] == "zero":
        image = branched_cover(cotangent_to_quadric(m))
        if inp["n"] == 2 and locus_classify(image) != "on_RP2":
            return SENTINEL
        rep = image.rep
        return float(np.max(np.abs(np.imag(np.outer(rep, rep.conjugate())))))
    image = branched_cover(cosphere_boundary(m))
    if inp["n"] == 2 and locus_classify(image) != "on_Q1":
        return SENTINEL
    return abs(quadric_residual(image))


# ---------------------------------------------------------------------------
# Registry.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    """One named verification: statement, sampler, residual, tolerance."""

    id: str
    statement: str
    covers: tuple[str, ...]
    kind: str  # "residual": pass iff max residual <= tolerance;
    #            "witness": pass iff some sampled score exceeds the threshold
    tolerance: float
    params: dict
    gen: Callable[[dict, np.random.Generator], list[dict]]
    residual: Callable[[dict, ToleranceProfile], float]


@dataclass(frozen=True)
class CheckReport:
    id: str
    seed: int
    samples: int
    max_residual: float
    tolerance: float
    passed: bool
    elapsed: float
    witness: dict | None = None


def build_registry(profile: ToleranceProfile = DEFAULT_PROFILE) -> dict[str, Check]:
    """All checks in canonical order, tolerances resolved against ``profile``."""
    checks = [
        Check(
            id="L-projemb",
            statement="pullback of r^2 omega_FS under the radius-r ball embedding equals omega_std",
            covers=("ball-embedding-pullback",),
            kind="residual",
            tolerance=1e-6,
            params={"n": [1, 2, 3], "r": [1.0, ROOT2, 2.0], "samples": 1000, "pairs": 3},
            gen=_gen_projemb,
            residual=_res_projemb,
        ),
        Check(
            id="L-sphereembedding",
            statement="disc bundle images satisfy the quadric equation and avoid the last hyperplane",
            covers=("cotangent-to-quadric-image",),
            kind="residual",
            tolerance=profile.residual_tol,
            params={"n": [1, 2, 3], "samples": 1000},
            gen=_gen_sphereembedding,
            residual=_res_sphereembedding,
        ),
        Check(
            id="L-sphereembedding-lift",
            statement="off-hyperplane quadric points lift to unit-base orthogonal (p, q) pairs",
            covers=("cotangent-to-quadric-image",),
            kind="residual",
            tolerance=1e-8,
            params={"n": [1, 2, 3], "samples": 1000},
            gen=_gen_sphereembedding_lift,
            residual=_res_sphereembedding_lift,
        ),
        Check(
            id="P-unitcut-boundary",
            statement="the unit cosphere maps into the lower quadric and circle orbits collapse",
            covers=("unit-cosphere-cut",),
            kind="residual",
            tolerance=profile.residual_tol,
            params={"n": [1, 2, 3], "samples": 200},
            gen=_gen_unitcut_boundary,
            residual=_res_unitcut_boundary,
        ),
        Check(
            id="P-unitcut-flow",
            statement="the evened closed-form flow equals the scalar circle action",
            covers=("unit-cosphere-cut",),
            kind="residual",
            tolerance=profile.flow_tol,
            params={"n": [1, 2, 3], "samples": 100, "t_grid": 100},
            gen=_gen_unitcut_flow,
            residual=_res_unitcut_flow,
        ),
        Check(
            id="P-unitcut-rk4",
            statement="RK4 integration of the solved Hamiltonian field reproduces the closed form",
            covers=("unit-cosphere-cut",),
            kind="residual",
            tolerance=1e-6,
            params={"n": [2], "trajectories": 1, "dt": 1e-3, "t_final": TWO_PI},
            gen=_gen_unitcut_rk4,
            residual=_res_unitcut_rk4,
        ),
        Check(
            id="P-unitcut-rk4-order",
            statement="RK4 endpoint error falls 16x under step halving (order four)",
            covers=("unit-cosphere-cut",),
            kind="residual",
            tolerance=4.0,
            params={"n": [2], "trajectories": 1, "dt0": 0.1, "t_final": float(np.pi)},
            gen=_gen_unitcut_rk4_order,
            residual=_res_unitcut_rk4_order,
        ),
        Check(
            id="C-branchedcover-deck",
            statement="the deck involution intertwines the embedding with the antipodal map",
            covers=("branched-double-cover",),
            kind="residual",
            tolerance=profile.flow_tol,
            params={"n": [1, 2, 3], "samples": 1000},
            gen=_gen_branchedcover_deck,
            residual=_res_branchedcover_deck,
        ),
        Check(
            id="C-branchedcover-fibers",
            statement="fibers of the cover have two points off the branch quadric and one on it",
            covers=("branched-double-cover",),
            kind="residual",
            tolerance=1e-9,
            params={"n": [1, 2, 3], "samples": 200},
            gen=_gen_branchedcover_fibers,
            residual=_res_branchedcover_fibers,
        ),
        Check(
            id="R-pi-not-symplectic",
            statement="the cover kills a branch-locus direction that omega_FS pairs nontrivially",
            covers=("branch-locus-degeneracy",),
            kind="residual",
            tolerance=1e-8,
            params={"n": [1, 2, 3], "samples": 100},
            gen=_gen_pi_not_symplectic,
            residual=_res_pi_not_symplectic,
        ),
        Check(
            id="P-segre-pullback",
            statement="the twisted Segre map lands on the quadric and pulls 2 omega_FS back to the product form",
            covers=("quadric-product-structure",),
            kind="residual",
            tolerance=1e-6,
            params={"samples": 1000},
            gen=_gen_segre_pullback,
            residual=_res_segre_pullback,
        ),
        Check(
            id="P-segre-equivariance",
            statement="the twisted Segre map intertwines the deck involution with the factor swap",
            covers=("quadric-product-structure",),
            kind="residual",
            tolerance=profile.flow_tol,
            params={"samples": 1000},
            gen=_gen_segre_equivariance,
            residual=_res_segre_equivariance,
        ),
        Check(
            id="R-diag-antidiag",
            statement="the diagonal maps onto the conic and the antidiagonal covers the real points",
            covers=("quadric-product-structure",),
            kind="residual",
            tolerance=1e-9,
            params={"samples": 1000},
            gen=_gen_diag_antidiag,
            residual=_res_diag_antidiag,
        ),
        Check(
            id="P-evenedrescale",
            statement="the evening rescale preserves omega_std and conjugates the cosphere flows",
            covers=("evened-disc-bundle",),
            kind="residual",
            tolerance=1e-9,
            params={"n": [1, 2, 3], "r": [0.5, 1.0, 2.0], "samples": 1000},
            gen=_gen_evenedrescale,
            residual=_res_evenedrescale,
        ),
        Check(
            id="P-evenedflow-restored",
            statement="after evening, the RK4 flow agrees with the scalar action",
            covers=("evened-disc-bundle",),
            kind="residual",
            tolerance=1e-6,
            params={
                "n": [2],
                "r_uneven": 0.5,
                "trajectories": 1,
                "dt": 0.01,
                "t_checks": [float(np.pi), TWO_PI],
            },
            gen=_gen_evenedflow_restored,
            residual=_res_evenedflow_restored,
        ),
        Check(
            id="R-uneven-flow",
            statement="on an uneven cosphere the Hamiltonian flow leaves the scalar orbit",
            covers=("evened-disc-bundle",),
            kind="witness",
            tolerance=0.01,
            params={
                "n": [2],
                "r": 0.5,
                "trajectories": 3,
                "dt": 0.01,
                "t_checks": [float(np.pi / 2.0), float(np.pi)],
            },
            gen=_gen_uneven_flow,
            residual=_score_uneven_flow,
        ),
        Check(
            id="P-omega-r-descent",
            statement="pullback of the pushed-down form through the cover returns 2r omega_FS",
            covers=("pushed-down-form",),
            kind="residual",
            tolerance=1e-6,
            params={"n": [1, 2, 3], "r": [0.5, 1.0, 2.0], "samples": 1000},
            gen=_gen_omega_r_descent,
            residual=_res_omega_r_descent,
        ),
        Check(
            id="R-omega-r-not-FS",
            statement="the pushed-down form is not pointwise proportional to omega_FS",
            covers=("pushed-down-form",),
            kind="witness",
            tolerance=0.1,
            params={"n": [2], "r": [1.0], "samples": 50, "pairs": 4},
            gen=_gen_omega_r_not_fs,
            residual=_score_omega_r_not_fs,
        ),
        Check(
            id="I-period-CP1",
            statement="the projective line has omega_FS area pi",
            covers=("pushed-down-form",),
            kind="residual",
            tolerance=profile.quadrature_tol,
            params={"nodes": 200},
            gen=_gen_period_cp1,
            residual=_res_period_cp1,
        ),
        Check(
            id="I-period-Q1",
            statement="the conic has 2 omega_FS area 4 pi",
            covers=("pushed-down-form",),
            kind="residual",
            tolerance=1e-5,
            params={"nodes": 64},
            gen=_gen_period_q1,
            residual=_res_period_q1,
        ),
        Check(
            id="I-period-match",
            statement="diagonal sphere and conic periods agree under the product identification",
            covers=("pushed-down-form",),
            kind="residual",
            tolerance=1e-5,
            params={"nodes": 64, "r": [0.5, 1.0, 2.0]},
            gen=_gen_period_match,
            residual=_res_period_match,
        ),
        Check(
            id="T-zerosection",
            statement="the zero section lands on the real locus and the boundary on the conic",
            covers=("zero-section-image",),
            kind="residual",
            tolerance=1e-9,
            params={"n": [2], "samples": 500},
            gen=_gen_zerosection,
            residual=_res_zerosection,
        ),
    ]
    registry = {c.id: c for c in checks}
    if len(registry) != len(checks):
        raise RuntimeError("check ids must be unique")
    return registry


# ---------------------------------------------------------------------------
# Runner.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 42
    samples: int | None = None
    n_values: tuple[int, ...] | None = None
    radii: tuple[float, ...] | None = None
    profile: str = "default"


def _resolve_profile(profile: str | ToleranceProfile) -> ToleranceProfile:
    if isinstance(profile, ToleranceProfile):
        return profile
    try:
        return PROFILES[profile]
    except KeyError:
        raise UsageError(f"unknown tolerance profile {profile!r}") from None


def run_check(
    check_id: str,
    params: dict | None = None,
    seed: int = 42,
    profile: str | ToleranceProfile = "default",
) -> CheckReport:
    """Run one named check; deterministic given (id, params, seed).

    ``params`` may override the check's declared parameters, inject a
    ``tolerance``, or supply a single serialized ``witness`` input to
    re-evaluate.
    """
    prof = _resolve_profile(profile)
    registry = build_registry(prof)
    if check_id not in registry:
        raise UsageError(f"unknown check id {check_id!r}")
    check = registry[check_id]
    merged = dict(check.params)
    tolerance = check.tolerance
    witness_input = None
    if params:
        for key, value in params.items():
            if key == "tolerance":
                tolerance = float(value)
            elif key == "witness":
                witness_input = value
            elif key in check.params:
                merged[key] = value
            else:
                raise UsageError(f"check {check_id} does not take parameter {key!r}")
    start = time.perf_counter()
    if witness_input is not None:
        inputs = [witness_input]
    else:
        rng = derive_stream(seed, check_id)
        inputs = check.gen(merged, rng)
    residuals = [check.residual(inp, prof) for inp in inputs]
    elapsed = time.perf_counter() - start
    if check.kind == "witness":
        best = int(np.argmax(residuals))
        max_residual = float(residuals[best])
        passed = max_residual > tolerance
        witness = inputs[best]
    else:
        worst = int(np.argmax(residuals))
        max_residual = float(residuals[worst])
        passed = max_residual <= tolerance
        witness = None if passed else inputs[worst]
    return CheckReport(
        id=check_id,
        seed=seed,
        samples=len(inputs),
        max_residual=max_residual,
        tolerance=float(tolerance),
        passed=passed,
        elapsed=elapsed,
        witness=witness,
    )


def run_suite(
    pattern: str = "*",
    config: SuiteConfig = SuiteConfig(),
    overrides: dict[str, dict] | None = None,
) -> tuple[list[CheckReport], int]:
    """Run all checks matching the id glob, in registry order.

    ``overrides`` maps check ids to extra per-check parameters (including an
    injected ``tolerance``). Returns the reports plus an exit status: 0 iff
    every matched check passed. Raises UsageError if the glob matches nothing.
    """
    prof = _resolve_profile(config.profile)
    registry = build_registry(prof)
    matched = [cid for cid in registry if fnmatch.fnmatchcase(cid, pattern)]
    if not matched:
        raise UsageError(f"no check matches pattern {pattern!r}")
    reports = []
    for cid in matched:
        check = registry[cid]
        params: dict[str, Any] = {}
        if config.samples is not None and "samples" in check.params:
            params["samples"] = config.samples
        if config.n_values is not None and "n" in check.params:
            params["n"] = list(config.n_values)
        if config.radii is not None and "r" in check.params and isinstance(check.params["r"], list):
            params["r"] = list(config.radii)
        if overrides and cid in overrides:
            params.update(overrides[cid])
        reports.append(run_check(cid, params or None, seed=config.seed, profile=prof))
    status = 0 if all(r.passed for r in reports) else 1
    return reports, status


# ---------------------------------------------------------------------------
# Reporting.
# ---------------------------------------------------------------------------


def _json_scalar(value) -> str:
    import json as _json
    import math as _math

    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if not _math.isfinite(v):
            raise ValueError("non-finite real in report")
        return format(v, ".17g")
    if isinstance(value, str):
        return _json.dumps(value)
    if value is None:
        return "null"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_json_scalar(v) for v in value) + "]"
    if isinstance(value, dict):
        import json as _j

        return "{" + ", ".join(f"{_j.dumps(str(k))}: {_json_scalar(v)}" for k, v in value.items()) + "}"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def render_json(reports: list[CheckReport]) -> str:
    """Stable-order JSON; reals carry 17 significant digits.

    ``elapsed`` is deliberately omitted so identical (filter, config, seed)
    runs are byte-identical.
    """
    objects = []
    for r in reports:
        fields: dict[str, Any] = {
            "id": r.id,
            "seed": r.seed,
            "samples": r.samples,
            "max_residual": r.max_residual,
            "tolerance": r.tolerance,
            "passed": r.passed,
        }
        if r.witness is not None:
            fields["witness"] = r.witness
        objects.append(_json_scalar(fields))
    return "[" + ", ".join(objects) + "]"


def render_text(reports: list[CheckReport]) -> str:
    """Aligned human-readable table, one row per check."""
    header = f"{'check':<24} {'status':<6} {'max residual':>14} {'tolerance':>11} {'samples':>8} {'time':>8}"
    lines = [header, "-" * len(header)]
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        lines.append(
            f"{r.id:<24} {status:<6} {r.max_residual:>14.3e} {r.tolerance:>11.1e} "
            f"{r.samples:>8d} {r.elapsed:>7.2f}s"
        )
    total = sum(r.elapsed for r in reports)
    passed = sum(1 for r in reports if r.passed)
    lines.append(f"{passed}/{len(reports)} checks passed in {total:.2f}s")
    return "\n".join(lines)


def emit_report(reports: list[CheckReport], format: str = "text", destination=None) -> None:
    """Write reports as text or json to a path or file object (stdout if None)."""
    if format == "json":
        payload = render_json(reports)
    elif format == "text":
        payload = render_text(reports)
    else:
        raise UsageError(f"unknown report format {format!r}")
    if destination is None:
        import sys

        sys.stdout.write(payload + "\n")
    elif hasattr(destination, "write"):
        destination.write(payload + "\n")
    else:
        with open(destination, "w", encoding="utf-8") as handle:
            handle.write(payload + "\n")
