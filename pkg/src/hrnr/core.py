"""Membership, region reconstruction and boundary structure of the rank-k
numerical range of a normal operator given by a spectral-measure model.

A point lambda belongs to the rank-k range iff every half closed-half plane
anchored at lambda captures measure of dimension >= k.  The dimension, as a
function of the line direction at a fixed anchor, is piecewise constant with
breakpoints only at a finite set of critical directions (toward atoms, piece
extremities, family limits, arc tangents, approach angles); membership is
decided by sweeping those directions, the midpoints between them, and a
fixed fallback grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np

from .errors import (
    EigFailure,
    InsufficientDimension,
    NotSelfAdjoint,
    RankExceedsDimension,
    UncertainGeometry,
)
from .geometry import (
    DEFAULT_TOL,
    ClosedHalfPlane,
    ConvexPolygon,
    HalfClosedHalfPlane,
    TolerancePolicy,
    Verdict,
    canonical_dir,
    convex_hull,
    halfplane_intersection,
    snap_dir,
    trig_dir,
)
from .spectral import (
    HAM,
    HAP,
    HBM,
    HBP,
    INF,
    OA,
    OB,
    Arc,
    Region,
    Segment,
    SpectralMeasureModel,
    direction_sweep,
    from_normal_matrix,
    lambda_k_inf,
    lambda_k_sup,
    pushforward,
)

RANK_INF = INF

_TANGENT_SLACK = 1e-7


class BoundaryKind(Enum):
    BOUNDARY_IN = "boundary-in"
    INTERIOR = "interior"
    NOT_MEMBER = "not-member"


@dataclass(frozen=True)
class MembershipVerdict:
    value: Verdict
    witness: HalfClosedHalfPlane | None = None
    witness_dim: float | None = None


@dataclass(frozen=True)
class RegionEstimate:
    k: int
    support_samples: tuple[tuple[float, float], ...]
    polygon: ConvexPolygon
    boundary_report: tuple[tuple[complex, Verdict], ...]


def _check_rank(model: SpectralMeasureModel, k) -> float:
    if k == RANK_INF:
        if model.total_dim != INF:
            raise RankExceedsDimension("rank inf requires an infinite-dimensional model")
        return INF
    if not (isinstance(k, (int, np.integer)) and k >= 1):
        raise ValueError(f"rank must be a positive integer or inf, got {k!r}")
    if model.total_dim < k:
        raise RankExceedsDimension(f"rank {k} exceeds total dimension {model.total_dim}")
    return float(k)


def critical_directions(
    model: SpectralMeasureModel,
    anchor: complex,
    extra_angles: tuple[float, ...] = (),
    n_fallback: int = 64,
) -> tuple[np.ndarray, np.ndarray]:
    """Canonical direction vectors of every breakpoint line through anchor,
    plus midpoints between consecutive breakpoints and a fallback grid."""
    vecs: list[tuple[float, float]] = []

    def add_point(p: complex):
        vx, vy = p.real - anchor.real, p.imag - anchor.imag
        if vx != 0.0 or vy != 0.0:
            vecs.append(canonical_dir(vx, vy))

    def add_angle(phi: float):
        vecs.append(trig_dir(phi))

    for a in model.atoms:
        add_point(a.location)
    for piece in model.pieces:
        if isinstance(piece, Segment):
            add_point(piece.a)
            add_point(piece.b)
        elif isinstance(piece, Arc):
            for t in (piece.theta0, piece.theta1):
                add_point(piece.center + piece.radius * complex(*snap_dir(math.cos(t), math.sin(t))))
            _add_tangents(vecs, anchor, piece)
        else:
            for v in piece.polygon.vertices:
                add_point(v)
    for fam in model.families:
        add_point(fam.limit)
        for p, _ in fam.prefix:
            add_point(p)
        add_angle(fam.approach_angle)
    for phi in extra_angles:
        add_angle(phi)

    angles = sorted({math.atan2(vy, vx) % math.pi for vx, vy in vecs})
    mids = []
    for i in range(len(angles)):
        a0 = angles[i]
        a1 = angles[(i + 1) % len(angles)] if i + 1 < len(angles) else angles[0] + math.pi
        if a1 - a0 > 1e-12:
            mids.append(0.5 * (a0 + a1))
    grid = [math.pi * j / n_fallback for j in range(n_fallback)] if n_fallback else []
    for phi in mids + grid:
        vecs.append(trig_dir(phi))

    out, seen = [], set()
    for vx, vy in vecs:
        key = round(math.atan2(vy, vx) % math.pi, 12)
        if key not in seen:
            seen.add(key)
            out.append((vx, vy))
    arr = np.asarray(out, dtype=np.float64)
    return arr[:, 0], arr[:, 1]


def _add_tangents(vecs, anchor: complex, arc: Arc):
    rel = arc.center - anchor
    d = abs(rel)
    if d == 0.0:
        return
    if abs(d - arc.radius) <= _TANGENT_SLACK * max(1.0, arc.radius):
        vecs.append(canonical_dir(-rel.imag, rel.real))
    if d > arc.radius:
        beta = math.atan2(rel.imag, rel.real)
        delta = math.asin(min(1.0, arc.radius / d))
        for phi in (beta + delta, beta - delta):
            vecs.append(trig_dir(phi))


def _witness_from(sweep, flavor: int, i: int, anchor: complex) -> HalfClosedHalfPlane:
    vx, vy = float(sweep.vx[i]), float(sweep.vy[i])
    if flavor in (HAP, HAM):
        nx, ny = -vy, vx
    else:
        nx, ny = vy, -vx
    ray = 1 if flavor in (HAP, HBP) else -1
    return HalfClosedHalfPlane(
        anchor, math.atan2(ny, nx) % (2 * math.pi), ray, normal=(nx, ny)
    )


def member(
    model: SpectralMeasureModel,
    k,
    lam: complex,
    tol: TolerancePolicy = DEFAULT_TOL,
    n_fallback: int = 64,
) -> MembershipVerdict:
    """Decide lambda against the rank-k range by the critical-direction sweep.

    OUT verdicts carry a witness half closed-half plane whose measure
    dimension is certainly below k.
    """
    kf = _check_rank(model, k)
    lam = complex(lam)
    vx, vy = critical_directions(model, lam, n_fallback=n_fallback)
    sweep = direction_sweep(model, lam, vx, vy, tol)
    lo, hi, fz = sweep.lo[:4], sweep.hi[:4], sweep.fuzzy[:4]

    if kf == INF:
        below = np.isfinite(hi)
    else:
        below = (~fz) & (hi < kf)
    if below.any():
        cand = np.argwhere(below)
        order = sorted(
            (hi[f, i], bool(fz[f, i]) or lo[f, i] != hi[f, i], f, i) for f, i in cand
        )
        _, _, f, i = order[0]
        return MembershipVerdict(
            Verdict.OUT, _witness_from(sweep, f, i, lam), float(hi[f, i])
        )
    if bool((lo >= kf).all()):
        return MembershipVerdict(Verdict.IN)
    return MembershipVerdict(Verdict.UNCERTAIN)


def member_infinity(
    model: SpectralMeasureModel,
    lam: complex,
    tol: TolerancePolicy = DEFAULT_TOL,
    n_fallback: int = 64,
) -> MembershipVerdict:
    return member(model, RANK_INF, lam, tol, n_fallback)


def region(
    model: SpectralMeasureModel,
    k: int,
    n_angles: int,
    tol: TolerancePolicy = DEFAULT_TOL,
) -> RegionEstimate:
    """Closure-level reconstruction: intersect the support half planes
    Re(e^{i xi} mu) <= h(xi) over a uniform direction grid, then classify
    sampled boundary points pointwise."""
    if n_angles < 8:
        raise ValueError("n_angles must be at least 8")
    if not (isinstance(k, (int, np.integer)) and k >= 1):
        raise ValueError("region needs a finite rank k >= 1")
    if model.total_dim < k:
        raise InsufficientDimension(f"rank {k} exceeds total dimension")
    samples = []
    planes = []
    for j in range(n_angles):
        xi = 2 * math.pi * j / n_angles
        h = lambda_k_sup(pushforward(model, xi), int(k))
        samples.append((xi, h))
        ux, uy = snap_dir(math.cos(xi), -math.sin(xi))
        planes.append(
            ClosedHalfPlane(complex(h * ux, h * uy), math.atan2(-uy, -ux), normal=(-ux, -uy))
        )
    poly = halfplane_intersection(planes, bound=model.support_radius, tol=tol)
    report = []
    for z in _boundary_points(poly):
        report.append((z, member(model, int(k), z, tol).value))
    return RegionEstimate(int(k), tuple(samples), poly, tuple(report))


def _boundary_points(poly: ConvexPolygon) -> list[complex]:
    pts = list(poly.vertices)
    for a, b in poly.edges():
        pts.append(0.5 * (a + b))
    return pts


def selfadjoint_interval(
    model: SpectralMeasureModel, k: int, tol: TolerancePolicy = DEFAULT_TOL
) -> tuple[float, float] | None:
    """[a, b] with a/b the k-th spectral levels from the left/right; the
    rank-k range of a self-adjoint operator is exactly this interval.
    Returns None when the levels cross (empty range, e.g. k = n with
    distinct simple eigenvalues)."""
    eps = tol.eps_geom
    for a in model.atoms:
        if abs(a.location.imag) > eps:
            raise NotSelfAdjoint(f"atom at {a.location} is off the real axis")
    for piece in model.pieces:
        if isinstance(piece, Segment):
            if abs(piece.a.imag) > eps or abs(piece.b.imag) > eps:
                raise NotSelfAdjoint("segment leaves the real axis")
        else:
            raise NotSelfAdjoint("arcs and regions always carry off-axis mass")
    for fam in model.families:
        off = [abs(fam.limit.imag)] + [abs(p.imag) for p, _ in fam.prefix]
        if max(off) > eps or abs(math.sin(fam.approach_angle)) > 1e-9 or fam.approach_side != "on":
            raise NotSelfAdjoint("family leaves the real axis")
    if not (isinstance(k, (int, np.integer)) and k >= 1):
        raise ValueError("k must be a positive integer")
    if model.total_dim < k:
        raise InsufficientDimension(f"rank {k} exceeds total dimension")
    rm = pushforward(model, 0.0)
    a = lambda_k_inf(rm, int(k))
    b = lambda_k_sup(rm, int(k))
    if a > b:
        return None
    return (a, b)


def is_boundary(
    model: SpectralMeasureModel,
    k: int,
    lam: complex,
    tol: TolerancePolicy = DEFAULT_TOL,
    n_fallback: int = 64,
) -> BoundaryKind:
    """For members: boundary iff some open half plane at lambda is deficient."""
    verdict = member(model, k, lam, tol, n_fallback)
    if verdict.value is Verdict.OUT:
        return BoundaryKind.NOT_MEMBER
    if verdict.value is Verdict.UNCERTAIN:
        raise UncertainGeometry("membership itself is uncertain at this point")
    lam = complex(lam)
    vx, vy = critical_directions(model, lam, n_fallback=n_fallback)
    sweep = direction_sweep(model, lam, vx, vy, tol)
    lo = sweep.lo[[OA, OB]]
    hi = sweep.hi[[OA, OB]]
    fz = sweep.fuzzy[[OA, OB]]
    if bool((((~fz) & (hi < k))).any()):
        return BoundaryKind.BOUNDARY_IN
    if bool((lo >= k).all()):
        return BoundaryKind.INTERIOR
    raise UncertainGeometry("open-side dimensions are unresolved at this point")


def matrix_lambda_k(M: np.ndarray, k: int, xi: float) -> float:
    """k-th largest eigenvalue of Re(e^{i xi} M)."""
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}")
    H = 0.5 * (np.exp(1j * xi) * M + np.exp(-1j * xi) * M.conj().T)
    try:
        evals = np.linalg.eigvalsh(H)
    except np.linalg.LinAlgError as exc:
        raise EigFailure(str(exc)) from exc
    return float(evals[n - k])


def ckz_member(
    M: np.ndarray,
    k: int,
    lam: complex,
    tol: TolerancePolicy = DEFAULT_TOL,
) -> Verdict:
    """Finite-matrix oracle: lambda is in the rank-k range iff it lies in the
    convex hull of every (n-k+1)-subset of the eigenvalues."""
    from_normal_matrix(M, tol)  # normality / solvability gate
    eigvals = [complex(v) for v in np.linalg.eigvals(np.asarray(M, dtype=complex))]
    n = len(eigvals)
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}")
    lam = complex(lam)
    saw_uncertain = False
    for idx in combinations(range(n), n - k + 1):
        hull = convex_hull([eigvals[i] for i in idx])
        v = hull.classify(lam, tol)
        if v is Verdict.OUT:
            return Verdict.OUT
        if v is Verdict.UNCERTAIN:
            saw_uncertain = True
    return Verdict.UNCERTAIN if saw_uncertain else Verdict.IN


def decompose_excluding(
    model: SpectralMeasureModel,
    k: int,
    lam: complex,
    tol: TolerancePolicy = DEFAULT_TOL,
) -> tuple[HalfClosedHalfPlane, int] | None:
    """Witness split for excluded points: H with dim ran E(H) = r < k, so the
    operator decomposes into an (<= k-1)-dimensional block with numerical
    range inside H and a complement block supported in H's complement.
    Returns None when lambda is a member."""
    verdict = member(model, k, lam, tol)
    if verdict.value is Verdict.IN:
        return None
    if verdict.value is Verdict.UNCERTAIN:
        raise UncertainGeometry("membership undecided; no certified witness")
    return verdict.witness, int(verdict.witness_dim)
