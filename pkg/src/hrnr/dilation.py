"""Unitary dilations of contractions and the range-equality machinery.

Every contraction T dilates to a unitary on a doubled space via the Halmos
block construction; rotating the defect blocks by a phase alpha yields a
one-parameter family.  For strict contractions the family
(I (+) V) Halmos(T, 0) (I (+) W) over unitary V, W is exactly the set of all
unitary dilations on the doubled space, so sampling it (plus deterministic
per-direction block dilations mirroring the equality proof) approximates the
intersection of the dilations' rank-k ranges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import RegionEstimate, critical_directions, member
from .errors import (
    AtomNotStrictContraction,
    CoincidentEndpoints,
    EigFailure,
    NoSeparatingAngle,
    NotContraction,
    NotOnSegment,
    NotStrictContraction,
    NoWuWitness,
    UncertainGeometry,
)
from .geometry import (
    DEFAULT_TOL,
    ClosedHalfPlane,
    ConvexPolygon,
    TolerancePolicy,
    Verdict,
    halfplane_intersection,
    snap_dir,
)
from .spectral import (
    CA,
    CB,
    INF,
    SpectralMeasureModel,
    direction_sweep,
    from_normal_matrix,
)


class WuVerdict(Enum):
    EQUALITY_PREDICTED = "equality-predicted"
    STRICT_CONTAINMENT_PREDICTED = "strict-containment-predicted"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class DilationArtifact:
    matrix: np.ndarray
    alpha: float
    unitarity_residual: float
    compression_residual: float
    defect_rank: int


@dataclass(frozen=True)
class ExclusionCertificate:
    point: complex
    plane: ClosedHalfPlane
    scalar_dilations: tuple[tuple[complex, complex, complex, float], ...]  # (d, xi, eta, t)
    beta: float
    mu: float
    certified_dim: int


@dataclass(frozen=True)
class WuEvidence:
    point: complex
    witness: ClosedHalfPlane | None
    dim: float | None
    note: str | None = None


@dataclass(frozen=True)
class WuReport:
    verdict: WuVerdict
    evidence: tuple[WuEvidence, ...]


@dataclass(frozen=True)
class ConjectureResult:
    condition_holds: bool
    theta: float | None = None


def _op_norm(T: np.ndarray) -> float:
    return float(np.linalg.norm(T, 2))


def _sqrt_psd(A: np.ndarray) -> np.ndarray:
    try:
        vals, vecs = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise EigFailure(str(exc)) from exc
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def halmos(
    T: np.ndarray, alpha: float = 0.0, tol: TolerancePolicy = DEFAULT_TOL
) -> DilationArtifact:
    """Rotated Halmos dilation [[T, -e^{-ia}D_*],[e^{-ia}D, e^{-2ia}T*]]."""
    T = np.asarray(T, dtype=complex)
    n = T.shape[0]
    if _op_norm(T) > 1.0 + tol.eps_eig:
        raise NotContraction(f"operator norm {_op_norm(T):.6f} exceeds 1")
    eye = np.eye(n)
    dt = _sqrt_psd(eye - T.conj().T @ T)
    dts = _sqrt_psd(eye - T @ T.conj().T)
    ph = np.exp(-1j * alpha)
    U = np.block([[T, -ph * dts], [ph * dt, ph * ph * T.conj().T]])
    unit = float(np.linalg.norm(U.conj().T @ U - np.eye(2 * n), "fro"))
    comp = float(np.linalg.norm(U[:n, :n] - T, "fro"))
    if unit > tol.eps_unitary or comp > tol.eps_unitary:
        raise EigFailure(
            f"dilation residuals too large (unitarity {unit:.2e}, compression {comp:.2e})"
        )
    dvals = np.sqrt(np.clip(np.linalg.eigvalsh(eye - T.conj().T @ T), 0.0, None))
    return DilationArtifact(U, float(alpha), unit, comp, int(np.sum(dvals > tol.eps_eig)))


def scalar_dilation(
    d: complex, xi: complex, eta: complex, tol: TolerancePolicy = DEFAULT_TOL
) -> np.ndarray:
    """2x2 unitary with top-left entry d and eigenvalues {xi, eta} on the circle."""
    d, xi, eta = complex(d), complex(xi), complex(eta)
    eps = tol.eps_geom
    if abs(abs(xi) - 1.0) > eps or abs(abs(eta) - 1.0) > eps:
        raise NotOnSegment("xi and eta must be unimodular")
    chord = xi - eta
    if abs(chord) <= eps:
        raise CoincidentEndpoints("xi and eta coincide")
    rel = d - eta
    cross = rel.real * chord.imag - rel.imag * chord.real
    if abs(cross) > eps * abs(chord):
        raise NotOnSegment("d is not on the segment [xi, eta]")
    t = abs(rel) / abs(chord)
    if t > 1.0 + eps:
        raise NotOnSegment("d lies outside the segment [xi, eta]")
    t = min(1.0, t)
    q = np.array([[math.sqrt(t), -math.sqrt(1.0 - t)], [math.sqrt(1.0 - t), math.sqrt(t)]])
    U = q @ np.diag([xi, eta]).astype(complex) @ q.T
    assert abs(U[0, 0] - d) <= 10 * eps * max(1.0, abs(d))
    return U


def excluding_dilation_matrix(
    T: np.ndarray,
    k: int,
    lam: complex,
    tol: TolerancePolicy = DEFAULT_TOL,
    n_alpha: int = 720,
) -> DilationArtifact:
    """A rotated Halmos dilation whose rank-k range verifiably excludes lam.

    Grid angles are tried in order of decreasing support margin
    Re(e^{ia}lam) - lambda_k(Re(e^{ia}T)); each candidate is verified by a
    membership run on the dilation's own eigenvalue model, because a positive
    margin against T alone does not bound the doubled spectrum for k >= 2.
    """
    T = np.asarray(T, dtype=complex)
    n = T.shape[0]
    lam = complex(lam)
    alphas = 2 * math.pi * np.arange(n_alpha) / n_alpha
    phases = np.exp(1j * alphas)
    H = 0.5 * (phases[:, None, None] * T + np.conj(phases)[:, None, None] * T.conj().T)
    levels = np.linalg.eigvalsh(H)[:, n - k]
    margins = np.real(phases * lam) - levels
    order = np.argsort(-margins)
    if margins[order[0]] <= tol.eps_geom:
        raise NoSeparatingAngle(
            f"best margin {margins[order[0]]:.3e} does not clear eps_geom"
        )
    for idx in order[:48]:
        # the margin gates the precondition; exclusion itself is verified on
        # the dilation's own spectrum, and for k >= 2 the working angle may
        # sit away from the margin maximizer
        if margins[idx] <= tol.eps_geom:
            break
        art = halmos(T, float(alphas[idx]), tol)
        model = from_normal_matrix(art.matrix, tol)
        if member(model, k, lam, tol).value is Verdict.OUT:
            return art
    # No rotated Halmos dilation excludes lam (possible for k >= 2): split
    # off the eigenvalues beyond the separating level through scalar 2x2
    # dilations instead, which works for every point outside the closure.
    xi = float(alphas[order[0]])
    decomp = _unitary_eigendecomposition(T, tol)
    if decomp is not None:
        vals, V = decomp
        c = np.real(np.exp(1j * xi) * vals)
        cut = levels[order[0]] + 0.5 * margins[order[0]]
        top = [i for i in range(len(vals)) if c[i] >= cut]
        if len(top) < k and not any(
            abs(abs(vals[i]) - 1.0) <= tol.eps_geom for i in top
        ):
            U = _assemble_block_dilation(vals, V, xi, top, tol)
            unit = float(np.linalg.norm(U.conj().T @ U - np.eye(2 * n), "fro"))
            comp = float(np.linalg.norm(U[:n, :n] - T, "fro"))
            dvals = np.sqrt(
                np.clip(np.linalg.eigvalsh(np.eye(n) - T.conj().T @ T), 0.0, None)
            )
            art = DilationArtifact(
                U, xi, unit, comp, int(np.sum(dvals > tol.eps_eig))
            )
            if (
                unit <= tol.eps_unitary
                and comp <= tol.eps_unitary
                and member(from_normal_matrix(U, tol), k, lam, tol).value is Verdict.OUT
            ):
                return art
    raise NoSeparatingAngle("no sampled dilation verifiably excludes the point")


def _closed_plane_from(sweep, flavor: int, i: int, anchor: complex) -> ClosedHalfPlane:
    vx, vy = float(sweep.vx[i]), float(sweep.vy[i])
    nx, ny = (-vy, vx) if flavor == CA else (vy, -vx)
    return ClosedHalfPlane(anchor, math.atan2(ny, nx) % (2 * math.pi), normal=(nx, ny))


def _closed_witness_sweep(model, lam, k, tol, extra_angles=(), n_fallback=64):
    """Scan closed half planes through lam over critical directions.

    Returns (witness_plane, dim) if some plane has dim < k certainly,
    ("none", None) if every tested plane is certainly >= k, and
    ("unresolved", None) otherwise.
    """
    vx, vy = critical_directions(model, lam, extra_angles=extra_angles, n_fallback=n_fallback)
    sweep = direction_sweep(model, lam, vx, vy, tol)
    lo = sweep.lo[[CA, CB]]
    hi = sweep.hi[[CA, CB]]
    fz = sweep.fuzzy[[CA, CB]]
    below = (~fz) & (hi < k)
    if below.any():
        cand = np.argwhere(below)
        order = sorted((hi[r, i], lo[r, i] != hi[r, i], r, i) for r, i in cand)
        _, _, r, i = order[0]
        flavor = CA if r == 0 else CB
        return _closed_plane_from(sweep, flavor, i, lam), float(hi[r, i])
    if bool((lo >= k).all()):
        return "none", None
    return "unresolved", None


def excluding_certificate(
    model: SpectralMeasureModel,
    k: int,
    lam: complex,
    tol: TolerancePolicy = DEFAULT_TOL,
    plane: ClosedHalfPlane | None = None,
) -> ExclusionCertificate:
    """Symbolic exclusion of a boundary point: a closed half plane H through
    lam with dim ran E(H) = r < k, one 2x2 scalar dilation per unit of atom
    multiplicity inside H, and a rotation/bound pair confining the rest.

    A witness plane may be supplied (its line must pass through lam and its
    dimension must be certainly below k); otherwise the critical-direction
    sweep picks one.
    """
    lam = complex(lam)
    if plane is not None:
        if abs(_plane_offset(plane, lam)) > tol.eps_geom:
            raise ValueError("supplied plane's line does not pass through the point")
        from .spectral import dim_ran_closed

        dim = dim_ran_closed(model, plane, tol)
        if not dim < k:
            raise NoWuWitness(f"supplied plane has dim {dim}, not below {k}")
    else:
        plane, dim = _closed_witness_sweep(model, lam, k, tol)
    if not isinstance(plane, ClosedHalfPlane):
        raise NoWuWitness(
            "no critical-direction closed half plane through the point is deficient"
        )
    nx, ny = plane.normal
    scale = math.hypot(nx, ny)
    eps = tol.eps_geom

    entries = []
    total = 0
    points = [(a.location, int(a.mult) if a.mult != INF else None) for a in model.atoms]
    for fam in model.families:
        points.extend((p, m) for p, m in fam.prefix)
    eta = complex(-nx / scale, -ny / scale)
    for loc, mult in points:
        s = nx * (loc.real - lam.real) + ny * (loc.imag - lam.imag)
        if s < -eps * scale:
            continue
        if mult is None:
            raise NoWuWitness("an infinite atom sits inside the witness plane")
        if abs(loc) >= 1.0 - eps:
            raise AtomNotStrictContraction(f"atom at {loc} is not strictly inside the disk")
        xi = _second_circle_intersection(eta, loc)
        t = abs(loc - eta) / abs(xi - eta)
        s_xi = nx * (xi.real - lam.real) + ny * (xi.imag - lam.imag)
        assert s_xi >= -eps * scale, "chord endpoint left the witness plane"
        entries.extend([(loc, xi, eta, t)] * mult)
        total += mult
    assert total == int(dim), "witness dimension must be exactly the atom count"

    beta = (-math.atan2(ny, nx)) % (2 * math.pi)
    mu = math.cos(beta) * lam.real - math.sin(beta) * lam.imag
    return ExclusionCertificate(lam, plane, tuple(entries), beta, mu, total)


def _plane_offset(plane: ClosedHalfPlane, z: complex) -> float:
    nx, ny = plane.normal
    sc = math.hypot(nx, ny)
    return (nx * (z.real - plane.anchor.real) + ny * (z.imag - plane.anchor.imag)) / sc


def _second_circle_intersection(eta: complex, d: complex) -> complex:
    rel = d - eta
    a = abs(rel) ** 2
    if a == 0.0:
        return -eta
    b = (rel * eta.conjugate()).real
    s = -2.0 * b / a
    return eta + s * rel


def wu_check(
    model: SpectralMeasureModel,
    k: int,
    region_est: RegionEstimate,
    tol: TolerancePolicy = DEFAULT_TOL,
    samples_per_edge: int = 9,
) -> WuReport:
    """Predict whether the rank-k range equals the intersection of its
    unitary dilations' ranges: every excluded boundary sample must admit a
    deficient *closed* half plane through it."""
    if model.max_abs() >= 1.0 + tol.eps_geom:
        raise NotStrictContraction("spectral mass leaves the closed unit disk")
    support_pts = [a.location for a in model.atoms]
    for fam in model.families:
        support_pts.extend(p for p, _ in fam.prefix)
    evidence = []
    saw_failure = False
    saw_unresolved = False
    for z, edge_angle in _edge_samples(region_est.polygon, samples_per_edge):
        if any(abs(z - p) <= 10 * tol.eps_geom for p in support_pts):
            # inside the tolerance ball of an eigenvalue: unresolvable artifact
            continue
        try:
            mv = member(model, k, z, tol)
        except UncertainGeometry:
            continue
        if mv.value is Verdict.UNCERTAIN:
            # within tolerance of the range boundary: carries no evidence
            continue
        if mv.value is not Verdict.OUT:
            continue
        extra = (edge_angle,) if edge_angle is not None else ()
        plane, dim = _closed_witness_sweep(model, z, k, tol, extra_angles=extra)
        if isinstance(plane, ClosedHalfPlane):
            evidence.append(WuEvidence(z, plane, dim))
        elif plane == "none":
            saw_failure = True
            evidence.append(
                WuEvidence(z, None, None, "every critical closed half plane has dim >= k")
            )
        else:
            saw_unresolved = True
            evidence.append(WuEvidence(z, None, None, "unresolved dimensions"))
    if saw_failure:
        verdict = WuVerdict.STRICT_CONTAINMENT_PREDICTED
    elif saw_unresolved:
        verdict = WuVerdict.INCONCLUSIVE
    else:
        verdict = WuVerdict.EQUALITY_PREDICTED
    return WuReport(verdict, tuple(evidence))


def _edge_samples(poly: ConvexPolygon, per_edge: int):
    out = []
    for v in poly.vertices:
        out.append((v, None))
    for a, b in poly.edges():
        ang = math.atan2((b - a).imag, (b - a).real)
        for i in range(per_edge):
            t = (i + 1) / (per_edge + 1)
            out.append((a + t * (b - a), ang))
    return out


def conjecture_check(
    T: np.ndarray,
    k: int,
    lam: complex,
    n_theta: int,
    tol: TolerancePolicy = DEFAULT_TOL,
) -> ConjectureResult:
    """Scan rotations for Re(e^{i theta}T - lam) having fewer than k
    eigenvalues above -eps; reports the first angle where that holds.

    This evaluates the conjectured exclusion condition only; nothing is
    asserted about its sufficiency for dilation-range equality.
    """
    T = np.asarray(T, dtype=complex)
    if _op_norm(T) >= 1.0 - tol.eps_eig:
        raise NotStrictContraction("need a strict contraction")
    n = T.shape[0]
    lam = complex(lam)
    for j in range(n_theta):
        theta = 2 * math.pi * j / n_theta
        A = np.exp(1j * theta) * T - lam * np.eye(n)
        S = 0.5 * (A + A.conj().T)
        count = int(np.sum(np.linalg.eigvalsh(S) >= -tol.eps_eig))
        if count < k:
            return ConjectureResult(True, theta)
    return ConjectureResult(False, None)


# ---------------------------------------------------------------------------
# Intersection of dilation ranges
# ---------------------------------------------------------------------------


def _haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _support_levels(eigs: np.ndarray, k: int, xis: np.ndarray) -> np.ndarray:
    proj = np.real(np.exp(1j * xis)[:, None] * eigs[None, :])
    proj.sort(axis=1)
    return proj[:, eigs.shape[0] - k]


def _verify_dilation(U: np.ndarray, T: np.ndarray, tol: TolerancePolicy) -> bool:
    n = T.shape[0]
    unit = np.linalg.norm(U.conj().T @ U - np.eye(2 * n), "fro")
    comp = np.linalg.norm(U[:n, :n] - T, "fro")
    return unit <= tol.eps_unitary and comp <= tol.eps_unitary


def _unitary_eigendecomposition(T, tol):
    """(vals, V) with V unitary, or None when T is not reliably normal."""
    if np.linalg.norm(T @ T.conj().T - T.conj().T @ T, "fro") > tol.eps_eig * max(
        1.0, float(np.linalg.norm(T, "fro")) ** 2
    ):
        return None
    vals, vecs = np.linalg.eig(T)
    u, _, vh = np.linalg.svd(vecs)
    return vals, u @ vh


def _assemble_block_dilation(vals, V, xi, top, tol):
    """Unitary dilation splitting off the ``top`` eigenvalues through 2x2
    scalar dilations and carrying the rest by a rotated Halmos block.

    Every top eigenvalue pairs with the midpoint of the circle arc on the
    low side of the separating direction xi; the remaining block is rotated
    so its dilated spectrum stays on the low side as well.
    """
    n = vals.shape[0]
    U_t = np.zeros((2 * n, 2 * n), dtype=complex)
    eta = -np.exp(-1j * xi)
    for i in top:
        d = complex(vals[i])
        xi_pt = _second_circle_intersection(eta, d)
        if abs(xi_pt - eta) <= tol.eps_geom:
            xi_pt = -eta
        v2 = scalar_dilation(d, xi_pt, eta, tol)
        U_t[i, i] = v2[0, 0]
        U_t[i, n + i] = v2[0, 1]
        U_t[n + i, i] = v2[1, 0]
        U_t[n + i, n + i] = v2[1, 1]
    rest = [i for i in range(n) if i not in top]
    if rest:
        lam_rest = vals[rest]
        defect = np.sqrt(np.clip(1.0 - np.abs(lam_rest) ** 2, 0.0, None))
        ph = np.exp(-1j * xi)
        for a, i in enumerate(rest):
            U_t[i, i] = lam_rest[a]
            U_t[i, n + i] = -ph * defect[a]
            U_t[n + i, i] = ph * defect[a]
            U_t[n + i, n + i] = ph * ph * np.conj(lam_rest[a])
    big = np.kron(np.eye(2), V)
    return big @ U_t @ big.conj().T


def _block_dilation_planes(T, k, xis, tol):
    """Support levels of per-direction block dilations; NaN where skipped."""
    decomp = _unitary_eigendecomposition(T, tol)
    levels = np.full(xis.shape[0], np.nan)
    if decomp is None:
        return levels
    vals, V = decomp
    for j, xi in enumerate(xis):
        c = np.real(np.exp(1j * xi) * vals)
        cut_level = np.sort(c)[-k]
        top = [i for i in range(len(vals)) if c[i] > cut_level + 1e-12]
        if any(abs(abs(vals[i]) - 1.0) <= tol.eps_geom for i in top):
            continue
        U = _assemble_block_dilation(vals, V, xi, top, tol)
        if not _verify_dilation(U, T, tol):
            continue
        levels[j] = _support_levels(np.linalg.eigvals(U), k, np.array([xi]))[0]
    return levels


def dilation_intersection(
    T: np.ndarray,
    k: int,
    n_samples: int,
    n_alpha: int,
    seed: int = 0,
    tol: TolerancePolicy = DEFAULT_TOL,
    n_angles: int = 180,
) -> ConvexPolygon:
    """Intersect the rank-k region polygons over a family of unitary
    dilations: a rotated-Halmos grid, seeded random (I(+)V)H(I(+)W) samples,
    and per-direction block dilations."""
    T = np.asarray(T, dtype=complex)
    n = T.shape[0]
    if _op_norm(T) > 1.0 + tol.eps_eig:
        raise NotContraction("operator norm exceeds 1")
    if not 1 <= k <= 2 * n:
        raise ValueError("rank must satisfy 1 <= k <= 2n")
    base = halmos(T, 0.0, tol).matrix
    xis = 2 * math.pi * np.arange(n_angles) / n_angles
    best = np.full(n_angles, np.inf)

    for j in range(n_alpha):
        alpha = 2 * math.pi * j / n_alpha
        ph = np.exp(-1j * alpha)
        # (I (+) ph I) H (I (+) ph I) has blocks [[T, ph B], [ph C, ph^2 D]]
        U = base.copy()
        U[:n, n:] *= ph
        U[n:, :n] *= ph
        U[n:, n:] *= ph * ph
        best = np.minimum(best, _support_levels(np.linalg.eigvals(U), k, xis))

    rng = np.random.default_rng(seed)
    for _ in range(n_samples):
        V = _haar_unitary(n, rng)
        W = _haar_unitary(n, rng)
        U = base.copy()
        U[:, n:] = U[:, n:] @ W
        U[n:, :] = V @ U[n:, :]
        if not _verify_dilation(U, T, tol):
            continue
        best = np.minimum(best, _support_levels(np.linalg.eigvals(U), k, xis))

    block_levels = _block_dilation_planes(T, k, xis, tol)
    if block_levels is not None:
        mask = ~np.isnan(block_levels)
        best[mask] = np.minimum(best[mask], block_levels[mask])

    planes = []
    for xi, h in zip(xis, best):
        ux, uy = snap_dir(math.cos(xi), -math.sin(xi))
        planes.append(
            ClosedHalfPlane(complex(h * ux, h * uy), math.atan2(-uy, -ux), normal=(-ux, -uy))
        )
    return halfplane_intersection(planes, bound=_op_norm(T) + 1.0, tol=tol)
