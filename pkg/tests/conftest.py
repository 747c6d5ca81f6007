import math

import numpy as np
import pytest

import hrnr


def haar_unitary(n, rng):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_normal_matrix(n, rng, rmax=1.5, rmin=0.1):
    eigs = rng.uniform(rmin, rmax, n) * np.exp(2j * np.pi * rng.uniform(size=n))
    Q = haar_unitary(n, rng)
    return Q @ np.diag(eigs) @ Q.conj().T, eigs


def random_normal_contraction(n, rng, rmax=0.85):
    M, _ = random_normal_matrix(n, rng, rmax=rmax, rmin=0.05)
    return M


def random_model(rng, allow_pieces=True, allow_families=True):
    """A random finitely-described spectral measure within radius 3."""
    atoms = []
    for _ in range(int(rng.integers(1, 6))):
        loc = complex(*rng.uniform(-0.8, 0.8, 2))
        mult = hrnr.INF if rng.uniform() < 0.08 else int(rng.integers(1, 3))
        atoms.append(hrnr.Atom(loc, mult))
    pieces = []
    u = rng.uniform() if allow_pieces else 1.0
    if u < 0.18:
        a, b = (complex(*rng.uniform(-0.8, 0.8, 2)) for _ in range(2))
        if a != b:
            pieces.append(hrnr.Segment(a, b))
    elif u < 0.36:
        c = complex(*rng.uniform(-0.3, 0.3, 2))
        pieces.append(
            hrnr.Arc(
                c,
                rng.uniform(0.2, 0.6),
                t0 := rng.uniform(0, 2 * math.pi),
                t0 + rng.uniform(0.5, 2 * math.pi - 0.1),
            )
        )
    elif u < 0.5:
        hull = hrnr.convex_hull([complex(*rng.uniform(-0.7, 0.7, 2)) for _ in range(5)])
        if hull.area() > 0.05:
            pieces.append(hrnr.Region(hull))
    fams = []
    if allow_families and rng.uniform() < 0.25:
        fams.append(random_family(rng))
    return hrnr.SpectralMeasureModel(tuple(atoms), tuple(pieces), tuple(fams), 3.0)


def random_family(rng, n_prefix=40):
    lim = complex(*rng.uniform(-0.5, 0.5, 2))
    phi = rng.uniform(0, 2 * math.pi)
    side = ["above", "below", "on"][int(rng.integers(3))]
    q = rng.uniform(0.75, 0.92)
    rr = rng.uniform(0.1, 0.3)
    prefix = []
    for j in range(n_prefix):
        if side == "on":
            off = 0.0
        else:
            off = (0.3 * rr) / (j + 2) * (1 if side == "above" else -1)
        p = (
            lim
            + rr * complex(math.cos(phi), math.sin(phi))
            + off * complex(-math.sin(phi), math.cos(phi))
        )
        prefix.append((p, 1))
        rr *= q
    return hrnr.SequenceFamily(tuple(prefix), lim, phi, side, 1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240809)
