"""JSON wire formats for models, matrices, regions and dilation artifacts."""

from __future__ import annotations

import json
import math

import numpy as np

from .core import RegionEstimate
from .errors import ModelFormatError
from .geometry import ConvexPolygon
from .spectral import INF, Arc, Atom, Region, Segment, SequenceFamily, SpectralMeasureModel


def _pt(val) -> complex:
    try:
        x, y = float(val[0]), float(val[1])
    except (TypeError, ValueError, IndexError) as exc:
        raise ModelFormatError(f"expected a [x, y] pair, got {val!r}") from exc
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ModelFormatError(f"non-finite coordinates in {val!r}")
    return complex(x, y)


def _mult(val) -> float:
    if val == "inf":
        return INF
    try:
        m = int(val)
    except (TypeError, ValueError) as exc:
        raise ModelFormatError(f"bad multiplicity {val!r}") from exc
    return float(m)


def parse_document(text: str):
    """Parse a model or matrix JSON document.

    Returns a SpectralMeasureModel for kind "model" and a complex ndarray for
    kind "matrix".
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ModelFormatError('document must be an object with a "kind" field')
    if doc["kind"] == "matrix":
        return matrix_from_obj(doc)
    if doc["kind"] == "model":
        return model_from_obj(doc)
    raise ModelFormatError(f'unknown kind {doc["kind"]!r}')


def matrix_from_obj(doc: dict) -> np.ndarray:
    data = doc.get("data")
    if not isinstance(data, list) or not data:
        raise ModelFormatError('"matrix" document needs a nonempty "data" array')
    try:
        rows = [[complex(float(e[0]), float(e[1])) for e in row] for row in data]
        M = np.asarray(rows, dtype=complex)
    except (TypeError, ValueError, IndexError) as exc:
        raise ModelFormatError("matrix entries must be [re, im] pairs") from exc
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ModelFormatError("matrix must be square")
    return M


def model_from_obj(doc: dict) -> SpectralMeasureModel:
    try:
        radius = float(doc["support_radius"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError('"model" document needs a numeric "support_radius"') from exc
    atoms = []
    for a in doc.get("atoms", []):
        atoms.append(Atom(_pt(a["point"]), _mult(a["mult"])))
    pieces = []
    for p in doc.get("pieces", []):
        kind = p.get("type")
        try:
            if kind == "segment":
                pieces.append(Segment(_pt(p["a"]), _pt(p["b"])))
            elif kind == "arc":
                pieces.append(
                    Arc(_pt(p["center"]), float(p["radius"]), float(p["theta0"]), float(p["theta1"]))
                )
            elif kind == "polygon":
                pieces.append(Region(ConvexPolygon(tuple(_pt(v) for v in p["vertices"]))))
            else:
                raise ModelFormatError(f"unknown piece type {kind!r}")
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelFormatError(f"bad piece {p!r}: {exc}") from exc
    families = []
    for f in doc.get("families", []):
        try:
            prefix = tuple((_pt(e["point"]), int(e["mult"])) for e in f.get("prefix", []))
            families.append(
                SequenceFamily(
                    prefix,
                    _pt(f["limit"]),
                    float(f["approach_angle"]),
                    str(f["approach_side"]),
                    int(f.get("tail_mult", 1)),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelFormatError(f"bad family {f!r}: {exc}") from exc
    try:
        return SpectralMeasureModel(tuple(atoms), tuple(pieces), tuple(families), radius)
    except ValueError as exc:
        raise ModelFormatError(str(exc)) from exc


def model_to_obj(model: SpectralMeasureModel) -> dict:
    def pt(z: complex):
        return [z.real, z.imag]

    pieces = []
    for p in model.pieces:
        if isinstance(p, Segment):
            pieces.append({"type": "segment", "a": pt(p.a), "b": pt(p.b)})
        elif isinstance(p, Arc):
            pieces.append(
                {
                    "type": "arc",
                    "center": pt(p.center),
                    "radius": p.radius,
                    "theta0": p.theta0,
                    "theta1": p.theta1,
                }
            )
        else:
            pieces.append({"type": "polygon", "vertices": [pt(v) for v in p.polygon.vertices]})
    return {
        "kind": "model",
        "support_radius": model.support_radius,
        "atoms": [
            {"point": pt(a.location), "mult": "inf" if a.mult == INF else int(a.mult)}
            for a in model.atoms
        ],
        "pieces": pieces,
        "families": [
            {
                "prefix": [{"point": pt(p), "mult": int(m)} for p, m in f.prefix],
                "limit": pt(f.limit),
                "approach_angle": f.approach_angle,
                "approach_side": f.approach_side,
                "tail_mult": f.tail_mult,
            }
            for f in model.families
        ],
    }


def matrix_to_obj(M: np.ndarray) -> dict:
    M = np.asarray(M, dtype=complex)
    return {
        "kind": "matrix",
        "data": [[[z.real, z.imag] for z in row] for row in M],
    }


def region_to_obj(est: RegionEstimate) -> dict:
    return {
        "k": est.k,
        "support": [{"xi": xi, "h": h} for xi, h in est.support_samples],
        "polygon": [[v.real, v.imag] for v in est.polygon.vertices],
        "boundary": [
            {"point": [z.real, z.imag], "verdict": v.value} for z, v in est.boundary_report
        ],
    }


def dilation_to_obj(art) -> dict:
    return {
        "alpha": art.alpha,
        "unitarity_residual": art.unitarity_residual,
        "compression_residual": art.compression_residual,
        "defect_rank": art.defect_rank,
        "matrix": [[[z.real, z.imag] for z in row] for row in np.asarray(art.matrix)],
    }


def certificate_to_obj(cert) -> dict:
    return {
        "point": [cert.point.real, cert.point.imag],
        "plane": {
            "anchor": [cert.plane.anchor.real, cert.plane.anchor.imag],
            "normal_angle": cert.plane.normal_angle,
        },
        "scalar_dilations": [
            {
                "d": [d.real, d.imag],
                "xi": [x.real, x.imag],
                "eta": [e.real, e.imag],
                "t": t,
            }
            for d, x, e, t in cert.scalar_dilations
        ],
        "beta": cert.beta,
        "mu": cert.mu,
        "certified_dim": cert.certified_dim,
    }


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
