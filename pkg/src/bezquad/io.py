"""Geometry files (JSON), rule files (CSV), and trim-point lists.

Region files hold loops of curves; solid files hold patches with
optional trim loops.  Errors point into the document ("patches[2]
.weights[0][1]") so a bad file can be fixed without guesswork.  Rules
serialize to CSV with 17 significant digits, which reproduces every
float bit-exactly on reload.
"""

from __future__ import annotations

import importlib.resources
import json
from dataclasses import dataclass

import numpy as np

from .bezier import RationalBezierCurve, RationalBezierPatch
from .errors import ValidationError
from .moments import MomentVector
from .planar import PlanarRegion, Rule2D
from .surface import SurfaceRule, TrimLoop, TrimmedPatch
from .volume import Rule3D, SolidModel

__all__ = [
    "load_region",
    "save_region",
    "load_solid",
    "save_solid",
    "save_rule",
    "rule_csv_lines",
    "load_rule",
    "LoadedRule",
    "load_trim_points",
    "save_moments",
    "moment_csv_lines",
    "bundled",
]


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ValidationError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from None


def _dump_json(doc, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _as_array(value, path):
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise ValidationError("not a numeric array", path=path) from None
    if not np.all(np.isfinite(arr)):
        raise ValidationError("contains non-finite values", path=path)
    return arr


def _positive_weights(weights, path):
    flat = np.asarray(weights).ravel()
    bad = np.flatnonzero(~(flat > 0))
    if bad.size:
        i = int(bad[0])
        idx = np.unravel_index(i, np.shape(weights))
        where = "".join(f"[{k}]" for k in idx)
        raise ValidationError(
            f"weight must be positive, got {flat[i]}", path=f"{path}{where}"
        )


def _curve_from_json(obj, path, dim):
    if not isinstance(obj, dict):
        raise ValidationError("expected a curve object", path=path)
    unknown = set(obj) - {"degree", "points", "weights"}
    if unknown:
        raise ValidationError(f"unknown keys {sorted(unknown)}", path=path)
    if "points" not in obj:
        raise ValidationError("missing 'points'", path=path)
    pts = _as_array(obj["points"], f"{path}.points")
    if pts.ndim != 2 or pts.shape[1] != dim or pts.shape[0] < 2:
        raise ValidationError(f"points must be (m+1, {dim}) with m >= 1", path=f"{path}.points")
    weights = obj.get("weights")
    if weights is None:
        weights = np.ones(pts.shape[0])
    else:
        weights = _as_array(weights, f"{path}.weights")
        if weights.shape != (pts.shape[0],):
            raise ValidationError(
                f"need {pts.shape[0]} weights, got shape {weights.shape}",
                path=f"{path}.weights",
            )
        _positive_weights(weights, f"{path}.weights")
    if "degree" in obj and int(obj["degree"]) != pts.shape[0] - 1:
        raise ValidationError(
            f"stated degree {obj['degree']} does not match {pts.shape[0]} control points",
            path=path,
        )
    try:
        return RationalBezierCurve(pts, weights)
    except ValidationError as exc:
        raise ValidationError(str(exc), path=path) from None


def _curve_to_json(curve):
    return {
        "degree": int(curve.degree),
        "points": [[float(v) for v in p] for p in curve.points],
        "weights": [float(w) for w in curve.weights],
    }


def load_region(path) -> PlanarRegion:
    """Read {"loops": [[curve, ...], ...]}; omitted weights mean 1."""
    doc = _load_json(path)
    if not isinstance(doc, dict) or "loops" not in doc:
        raise ValidationError(f"{path}: region file needs a top-level 'loops' list")
    loops = doc["loops"]
    if not isinstance(loops, list) or not loops:
        raise ValidationError("'loops' must be a nonempty list", path="loops")
    built = []
    for i, loop in enumerate(loops):
        if not isinstance(loop, list) or not loop:
            raise ValidationError("must be a nonempty list of curves", path=f"loops[{i}]")
        built.append(
            tuple(_curve_from_json(c, f"loops[{i}][{j}]", 2) for j, c in enumerate(loop))
        )
    return PlanarRegion(tuple(built))


def save_region(region: PlanarRegion, path):
    doc = {"loops": [[_curve_to_json(c) for c in loop] for loop in region.loops]}
    _dump_json(doc, path)


def _patch_from_json(obj, path):
    if not isinstance(obj, dict):
        raise ValidationError("expected a patch object", path=path)
    unknown = set(obj) - {"degree_u", "degree_v", "points", "weights", "trim_loops"}
    if unknown:
        raise ValidationError(f"unknown keys {sorted(unknown)}", path=path)
    if "points" not in obj:
        raise ValidationError("missing 'points'", path=path)
    pts = _as_array(obj["points"], f"{path}.points")
    if pts.ndim != 3 or pts.shape[2] != 3 or pts.shape[0] < 2 or pts.shape[1] < 2:
        raise ValidationError(
            "points must be (m+1, n+1, 3) with m, n >= 1", path=f"{path}.points"
        )
    weights = obj.get("weights")
    if weights is None:
        weights = np.ones(pts.shape[:2])
    else:
        weights = _as_array(weights, f"{path}.weights")
        if weights.shape != pts.shape[:2]:
            raise ValidationError(
                f"need shape {pts.shape[:2]} weights, got {weights.shape}",
                path=f"{path}.weights",
            )
        _positive_weights(weights, f"{path}.weights")
    for key, axis in (("degree_u", 0), ("degree_v", 1)):
        if key in obj and int(obj[key]) != pts.shape[axis] - 1:
            raise ValidationError(
                f"stated {key} {obj[key]} does not match the control net", path=path
            )
    try:
        patch = RationalBezierPatch(pts, weights)
    except ValidationError as exc:
        raise ValidationError(str(exc), path=path) from None
    loops = []
    for k, loop in enumerate(obj.get("trim_loops") or []):
        if not isinstance(loop, list) or not loop:
            raise ValidationError(
                "must be a nonempty list of curves", path=f"{path}.trim_loops[{k}]"
            )
        segs = tuple(
            _curve_from_json(c, f"{path}.trim_loops[{k}][{j}]", 2)
            for j, c in enumerate(loop)
        )
        try:
            loops.append(TrimLoop(segs))
        except ValidationError as exc:
            raise ValidationError(str(exc), path=f"{path}.trim_loops[{k}]") from None
    return TrimmedPatch(patch, tuple(loops))


def _patch_to_json(tp):
    out = {
        "degree_u": int(tp.patch.degree_u),
        "degree_v": int(tp.patch.degree_v),
        "points": [[[float(v) for v in p] for p in row] for row in tp.patch.points],
        "weights": [[float(w) for w in row] for row in tp.patch.weights],
    }
    if tp.loops:
        out["trim_loops"] = [
            [_curve_to_json(seg) for seg in loop.segments] for loop in tp.loops
        ]
    return out


def load_solid(path) -> SolidModel:
    """Read {"closed": bool, "patches": [patch, ...]}; trim loops optional."""
    doc = _load_json(path)
    if not isinstance(doc, dict) or "patches" not in doc:
        raise ValidationError(f"{path}: solid file needs a top-level 'patches' list")
    patches = doc["patches"]
    if not isinstance(patches, list) or not patches:
        raise ValidationError("'patches' must be a nonempty list", path="patches")
    built = tuple(
        _patch_from_json(p, f"patches[{i}]") for i, p in enumerate(patches)
    )
    return SolidModel(built, closed=bool(doc.get("closed", True)))


def save_solid(solid: SolidModel, path):
    doc = {
        "closed": bool(solid.closed),
        "patches": [_patch_to_json(tp) for tp in solid.patches],
    }
    _dump_json(doc, path)


_RULE_COLUMNS = (
    (Rule2D, ("x", "y", "weight", "curve", "q", "zeta")),
    (SurfaceRule, ("x", "y", "z", "weight", "patch", "loop", "segment", "mu", "eta")),
    (Rule3D, ("x", "y", "z", "weight", "patch", "sigma", "psi")),
)


def rule_csv_lines(rule):
    """Header plus one row per point: coordinates, weight, provenance."""
    for cls, cols in _RULE_COLUMNS:
        if isinstance(rule, cls):
            break
    else:
        raise ValidationError(f"cannot serialize a {type(rule).__name__}")
    dim = cols.index("weight")
    lines = [",".join(cols)]
    for i in range(len(rule)):
        vals = [f"{rule.points[i, d]:.17g}" for d in range(dim)]
        vals.append(f"{rule.weights[i]:.17g}")
        vals.extend(str(int(v)) for v in rule.provenance[i])
        lines.append(",".join(vals))
    return lines


def save_rule(rule, path):
    """CSV with coordinates, weight, then provenance; 17 digits."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(rule_csv_lines(rule)) + "\n")


@dataclass(frozen=True)
class LoadedRule:
    """A rule read back from CSV: points, weights, provenance, header."""

    points: np.ndarray
    weights: np.ndarray
    provenance: np.ndarray
    columns: tuple

    def __len__(self) -> int:
        return self.weights.size

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def load_rule(path) -> LoadedRule:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except FileNotFoundError:
        raise ValidationError(f"no such file: {path}") from None
    if not lines:
        raise ValidationError(f"{path}: empty rule file")
    cols = tuple(lines[0].split(","))
    if "weight" not in cols:
        raise ValidationError(f"{path}: rule file needs a 'weight' column")
    wi = cols.index("weight")
    pts, wts, prov = [], [], []
    for ln, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != len(cols):
            raise ValidationError(
                f"{path} line {ln}: expected {len(cols)} fields, got {len(parts)}"
            )
        try:
            pts.append([float(v) for v in parts[:wi]])
            wts.append(float(parts[wi]))
            prov.append([int(v) for v in parts[wi + 1 :]])
        except ValueError:
            raise ValidationError(f"{path} line {ln}: malformed number") from None
    n = len(wts)
    return LoadedRule(
        np.asarray(pts, dtype=float).reshape(n, wi),
        np.asarray(wts, dtype=float),
        np.asarray(prov, dtype=np.int64).reshape(n, len(cols) - wi - 1),
        cols,
    )


def load_trim_points(path):
    """Blank-line-separated blocks of 'u,v' rows -> list of point arrays."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read().splitlines()
    except FileNotFoundError:
        raise ValidationError(f"no such file: {path}") from None
    blocks, cur = [], []
    for ln, line in enumerate(raw, start=1):
        line = line.strip()
        if not line:
            if cur:
                blocks.append(np.asarray(cur, dtype=float))
                cur = []
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ValidationError(f"{path} line {ln}: expected 'u,v'")
        try:
            cur.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise ValidationError(f"{path} line {ln}: malformed number") from None
    if cur:
        blocks.append(np.asarray(cur, dtype=float))
    if not blocks:
        raise ValidationError(f"{path}: no points found")
    return blocks


def moment_csv_lines(mv: MomentVector):
    header = ("a,b,value", "a,b,c,value")[mv.dim - 2]
    lines = [header]
    for exps, value in zip(mv.exponents, mv.values):
        lines.append(",".join([*(str(e) for e in exps), f"{value:.17g}"]))
    return lines


def save_moments(mv: MomentVector, path):
    """CSV of exponent columns plus the moment value."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(moment_csv_lines(mv)) + "\n")


def bundled(name: str):
    """Path to a sample geometry file shipped inside the package."""
    root = importlib.resources.files("bezquad").joinpath("data")
    target = root.joinpath(name)
    if not target.is_file():
        have = sorted(p.name for p in root.iterdir()) if root.is_dir() else []
        raise ValidationError(f"no bundled file {name!r}; available: {have}")
    return target
