"""Rational Bernstein-Bezier curves and tensor-product patches.

Evaluation goes through homogeneous coordinates: control points are lifted
to (w*x, ..., w), de Casteljau runs on the lifted polygon, and the result
is divided back.  Derivatives use the quotient rule on the homogeneous
value and its hodograph, so no separate derivative curve is ever formed.

The parameter convention is the usual one: s = 0 is the first control
point, s = 1 the last.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

__all__ = [
    "RationalBezierCurve",
    "RationalBezierPatch",
    "BoundingBox",
    "eval_curve",
    "eval_curve_derivative",
    "eval_patch",
    "patch_normal",
    "bernstein_to_monomial",
    "monomial_to_bernstein",
    "control_bbox",
]


def _frozen_array(obj, name, value):
    arr = np.array(value, dtype=float)
    arr.flags.writeable = False
    object.__setattr__(obj, name, arr)
    return arr


@dataclass(frozen=True)
class RationalBezierCurve:
    """Degree-m rational curve given by m+1 control points and weights.

    Points may be planar (x, y) or parameter-space (u, v); both are plain
    2-column arrays.  Weights must be strictly positive.
    """

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pts = _frozen_array(self, "points", self.points)
        wts = _frozen_array(self, "weights", self.weights)
        if pts.ndim != 2 or pts.shape[0] < 2 or pts.shape[1] not in (2, 3):
            raise ValidationError(
                f"control points must be (m+1, 2) or (m+1, 3), got {pts.shape}"
            )
        if wts.shape != (pts.shape[0],):
            raise ValidationError(
                f"need one weight per control point, got {wts.shape} for {pts.shape[0]} points"
            )
        if not np.all(wts > 0):
            raise ValidationError("control weights must be strictly positive")

    @property
    def degree(self) -> int:
        return self.points.shape[0] - 1

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def reversed(self) -> "RationalBezierCurve":
        """Same trace, opposite traversal direction."""
        return RationalBezierCurve(self.points[::-1], self.weights[::-1])

    def start(self) -> np.ndarray:
        return self.points[0]

    def end(self) -> np.ndarray:
        return self.points[-1]


@dataclass(frozen=True)
class RationalBezierPatch:
    """Tensor-product rational patch of bi-degree (m, n) in 3-space.

    ``points`` has shape (m+1, n+1, 3): axis 0 follows u, axis 1 follows v.
    """

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pts = _frozen_array(self, "points", self.points)
        wts = _frozen_array(self, "weights", self.weights)
        if pts.ndim != 3 or pts.shape[2] != 3 or pts.shape[0] < 2 or pts.shape[1] < 2:
            raise ValidationError(
                f"patch control net must be (m+1, n+1, 3) with m, n >= 1, got {pts.shape}"
            )
        if wts.shape != pts.shape[:2]:
            raise ValidationError(
                f"patch weights must be {pts.shape[:2]}, got {wts.shape}"
            )
        if not np.all(wts > 0):
            raise ValidationError("patch weights must be strictly positive")

    @property
    def degree_u(self) -> int:
        return self.points.shape[0] - 1

    @property
    def degree_v(self) -> int:
        return self.points.shape[1] - 1

    def transposed(self) -> "RationalBezierPatch":
        """Swap the u and v roles; the normal direction flips."""
        return RationalBezierPatch(self.points.swapaxes(0, 1), self.weights.T)


@dataclass(frozen=True)
class BoundingBox:
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        _frozen_array(self, "lo", self.lo)
        _frozen_array(self, "hi", self.hi)

    @classmethod
    def from_points(cls, pts) -> "BoundingBox":
        pts = np.asarray(pts, dtype=float).reshape(-1, np.shape(pts)[-1])
        return cls(pts.min(axis=0), pts.max(axis=0))

    def diagonal(self) -> float:
        return float(np.linalg.norm(self.hi - self.lo))

    def inflated(self, pad: float) -> "BoundingBox":
        return BoundingBox(self.lo - pad, self.hi + pad)

    def contains(self, pts) -> bool:
        pts = np.asarray(pts, dtype=float)
        return bool(np.all(pts >= self.lo) and np.all(pts <= self.hi))

    def union(self, other: "BoundingBox") -> "BoundingBox":
        return BoundingBox(np.minimum(self.lo, other.lo), np.maximum(self.hi, other.hi))


def _homogeneous(points, weights):
    return np.concatenate([points * weights[..., None], weights[..., None]], axis=-1)


def _casteljau_pair(ctrl, t):
    """Run de Casteljau down to the last two points.

    ctrl has shape (m+1, ...) trailing payload axes, t has shape (k,).
    Returns (b0, b1), each (k, ...): the two survivors of level m-1.
    The curve value is (1-t) b0 + t b1 and the hodograph is m (b1 - b0).
    """
    m = ctrl.shape[0] - 1
    t = t.reshape((-1,) + (1,) * ctrl.ndim)
    b = np.broadcast_to(ctrl, (t.shape[0],) + ctrl.shape).copy()
    for j in range(m - 1):
        b[:, : m - j] = (1.0 - t) * b[:, : m - j] + t * b[:, 1 : m - j + 1]
    return b[:, 0], b[:, 1]


def _eval_h(curve, s):
    s = np.asarray(s, dtype=float).ravel()
    ctrl = _homogeneous(curve.points, curve.weights)
    if curve.degree == 0:  # unreachable through the public types
        return np.broadcast_to(ctrl[0], (s.size, ctrl.shape[1])).copy(), None
    b0, b1 = _casteljau_pair(ctrl, s)
    t = s[:, None]
    value = (1.0 - t) * b0 + t * b1
    hodo = curve.degree * (b1 - b0)
    return value, hodo


def eval_curve(curve: RationalBezierCurve, s) -> np.ndarray:
    """Evaluate the rational curve at parameter s (scalar or array).

    >>> arc = RationalBezierCurve([(1, 0), (1, 1), (0, 1)],
    ...                           [1, 0.5 * math.sqrt(2), 1])
    >>> bool(np.allclose(eval_curve(arc, 0.5), [2**-0.5, 2**-0.5]))
    True
    """
    scalar = np.isscalar(s) or np.ndim(s) == 0
    value, _ = _eval_h(curve, s)
    out = value[:, :-1] / value[:, -1:]
    return out[0] if scalar else out


def eval_curve_derivative(curve: RationalBezierCurve, s) -> np.ndarray:
    """Derivative of the mapped (projected) curve with respect to s."""
    scalar = np.isscalar(s) or np.ndim(s) == 0
    value, hodo = _eval_h(curve, s)
    w = value[:, -1:]
    point = value[:, :-1] / w
    # quotient rule: (X/W)' = (X' - (X/W) W') / W
    der = (hodo[:, :-1] - point * hodo[:, -1:]) / w
    return der[0] if scalar else der


def _patch_eval_h(patch, u, v):
    """Homogeneous patch value and both partials at paired (u, v) arrays."""
    u = np.asarray(u, dtype=float).ravel()
    v = np.asarray(v, dtype=float).ravel()
    if u.shape != v.shape:
        raise ValidationError("u and v must have matching shapes")
    ctrl = _homogeneous(patch.points, patch.weights)  # (m+1, n+1, 4)
    m, n = patch.degree_u, patch.degree_v

    bu0, bu1 = _casteljau_pair(ctrl, u)  # (k, n+1, 4) each
    t = u[:, None, None]
    row = (1.0 - t) * bu0 + t * bu1
    row_du = m * (bu1 - bu0)

    def collapse_v(rows):
        b = rows.copy()
        t = v[:, None]
        for j in range(n - 1):
            b[:, : n - j] = (1.0 - t[..., None]) * b[:, : n - j] + t[..., None] * b[:, 1 : n - j + 1]
        value = (1.0 - t) * b[:, 0] + t * b[:, 1]
        return value, n * (b[:, 1] - b[:, 0])

    s_h, sv_h = collapse_v(row)
    su_h, _ = collapse_v(row_du)
    return s_h, su_h, sv_h


def eval_patch(patch: RationalBezierPatch, u, v) -> np.ndarray:
    """Evaluate the patch at paired parameter arrays (or scalars)."""
    scalar = np.ndim(u) == 0 and np.ndim(v) == 0
    s_h, _, _ = _patch_eval_h(patch, u, v)
    out = s_h[:, :3] / s_h[:, 3:]
    return out[0] if scalar else out


def patch_normal(patch: RationalBezierPatch, u, v) -> np.ndarray:
    """Unnormalized normal d/du x d/dv of the mapped patch.

    The magnitude is the area scale factor of the parametrization; the
    direction depends on the (u, v) handedness and is not unitized here.
    """
    scalar = np.ndim(u) == 0 and np.ndim(v) == 0
    s_h, su_h, sv_h = _patch_eval_h(patch, u, v)
    w = s_h[:, 3:]
    point = s_h[:, :3] / w
    du = (su_h[:, :3] - point * su_h[:, 3:]) / w
    dv = (sv_h[:, :3] - point * sv_h[:, 3:]) / w
    normal = np.cross(du, dv)
    return normal[0] if scalar else normal


_CONDITIONING_DEGREE = 20


def _warn_if_high_degree(n):
    if n > _CONDITIONING_DEGREE:
        warnings.warn(
            f"basis conversion at degree {n} amplifies rounding by roughly 10^{n // 2}",
            stacklevel=3,
        )


def bernstein_to_monomial(coeffs) -> np.ndarray:
    """Coefficients in the Bernstein basis -> monomial coefficients.

    ``coeffs`` may be a vector or an array whose first axis indexes the
    basis; extra axes (e.g. coordinates) pass through.  The conversion is
    exact in exact arithmetic but its conditioning grows like 10^(n/2).
    """
    coeffs = np.asarray(coeffs, dtype=float)
    n = coeffs.shape[0] - 1
    _warn_if_high_degree(n)
    mat = np.zeros((n + 1, n + 1))
    for i in range(n + 1):
        for j in range(i + 1):
            mat[i, j] = (-1) ** (i - j) * math.comb(n, i) * math.comb(i, j)
    return mat @ coeffs.reshape(n + 1, -1) if coeffs.ndim > 1 else mat @ coeffs


def monomial_to_bernstein(coeffs) -> np.ndarray:
    """Monomial coefficients (ascending powers) -> Bernstein coefficients."""
    coeffs = np.asarray(coeffs, dtype=float)
    n = coeffs.shape[0] - 1
    _warn_if_high_degree(n)
    mat = np.zeros((n + 1, n + 1))
    for j in range(n + 1):
        for i in range(j + 1):
            mat[j, i] = math.comb(j, i) / math.comb(n, i)
    return mat @ coeffs.reshape(n + 1, -1) if coeffs.ndim > 1 else mat @ coeffs


def _collect_control_points(obj, out):
    if isinstance(obj, (RationalBezierCurve, RationalBezierPatch)):
        out.append(obj.points.reshape(-1, obj.points.shape[-1]))
    elif hasattr(obj, "patch"):
        # a trimmed patch boxes its 3D geometry, not its 2D trim loops
        _collect_control_points(obj.patch, out)
    elif hasattr(obj, "patches"):
        _collect_control_points(obj.patches, out)
    elif hasattr(obj, "loops"):
        _collect_control_points(obj.loops, out)
    elif isinstance(obj, (list, tuple)):
        for item in obj:
            _collect_control_points(item, out)
    else:
        raise ValidationError(f"cannot take a control bounding box of {type(obj).__name__}")


def control_bbox(obj) -> BoundingBox:
    """Axis-aligned box of every control point reachable from ``obj``.

    Accepts a curve, a patch, a region or solid, or any nesting of lists
    of these.  The mapped geometry always lies inside this box (convex
    hull property), so it bounds quadrature points too.
    """
    chunks: list[np.ndarray] = []
    _collect_control_points(obj, chunks)
    if not chunks:
        raise ValidationError("no control points found")
    dims = {c.shape[1] for c in chunks}
    if len(dims) != 1:
        raise ValidationError("mixed 2D and 3D geometry in one bounding box")
    pts = np.vstack(chunks)
    return BoundingBox.from_points(pts)
