"""Quadrature over trimmed rational Bezier surface patches.

A trimmed patch is integrated in two steps.  First the retained part of
the parameter square is covered with a planar rule: Green's theorem in
(u, v) with the antiderivative taken in v from the fixed height 0, so
every parametric point is (u(s), xi) for a boundary node s of some trim
segment and a Gauss node xi on the vertical run below it.  Second, each
parametric point is pushed through the patch map and its weight picks up
a normal factor: the full magnitude |n| for surface-area integrals, or
the z-component n_z for the volume pipeline.

Untrimmed patches skip the boundary construction entirely and use a
tensor-product Gauss grid over the whole square.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .bezier import (
    RationalBezierCurve,
    RationalBezierPatch,
    _patch_eval_h,
    control_bbox,
)
from .errors import QuadratureError, ValidationError
from .planar import Rule2D, _assemble
from .quad1d import gauss_legendre

__all__ = [
    "TrimLoop",
    "TrimmedPatch",
    "SurfaceRule",
    "unit_square_loop",
    "parametric_area_rule",
    "surface_rule",
    "untrimmed_rule",
    "surface_integrate",
]

_PARAM_SLACK = 1e-9
_CLOSURE_TOL = 1e-10
_DEGENERATE_NORMAL_REL = 1e-14
_WEIGHT_MODES = ("full-normal", "z-normal")


@dataclass(frozen=True)
class TrimLoop:
    """Closed chain of 2D rational Bezier curves in the parameter square.

    Counter-clockwise loops keep material, clockwise loops cut it away,
    the same convention the planar module uses.  Control points may poke
    out of [0, 1]^2 by at most 1e-9.
    """

    segments: tuple[RationalBezierCurve, ...]

    def __post_init__(self):
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        if not segs:
            raise ValidationError("trim loop needs at least one segment")
        for j, seg in enumerate(segs):
            if not isinstance(seg, RationalBezierCurve):
                raise ValidationError(f"segments[{j}] must be a RationalBezierCurve")
            if seg.dim != 2:
                raise ValidationError(
                    f"segments[{j}]: trim curves live in (u, v), got dimension {seg.dim}"
                )
            pts = seg.points
            if float(pts.min()) < -_PARAM_SLACK or float(pts.max()) > 1.0 + _PARAM_SLACK:
                raise ValidationError(
                    f"segments[{j}]: control points leave the parameter square"
                )
        for j, seg in enumerate(segs):
            nxt = segs[(j + 1) % len(segs)]
            gap = float(np.linalg.norm(seg.end() - nxt.start()))
            if gap > _CLOSURE_TOL:
                raise ValidationError(
                    f"segments[{j}] ends {gap:.3e} away from the next segment start"
                )


@dataclass(frozen=True)
class TrimmedPatch:
    """A surface patch plus trim loops; no loops means the full square."""

    patch: RationalBezierPatch
    loops: tuple[TrimLoop, ...] = ()

    def __post_init__(self):
        if not isinstance(self.patch, RationalBezierPatch):
            raise ValidationError("patch must be a RationalBezierPatch")
        loops = tuple(self.loops)
        object.__setattr__(self, "loops", loops)
        for k, loop in enumerate(loops):
            if not isinstance(loop, TrimLoop):
                raise ValidationError(f"loops[{k}] must be a TrimLoop")


@dataclass(frozen=True)
class SurfaceRule:
    """Surface quadrature with parametric preimages.

    ``provenance`` rows are (patch, loop, segment, mu, eta).  Rules from
    the untrimmed tensor shortcut mark loop = segment = -1 and use the
    grid indices for (mu, eta).  ``degenerate_count`` is the number of
    points whose unnormalized normal collapsed below threshold; they stay
    in the rule with zero weight.
    """

    points: np.ndarray
    weights: np.ndarray
    preimages: np.ndarray
    provenance: np.ndarray
    degenerate_count: int = 0

    def __post_init__(self):
        pts = np.array(self.points, dtype=float).reshape(-1, 3)
        wts = np.array(self.weights, dtype=float).ravel()
        pre = np.array(self.preimages, dtype=float).reshape(-1, 2)
        prov = np.array(self.provenance, dtype=np.int64).reshape(-1, 5)
        if not (pts.shape[0] == wts.shape[0] == pre.shape[0] == prov.shape[0]):
            raise ValidationError("points, weights, preimages and provenance must align")
        if pre.size and (float(pre.min()) < -1e-8 or float(pre.max()) > 1.0 + 1e-8):
            raise ValidationError("parametric preimages must stay inside the unit square")
        for a in (pts, wts, pre, prov):
            a.flags.writeable = False
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)
        object.__setattr__(self, "preimages", pre)
        object.__setattr__(self, "provenance", prov)

    def __len__(self) -> int:
        return self.weights.size


def unit_square_loop() -> TrimLoop:
    """Counter-clockwise boundary of the full parameter square."""
    corners = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    segs = []
    for a, b in zip(corners, corners[1:] + corners[:1]):
        segs.append(RationalBezierCurve(np.array([a, b]), np.ones(2)))
    return TrimLoop(tuple(segs))


def parametric_area_rule(loops, m_q: int, n_q: int) -> Rule2D:
    """Planar rule over the trimmed part of the parameter square.

    The antiderivative runs in v from the fixed height 0, with m_q
    boundary nodes per trim segment and n_q nodes per vertical run.  The
    returned provenance indexes trim segments in flattened loop order.
    """
    loops = tuple(loops)
    if not loops:
        raise ValidationError("need at least one trim loop")
    for k, loop in enumerate(loops):
        if not isinstance(loop, TrimLoop):
            raise ValidationError(f"loops[{k}] must be a TrimLoop")
    if m_q < 1 or n_q < 1:
        raise ValidationError("orders must be at least 1")
    base = gauss_legendre(m_q, (0.0, 1.0))
    flat = [seg for loop in loops for seg in loop.segments]
    pts, wts, prov = _assemble(((seg, base) for seg in flat), 0.0, n_q)
    return Rule2D(pts, wts, prov)


def _mapped_weights(patch, u, v, para_weights, weight_mode):
    """Push parametric points through the patch; scale weights by the
    requested normal factor, zeroing collapsed-normal points."""
    if weight_mode not in _WEIGHT_MODES:
        raise ValidationError(
            f"weight_mode must be one of {_WEIGHT_MODES}, got {weight_mode!r}"
        )
    s_h, su_h, sv_h = _patch_eval_h(patch, u, v)
    w = s_h[:, 3:]
    point = s_h[:, :3] / w
    du = (su_h[:, :3] - point * su_h[:, 3:]) / w
    dv = (sv_h[:, :3] - point * sv_h[:, 3:]) / w
    normal = np.cross(du, dv)
    mag = np.linalg.norm(normal, axis=1)
    # collapsed patch edges (sphere poles) must be skipped, not integrated
    degenerate = mag < _DEGENERATE_NORMAL_REL * control_bbox(patch).diagonal()
    factor = mag if weight_mode == "full-normal" else normal[:, 2]
    weights = para_weights * np.where(degenerate, 0.0, factor)
    return point, weights, int(np.count_nonzero(degenerate))


def surface_rule(
    tp: TrimmedPatch, m_q: int, n_q: int, weight_mode: str = "full-normal", patch_index: int = 0
) -> SurfaceRule:
    """Quadrature rule over one trimmed patch.

    ``full-normal`` weights integrate against the surface area measure;
    ``z-normal`` weights integrate against n_z, which is what the volume
    construction consumes.  An untrimmed input gets the explicit unit
    square loop (the tensor shortcut lives in untrimmed_rule).
    """
    if isinstance(tp, RationalBezierPatch):
        tp = TrimmedPatch(tp)
    loops = tp.loops or (unit_square_loop(),)
    para = parametric_area_rule(loops, m_q, n_q)
    point, weights, bad = _mapped_weights(
        tp.patch, para.points[:, 0], para.points[:, 1], para.weights, weight_mode
    )
    if bad:
        warnings.warn(
            f"patch {patch_index}: zeroed {bad} degenerate-normal points", stacklevel=2
        )
    loop_of, seg_of = [], []
    for k, loop in enumerate(loops):
        loop_of.extend([k] * len(loop.segments))
        seg_of.extend(range(len(loop.segments)))
    flat = para.provenance[:, 0]
    prov = np.column_stack(
        [
            np.full(len(para), patch_index, dtype=np.int64),
            np.asarray(loop_of, dtype=np.int64)[flat],
            np.asarray(seg_of, dtype=np.int64)[flat],
            para.provenance[:, 1:],
        ]
    )
    return SurfaceRule(point, weights, para.points, prov, degenerate_count=bad)


def untrimmed_rule(
    patch: RationalBezierPatch, n: int, weight_mode: str = "full-normal", patch_index: int = 0
) -> SurfaceRule:
    """Tensor-product Gauss shortcut for a full patch: n x n points over
    the parameter square, weights scaled by the same normal factor as
    surface_rule."""
    if n < 1:
        raise ValidationError("order must be at least 1")
    g = gauss_legendre(n, (0.0, 1.0))
    u = np.repeat(g.nodes, n)
    v = np.tile(g.nodes, n)
    pw = np.repeat(g.weights, n) * np.tile(g.weights, n)
    point, weights, bad = _mapped_weights(patch, u, v, pw, weight_mode)
    if bad:
        warnings.warn(
            f"patch {patch_index}: zeroed {bad} degenerate-normal points", stacklevel=2
        )
    idx = np.indices((n, n)).reshape(2, -1).T
    prov = np.column_stack(
        [
            np.full(n * n, patch_index, dtype=np.int64),
            np.full(n * n, -1, dtype=np.int64),
            np.full(n * n, -1, dtype=np.int64),
            idx,
        ]
    )
    return SurfaceRule(point, weights, np.column_stack([u, v]), prov, degenerate_count=bad)


def apply_surface_rule(rule: SurfaceRule, f) -> float:
    """Apply the rule to f(x, y, z); f must accept numpy arrays."""
    with np.errstate(all="ignore"):
        vals = np.broadcast_to(
            np.asarray(
                f(rule.points[:, 0], rule.points[:, 1], rule.points[:, 2]), dtype=float
            ),
            rule.weights.shape,
        )
    bad = np.flatnonzero(~np.isfinite(vals))
    if bad.size:
        i = int(bad[0])
        raise QuadratureError(
            f"integrand is not finite at node {i}, point "
            f"({rule.points[i, 0]:.17g}, {rule.points[i, 1]:.17g}, {rule.points[i, 2]:.17g})"
        )
    return float(np.dot(rule.weights, vals))


def surface_integrate(patches, f, m_q: int, n_q: int) -> float:
    """Integral of f over a union of trimmed patches, area-weighted.

    Untrimmed patches route through the tensor shortcut with
    max(m_q, n_q) points per direction.  Per-patch failures are collected
    and reported together with their patch indices.
    """
    total = 0.0
    failures = []
    for i, tp in enumerate(patches):
        if isinstance(tp, RationalBezierPatch):
            tp = TrimmedPatch(tp)
        try:
            if tp.loops:
                rule = surface_rule(tp, m_q, n_q, "full-normal", patch_index=i)
            else:
                rule = untrimmed_rule(tp.patch, max(m_q, n_q), "full-normal", patch_index=i)
            total += apply_surface_rule(rule, f)
        except (QuadratureError, ValidationError) as exc:
            failures.append(f"patch {i}: {exc}")
    if failures:
        raise QuadratureError("; ".join(failures))
    return total
