"""Volume quadrature over solids bounded by closed unions of patches.

The divergence theorem turns the volume integral of f into a surface
integral of its z antiderivative against the z-component of the outward
normal.  Each bounding patch gets a surface rule in z-normal mode, and
under every surface point a Gauss segment drops from the fixed height
P_z (the lowest control z of the whole solid) up to the surface.  The
volume rule is the union of those segments; side patches with n_z = 0
contribute nothing, and surface points at the bottom produce degenerate
segments with zero weights.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bezier import BoundingBox, control_bbox
from .errors import QuadratureError, ValidationError
from .quad1d import _gauss_many
from .surface import TrimmedPatch, surface_rule, untrimmed_rule

__all__ = [
    "SolidModel",
    "Rule3D",
    "solid_constant_Pz",
    "volume_rule",
    "volume_integrate",
]


@dataclass(frozen=True)
class SolidModel:
    """Union of trimmed patches asserted to bound a volume.

    Patch normals must point out of the material.  ``closed`` is a caller
    assertion, not something verified here; the construction tolerates
    small gaps between adjacent patches.
    """

    patches: tuple[TrimmedPatch, ...]
    closed: bool = True

    def __post_init__(self):
        patches = tuple(
            tp if isinstance(tp, TrimmedPatch) else TrimmedPatch(tp)
            for tp in self.patches
        )
        if not patches:
            raise ValidationError("solid needs at least one patch")
        object.__setattr__(self, "patches", patches)

    def bbox(self) -> BoundingBox:
        return control_bbox(self)


@dataclass(frozen=True)
class Rule3D:
    """Volume rule with per-point provenance rows (patch, sigma, psi):
    the patch index, the surface-point index within that patch's surface
    rule, and the node index on the vertical segment under it."""

    points: np.ndarray
    weights: np.ndarray
    provenance: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float).reshape(-1, 3)
        wts = np.array(self.weights, dtype=float).ravel()
        prov = np.array(self.provenance, dtype=np.int64).reshape(-1, 3)
        if not (pts.shape[0] == wts.shape[0] == prov.shape[0]):
            raise ValidationError("points, weights and provenance must align")
        for a in (pts, wts, prov):
            a.flags.writeable = False
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)
        object.__setattr__(self, "provenance", prov)

    def __len__(self) -> int:
        return self.weights.size


def solid_constant_Pz(solid: SolidModel) -> float:
    """Lowest control-point z of the solid; antiderivative segments start
    here, so they never leave the control bounding box."""
    return min(float(tp.patch.points[..., 2].min()) for tp in solid.patches)


def volume_rule(
    solid: SolidModel, m_q: int, n_q: int, n_p: int | None = None, pz: float | None = None
) -> Rule3D:
    """Volume rule for a closed solid.

    Per patch: a z-normal surface rule (m_q boundary nodes and n_q layer
    nodes per trim segment; untrimmed patches use the max(m_q, n_q)
    tensor shortcut), then an n_p-point Gauss segment under each surface
    point.  n_p defaults to m_q.  ``pz`` overrides the antiderivative
    base height; integrals of smooth f over a closed solid do not depend
    on it, only the individual points and weights do.
    """
    if not isinstance(solid, SolidModel):
        solid = SolidModel(tuple(solid))
    if not solid.closed:
        raise ValidationError("volume rules need a solid asserted closed")
    if n_p is None:
        n_p = m_q
    if m_q < 1 or n_q < 1 or n_p < 1:
        raise ValidationError("orders must be at least 1")
    base = solid_constant_Pz(solid) if pz is None else float(pz)
    pts_all, wts_all, prov_all = [], [], []
    for i, tp in enumerate(solid.patches):
        if tp.loops:
            srule = surface_rule(tp, m_q, n_q, "z-normal", patch_index=i)
        else:
            srule = untrimmed_rule(tp.patch, max(m_q, n_q), "z-normal", patch_index=i)
        x, y, z = srule.points.T
        z_nodes, z_weights = _gauss_many(n_p, np.full(z.shape, base), z)
        sig_count, p_count = z_nodes.shape
        w = srule.weights[:, None] * z_weights
        pts_all.append(
            np.column_stack([np.repeat(x, p_count), np.repeat(y, p_count), z_nodes.ravel()])
        )
        wts_all.append(w.ravel())
        idx = np.indices((sig_count, p_count)).reshape(2, -1).T
        prov_all.append(np.column_stack([np.full(len(idx), i, dtype=np.int64), idx]))
    return Rule3D(np.vstack(pts_all), np.concatenate(wts_all), np.vstack(prov_all))


def volume_integrate(
    solid: SolidModel, f, m_q: int, n_q: int, n_p: int | None = None
) -> float:
    """Apply a volume rule to f(x, y, z); f must accept numpy arrays."""
    rule = volume_rule(solid, m_q, n_q, n_p)
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
