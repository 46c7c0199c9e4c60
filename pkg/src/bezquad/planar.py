"""Quadrature over planar regions bounded by rational Bezier loops.

The area integral of f is turned into a boundary integral of the vertical
antiderivative A_f(x, y) = integral of f(x, .) from a constant height C up
to y, and that boundary integral is evaluated curve by curve.  Every rule
point therefore sits on a vertical segment hanging below a boundary point,
and its weight is a product of three numbers: the intermediate weight of
the boundary node, the Gauss weight on the vertical segment, and the
geometric factor of the curve at that node.

Loops are traversed counter-clockwise around material; clockwise loops
subtract (holes).  With that convention the geometric factor is minus the
x-derivative of the curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bezier import (
    BoundingBox,
    RationalBezierCurve,
    control_bbox,
    eval_curve,
    eval_curve_derivative,
)
from .errors import QuadratureError, ValidationError
from .quad1d import PoleSet, Rule1D, _gauss_many, gauss_legendre, rational_rule, weight_poly_roots

__all__ = [
    "PlanarRegion",
    "Rule2D",
    "region_constant_C",
    "spectral_rule",
    "spectral_pe_rule",
    "integrate2d",
]

_CLOSURE_REL_TOL = 1e-10
_EQUAL_WEIGHT_REL_TOL = 1e-14


@dataclass(frozen=True)
class PlanarRegion:
    """One or more closed loops of rational Bezier curves.

    Each loop must chain end-to-start (within 1e-10 of its own scale) and
    close back on its first curve.  Counter-clockwise loops carry positive
    material, clockwise loops cut holes.
    """

    loops: tuple[tuple[RationalBezierCurve, ...], ...]

    def __post_init__(self):
        loops = tuple(tuple(loop) for loop in self.loops)
        object.__setattr__(self, "loops", loops)
        if not loops:
            raise ValidationError("region needs at least one loop")
        for k, loop in enumerate(loops):
            if not loop:
                raise ValidationError(f"loop {k} is empty", path=f"loops[{k}]")
            for j, c in enumerate(loop):
                if not isinstance(c, RationalBezierCurve) or c.dim != 2:
                    raise ValidationError(
                        "loops must consist of planar rational Bezier curves",
                        path=f"loops[{k}][{j}]",
                    )
            scale = control_bbox(list(loop)).diagonal()
            tol = _CLOSURE_REL_TOL * scale if scale > 0 else _CLOSURE_REL_TOL
            for j, c in enumerate(loop):
                nxt = loop[(j + 1) % len(loop)]
                gap = float(np.linalg.norm(c.end() - nxt.start()))
                if gap > tol:
                    raise ValidationError(
                        f"curve {j} ends at {tuple(c.end())} but curve "
                        f"{(j + 1) % len(loop)} starts at {tuple(nxt.start())} "
                        f"(gap {gap:.3e}, tolerance {tol:.3e})",
                        path=f"loops[{k}]",
                    )

    @property
    def curves(self) -> tuple[RationalBezierCurve, ...]:
        return tuple(c for loop in self.loops for c in loop)

    def bbox(self) -> BoundingBox:
        return control_bbox(self)


@dataclass(frozen=True)
class Rule2D:
    """Planar quadrature rule with per-point provenance.

    ``provenance`` rows are (curve, q, zeta): the flattened boundary curve
    index, the intermediate node index on that curve, and the index on the
    vertical antiderivative segment under that node.
    """

    points: np.ndarray
    weights: np.ndarray
    provenance: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float).reshape(-1, 2)
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


def region_constant_C(region: PlanarRegion) -> float:
    """Lower antiderivative height: the minimum control-point y.

    Every curve point lies at or above this height (convex hull), so all
    antiderivative segments have non-negative length.
    """
    return min(float(c.points[:, 1].min()) for c in region.curves)


def is_polynomial_curve(curve: RationalBezierCurve) -> bool:
    w = curve.weights
    return float(np.max(np.abs(w - w[0]))) <= _EQUAL_WEIGHT_REL_TOL * float(np.max(np.abs(w)))


def _assemble(curve_rules, constant, layer_order):
    """Shared boundary-times-layer assembly.

    ``curve_rules`` yields (curve, Rule1D on [0, 1]); the result carries
    provenance rows (curve, q, zeta) with the curve index pre-flattened.
    """
    points, weights, prov = [], [], []
    for i, (curve, rule) in enumerate(curve_rules):
        s = rule.nodes
        pts = eval_curve(curve, s)
        der = eval_curve_derivative(curve, s)
        # counter-clockwise material: the factor is -dx/ds
        factor = -der[:, 0]
        y_nodes, y_weights = _gauss_many(layer_order, np.full(s.shape, constant), pts[:, 1])
        q_count, z_count = y_nodes.shape
        w = rule.weights[:, None] * y_weights * factor[:, None]
        x = np.repeat(pts[:, 0], z_count)
        points.append(np.column_stack([x, y_nodes.ravel()]))
        weights.append(w.ravel())
        idx = np.indices((q_count, z_count)).reshape(2, -1).T
        prov.append(np.column_stack([np.full(len(idx), i), idx]))
    return (
        np.vstack(points),
        np.concatenate(weights),
        np.vstack(prov),
    )


def spectral_rule(region: PlanarRegion, boundary_order: int, layer_order: int) -> Rule2D:
    """Gauss-on-Gauss rule: ``boundary_order`` nodes per curve, each with a
    ``layer_order``-point vertical segment.

    Spectrally convergent for integrands analytic on the region; never
    exact by construction.
    """
    if boundary_order < 1 or layer_order < 1:
        raise ValidationError("orders must be at least 1")
    c = region_constant_C(region)
    base = gauss_legendre(boundary_order, (0.0, 1.0))
    pts, wts, prov = _assemble(((crv, base) for crv in region.curves), c, layer_order)
    return Rule2D(pts, wts, prov)


def _pe_intermediate_rule(curve: RationalBezierCurve, degree: int) -> Rule1D:
    """Intermediate rule on one curve making the boundary integral exact
    for integrands of total degree <= ``degree``."""
    m = curve.degree
    if not is_polynomial_curve(curve):
        roots = weight_poly_roots(curve.weights)
        if roots:
            poles = PoleSet.from_roots(roots, multiplier=degree + 3)
            return rational_rule(poles, poly_degree=0)
    # polynomial fallback: the intermediate integrand is a polynomial of
    # degree m*(degree+2) + (m-1)
    intermediate_degree = m * (degree + 2) + (m - 1)
    return gauss_legendre(math.ceil((intermediate_degree + 1) / 2), (0.0, 1.0))


def spectral_pe_rule(region: PlanarRegion, degree: int) -> Rule2D:
    """Polynomially exact rule: integrates every monomial x^a y^b with
    a + b <= ``degree`` to rounding level.

    Rational curves get a rational-exact intermediate rule built on their
    weight-polynomial poles at multiplicity degree + 3; polynomial curves
    get plain Gauss.  Each boundary node carries ceil((degree + 1) / 2)
    antiderivative points.
    """
    if degree < 0:
        raise ValidationError(f"exactness degree must be >= 0, got {degree}")
    c = region_constant_C(region)
    layer_order = max(1, math.ceil((degree + 1) / 2))
    pairs = [(crv, _pe_intermediate_rule(crv, degree)) for crv in region.curves]
    pts, wts, prov = _assemble(pairs, c, layer_order)
    return Rule2D(pts, wts, prov)


def integrate2d(rule: Rule2D, f) -> float:
    """Apply the rule to f(x, y); f must accept numpy arrays."""
    with np.errstate(all="ignore"):
        vals = np.broadcast_to(
            np.asarray(f(rule.points[:, 0], rule.points[:, 1]), dtype=float),
            rule.weights.shape,
        )
    bad = np.flatnonzero(~np.isfinite(vals))
    if bad.size:
        i = int(bad[0])
        raise QuadratureError(
            f"integrand is not finite at node {i}, point "
            f"({rule.points[i, 0]:.17g}, {rule.points[i, 1]:.17g})"
        )
    return float(np.dot(rule.weights, vals))
