"""Geometric moments of regions and solids, and moment-fitted weights.

Moments are monomial integrals ordered graded-lexicographically: total
degree first, then exponents compared left to right, highest first.  For
planar regions each monomial is integrated with a polynomially exact
rule, so the moments are exact up to rounding.  Solids have no exact
path; they use a generously sized volume rule and cross-check it against
one with doubled orders.

moment_fit_weights solves the classic moment-fitting system: given
prescribed point locations, find the minimum-norm weights reproducing a
moment vector.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import QuadratureError, ValidationError
from .planar import PlanarRegion, integrate2d, spectral_pe_rule
from .volume import SolidModel, volume_rule

__all__ = [
    "MomentVector",
    "monomial_exponents",
    "geometric_moments",
    "moment_fit_weights",
]

_DOUBLING_TOL = 1e-11


def monomial_exponents(p: int, dim: int):
    """Exponent tuples of total degree <= p in graded-lex order."""
    if dim not in (2, 3):
        raise ValidationError(f"dim must be 2 or 3, got {dim}")
    if p < 0:
        raise ValidationError(f"max degree must be >= 0, got {p}")
    out = []
    for d in range(p + 1):
        if dim == 2:
            out.extend((a, d - a) for a in range(d, -1, -1))
        else:
            for a in range(d, -1, -1):
                out.extend((a, b, d - a - b) for b in range(d - a, -1, -1))
    return out


@dataclass(frozen=True)
class MomentVector:
    """Monomial moments up to a total degree, graded-lex ordered."""

    degree: int
    dim: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float).ravel()
        expected = len(monomial_exponents(self.degree, self.dim))
        if vals.size != expected:
            raise ValidationError(
                f"degree {self.degree} in {self.dim}D needs {expected} moments, got {vals.size}"
            )
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def exponents(self):
        return monomial_exponents(self.degree, self.dim)

    def __len__(self) -> int:
        return self.values.size


def _region_moments(region: PlanarRegion, p: int) -> MomentVector:
    rule = spectral_pe_rule(region, p)
    vals = [
        integrate2d(rule, lambda x, y, a=a, b=b: x**a * y**b)
        for a, b in monomial_exponents(p, 2)
    ]
    return MomentVector(p, 2, np.array(vals))


def _solid_moments(solid: SolidModel, p: int) -> MomentVector:
    n = (p + 1 + 1) // 2 + 4
    exps = monomial_exponents(p, 3)

    def run(order):
        rule = volume_rule(solid, order, order, order)
        x, y, z = rule.points.T
        return np.array(
            [float(np.dot(rule.weights, x**a * y**b * z**c)) for a, b, c in exps]
        )

    coarse = run(n)
    fine = run(2 * n)
    drift = np.abs(fine - coarse) / np.maximum(1.0, np.abs(fine))
    if np.max(drift) > _DOUBLING_TOL:
        i = int(np.argmax(drift))
        warnings.warn(
            f"moment {exps[i]} moved {drift[i]:.2e} when doubling quadrature orders; "
            "treat results near that degree with care",
            stacklevel=3,
        )
    return MomentVector(p, 3, fine)


def geometric_moments(model, p: int) -> MomentVector:
    """Monomial moments of a planar region (exact rules) or a solid
    (doubled-order convergence check)."""
    if p < 0:
        raise ValidationError(f"max degree must be >= 0, got {p}")
    if isinstance(model, PlanarRegion):
        return _region_moments(model, p)
    if isinstance(model, SolidModel):
        return _solid_moments(model, p)
    raise ValidationError(f"cannot take moments of {type(model).__name__}")


def moment_fit_weights(points, moments: MomentVector, p: int | None = None):
    """Minimum-norm weights at prescribed points reproducing ``moments``.

    Returns (weights, residual).  ``p`` trims the moment vector to a
    lower degree; the graded order makes that a prefix.  A residual above
    1e-8 times the moment norm means the points cannot carry the moments
    and raises instead of returning junk weights.
    """
    if p is None:
        p = moments.degree
    if p > moments.degree:
        raise ValidationError(f"p={p} exceeds the moment vector degree {moments.degree}")
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != moments.dim:
        raise ValidationError(f"points must be (n, {moments.dim}) for these moments")
    if not np.all(np.isfinite(pts)):
        raise ValidationError("points must be finite")
    exps = monomial_exponents(p, moments.dim)
    m = moments.values[: len(exps)]
    if pts.shape[0] < len(exps):
        raise ValidationError(
            f"{len(exps)} moments need at least that many points, got {pts.shape[0]}"
        )
    rows = [np.prod(pts ** np.asarray(e, dtype=float), axis=1) for e in exps]
    vander = np.vstack(rows)
    weights, *_ = np.linalg.lstsq(vander, m, rcond=None)
    residual = float(np.linalg.norm(vander @ weights - m))
    scale = float(np.linalg.norm(m))
    if residual > 1e-8 * max(scale, 1e-300):
        raise QuadratureError(
            f"moment fit left residual {residual:.3e} against moment norm {scale:.3e}; "
            "the point set cannot reproduce these moments"
        )
    return weights, residual
