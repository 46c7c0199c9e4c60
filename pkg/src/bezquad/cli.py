"""Command-line entry: rule files, integration, moments, trim fitting.

Exit status is 0 on success, 1 for validation problems (bad flags, bad
files, non-closed geometry), 2 for numeric failures (ill conditioning,
domain errors in the integrand).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .errors import (
    ConditioningError,
    EvalError,
    ParseError,
    QuadratureError,
    ValidationError,
)
from .expr import evaluate, parse, polynomial_degree, to_callable
from .io import (
    _curve_to_json,
    load_region,
    load_rule,
    load_solid,
    load_trim_points,
    moment_csv_lines,
    rule_csv_lines,
)
from .moments import geometric_moments
from .planar import PlanarRegion, spectral_pe_rule, spectral_rule
from .surface import SurfaceRule, surface_rule, untrimmed_rule
from .trimfit import fit_trim_curves
from .volume import volume_rule


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for numeric
    # failures here, so remap to the validation status.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser():
    p = _Parser(prog="bezquad", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    r2 = sub.add_parser("rule2d", help="quadrature rule for a planar region")
    r2.add_argument("--region", required=True, help="region JSON file")
    r2.add_argument("--mode", required=True, choices=("spectral", "pe"))
    r2.add_argument("--order", type=int, help="boundary/layer order (spectral mode)")
    r2.add_argument("--degree", type=int, help="exactness degree k (pe mode)")
    r2.add_argument("--out", help="write CSV here instead of stdout")

    rs = sub.add_parser("rule-surface", help="rule over all patches of a solid")
    rs.add_argument("--solid", required=True, help="solid JSON file")
    rs.add_argument("--orders", required=True, metavar="MQ,NQ")
    rs.add_argument("--out")

    rv = sub.add_parser("rule-volume", help="volume rule for a closed solid")
    rv.add_argument("--solid", required=True, help="solid JSON file")
    rv.add_argument("--orders", required=True, metavar="MQ,NQ,NP")
    rv.add_argument("--out")

    it = sub.add_parser("integrate", help="integrate an expression")
    src = it.add_mutually_exclusive_group(required=True)
    src.add_argument("--rule", help="rule CSV produced by a rule command")
    src.add_argument("--model", help="region or solid JSON file")
    it.add_argument("--expr", required=True, help="integrand in x, y, z")
    it.add_argument(
        "--pe",
        action="store_true",
        help="use the polynomial-exact rule sized to the integrand degree",
    )
    it.add_argument(
        "--orders",
        metavar="Q[,P]|MQ,NQ,NP",
        help="quadrature orders (default 20,20 planar / 16,16,16 solid)",
    )

    mo = sub.add_parser("moments", help="geometric moments of a model")
    mo.add_argument("--model", required=True, help="region or solid JSON file")
    mo.add_argument("--max-degree", required=True, type=int)
    mo.add_argument("--out")

    ft = sub.add_parser("fit-trim", help="fit trim curves through sampled points")
    ft.add_argument("--points", required=True, help="u,v CSV, blank-line blocks")
    ft.add_argument("--segments", required=True, type=int)
    ft.add_argument("--degree", type=int, default=3)
    ft.add_argument("--out")

    cv = sub.add_parser("convergence", help="error-vs-order refinement table")
    cv.add_argument("--model", required=True, help="region or solid JSON file")
    cv.add_argument("--expr", required=True)
    cv.add_argument("--orders", required=True, metavar="LO:HI:STEP")
    cv.add_argument("--out")
    return p


def _emit(lines, out):
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_model(path):
    """Region or solid, decided by the document's top-level key."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise ValidationError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    if isinstance(doc, dict) and "loops" in doc:
        return load_region(path)
    if isinstance(doc, dict) and "patches" in doc:
        return load_solid(path)
    raise ValidationError(f"{path}: expected a 'loops' or 'patches' document")


def _parse_ints(text, flag, counts):
    parts = text.split(",")
    if len(parts) not in counts:
        want = " or ".join(str(c) for c in sorted(counts))
        raise ValidationError(f"{flag} takes {want} comma-separated integers")
    try:
        vals = [int(v) for v in parts]
    except ValueError:
        raise ValidationError(f"{flag}: {text!r} is not a list of integers") from None
    if any(v < 1 for v in vals):
        raise ValidationError(f"{flag}: orders must be at least 1")
    return vals


def _weighted(node, points, weights):
    """Sum w_i f(p_i) with domain failures reported at the bad point."""
    f = to_callable(node)
    cols = [points[:, d] for d in range(points.shape[1])]
    vals = np.broadcast_to(np.asarray(f(*cols), dtype=float), weights.shape)
    bad = np.flatnonzero(~np.isfinite(vals))
    if bad.size:
        i = int(bad[0])
        pt = [float(v) for v in points[i]] + [0.0] * (3 - points.shape[1])
        evaluate(node, pt)  # raises EvalError naming the subexpression
        raise EvalError(
            f"integrand is not finite at ({', '.join(f'{v:.17g}' for v in pt)})"
        )
    return float(np.dot(weights, vals))


def _combined_surface_rule(solid, m_q, n_q):
    """Full-normal rules for every patch, concatenated in patch order."""
    parts = []
    for i, tp in enumerate(solid.patches):
        if tp.loops:
            parts.append(surface_rule(tp, m_q, n_q, patch_index=i))
        else:
            parts.append(untrimmed_rule(tp.patch, max(m_q, n_q), patch_index=i))
    return SurfaceRule(
        np.vstack([r.points for r in parts]),
        np.concatenate([r.weights for r in parts]),
        np.vstack([r.preimages for r in parts]),
        np.vstack([r.provenance for r in parts]),
        degenerate_count=sum(r.degenerate_count for r in parts),
    )


def _cmd_rule2d(args):
    region = load_region(args.region)
    if args.mode == "spectral":
        if args.order is None:
            raise ValidationError("--mode spectral needs --order")
        if args.degree is not None:
            raise ValidationError("--degree applies to --mode pe only")
        rule = spectral_rule(region, args.order, args.order)
    else:
        if args.degree is None:
            raise ValidationError("--mode pe needs --degree")
        if args.order is not None:
            raise ValidationError("--order applies to --mode spectral only")
        rule = spectral_pe_rule(region, args.degree)
    _emit(rule_csv_lines(rule), args.out)


def _cmd_rule_surface(args):
    solid = load_solid(args.solid)
    m_q, n_q = _parse_ints(args.orders, "--orders", {2})
    _emit(rule_csv_lines(_combined_surface_rule(solid, m_q, n_q)), args.out)


def _cmd_rule_volume(args):
    solid = load_solid(args.solid)
    m_q, n_q, n_p = _parse_ints(args.orders, "--orders", {3})
    _emit(rule_csv_lines(volume_rule(solid, m_q, n_q, n_p)), args.out)


def _cmd_integrate(args):
    node = parse(args.expr)
    if args.rule is not None:
        if args.pe:
            raise ValidationError("--pe needs --model; a stored rule is fixed")
        if args.orders:
            raise ValidationError("--orders needs --model; a stored rule is fixed")
        loaded = load_rule(args.rule)
        value = _weighted(node, loaded.points, loaded.weights)
    else:
        model = _load_model(args.model)
        if isinstance(model, PlanarRegion):
            if args.pe:
                if args.orders:
                    raise ValidationError("--pe sizes the rule itself; drop --orders")
                k = polynomial_degree(node)
                if k is None:
                    raise ValidationError(
                        "--pe needs a polynomial integrand (no /x, sqrt, exp, "
                        "sin, cos, log over variables); drop --pe to integrate "
                        f"{args.expr!r} with the spectral rule"
                    )
                rule = spectral_pe_rule(model, k)
            else:
                orders = (
                    _parse_ints(args.orders, "--orders", {1, 2})
                    if args.orders
                    else [20, 20]
                )
                q = orders[0]
                p = orders[1] if len(orders) == 2 else q
                rule = spectral_rule(model, q, p)
        else:
            if args.pe:
                raise ValidationError("--pe applies to planar regions only")
            m_q, n_q, n_p = (
                _parse_ints(args.orders, "--orders", {3})
                if args.orders
                else (16, 16, 16)
            )
            rule = volume_rule(model, m_q, n_q, n_p)
        value = _weighted(node, rule.points, rule.weights)
    sys.stdout.write(f"{value:.17g}\n")


def _cmd_moments(args):
    if args.max_degree < 0:
        raise ValidationError("--max-degree must be nonnegative")
    mv = geometric_moments(_load_model(args.model), args.max_degree)
    _emit(moment_csv_lines(mv), args.out)


def _cmd_fit_trim(args):
    blocks = load_trim_points(args.points)
    loops = [
        [_curve_to_json(c) for c in fit_trim_curves(pts, args.segments, args.degree)]
        for pts in blocks
    ]
    _emit(json.dumps(loops, indent=2, sort_keys=True).splitlines(), args.out)


def _cmd_convergence(args):
    node = parse(args.expr)
    fields = args.orders.split(":")
    if len(fields) != 3:
        raise ValidationError("--orders takes LO:HI:STEP")
    try:
        lo, hi, step = (int(v) for v in fields)
    except ValueError:
        raise ValidationError(f"--orders: {args.orders!r} is not LO:HI:STEP") from None
    if lo < 1 or step < 1 or hi < lo:
        raise ValidationError("--orders needs 1 <= LO <= HI and STEP >= 1")
    model = _load_model(args.model)
    orders = list(range(lo, hi + 1, step))
    rows = []
    for n in orders:
        if isinstance(model, PlanarRegion):
            rule = spectral_rule(model, n, n)
        else:
            rule = volume_rule(model, n, n, n)
        rows.append((n, len(rule), _weighted(node, rule.points, rule.weights)))
    reference = rows[-1][2]
    lines = ["order,n_points,value,error"]
    for n, count, value in rows:
        lines.append(f"{n},{count},{value:.17g},{abs(value - reference):.17g}")
    _emit(lines, args.out)


_DISPATCH = {
    "rule2d": _cmd_rule2d,
    "rule-surface": _cmd_rule_surface,
    "rule-volume": _cmd_rule_volume,
    "integrate": _cmd_integrate,
    "moments": _cmd_moments,
    "fit-trim": _cmd_fit_trim,
    "convergence": _cmd_convergence,
}


def main(argv=None):
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _DISPATCH[args.command](args)
    except (ValidationError, ParseError) as exc:
        sys.stderr.write(f"bezquad: {exc}\n")
        return 1
    except (QuadratureError, ConditioningError, EvalError) as exc:
        sys.stderr.write(f"bezquad: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"bezquad: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
