import numpy as np
import pytest

from bezquad import (
    RationalBezierCurve,
    RationalBezierPatch,
    SurfaceRule,
    TrimLoop,
    TrimmedPatch,
    ValidationError,
    apply_surface_rule,
    bilinear_patch,
    box_solid,
    parametric_area_rule,
    quarter_arc,
    surface_integrate,
    surface_rule,
    unit_square_loop,
    untrimmed_rule,
)


def line(a, b):
    return RationalBezierCurve([a, b], [1.0, 1.0])


def triangle_loop():
    return TrimLoop((line((0, 0), (1, 0)), line((1, 0), (0, 1)), line((0, 1), (0, 0))))


def quarter_disk_loop():
    return TrimLoop((line((0, 0), (1, 0)), quarter_arc((0, 0), 1.0, 0), line((0, 1), (0, 0))))


def flat_unit_patch(z=0.0, xscale=1.0):
    return bilinear_patch((0, 0, z), (xscale, 0, z), (0, 1, z), (xscale, 1, z))


# ---------------------------------------------------------------- parametric


def test_parametric_area_unit_square():
    rule = parametric_area_rule([unit_square_loop()], 4, 4)
    assert abs(np.sum(rule.weights) - 1.0) < 1e-13


def test_parametric_area_triangle():
    rule = parametric_area_rule([triangle_loop()], 6, 6)
    assert abs(np.sum(rule.weights) - 0.5) < 1e-13


def test_parametric_area_quarter_disk():
    rule = parametric_area_rule([quarter_disk_loop()], 12, 12)
    assert abs(np.sum(rule.weights) - np.pi / 4) < 1e-12


def test_parametric_points_stay_in_unit_square():
    for loop in (unit_square_loop(), triangle_loop(), quarter_disk_loop()):
        rule = parametric_area_rule([loop], 8, 8)
        assert rule.points.min() > -1e-12
        assert rule.points.max() < 1 + 1e-12


def test_complementarity_of_split_square():
    # diagonal cut: triangle plus its complement tile the whole square
    upper = TrimLoop((line((1, 0), (1, 1)), line((1, 1), (0, 1)), line((0, 1), (1, 0))))
    a = np.sum(parametric_area_rule([triangle_loop()], 8, 8).weights)
    b = np.sum(parametric_area_rule([upper], 8, 8).weights)
    assert abs(a + b - 1.0) < 1e-12


# ------------------------------------------------------------- surface rules


def test_flat_patch_area():
    rule = surface_rule(TrimmedPatch(flat_unit_patch(z=5.0)), 4, 4)
    assert abs(np.sum(rule.weights) - 1.0) < 1e-13
    assert np.allclose(rule.points[:, 2], 5.0)


def test_flat_patch_z_normal_mode():
    rule = surface_rule(TrimmedPatch(flat_unit_patch(z=5.0)), 4, 4, "z-normal")
    assert abs(np.sum(rule.weights) - 1.0) < 1e-13


def test_flat_patch_jacobian_scaling():
    rule = surface_rule(TrimmedPatch(flat_unit_patch(xscale=2.0)), 4, 4)
    assert abs(np.sum(rule.weights) - 2.0) < 1e-13


def test_untrimmed_rule_count_and_area():
    rule = untrimmed_rule(flat_unit_patch(), 3)
    assert len(rule) == 9
    assert abs(np.sum(rule.weights) - 1.0) < 1e-13
    assert np.all(rule.provenance[:, 1] == -1)
    assert np.all(rule.provenance[:, 2] == -1)


def test_untrimmed_matches_explicit_square_loop():
    rng = np.random.default_rng(31)
    for _ in range(3):
        patch = RationalBezierPatch(
            rng.normal(size=(4, 4, 3)), rng.uniform(0.5, 2.0, size=(4, 4))
        )
        f = lambda x, y, z: np.exp(0.3 * x) + y * z
        shortcut = apply_surface_rule(untrimmed_rule(patch, 12), f)
        explicit = apply_surface_rule(surface_rule(TrimmedPatch(patch), 12, 12), f)
        assert abs(shortcut - explicit) < 1e-12 * max(1.0, abs(explicit))


def test_surface_rule_accepts_bare_patch():
    rule = surface_rule(flat_unit_patch(), 3, 3)
    assert abs(np.sum(rule.weights) - 1.0) < 1e-13


def test_trimmed_flat_patch_quarter_disk():
    tp = TrimmedPatch(flat_unit_patch(), (quarter_disk_loop(),))
    rule = surface_rule(tp, 12, 12)
    assert abs(np.sum(rule.weights) - np.pi / 4) < 1e-12


def test_preimages_and_provenance():
    tp = TrimmedPatch(flat_unit_patch(), (quarter_disk_loop(),))
    rule = surface_rule(tp, 5, 4, patch_index=7)
    assert rule.preimages.min() > -1e-12 and rule.preimages.max() < 1 + 1e-12
    assert np.all(rule.provenance[:, 0] == 7)
    assert np.all(rule.provenance[:, 1] == 0)
    assert set(np.unique(rule.provenance[:, 2])) == {0, 1, 2}
    # 3 segments x 5 boundary nodes x 4 layer nodes
    assert len(rule) == 3 * 5 * 4
    # points are the patch images of the preimages
    from bezquad import eval_patch

    mapped = eval_patch(tp.patch, rule.preimages[:, 0], rule.preimages[:, 1])
    assert np.allclose(mapped, rule.points, atol=1e-14)


def test_degenerate_normal_points_get_zero_weight():
    # collapse the v=0 edge to a single point: normals vanish along it
    pts = np.array(
        [
            [[0.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            [[0.0, 0.0, 0.0], [1.0, 1.0, 0.0]],
        ]
    )
    patch = RationalBezierPatch(pts, np.ones((2, 2)))
    edge = TrimLoop(
        (
            line((0, 0), (1, 0)),
            line((1, 0), (1, 1)),
            line((1, 1), (0, 1)),
            line((0, 1), (0, 0)),
        )
    )
    with pytest.warns(UserWarning, match="degenerate-normal"):
        rule = surface_rule(TrimmedPatch(patch, (edge,)), 1, 1)
    assert rule.degenerate_count > 0
    zeroed = rule.weights[np.isclose(rule.preimages[:, 1], 0.0, atol=1e-12)]
    assert np.all(zeroed == 0.0)


# ---------------------------------------------------------------- integrate


def test_cube_surface_area():
    cube = box_solid()
    assert abs(surface_integrate(cube.patches, lambda x, y, z: np.ones_like(x), 4, 4) - 6.0) < 1e-12


def test_cube_surface_z_moment():
    cube = box_solid()
    # top face 1*1, bottom 0*1, four sides 1/2 each
    assert abs(surface_integrate(cube.patches, lambda x, y, z: z, 4, 4) - 3.0) < 1e-12


def test_empty_patch_list():
    assert surface_integrate([], lambda x, y, z: x, 4, 4) == 0.0


def test_integrate_reports_patch_index():
    from bezquad import QuadratureError

    cube = box_solid()
    with pytest.raises(QuadratureError, match="patch 0"):
        surface_integrate(cube.patches, lambda x, y, z: 1.0 / (z - z), 3, 3)


# ---------------------------------------------------------------- validation


def test_trim_loop_requires_2d_segments():
    seg3 = RationalBezierCurve([(0, 0, 0), (1, 0, 0)], [1.0, 1.0])
    with pytest.raises(ValidationError, match="dimension"):
        TrimLoop((seg3,))


def test_trim_loop_rejects_out_of_square_points():
    with pytest.raises(ValidationError, match="parameter square"):
        TrimLoop((line((0, 0), (1.5, 0)), line((1.5, 0), (0, 0))))


def test_trim_loop_rejects_gaps():
    with pytest.raises(ValidationError, match="away from"):
        TrimLoop((line((0, 0), (1, 0)), line((1, 1e-4), (0, 0))))


def test_bad_weight_mode():
    with pytest.raises(ValidationError, match="weight_mode"):
        surface_rule(TrimmedPatch(flat_unit_patch()), 3, 3, "sideways")


def test_surface_rule_alignment_checked():
    with pytest.raises(ValidationError, match="align"):
        SurfaceRule(np.zeros((2, 3)), np.zeros(3), np.zeros((2, 2)), np.zeros((2, 5)))
