import json
import math

import numpy as np
import pytest

from bezquad.errors import ValidationError
from bezquad.io import (
    bundled,
    load_region,
    load_rule,
    load_solid,
    load_trim_points,
    moment_csv_lines,
    rule_csv_lines,
    save_moments,
    save_region,
    save_rule,
    save_solid,
)
from bezquad.moments import geometric_moments
from bezquad.planar import Rule2D, integrate2d, spectral_rule
from bezquad.shapes import circle_region, cylinder_solid
from bezquad.surface import surface_rule
from bezquad.volume import volume_integrate, volume_rule


def test_bundled_circle_region():
    region = load_region(bundled("circle.region.json"))
    assert len(region.loops) == 1
    loop = region.loops[0]
    assert len(loop) == 4
    assert all(c.degree == 2 for c in loop)
    rule = spectral_rule(region, 12, 12)
    assert integrate2d(rule, lambda x, y: np.ones_like(x)) == pytest.approx(math.pi, abs=1e-12)


def test_bundled_cube_solid():
    solid = load_solid(bundled("cube.solid.json"))
    assert len(solid.patches) == 6
    assert solid.closed
    assert volume_integrate(solid, lambda x, y, z: np.ones_like(x), 4, 4) == pytest.approx(
        1.0, abs=1e-12
    )


def test_bundled_cylinder_has_trimmed_caps():
    solid = load_solid(bundled("cylinder.solid.json"))
    assert len(solid.patches) == 6
    assert sum(1 for tp in solid.patches if tp.loops) == 2


def test_bundled_unknown_name():
    with pytest.raises(ValidationError, match="circle.region.json"):
        bundled("nope.json")


def test_region_round_trip(tmp_path):
    region = circle_region(center=(0.3, -0.2), radius=1.7)
    path = tmp_path / "r.json"
    save_region(region, path)
    back = load_region(path)
    for a, b in zip(region.loops[0], back.loops[0]):
        assert np.array_equal(a.points, b.points)
        assert np.array_equal(a.weights, b.weights)


def test_solid_round_trip(tmp_path):
    solid = cylinder_solid(radius=0.8, height=2.0)
    path = tmp_path / "s.json"
    save_solid(solid, path)
    back = load_solid(path)
    assert back.closed == solid.closed
    for tp, tq in zip(solid.patches, back.patches):
        assert np.array_equal(tp.patch.points, tq.patch.points)
        assert np.array_equal(tp.patch.weights, tq.patch.weights)
        assert len(tp.loops) == len(tq.loops)
        for la, lb in zip(tp.loops, tq.loops):
            for sa, sb in zip(la.segments, lb.segments):
                assert np.array_equal(sa.points, sb.points)


def test_omitted_weights_default_to_one(tmp_path):
    doc = {
        "loops": [
            [
                {"points": [[0, 0], [1, 0]]},
                {"points": [[1, 0], [1, 1]]},
                {"points": [[1, 1], [0, 0]]},
            ]
        ]
    }
    path = tmp_path / "tri.json"
    path.write_text(json.dumps(doc))
    region = load_region(path)
    assert all(np.all(c.weights == 1.0) for c in region.loops[0])


def test_nonpositive_weight_names_curve_and_index(tmp_path):
    doc = {
        "loops": [
            [
                {"points": [[0, 0], [1, 0]], "weights": [1.0, 1.0]},
                {"points": [[1, 0], [0, 0]], "weights": [1.0, -2.0]},
            ]
        ]
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(ValidationError) as err:
        load_region(path)
    assert "loops[0][1].weights[1]" in str(err.value)
    assert "-2" in str(err.value)


@pytest.mark.parametrize(
    "doc,fragment",
    [
        ({"loops": []}, "loops"),
        ({"patches": [{"points": [[[0, 0, 0]]]}]}, r"patches\[0\]\.points"),
        ({"loops": [[{"points": [[0, 0], [1, 0]], "extra": 1}]]}, "unknown keys"),
        ({"loops": [[{"degree": 3, "points": [[0, 0], [1, 0]]}]]}, "degree"),
        ({"loops": [[{"points": [[0, 0], [1, "a"]]}]]}, "numeric"),
    ],
)
def test_schema_violations_report_paths(tmp_path, doc, fragment):
    path = tmp_path / "doc.json"
    path.write_text(json.dumps(doc))
    loader = load_region if "loops" in doc else load_solid
    with pytest.raises(ValidationError, match=fragment):
        loader(path)


def test_not_json(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{{{{")
    with pytest.raises(ValidationError, match="JSON"):
        load_region(path)
    with pytest.raises(ValidationError, match="no such file"):
        load_region(tmp_path / "absent.json")


def test_rule_round_trip_bit_identical(tmp_path):
    rule = spectral_rule(circle_region(), 7, 5)
    path = tmp_path / "rule.csv"
    save_rule(rule, path)
    back = load_rule(path)
    assert back.dim == 2
    assert back.columns == ("x", "y", "weight", "curve", "q", "zeta")
    assert np.array_equal(back.points, rule.points)
    assert np.array_equal(back.weights, rule.weights)
    assert np.array_equal(back.provenance, rule.provenance)


def test_rule3d_round_trip(tmp_path):
    rule = volume_rule(cylinder_solid(), 5, 5, 4)
    path = tmp_path / "rule.csv"
    save_rule(rule, path)
    back = load_rule(path)
    assert back.dim == 3
    assert np.array_equal(back.weights, rule.weights)


def test_surface_rule_columns(tmp_path):
    tp = cylinder_solid().patches[4]  # a trimmed cap
    rule = surface_rule(tp, 4, 4)
    lines = rule_csv_lines(rule)
    assert lines[0] == "x,y,z,weight,patch,loop,segment,mu,eta"
    assert len(lines) == len(rule) + 1


def test_two_point_rule_is_three_lines():
    rule = Rule2D([[0.0, 0.0], [1.0, 2.0]], [0.5, 0.5], [[0, 0, 0], [0, 0, 1]])
    assert len(rule_csv_lines(rule)) == 3


def test_empty_rule_is_header_only(tmp_path):
    rule = Rule2D(np.zeros((0, 2)), np.zeros(0), np.zeros((0, 3), dtype=int))
    path = tmp_path / "empty.csv"
    save_rule(rule, path)
    assert path.read_text() == "x,y,weight,curve,q,zeta\n"
    back = load_rule(path)
    assert len(back) == 0


def test_load_rule_rejects_malformed(tmp_path):
    path = tmp_path / "r.csv"
    path.write_text("x,y,weight,curve,q,zeta\n1,2,0.5,0,0\n")
    with pytest.raises(ValidationError, match="line 2"):
        load_rule(path)
    path.write_text("x,y,weight,curve,q,zeta\n1,2,spam,0,0,0\n")
    with pytest.raises(ValidationError, match="malformed number"):
        load_rule(path)
    path.write_text("")
    with pytest.raises(ValidationError, match="empty"):
        load_rule(path)
    path.write_text("x,y,curve\n")
    with pytest.raises(ValidationError, match="weight"):
        load_rule(path)


def test_trim_points_blocks(tmp_path):
    path = tmp_path / "pts.csv"
    path.write_text("0,0\n1,0\n1,1\n\n0.5,0.5\n0.6,0.5\n")
    blocks = load_trim_points(path)
    assert len(blocks) == 2
    assert blocks[0].shape == (3, 2)
    assert blocks[1].shape == (2, 2)
    path.write_text("0,0\n1\n")
    with pytest.raises(ValidationError, match="line 2"):
        load_trim_points(path)
    path.write_text("\n\n")
    with pytest.raises(ValidationError, match="no points"):
        load_trim_points(path)


def test_moment_csv(tmp_path):
    mv = geometric_moments(circle_region(), 1)
    lines = moment_csv_lines(mv)
    assert lines[0] == "a,b,value"
    assert len(lines) == 4
    assert lines[1].startswith("0,0,3.141592653589")
    path = tmp_path / "m.csv"
    save_moments(mv, path)
    assert path.read_text().splitlines() == lines
