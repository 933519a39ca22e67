import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arcshot.errors import DegenerateArc, DegenerateHeading
from arcshot.shot import (CLOCKWISE, COUNTERCLOCKWISE, ArcShotSpec, GlobalPath,
                          Pose4, face_target, generate_arc, wrap_to_pi)
from arcshot.world import Vec3

REL = 1e-9


# wrap_to_pi -----------------------------------------------------------------

@settings(max_examples=300, deadline=None)
@given(st.floats(-1e6, 1e6))
def test_wrap_to_pi_lands_in_half_open_interval(angle):
    wrapped = wrap_to_pi(angle)
    assert -math.pi < wrapped <= math.pi


def test_wrap_to_pi_boundary_maps_to_positive_pi():
    assert wrap_to_pi(math.pi) == math.pi
    assert wrap_to_pi(-math.pi) == math.pi
    assert wrap_to_pi(3 * math.pi) == pytest.approx(math.pi)


@settings(max_examples=200, deadline=None)
@given(st.floats(-20, 20), st.integers(-3, 3))
def test_wrap_to_pi_is_periodic(angle, k):
    # compare on the circle so values straddling the +/-pi seam still agree
    difference = wrap_to_pi(wrap_to_pi(angle + k * math.tau) - wrap_to_pi(angle))
    assert abs(difference) < 1e-9


# face_target ----------------------------------------------------------------

def test_face_target_cardinal_and_diagonal_headings():
    assert face_target(Vec3(5, 0, 2), Vec3(0, 0, 0)) == math.pi
    assert face_target(Vec3(0, -3, 1), Vec3(0, 0, 0)) == math.pi / 2
    assert face_target(Vec3(1, 1, 0), Vec3(0, 0, 0)) == -3 * math.pi / 4


def test_face_target_ignores_altitude():
    assert face_target(Vec3(5, 0, 9), Vec3(0, 0, 0)) == math.pi


def test_face_target_degenerate_heading():
    with pytest.raises(DegenerateHeading):
        face_target(Vec3(2, 3, 5), Vec3(2, 3, 0))


# generate_arc: spec examples ------------------------------------------------

def quarter_spec(direction):
    return ArcShotSpec(Vec3(5, 0, 2), Vec3(-5, 0, 2), Vec3(0, 0, 0),
                       direction, 9)


def test_arc_counterclockwise_quarter_point():
    path = generate_arc(quarter_spec(COUNTERCLOCKWISE))
    mid = path[4]
    assert mid.position.x == pytest.approx(0.0, abs=1e-9)
    assert mid.position.y == pytest.approx(5.0, rel=REL)
    assert mid.position.z == pytest.approx(2.0, rel=REL)
    assert mid.yaw == pytest.approx(-math.pi / 2, rel=REL)


def test_arc_clockwise_mirrors_the_sweep():
    path = generate_arc(quarter_spec(CLOCKWISE))
    mid = path[4]
    assert mid.position.x == pytest.approx(0.0, abs=1e-9)
    assert mid.position.y == pytest.approx(-5.0, rel=REL)
    assert mid.yaw == pytest.approx(math.pi / 2, rel=REL)


def test_arc_radius_and_altitude_interpolate_linearly():
    spec = ArcShotSpec(Vec3(4, 0, 1), Vec3(0, 2, 3), Vec3(0, 0, 0),
                       COUNTERCLOCKWISE, 5)
    path = generate_arc(spec)
    radii = [p.position.horizontal_distance_to(spec.target) for p in path.poses]
    zs = [p.position.z for p in path.poses]
    for i, (r, z) in enumerate(zip(radii, zs)):
        t = i / 4
        assert r == pytest.approx(4.0 + (2.0 - 4.0) * t, rel=REL)
        assert z == pytest.approx(1.0 + (3.0 - 1.0) * t, rel=REL)


def test_arc_errors_on_zero_radius():
    with pytest.raises(DegenerateArc):
        ArcShotSpec(Vec3(0, 0, 5), Vec3(1, 0, 5), Vec3(0, 0, 0))


def test_arc_spec_validation():
    with pytest.raises(ValueError):
        ArcShotSpec(Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 0), "widdershins")
    with pytest.raises(ValueError):
        ArcShotSpec(Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 0),
                    COUNTERCLOCKWISE, 1)


def test_coincident_angles_force_a_full_revolution():
    spec = ArcShotSpec(Vec3(3, 0, 1), Vec3(3, 0, 5), Vec3(0, 0, 0),
                       COUNTERCLOCKWISE, 17)
    path = generate_arc(spec)
    angles = _polar_angles(path, spec.target)
    total = sum(_deltas(angles))
    assert total == pytest.approx(math.tau, rel=REL)


# generate_arc: properties ---------------------------------------------------

def _random_spec(rng) -> ArcShotSpec:
    while True:
        start = Vec3(rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(0, 8))
        end = Vec3(rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(0, 8))
        target = Vec3(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(0, 3))
        if (start.horizontal_distance_to(target) > 0.5
                and end.horizontal_distance_to(target) > 0.5):
            direction = CLOCKWISE if rng.random() < 0.5 else COUNTERCLOCKWISE
            return ArcShotSpec(start, end, target, direction,
                               int(rng.integers(8, 100)))


def _polar_angles(path: GlobalPath, target: Vec3) -> list[float]:
    return [math.atan2(p.position.y - target.y, p.position.x - target.x)
            for p in path.poses]


def _deltas(angles: list[float]) -> list[float]:
    return [wrap_to_pi(b - a) for a, b in zip(angles, angles[1:])]


def test_endpoint_fidelity_on_random_specs():
    rng = np.random.default_rng(11)
    for _ in range(50):
        spec = _random_spec(rng)
        path = generate_arc(spec)
        for got, want in ((path[0].position, spec.start),
                          (path[-1].position, spec.end)):
            assert got.x == pytest.approx(want.x, rel=REL, abs=1e-9)
            assert got.y == pytest.approx(want.y, rel=REL, abs=1e-9)
            assert got.z == pytest.approx(want.z, rel=REL, abs=1e-9)


def test_equal_angular_spacing_with_one_sign():
    rng = np.random.default_rng(12)
    for _ in range(50):
        spec = _random_spec(rng)
        path = generate_arc(spec)
        deltas = _deltas(_polar_angles(path, spec.target))
        sign = 1.0 if spec.direction == COUNTERCLOCKWISE else -1.0
        for d in deltas:
            assert math.copysign(1.0, d) == sign
            assert d == pytest.approx(deltas[0], rel=REL, abs=1e-9)


def test_radial_distance_is_linear_in_sample_index():
    rng = np.random.default_rng(13)
    for _ in range(50):
        spec = _random_spec(rng)
        path = generate_arc(spec)
        r0 = spec.start.horizontal_distance_to(spec.target)
        r1 = spec.end.horizontal_distance_to(spec.target)
        n = len(path) - 1
        for i, pose in enumerate(path.poses):
            want = r0 + (r1 - r0) * i / n
            assert pose.position.horizontal_distance_to(spec.target) == \
                pytest.approx(want, rel=REL)


def test_every_yaw_faces_the_target():
    rng = np.random.default_rng(14)
    for _ in range(50):
        spec = _random_spec(rng)
        for pose in generate_arc(spec).poses:
            off_x = spec.target.x - pose.position.x
            off_y = spec.target.y - pose.position.y
            norm = math.hypot(off_x, off_y)
            dot = (math.cos(pose.yaw) * off_x + math.sin(pose.yaw) * off_y) / norm
            assert dot >= 1.0 - REL


def test_reversal_symmetry():
    rng = np.random.default_rng(15)
    flipped = {CLOCKWISE: COUNTERCLOCKWISE, COUNTERCLOCKWISE: CLOCKWISE}
    for _ in range(30):
        spec = _random_spec(rng)
        forward = generate_arc(spec)
        backward = generate_arc(ArcShotSpec(
            spec.end, spec.start, spec.target, flipped[spec.direction],
            spec.sample_count))
        for a, b in zip(forward.poses, reversed(backward.poses)):
            assert a.position.x == pytest.approx(b.position.x, rel=REL, abs=1e-9)
            assert a.position.y == pytest.approx(b.position.y, rel=REL, abs=1e-9)
            assert a.position.z == pytest.approx(b.position.z, rel=REL, abs=1e-9)


# pose normalization ---------------------------------------------------------

def test_pose_normalizes_yaw_on_construction():
    pose = Pose4(Vec3(0, 0, 0), 3 * math.pi)
    assert pose.yaw == pytest.approx(math.pi)
    assert Pose4(Vec3(0, 0, 0), -math.pi).yaw == math.pi


def test_global_path_requires_poses():
    with pytest.raises(ValueError):
        GlobalPath(())
