"""Shared scenario builders for the test suite."""

from pathlib import Path

import pytest
from hypothesis import settings

from arcshot.shot import ArcShotSpec
from arcshot.world import AxisBox, Cylinder, QuadModel, Vec3, World

settings.register_profile("deterministic", derandomize=True, deadline=None)
settings.load_profile("deterministic")

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"


def make_world(obstacles=(), lo=(-15.0, -15.0, 0.0), hi=(15.0, 15.0, 10.0),
               target=(0.0, 0.0, 1.5)) -> World:
    return World(AxisBox(Vec3(*lo), Vec3(*hi)), tuple(obstacles), Vec3(*target))


def demo_world() -> World:
    """Bundled demo world: three obstacles, one of them blocking the arc."""
    return make_world((
        Cylinder(Vec3(0.0, 8.8, 0.0), 0.8, 5.0),
        Cylinder(Vec3(6.0, -5.0, 0.0), 1.0, 4.0),
        AxisBox(Vec3(-7.0, -7.0, 0.0), Vec3(-5.0, -5.0, 3.0)),
    ))


def demo_shot() -> ArcShotSpec:
    return ArcShotSpec(Vec3(8.0, 0.0, 2.0), Vec3(-8.0, 0.0, 2.0),
                       Vec3(0.0, 0.0, 1.5), "counterclockwise", 64)


def wall_world() -> World:
    """A wall far wider than any level-0 search window; escape is over the top."""
    return World(
        AxisBox(Vec3(-20.0, -20.0, 0.0), Vec3(20.0, 20.0, 12.0)),
        (AxisBox(Vec3(-0.6, 6.0, 0.0), Vec3(0.6, 14.0, 3.0)),),
        Vec3(0.0, 0.0, 1.0),
    )


def wall_shot() -> ArcShotSpec:
    return ArcShotSpec(Vec3(10.0, 0.0, 2.0), Vec3(-10.0, 0.0, 2.0),
                       Vec3(0.0, 0.0, 1.0), "counterclockwise", 64)


@pytest.fixture
def quad() -> QuadModel:
    return QuadModel()
