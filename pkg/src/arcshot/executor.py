"""Kinematic waypoint follower: takeoff, then track the path with velocity
commands, integrated with explicit Euler at a fixed rate."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TimeoutExceeded
from .shot import GlobalPath, Pose4, wrap_to_pi
from .world import QuadModel, Vec3


@dataclass(frozen=True)
class SimState:
    position: Vec3
    yaw: float
    time: float = 0.0


@dataclass(frozen=True)
class VelocityCommand:
    linear: Vec3
    yaw_rate: float


@dataclass(frozen=True)
class FollowConfig:
    """Proportional tracking gains; k_p * dt < 1 keeps the integration stable."""

    dt: float = 0.02
    k_p: float = 1.0
    waypoint_tolerance: float = 0.15
    max_time: float = 120.0

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if self.k_p <= 0:
            raise ValueError(f"k_p must be > 0, got {self.k_p}")
        if self.waypoint_tolerance <= 0:
            raise ValueError(
                f"waypoint_tolerance must be > 0, got {self.waypoint_tolerance}")
        if self.max_time <= 0:
            raise ValueError(f"max_time must be > 0, got {self.max_time}")
        if self.k_p * self.dt >= 1.0:
            raise ValueError(
                f"k_p * dt must be < 1 for stable tracking, got {self.k_p * self.dt}")


def command_for(state: SimState, target: Pose4, cfg: FollowConfig,
                quad: QuadModel) -> VelocityCommand:
    """Saturated proportional command toward a waypoint pose."""
    err = target.position - state.position
    speed = cfg.k_p * err.norm()
    if speed > quad.max_speed:
        linear = err.scaled(quad.max_speed / err.norm())
    else:
        linear = err.scaled(cfg.k_p)
    yaw_err = wrap_to_pi(target.yaw - state.yaw)
    yaw_rate = max(-quad.max_yaw_rate, min(quad.max_yaw_rate, cfg.k_p * yaw_err))
    return VelocityCommand(linear, yaw_rate)


def follow(path: GlobalPath, start: SimState, cfg: FollowConfig, quad: QuadModel,
           max_time: float | None = None) -> list[SimState]:
    """Simulate takeoff plus waypoint tracking; returns the state log.

    Phase 1 climbs to a virtual waypoint directly above the start at the
    first waypoint's altitude; phase 2 walks the waypoints in order, switching
    whenever the vehicle is within the waypoint tolerance. Raises
    TimeoutExceeded (carrying the partial log) if max_time elapses first.
    """
    if len(path) == 0:
        raise ValueError("cannot follow an empty path")
    max_time = cfg.max_time if max_time is None else max_time

    first = path[0]
    takeoff = Pose4(Vec3(start.position.x, start.position.y, first.position.z),
                    first.yaw)
    targets = [takeoff, *path.poses]

    state = start
    log = [state]
    active = 0
    while True:
        while (active < len(targets)
               and state.position.distance_to(targets[active].position)
               <= cfg.waypoint_tolerance):
            active += 1
        if active == len(targets):
            return log
        if state.time + cfg.dt > max_time:
            raise TimeoutExceeded(log)
        cmd = command_for(state, targets[active], cfg, quad)
        state = SimState(
            position=state.position + cmd.linear.scaled(cfg.dt),
            yaw=wrap_to_pi(state.yaw + cmd.yaw_rate * cfg.dt),
            time=state.time + cfg.dt,
        )
        log.append(state)
