"""End-to-end shot planning: arc, blocked spans, detours, splice, validate."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .discontinuity import DEFAULT_MARGIN, Discontinuity, find_discontinuities
from .errors import SpliceMismatch, ValidationFailed
from .local_planner import LocalPath, RrtParams, Tree, plan_local_run
from .shot import ArcShotSpec, GlobalPath, Pose4, face_target, generate_arc
from .world import QuadModel, World, collision_model

SPLICE_TOLERANCE = 1e-6


@dataclass(frozen=True)
class DiscontinuityReport:
    """Planner effort spent on one blocked span."""

    entry_index: int
    exit_index: int
    node_count: int
    loops: int
    expansion_level: int
    cost: float
    duration_s: float


@dataclass(frozen=True)
class PlanReport:
    """Per-discontinuity effort plus totals and the exact inputs used."""

    discontinuities: tuple[DiscontinuityReport, ...]
    total_nodes: int
    total_loops: int
    total_duration_s: float
    seed: int
    params: RrtParams
    quad: QuadModel
    margin: int
    collision_step: float
    validation_step: float


@dataclass
class PlanResult:
    final_path: GlobalPath
    discontinuities: list[Discontinuity]
    local_paths: list[LocalPath]
    report: PlanReport
    trees: list[Tree]


def splice(path: GlobalPath, d: Discontinuity, lp: LocalPath) -> GlobalPath:
    """Replace the samples strictly between entry and exit with the detour.

    Inserted samples keep the detour's own spacing and get target-facing yaw.
    """
    entry = d.entry_pose.position
    exit_ = d.exit_pose.position
    if lp.positions[0].distance_to(entry) > SPLICE_TOLERANCE:
        raise SpliceMismatch(
            f"local path starts {lp.positions[0]} but discontinuity enters at {entry}")
    if lp.positions[-1].distance_to(exit_) > SPLICE_TOLERANCE:
        raise SpliceMismatch(
            f"local path ends {lp.positions[-1]} but discontinuity exits at {exit_}")
    if path.spec is None:
        raise SpliceMismatch("path carries no shot spec; cannot aim inserted samples")

    target = path.spec.target
    inserted = tuple(Pose4(p, face_target(p, target)) for p in lp.positions[1:-1])
    poses = path.poses[:d.entry_index + 1] + inserted + path.poses[d.exit_index:]
    return GlobalPath(poses, path.spec)


def validate(path: GlobalPath, world: World, quad: QuadModel, step: float) -> int | None:
    """Densely re-check every consecutive segment.

    Returns the index of the first offending segment, or None when the whole
    path is collision-free at the given step.
    """
    model = collision_model(world, quad)
    for i in range(len(path) - 1):
        if not model.segment_free(path[i].position, path[i + 1].position, step):
            return i
    return None


def plan_shot(world: World, quad: QuadModel, spec: ArcShotSpec, params: RrtParams,
              margin: int = DEFAULT_MARGIN, collision_step: float | None = None,
              validation_step: float | None = None) -> PlanResult:
    """Run the whole planning pipeline for one arc shot.

    Generates the desired arc, finds blocked spans, plans a detour for each
    (rng streams keyed by discontinuity order), splices, re-aims yaw, and
    densely validates the result. Raises EndpointBlocked, LocalPlanFailed
    (carrying the discontinuity index), or ValidationFailed.

    Detour edges are checked at the final-validation step (body_radius / 2 by
    default, finer than the general-purpose collision step) so a grazing edge
    cannot pass planning and then flunk the safety gate.
    """
    validation_step = quad.body_radius / 2 if validation_step is None else validation_step
    collision_step = validation_step if collision_step is None else collision_step

    arc = generate_arc(spec)
    discontinuities = find_discontinuities(arc, world, quad, margin)

    local_paths: list[LocalPath] = []
    trees: list[Tree] = []
    disc_reports: list[DiscontinuityReport] = []
    for i, d in enumerate(discontinuities):
        started = time.perf_counter()
        outcome = plan_local_run(d, world, quad, params, disc_index=i,
                                 collision_step=collision_step)
        duration = time.perf_counter() - started
        local_paths.append(outcome.path)
        trees.append(outcome.tree)
        disc_reports.append(DiscontinuityReport(
            entry_index=d.entry_index,
            exit_index=d.exit_index,
            node_count=len(outcome.tree),
            loops=outcome.loops,
            expansion_level=outcome.level,
            cost=outcome.path.cost,
            duration_s=duration,
        ))

    final = arc
    # splice back to front so earlier spans keep their indices
    for d, lp in sorted(zip(discontinuities, local_paths),
                        key=lambda pair: pair[0].entry_index, reverse=True):
        final = splice(final, d, lp)

    offending = validate(final, world, quad, validation_step)
    if offending is not None:
        raise ValidationFailed(offending)

    report = PlanReport(
        discontinuities=tuple(disc_reports),
        total_nodes=sum(r.node_count for r in disc_reports),
        total_loops=sum(r.loops for r in disc_reports),
        total_duration_s=sum(r.duration_s for r in disc_reports),
        seed=params.seed,
        params=params,
        quad=quad,
        margin=margin,
        collision_step=collision_step,
        validation_step=validation_step,
    )
    return PlanResult(final, discontinuities, local_paths, report, trees)
