"""Scene ownership: bodies, grid, boundary, curvature, and the simulation clock.

Scene documents are UTF-8 JSON; angles in radians, lengths in world units:

    {
      "boundary_radius": 300, "k_norm": 0.0, "tessellation": 16,
      "pixels_per_unit": 1.0,
      "grid": {"spacing": 50, "count": 2, "extent": 300},
      "bodies": [{"id": "ship", "vertices": [[r, theta], ...], "closed": true,
                  "position": [r, theta], "rotation": 0.0, "speed": 0.0,
                  "gamma": 0.0, "rotation_speed": 0.0, "wraps": true,
                  "controlled": false}]
    }

Only one agent may mutate a world at a time; the step/morph functions all
return fresh states and never alias mutable data, so snapshots handed to
renderers can be read concurrently.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

from .dynamics import Body, Velocity, step_body, wrap_boundary
from .geometry import DEFAULT_BOUNDARY_RADIUS, Curvature, PolarPoint, normalize_radius
from .shapes import DEFAULT_TESSELLATION, Pose, Shape

DEFAULT_PIXELS_PER_UNIT = 1.0
GRID_TESSELLATION = 64


class SceneError(ValueError):
    """A scene document failed to parse or validate."""


@dataclass(frozen=True)
class WorldState:
    """Everything the simulation owns at one instant."""

    bodies: tuple[Body, ...]
    grid: tuple[Body, ...]
    boundary_radius: float
    curvature: Curvature
    time: float = 0.0
    controlled_body: str | None = None


def make_grid(
    spacing: float, count: int, extent: float, tessellation: int = GRID_TESSELLATION
) -> list[Body]:
    """Static grid lines as ordinary non-wrapping bodies.

    One 2-vertex open shape per line, centered at the point nearest the
    reference point, so the lines bend under curvature exactly like object
    edges and need no special handling when the curvature changes.
    """
    if not spacing > 0.0:
        raise ValueError("grid spacing must be positive")
    if count < 0:
        raise ValueError("grid count must be >= 0")
    line = Shape(
        vertices=(PolarPoint(extent, math.pi / 2), PolarPoint(extent, 3 * math.pi / 2)),
        tessellation=tessellation,
        closed=False,
    )
    still = Velocity(0.0, 0.0)
    bodies = []
    for axis, toward, away in (("x", 0.0, math.pi), ("y", math.pi / 2, 3 * math.pi / 2)):
        for m in range(-count, count + 1):
            bearing = toward if m >= 0 else away
            pose = Pose(PolarPoint(abs(m) * spacing, bearing), 0.0)
            bodies.append(
                Body(id=f"grid_{axis}{m:+d}", pose=pose, velocity=still, shape=line, wraps=False)
            )
    return bodies


@dataclass
class SceneConfig:
    """Parsed scene document plus the defaults that filled its gaps."""

    boundary_radius: float = DEFAULT_BOUNDARY_RADIUS
    k_norm: float = 0.0
    tessellation: int = DEFAULT_TESSELLATION
    pixels_per_unit: float = DEFAULT_PIXELS_PER_UNIT
    grid: tuple[float, int, float] | None = None
    bodies: list[Body] = field(default_factory=list)
    controlled: str | None = None

    @classmethod
    def parse(cls, text: str) -> SceneConfig:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise SceneError(
                f"scene parse error at line {e.lineno}, column {e.colno}: {e.msg}"
            ) from e
        if not isinstance(doc, dict):
            raise SceneError("scene document must be a JSON object")
        return _config_from_doc(doc)

    def to_world(self) -> WorldState:
        curvature = Curvature.from_normalized(self.k_norm, self.boundary_radius)
        grid_bodies: tuple[Body, ...] = ()
        if self.grid is not None:
            spacing, count, extent = self.grid
            grid_bodies = tuple(make_grid(spacing, count, extent))
        return WorldState(
            bodies=tuple(self.bodies),
            grid=grid_bodies,
            boundary_radius=self.boundary_radius,
            curvature=curvature,
            time=0.0,
            controlled_body=self.controlled,
        )


def _require_number(doc: dict, key: str, default: float, where: str = "") -> float:
    value = doc.get(key, default)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise SceneError(f"{where}{key}: expected a number, got {value!r}")
    return float(value)


def _require_pair(value: object, where: str) -> tuple[float, float]:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        raise SceneError(f"{where}: expected [r, theta], got {value!r}")
    return float(value[0]), float(value[1])


def _config_from_doc(doc: dict) -> SceneConfig:
    cfg = SceneConfig()
    cfg.boundary_radius = _require_number(doc, "boundary_radius", DEFAULT_BOUNDARY_RADIUS)
    if not cfg.boundary_radius > 0:
        raise SceneError("boundary_radius: must be positive")
    cfg.k_norm = _require_number(doc, "k_norm", 0.0)
    if abs(cfg.k_norm) > 1.0:
        raise SceneError(f"k_norm: must lie in [-1, 1], got {cfg.k_norm}")
    tess = doc.get("tessellation", DEFAULT_TESSELLATION)
    if not isinstance(tess, int) or isinstance(tess, bool) or tess < 1:
        raise SceneError(f"tessellation: expected a positive integer, got {tess!r}")
    cfg.tessellation = tess
    cfg.pixels_per_unit = _require_number(doc, "pixels_per_unit", DEFAULT_PIXELS_PER_UNIT)
    if not cfg.pixels_per_unit > 0:
        raise SceneError("pixels_per_unit: must be positive")

    if "grid" in doc and doc["grid"] is not None:
        g = doc["grid"]
        if not isinstance(g, dict):
            raise SceneError("grid: expected an object")
        spacing = _require_number(g, "spacing", 50.0, "grid.")
        extent = _require_number(g, "extent", cfg.boundary_radius, "grid.")
        count = g.get("count", 2)
        if not isinstance(count, int) or isinstance(count, bool) or count < 0:
            raise SceneError(f"grid.count: expected a non-negative integer, got {count!r}")
        if spacing <= 0 or extent <= 0:
            raise SceneError("grid: spacing and extent must be positive")
        cfg.grid = (spacing, count, extent)

    raw_bodies = doc.get("bodies", [])
    if not isinstance(raw_bodies, list):
        raise SceneError("bodies: expected a list")
    seen_ids: set[str] = set()
    for i, raw in enumerate(raw_bodies):
        where = f"bodies[{i}]"
        if not isinstance(raw, dict):
            raise SceneError(f"{where}: expected an object")
        body_id = raw.get("id", f"body{i}")
        if not isinstance(body_id, str) or not body_id:
            raise SceneError(f"{where}.id: expected a non-empty string")
        if body_id in seen_ids:
            raise SceneError(f"{where}.id: duplicate id {body_id!r}")
        seen_ids.add(body_id)

        verts_raw = raw.get("vertices")
        if not isinstance(verts_raw, list) or not verts_raw:
            raise SceneError(f"{where}.vertices: expected a non-empty list of [r, theta]")
        vertices = []
        for j, pair in enumerate(verts_raw):
            r, theta = _require_pair(pair, f"{where}.vertices[{j}]")
            if r < 0:
                raise SceneError(f"{where}.vertices[{j}]: r must be >= 0")
            vertices.append(PolarPoint(r, theta))

        tess_body = raw.get("tessellation", cfg.tessellation)
        if not isinstance(tess_body, int) or isinstance(tess_body, bool) or tess_body < 1:
            raise SceneError(f"{where}.tessellation: expected a positive integer")
        closed = raw.get("closed", True)
        if not isinstance(closed, bool):
            raise SceneError(f"{where}.closed: expected a boolean")
        shape = Shape(vertices=tuple(vertices), tessellation=tess_body, closed=closed)

        pr, ptheta = _require_pair(raw.get("position", [0.0, 0.0]), f"{where}.position")
        if pr < 0:
            raise SceneError(f"{where}.position: r must be >= 0")
        rotation = _require_number(raw, "rotation", 0.0, f"{where}.")
        speed = _require_number(raw, "speed", 0.0, f"{where}.")
        if speed < 0:
            raise SceneError(f"{where}.speed: must be >= 0")
        gamma = _require_number(raw, "gamma", 0.0, f"{where}.")
        rotation_speed = _require_number(raw, "rotation_speed", 0.0, f"{where}.")
        wraps = raw.get("wraps", True)
        if not isinstance(wraps, bool):
            raise SceneError(f"{where}.wraps: expected a boolean")
        controlled = raw.get("controlled", False)
        if not isinstance(controlled, bool):
            raise SceneError(f"{where}.controlled: expected a boolean")
        if controlled:
            if cfg.controlled is not None:
                raise SceneError(f"{where}.controlled: more than one controlled body")
            cfg.controlled = body_id

        cfg.bodies.append(
            Body(
                id=body_id,
                pose=Pose(PolarPoint(pr, ptheta), rotation),
                velocity=Velocity(speed, gamma),
                shape=shape,
                rotation_speed=rotation_speed,
                wraps=wraps,
            )
        )
    return cfg


def load_scene(text: str) -> WorldState:
    """Parse a scene document and build its initial world."""
    return SceneConfig.parse(text).to_world()


def step_world(world: WorldState, dt: float) -> WorldState:
    """Advance every body one fixed step and apply the boundary wrap."""
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    curvature = world.curvature
    stepped = tuple(
        wrap_boundary(step_body(b, dt, curvature), world.boundary_radius)
        for b in world.bodies
    )
    return replace(world, bodies=stepped, time=world.time + dt)


def set_curvature(world: WorldState, k_norm: float) -> WorldState:
    """Swap the curvature in place, carrying every coordinate over unchanged.

    The azimuthal-equidistant coordinates are projection-stable, so (r,
    theta, gamma, beta) keep their values; outlines pick up the new
    curvature on the next frame. Positions are re-normalized in case the
    new sphere closes inside an old radius.
    """
    clamped = min(1.0, max(-1.0, k_norm))
    curvature = Curvature.from_normalized(clamped, world.boundary_radius)
    bodies = tuple(
        replace(b, pose=Pose(normalize_radius(b.pose.position, curvature), b.pose.rotation))
        for b in world.bodies
    )
    return replace(world, curvature=curvature, bodies=bodies)


def adjust_curvature(world: WorldState, delta: float) -> WorldState:
    """Nudge the curvature dial, clamping at the ends of its range."""
    return set_curvature(world, world.curvature.k_norm + delta)
