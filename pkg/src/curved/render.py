"""Frame snapshots and exporters: SVG frames, time-lapse composites, PPM rasters.

A snapshot is the fully projected, tessellated view of one world instant.
Exported SVG keeps the reference point at the viewport centre with the
y-axis up (paths carry raw snapshot coordinates inside a scale(1,-1)
group), and all numbers print with exactly three decimals so identical
runs produce identical bytes.
"""

from __future__ import annotations

import gc
import random
import math
import statistics
import time
from dataclasses import dataclass

import numpy as np

from .geometry import TWO_PI, Curvature, PolarPoint, ScreenPoint
from .shapes import Pose, Shape, outline_many
from .world import WorldState
from .dynamics import Body, Velocity

STYLE_COLORS = {
    "grid": "#4a4a55",
    "boundary": "#e8e8e8",
    "object": "#5fb8ff",
    "controlled": "#ff4040",
}
BACKGROUND_COLOR = "#101014"
BOUNDARY_SEGMENTS = 64
# time-lapse overlays fade linearly from this up to full opacity
OLDEST_OPACITY = 0.25


@dataclass(frozen=True)
class Polyline:
    body_id: str
    closed: bool
    style: str
    points: tuple[ScreenPoint, ...]


@dataclass(frozen=True)
class FrameSnapshot:
    """Projected polylines for one instant, ready to draw or serialize."""

    time: float
    k_norm: float
    boundary_radius: float
    polylines: tuple[Polyline, ...]


def _boundary_polyline(boundary_radius: float, ppu: float) -> Polyline:
    # the boundary is the circle r = N, which projects to itself; sample it
    # directly rather than routing a shape through the outline pipeline
    phi = np.arange(BOUNDARY_SEGMENTS) * (TWO_PI / BOUNDARY_SEGMENTS)
    rp = boundary_radius * ppu
    points = tuple(map(ScreenPoint, (rp * np.cos(phi)).tolist(), (rp * np.sin(phi)).tolist()))
    return Polyline("boundary", True, "boundary", points)


def snapshot(world: WorldState, pixels_per_unit: float = 1.0) -> FrameSnapshot:
    """Project every body under the current curvature.

    Drawing order is fixed: grid lines, the boundary circle, plain objects,
    and the controlled body last.
    """
    curvature = world.curvature
    ordered: list[tuple[Body, str]] = [(b, "grid") for b in world.grid]
    controlled = None
    for body in world.bodies:
        if body.id == world.controlled_body:
            controlled = body
            continue
        ordered.append((body, "object"))
    if controlled is not None:
        ordered.append((controlled, "controlled"))

    outlines = outline_many([(b.shape, b.pose) for b, _ in ordered], curvature)
    polys: list[Polyline] = []
    if outlines:
        # project everything in one batch, then split back per body
        all_r = np.concatenate([rs for rs, _ in outlines])
        all_t = np.concatenate([ts for _, ts in outlines])
        all_x = (pixels_per_unit * all_r * np.cos(all_t)).tolist()
        all_y = (pixels_per_unit * all_r * np.sin(all_t)).tolist()
        at = 0
        for (body, style), (rs, _) in zip(ordered, outlines):
            stop = at + len(rs)
            points = tuple(map(ScreenPoint, all_x[at:stop], all_y[at:stop]))
            polys.append(Polyline(body.id, body.shape.closed, style, points))
            at = stop
    boundary_at = len(world.grid)
    polys.insert(boundary_at, _boundary_polyline(world.boundary_radius, pixels_per_unit))
    return FrameSnapshot(
        time=world.time,
        k_norm=world.curvature.k_norm,
        boundary_radius=world.boundary_radius,
        polylines=tuple(polys),
    )


def _fmt3(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def _view_side(frame: FrameSnapshot) -> float:
    half = max(
        (abs(c) for poly in frame.polylines for p in poly.points for c in p),
        default=frame.boundary_radius,
    )
    half = max(half, frame.boundary_radius)
    return 2.0 * (half * 1.05 + 4.0)


def _path_element(poly: Polyline) -> str:
    coords = "L".join(f"{_fmt3(p.x)} {_fmt3(p.y)}" for p in poly.points)
    d = "M" + coords + ("z" if poly.closed else "")
    color = STYLE_COLORS[poly.style]
    return (
        f'<path class="{poly.style}" data-body="{poly.body_id}" '
        f'fill="none" stroke="{color}" stroke-width="1.5" d="{d}"/>'
    )


def _svg_document(frame: FrameSnapshot, layers: list[tuple[FrameSnapshot, float | None]]) -> str:
    """Shared SVG skeleton: static grid and boundary, then object layers.

    The static chrome comes from `frame`; each entry in `layers` adds its
    object polylines as one group, tagged with the layer's time and
    curvature, with an optional opacity.
    """
    side = _view_side(frame)
    for f, _ in layers:
        side = max(side, _view_side(f))
    half = side / 2.0
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt3(side)}" height="{_fmt3(side)}" '
        f'viewBox="{_fmt3(-half)} {_fmt3(-half)} {_fmt3(side)} {_fmt3(side)}">',
        f'<rect x="{_fmt3(-half)}" y="{_fmt3(-half)}" width="{_fmt3(side)}" '
        f'height="{_fmt3(side)}" fill="{BACKGROUND_COLOR}"/>',
        '<g transform="scale(1,-1)">',
        '<g class="static">',
    ]
    for poly in frame.polylines:
        if poly.style in ("grid", "boundary"):
            lines.append(_path_element(poly))
    lines.append("</g>")
    for f, opacity in layers:
        attrs = f'class="layer" data-time="{_fmt3(f.time)}" data-k-norm="{_fmt3(f.k_norm)}"'
        if opacity is not None:
            attrs += f' opacity="{_fmt3(opacity)}"'
        lines.append(f"<g {attrs}>")
        for poly in f.polylines:
            if poly.style in ("object", "controlled"):
                lines.append(_path_element(poly))
        lines.append("</g>")
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(frame: FrameSnapshot) -> str:
    """Standalone SVG document for one frame."""
    return _svg_document(frame, [(frame, None)])


def compose_timelapse(frames: list[FrameSnapshot], every: int = 1) -> str:
    """Overlay every k-th frame's objects over the final frame's chrome.

    Older layers fade out; each overlay group records its own time and
    curvature so composites can be inspected structurally.
    """
    if not frames:
        raise ValueError("no frames to compose")
    if every < 1:
        raise ValueError("every must be >= 1")
    picked = frames[::every]
    count = len(picked)
    layers: list[tuple[FrameSnapshot, float | None]] = []
    for j, f in enumerate(picked):
        opacity = 1.0 if count == 1 else OLDEST_OPACITY + (1.0 - OLDEST_OPACITY) * j / (count - 1)
        layers.append((f, opacity))
    return _svg_document(frames[-1], layers)


def write_ppm(frame: FrameSnapshot) -> bytes:
    """Binary P6 raster of a frame; straightforward polyline line-drawing."""
    side = int(math.ceil(_view_side(frame)))
    canvas = np.zeros((side, side, 3), dtype=np.uint8)
    canvas[:, :] = _hex_rgb(BACKGROUND_COLOR)
    half = side / 2.0
    for poly in frame.polylines:
        color = _hex_rgb(STYLE_COLORS[poly.style])
        pts = poly.points
        if len(pts) == 1:
            _plot(canvas, pts[0].x + half, half - pts[0].y, color)
            continue
        segments = len(pts) if poly.closed else len(pts) - 1
        for i in range(segments):
            a = pts[i]
            b = pts[(i + 1) % len(pts)]
            _draw_line(canvas, a.x + half, half - a.y, b.x + half, half - b.y, color)
    header = f"P6\n{side} {side}\n255\n".encode("ascii")
    return header + canvas.tobytes()


def _hex_rgb(color: str) -> tuple[int, int, int]:
    return tuple(int(color[i : i + 2], 16) for i in (1, 3, 5))


def _plot(canvas: np.ndarray, x: float, y: float, color: tuple[int, int, int]) -> None:
    xi, yi = int(round(x)), int(round(y))
    if 0 <= yi < canvas.shape[0] and 0 <= xi < canvas.shape[1]:
        canvas[yi, xi] = color


def _draw_line(
    canvas: np.ndarray, x0: float, y0: float, x1: float, y1: float, color: tuple[int, int, int]
) -> None:
    steps = int(max(abs(x1 - x0), abs(y1 - y0))) + 1
    xs = np.linspace(x0, x1, steps + 1)
    ys = np.linspace(y0, y1, steps + 1)
    xi = np.rint(xs).astype(int)
    yi = np.rint(ys).astype(int)
    keep = (xi >= 0) & (xi < canvas.shape[1]) & (yi >= 0) & (yi < canvas.shape[0])
    canvas[yi[keep], xi[keep]] = color


def synthetic_world(shapes: int, vertices: int, tessellation: int) -> WorldState:
    """Deterministic benchmark scene: a ring of regular polygons."""
    if shapes < 1 or vertices < 1 or tessellation < 1:
        raise ValueError("bench parameters must be positive")
    curvature = Curvature.from_normalized(0.5, 300.0)
    polygon = Shape(
        vertices=tuple(
            PolarPoint(50.0, (i / vertices) * TWO_PI) for i in range(vertices)
        ),
        tessellation=tessellation,
        closed=True,
    )
    still = Velocity(0.0, 0.0)
    bodies = tuple(
        Body(
            id=f"bench{i}",
            pose=Pose(PolarPoint(150.0, (i / shapes) * TWO_PI), 0.0),
            velocity=still,
            shape=polygon,
        )
        for i in range(shapes)
    )
    return WorldState(
        bodies=bodies, grid=(), boundary_radius=300.0, curvature=curvature
    )


@dataclass(frozen=True)
class BenchResult:
    shapes: int
    vertices: int
    tessellation: int
    median_ms: float


def _window_ms(world: WorldState, inner: int) -> float:
    t0 = time.perf_counter()
    for _ in range(inner):
        snapshot(world)
    return (time.perf_counter() - t0) * 1000.0 / inner


def _inner_count(world: WorldState) -> int:
    # size every sample to a comparable wall window so a scheduler stall
    # costs each cell the same fraction of its sample
    t0 = time.perf_counter()
    snapshot(world)
    once = time.perf_counter() - t0
    return max(1, round(0.010 / max(once, 1e-7)))


def bench(shapes: int, vertices: int, tessellation: int, reps: int) -> BenchResult:
    """Median wall time to snapshot one synthetic world."""
    return bench_lattice([shapes], [vertices], [tessellation], reps)[0]


_BURN_SECONDS = 1.5


def bench_lattice(
    shape_counts: list[int], vertex_counts: list[int], tess_levels: list[int], reps: int
) -> list[BenchResult]:
    """Median snapshot times over the full (s, v, i) parameter lattice.

    Sampling is built for noisy shared hosts: a short burn-in reaches the
    host's steady clock state and garbage collection pauses while timing.
    Each recorded sample is the best of three equal wall-clock windows taken
    in the early, middle, and late thirds of the run (host stalls and slow
    clock phases only ever add time), and every round visits the cells in a
    freshly shuffled order, so cell medians stay comparable even when the
    host's speed shifts mid-run.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    cells = [
        (s, v, i) for s in shape_counts for v in vertex_counts for i in tess_levels
    ]
    worlds = {cell: synthetic_world(*cell) for cell in cells}
    burn_world = worlds[cells[len(cells) // 2]]
    t0 = time.perf_counter()
    while time.perf_counter() - t0 < _BURN_SECONDS:
        snapshot(burn_world)
    inner = {cell: _inner_count(worlds[cell]) for cell in cells}
    windows: dict[tuple[int, int, int], list[float]] = {cell: [] for cell in cells}
    order = list(cells)
    shuffler = random.Random(0)
    gc_was_on = gc.isenabled()
    gc.disable()
    try:
        for _ in range(3 * reps):
            shuffler.shuffle(order)
            for cell in order:
                windows[cell].append(_window_ms(worlds[cell], inner[cell]))
    finally:
        if gc_was_on:
            gc.enable()
    results = []
    for cell in cells:
        w = windows[cell]
        samples = [min(w[j], w[j + reps], w[j + 2 * reps]) for j in range(reps)]
        results.append(BenchResult(*cell, statistics.median(samples)))
    return results


def bench_csv(rows: list[BenchResult]) -> str:
    lines = ["s,v,i,median_ms"]
    lines.extend(
        f"{r.shapes},{r.vertices},{r.tessellation},{r.median_ms:.6f}" for r in rows
    )
    return "\n".join(lines) + "\n"
