"""Command-line entry point: headless simulation, time-lapses, benchmarks, serving.

The env var CURVED_SEED is reserved for future use; the simulation itself
is deterministic and takes no seed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .protocol import StdioTransport, TcpServerTransport, session_loop
from .render import bench_csv, bench_lattice, compose_timelapse, snapshot, write_ppm, write_svg
from .world import SceneConfig, SceneError, step_world


def _int_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("expected one or more positive integers")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curved",
        description="Real-time 2D engine for worlds of constant curvature.",
        epilog="Environment: CURVED_SEED is reserved (unused; runs are deterministic).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="step a scene and write one frame file per step")
    sim.add_argument("--scene", required=True, help="scene JSON file")
    sim.add_argument("--dt", type=float, default=1.0 / 60.0, help="fixed timestep in seconds")
    sim.add_argument("--steps", type=int, default=0, help="number of steps after frame 0")
    sim.add_argument("--out", required=True, help="output directory")
    sim.add_argument("--format", choices=("svg", "ppm"), default="svg")

    tl = sub.add_parser("timelapse", help="simulate and compose an overlay image")
    tl.add_argument("--scene", required=True)
    tl.add_argument("--dt", type=float, default=1.0 / 60.0)
    tl.add_argument("--steps", type=int, default=0)
    tl.add_argument("--every", type=int, default=1, help="overlay every k-th frame")
    tl.add_argument("--out", default="timelapse.svg")

    be = sub.add_parser("bench", help="time snapshots over a parameter lattice")
    be.add_argument("--shapes", type=_int_list, default=[8, 16, 24])
    be.add_argument("--vertices", type=_int_list, default=[8, 16, 24])
    be.add_argument("--tess", type=_int_list, default=[64, 128, 192])
    be.add_argument("--reps", type=int, default=11)
    be.add_argument("--out", required=True, help="CSV report file")

    sv = sub.add_parser("serve", help="run the interactive session protocol")
    sv.add_argument("--scene", required=True)
    sv.add_argument(
        "--transport", type=parse_transport, default=("stdio", None), help="stdio or tcp:PORT"
    )
    return parser


def _load_config(path: str) -> SceneConfig:
    scene_path = Path(path)
    try:
        text = scene_path.read_text(encoding="utf-8")
    except OSError as e:
        raise SceneError(f"cannot read scene file {scene_path}: {e.strerror}") from e
    return SceneConfig.parse(text)


def _simulate_frames(config: SceneConfig, dt: float, steps: int):
    world = config.to_world()
    yield snapshot(world, config.pixels_per_unit)
    for _ in range(steps):
        world = step_world(world, dt)
        yield snapshot(world, config.pixels_per_unit)


def run_simulate(args) -> int:
    config = _load_config(args.scene)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for i, frame in enumerate(_simulate_frames(config, args.dt, args.steps)):
        path = out_dir / f"frame_{i:06d}.{args.format}"
        if args.format == "svg":
            path.write_text(write_svg(frame), encoding="utf-8")
        else:
            path.write_bytes(write_ppm(frame))
    return 0


def run_timelapse(args) -> int:
    config = _load_config(args.scene)
    frames = list(_simulate_frames(config, args.dt, args.steps))
    Path(args.out).write_text(compose_timelapse(frames, args.every), encoding="utf-8")
    return 0


def run_bench(args) -> int:
    rows = bench_lattice(args.shapes, args.vertices, args.tess, args.reps)
    Path(args.out).write_text(bench_csv(rows), encoding="utf-8")
    return 0


def parse_transport(text: str) -> tuple[str, int | None]:
    """Validate a serve transport: 'stdio' or 'tcp:PORT'."""
    if text == "stdio":
        return "stdio", None
    if text.startswith("tcp:"):
        try:
            port = int(text[4:])
        except ValueError:
            port = -1
        if 0 <= port <= 65535:
            return "tcp", port
    raise argparse.ArgumentTypeError(f"unknown transport {text!r}; use stdio or tcp:PORT")


def run_serve(args) -> int:
    config = _load_config(args.scene)
    kind, port = args.transport
    if kind == "stdio":
        transport = StdioTransport()
        realtime = False
    else:
        transport = TcpServerTransport(port)
        realtime = True
    try:
        return session_loop(config, transport, realtime=realtime)
    finally:
        transport.close()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "timelapse" and args.every < 1:
        parser.error("--every must be >= 1")
    if args.command == "bench" and args.reps < 1:
        parser.error("--reps must be >= 1")
    if args.command in ("simulate", "timelapse"):
        if args.dt <= 0:
            parser.error("--dt must be positive")
        if args.steps < 0:
            parser.error("--steps must be >= 0")
    handlers = {
        "simulate": run_simulate,
        "timelapse": run_timelapse,
        "bench": run_bench,
        "serve": run_serve,
    }
    try:
        return handlers[args.command](args)
    except SceneError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
