"""Wire contract between the engine and interactive clients.

Every message is a single line of UTF-8 JSON (NDJSON). The engine speaks
protocol "curved/1": it sends a handshake line first, then one frame line
per 60 Hz tick; clients send input lines. Receivers ignore unknown fields
and answer unknown message types with an error line, never a disconnect.

Input messages may carry an optional integer "tick" naming the tick they
apply on; recorded transcripts use it so a replay is deterministic no
matter how fast the lines arrive. Inputs without a tag apply on the tick
they arrive.

The engine is authoritative: clients never simulate, they only draw the
frames they receive.
"""

from __future__ import annotations

import json
import socket
import sys
import threading
import time
from collections import deque
from dataclasses import dataclass, replace

from .dynamics import apply_input
from .render import FrameSnapshot, Polyline, ScreenPoint, snapshot
from .world import SceneConfig, WorldState, adjust_curvature, set_curvature, step_world

PROTOCOL_VERSION = "curved/1"
TICK_DT = 1.0 / 60.0

INPUT_ACTIONS = ("thrust", "rotate", "curvature_delta", "curvature_set", "pause", "reset")
_IGNORED_TYPES = ("handshake", "frame", "error")


class ProtocolError(Exception):
    """A malformed or unsupported message; carries a short error code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class Input:
    action: str
    value: float = 0.0
    tick: int | None = None


def _round3(x: float) -> float:
    # +0.0 turns -0.0 into 0.0 so serialized numbers are sign-stable
    return round(float(x), 3) + 0.0


def encode_handshake(config: SceneConfig) -> str:
    return json.dumps(
        {
            "type": "handshake",
            "protocol": PROTOCOL_VERSION,
            "boundary_radius": _round3(config.boundary_radius),
            "pixels_per_unit": _round3(config.pixels_per_unit),
            "k_norm": _round3(config.k_norm),
            "controlled": config.controlled,
        },
        separators=(",", ":"),
    )


def encode_frame(frame: FrameSnapshot) -> str:
    """One frame as one NDJSON line: numbers at three decimals, stable key order."""
    return json.dumps(
        {
            "type": "frame",
            "time": _round3(frame.time),
            "k_norm": _round3(frame.k_norm),
            "polylines": [
                {
                    "id": poly.body_id,
                    "style": poly.style,
                    "closed": poly.closed,
                    "points": [[_round3(p.x), _round3(p.y)] for p in poly.points],
                }
                for poly in frame.polylines
            ],
        },
        separators=(",", ":"),
    )


def decode_frame(line: str, boundary_radius: float = 0.0) -> FrameSnapshot:
    """Rebuild a FrameSnapshot from a frame line (the wire drops boundary_radius)."""
    doc = json.loads(line)
    if doc.get("type") != "frame":
        raise ProtocolError("unknown_type", f"expected a frame line, got {doc.get('type')!r}")
    polylines = tuple(
        Polyline(
            body_id=p["id"],
            closed=bool(p["closed"]),
            style=p["style"],
            points=tuple(ScreenPoint(float(x), float(y)) for x, y in p["points"]),
        )
        for p in doc["polylines"]
    )
    return FrameSnapshot(
        time=float(doc["time"]),
        k_norm=float(doc["k_norm"]),
        boundary_radius=boundary_radius,
        polylines=polylines,
    )


def encode_error(code: str, message: str) -> str:
    return json.dumps(
        {"type": "error", "code": code, "message": message}, separators=(",", ":")
    )


def encode_input(action: str, value: float = 0.0, tick: int | None = None) -> str:
    doc: dict = {"type": "input", "action": action, "value": value}
    if tick is not None:
        doc["tick"] = tick
    return json.dumps(doc, separators=(",", ":"))


def decode_input(line: str) -> Input:
    """Parse one input line; raises ProtocolError with a code on bad lines."""
    try:
        doc = json.loads(line)
    except json.JSONDecodeError as e:
        raise ProtocolError("parse", f"bad message line: {e.msg}") from e
    if not isinstance(doc, dict):
        raise ProtocolError("parse", "message must be a JSON object")
    kind = doc.get("type")
    if kind != "input":
        raise ProtocolError("unknown_type", f"unsupported message type: {kind!r}")
    action = doc.get("action")
    if action not in INPUT_ACTIONS:
        raise ProtocolError("unknown_action", f"unknown input action: {action!r}")
    value = doc.get("value", 0.0)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ProtocolError("bad_value", f"input value must be a number, got {value!r}")
    tick = doc.get("tick")
    if tick is not None and (not isinstance(tick, int) or isinstance(tick, bool) or tick < 0):
        raise ProtocolError("bad_value", f"input tick must be a non-negative integer")
    return Input(action=action, value=float(value), tick=tick)


class ScriptTransport:
    """In-process transport for tests and replays.

    Lines are scheduled by tick; end-of-input is reported once the last
    scheduled tick (or eof_tick, whichever is later) has passed. Everything
    the engine sends is collected in `sent`.
    """

    def __init__(self, script: list[tuple[int, str]] | None = None, eof_tick: int = 0):
        self._script = list(script or [])
        last = max((t for t, _ in self._script), default=0)
        self._eof_tick = max(eof_tick, last)
        self._tick = 0
        self.sent: list[str] = []

    def poll(self) -> tuple[list[str], bool]:
        lines = [line for t, line in self._script if t == self._tick]
        eof = self._tick >= self._eof_tick
        self._tick += 1
        return lines, eof

    def send(self, line: str) -> None:
        self.sent.append(line)

    def close(self) -> None:
        pass


class StdioTransport:
    """Replay-style transport over standard streams.

    All of stdin is read up front, which makes piped transcripts replay
    deterministically (tick-tagged inputs land on their recorded ticks).
    Live interactive sessions should use the TCP transport instead.
    """

    def __init__(self, stdin=None, stdout=None):
        self._out = stdout if stdout is not None else sys.stdout
        source = stdin if stdin is not None else sys.stdin
        self._lines = deque(source.read().splitlines())

    def poll(self) -> tuple[list[str], bool]:
        lines = [line for line in self._lines if line.strip()]
        self._lines.clear()
        return lines, True

    def send(self, line: str) -> None:
        self._out.write(line + "\n")
        self._out.flush()

    def close(self) -> None:
        pass


class TcpServerTransport:
    """Serve exactly one client over a local TCP socket."""

    def __init__(self, port: int, host: str = "127.0.0.1"):
        self._server = socket.create_server((host, port))
        self._conn: socket.socket | None = None
        self._queue: deque[str] = deque()
        self._lock = threading.Lock()
        self._eof = False
        self._reader: threading.Thread | None = None

    def _ensure_client(self) -> None:
        if self._conn is None:
            self._conn, _ = self._server.accept()
            self._reader = threading.Thread(target=self._read_loop, daemon=True)
            self._reader.start()

    def _read_loop(self) -> None:
        assert self._conn is not None
        try:
            with self._conn.makefile("r", encoding="utf-8") as stream:
                for line in stream:
                    with self._lock:
                        self._queue.append(line.rstrip("\n"))
        except OSError:
            pass
        finally:
            with self._lock:
                self._eof = True

    def poll(self) -> tuple[list[str], bool]:
        self._ensure_client()
        with self._lock:
            lines = [line for line in self._queue if line.strip()]
            self._queue.clear()
            return lines, self._eof

    def send(self, line: str) -> None:
        self._ensure_client()
        assert self._conn is not None
        self._conn.sendall((line + "\n").encode("utf-8"))

    def close(self) -> None:
        if self._conn is not None:
            try:
                self._conn.close()
            except OSError:
                pass
        self._server.close()


def _apply_to_controlled(world: WorldState, action: str, value: float) -> WorldState:
    bodies = tuple(
        apply_input(b, action, value) if b.id == world.controlled_body else b
        for b in world.bodies
    )
    return replace(world, bodies=bodies)


def session_loop(config: SceneConfig, transport, realtime: bool = False) -> int:
    """Run the engine-authoritative session until end-of-input.

    Per tick: drain the transport, apply due inputs in arrival order, step
    the world once unless paused, and emit exactly one frame. Returns a
    process-style exit status.
    """
    world = config.to_world()
    paused = False
    tick = 0
    seq = 0
    pending: list[tuple[int, int, Input]] = []
    deadline = time.monotonic()
    try:
        transport.send(encode_handshake(config))
        while True:
            lines, eof = transport.poll()
            if not lines and eof and not pending:
                return 0
            for line in lines:
                try:
                    doc_kind = _classify(line)
                except ProtocolError as err:
                    transport.send(encode_error(err.code, str(err)))
                    continue
                if doc_kind is None:
                    continue
                due_tick = tick if doc_kind.tick is None else max(doc_kind.tick, tick)
                pending.append((due_tick, seq, doc_kind))
                seq += 1
            if pending:
                due = sorted((p for p in pending if p[0] <= tick), key=lambda p: p[1])
                pending = [p for p in pending if p[0] > tick]
                for _, _, inp in due:
                    world, paused = _apply_message(world, config, inp, paused, transport)
            if not paused:
                world = step_world(world, TICK_DT)
            transport.send(encode_frame(snapshot(world, config.pixels_per_unit)))
            tick += 1
            if realtime:
                deadline += TICK_DT
                delay = deadline - time.monotonic()
                if delay > 0:
                    time.sleep(delay)
    except OSError:
        return 1


def _classify(line: str) -> Input | None:
    """Input for input lines, None for peer chatter we ignore."""
    try:
        doc = json.loads(line)
    except json.JSONDecodeError as e:
        raise ProtocolError("parse", f"bad message line: {e.msg}") from e
    if isinstance(doc, dict) and doc.get("type") in _IGNORED_TYPES:
        return None
    return decode_input(line)


def _apply_message(
    world: WorldState, config: SceneConfig, inp: Input, paused: bool, transport
) -> tuple[WorldState, bool]:
    if inp.action in ("thrust", "rotate"):
        if world.controlled_body is None:
            transport.send(encode_error("no_controlled_body", "scene has no controlled body"))
            return world, paused
        return _apply_to_controlled(world, inp.action, inp.value), paused
    if inp.action == "curvature_delta":
        return adjust_curvature(world, inp.value), paused
    if inp.action == "curvature_set":
        return set_curvature(world, inp.value), paused
    if inp.action == "pause":
        return world, not paused
    # reset: reload the scene, keep the pause state
    return config.to_world(), paused
