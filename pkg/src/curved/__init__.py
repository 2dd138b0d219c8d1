"""Real-time 2D physics and vector-graphics engine for constant-curvature worlds."""

from .geometry import (
    Curvature,
    DegenerateTriangleError,
    PLANAR,
    PolarPoint,
    ScreenPoint,
    angle_from_sss,
    normalize_bearing,
    normalize_radius,
    oracle_distance,
    project_to_screen,
    side_from_sas,
)
from .shapes import (
    EdgeGeometry,
    Pose,
    Shape,
    edge_geometry,
    outline,
    tessellate_edge,
    vertex_global,
)
from .dynamics import Body, Velocity, apply_input, step_body, wrap_boundary
from .world import (
    SceneConfig,
    SceneError,
    WorldState,
    adjust_curvature,
    load_scene,
    make_grid,
    set_curvature,
    step_world,
)
from .render import (
    FrameSnapshot,
    Polyline,
    bench,
    compose_timelapse,
    snapshot,
    write_ppm,
    write_svg,
)
from .protocol import (
    Input,
    ProtocolError,
    ScriptTransport,
    decode_frame,
    decode_input,
    encode_frame,
    encode_handshake,
    encode_input,
    session_loop,
)

__all__ = [
    "Curvature",
    "DegenerateTriangleError",
    "PLANAR",
    "PolarPoint",
    "ScreenPoint",
    "angle_from_sss",
    "normalize_bearing",
    "normalize_radius",
    "oracle_distance",
    "project_to_screen",
    "side_from_sas",
    "EdgeGeometry",
    "Pose",
    "Shape",
    "edge_geometry",
    "outline",
    "tessellate_edge",
    "vertex_global",
    "Body",
    "Velocity",
    "apply_input",
    "step_body",
    "wrap_boundary",
    "SceneConfig",
    "SceneError",
    "WorldState",
    "adjust_curvature",
    "load_scene",
    "make_grid",
    "set_curvature",
    "step_world",
    "FrameSnapshot",
    "Polyline",
    "bench",
    "compose_timelapse",
    "snapshot",
    "write_ppm",
    "write_svg",
    "Input",
    "ProtocolError",
    "ScriptTransport",
    "decode_frame",
    "decode_input",
    "encode_frame",
    "encode_handshake",
    "encode_input",
    "session_loop",
]

__version__ = "0.1.0"
