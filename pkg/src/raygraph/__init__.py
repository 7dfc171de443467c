"""Rays and loops on the plane minus a Cantor set, with intersection numbers,
mapping-class actions, unicorn paths, graph slices and counting quasimorphisms."""

from .coding import LoopCode, RayCode, alpha, gamma, parse_code
from .graphs import build_slice, distance
from .mcg import apply, g, h, parse_moves
from .model import canonical, geometric_intersection, positive_intersection
from .unicorn import OrientedLoop, unicorn_path

__version__ = "0.1.0"
