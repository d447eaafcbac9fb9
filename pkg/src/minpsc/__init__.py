"""Min-power symmetric connectivity: exact, color-coding and kernel-based solvers."""

from .graph import Instance, Solution, cost, is_connected_spanning
from .pccs import BACKEND, available_backends

__all__ = ["Instance", "Solution", "cost", "is_connected_spanning", "BACKEND", "available_backends"]
__version__ = "0.1.0"
