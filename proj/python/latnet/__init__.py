"""Delay analysis and simulation for a periodic-lattice packet network.

The compiled core exposes the torus metrics and counting functions, the
partial-table routing primitives, the discrete-time network simulator, the
exact hitting-time solvers, and the delay/cost analysis helpers.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
