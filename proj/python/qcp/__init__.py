"""Quenched charged-polymer numerics (C++ core bindings)."""

from ._qcp import *  # noqa: F401,F403
from ._qcp import __version__  # noqa: F401
