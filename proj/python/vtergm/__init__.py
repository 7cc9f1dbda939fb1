"""Vertices-in-triangles random graphs: samplers, exact laws and rate functions."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
