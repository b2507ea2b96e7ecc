"""Exact graph-metric checks on finite models."""

from .toolkit import *  # noqa: F401,F403
from .toolkit import __all__  # noqa: F401
