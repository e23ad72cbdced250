"""Steady-state simulator and logic toolkit for hydraulic fluidic circuits."""

from ._fluidlogic import *  # noqa: F401,F403
from ._fluidlogic import __doc__  # noqa: F401
