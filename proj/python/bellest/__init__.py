"""Entanglement bounds certified by alpha-CHSH Bell values."""

from ._bellest import *  # noqa: F401,F403
from ._bellest import __doc__  # noqa: F401

__version__ = "0.1.0"
