"""Multiple prime sums, their asymptotic polynomials and supporting special functions."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
