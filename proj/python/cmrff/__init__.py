"""Random Fourier features for asymmetric shift-invariant kernels."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
