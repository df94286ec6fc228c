"""Hierarchical unsupervised classifier built from mirroring neural networks.

The heavy lifting lives in the compiled ``_core`` extension; this package just
re-exports it.
"""

from tandemnet._core import *  # noqa: F401,F403
from tandemnet._core import __doc__  # noqa: F401

__version__ = "0.1.0"
