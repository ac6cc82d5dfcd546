"""Sampled-data observer design and simulation bench."""

try:
    from ._sdobs import *  # noqa: F401,F403
    from ._sdobs import __doc__  # noqa: F401
except ImportError:  # build-tree layout: extension on PYTHONPATH, not in-package
    from _sdobs import *  # noqa: F401,F403
