"""Mittag-Leffler solutions of fractional Cauchy problems.

Closed-form solutions of Caputo-fractional Cauchy problems with derivative
orders nu*k, G-variable subordination between orders, and finite-velocity
planar random motions, backed by the C++ core.
"""

try:
    from ._mlfrac import *  # noqa: F401,F403
    from ._mlfrac import __version__  # noqa: F401
except ImportError:  # module built out-of-tree (e.g. ctest run)
    from _mlfrac import *  # noqa: F401,F403
    from _mlfrac import __version__  # noqa: F401
