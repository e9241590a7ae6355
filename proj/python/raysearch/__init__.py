"""Multi-robot ray search: strategies, simulation, and bounds.

Thin wrapper around the compiled extension. When the package is installed
the extension lives inside it; in a plain CMake build tree the module sits
on sys.path instead, so fall back to the absolute import.
"""

try:
    from ._raysearch import *  # noqa: F401,F403
    from ._raysearch import __version__  # noqa: F401
except ImportError:  # build-tree layout
    from _raysearch import *  # noqa: F401,F403
    from _raysearch import __version__  # noqa: F401
