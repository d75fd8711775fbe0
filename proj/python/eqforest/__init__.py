"""Equitable forest partitions of 1-plane graphs with independent crossings.

Thin python surface over the C++ core: graph/drawing models, the
equitable tree-coloring verifier, exact and constructive solvers,
seeded generators, and the document formats used by the CLI.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
