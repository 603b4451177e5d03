"""jordanscope: rank-based analysis of parameterized complex matrix families.

Locates eigenvalue splitting points and Jordan-structure jump points,
computes the Jordan block census purely from matrix ranks, constructs
explicit defining polynomials for the bad sets, and verifies the
accompanying norm bounds.
"""

__version__ = "0.1.0"

from .family import MatrixFamily  # noqa: E402  (re-export convenience)

__all__ = ["MatrixFamily", "__version__"]
