"""Exact q-deformed arithmetical functions and character series on untwisted
affine root systems, with machine verification of the defining identities.

Everything is exact: polynomials in u = q^{-1} over arbitrary-precision
integers, truncated t-series with polynomial coefficients, and root-lattice
graded series under explicit truncation profiles.  The `affineq` CLI exposes
the computations and a `verify` battery; see the README for the map.
"""

from .qpoly import NotDivisible, QPoly
from .qseries import OrderExceeded, TSeries
from .rootdata import NotReduced, UnsupportedType, Weight, WordH, build_root_datum
from .weyl import NotRegularDominant
from .charseries import LatticeSeries, NotStabilized, TruncProfile

__all__ = [
    "QPoly",
    "TSeries",
    "LatticeSeries",
    "TruncProfile",
    "Weight",
    "WordH",
    "build_root_datum",
    "NotDivisible",
    "OrderExceeded",
    "NotReduced",
    "UnsupportedType",
    "NotRegularDominant",
    "NotStabilized",
]
