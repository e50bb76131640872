"""Decide invertibility of polynomials in k-radicals.

The pipeline decomposes a polynomial into indecomposable factors, computes
the monodromy group of each factor by certified path tracking, identifies
it in the list of primitive polynomial monodromy groups and reports the
smallest ``k`` for which the inverse function is expressible in k-radicals.
"""

__version__ = "0.1.0"

from .classifier import GroupId, KCertificate, decide_k, identify, minimal_k, recognize_power_chebyshev
from .decompose import DecompositionChain, decompose_full, is_decomposable
from .errors import (
    BoundExceeded,
    IncompatibleRadicals,
    KRadicalError,
    MalformedMonodromy,
    NumericOnlyWarning,
    ParseError,
    PrecisionInsufficient,
    UnrecognizedGroup,
)
from .monodromy import CriticalData, MonodromyResult, Passport, critical_data, monodromy, passport
from .parsing import parse_poly
from .permgroup import PermGroup, Permutation
from .poly import Poly, chebyshev, compose, derivative, power, remainder
from .quadratic import QNumber
from .roots import RootCluster, roots

__all__ = [
    "BoundExceeded", "CriticalData", "DecompositionChain", "GroupId", "IncompatibleRadicals",
    "KCertificate", "KRadicalError", "MalformedMonodromy", "MonodromyResult", "NumericOnlyWarning",
    "ParseError", "Passport", "PermGroup", "Permutation", "Poly", "PrecisionInsufficient", "QNumber",
    "RootCluster", "UnrecognizedGroup", "chebyshev", "compose", "critical_data", "decide_k",
    "decompose_full", "derivative", "identify", "is_decomposable", "minimal_k", "monodromy",
    "parse_poly", "passport", "power", "recognize_power_chebyshev", "remainder", "roots",
]
