"""Toeplitz operators with radial-like symbols on weighted Bergman spaces
over the matrix domain Z*Z < I."""

import json as _json

try:
    from ._bergtoep import (  # noqa: F401
        ConfigError,
        DimensionMismatchError,
        GramNotPDError,
        MultiplicityViolationError,
        SampleBatch,
        Symbol,
        SymbolSyntaxError,
        ToeplitzBlock,
        bergman_kernel,
        decompose_json,
        haar_unitary,
        in_domain,
        invariance_check_json,
        sample_domain,
        spectral_norm,
        toeplitz_block,
    )
except ImportError:  # in-tree build: extension on sys.path, not in the package
    from _bergtoep import (  # noqa: F401
        ConfigError,
        DimensionMismatchError,
        GramNotPDError,
        MultiplicityViolationError,
        SampleBatch,
        Symbol,
        SymbolSyntaxError,
        ToeplitzBlock,
        bergman_kernel,
        decompose_json,
        haar_unitary,
        in_domain,
        invariance_check_json,
        sample_domain,
        spectral_norm,
        toeplitz_block,
    )

__all__ = [
    "ConfigError",
    "DimensionMismatchError",
    "GramNotPDError",
    "MultiplicityViolationError",
    "SampleBatch",
    "Symbol",
    "SymbolSyntaxError",
    "ToeplitzBlock",
    "bergman_kernel",
    "decompose",
    "decompose_json",
    "haar_unitary",
    "in_domain",
    "invariance_check",
    "invariance_check_json",
    "sample_domain",
    "spectral_norm",
    "toeplitz_block",
]


def decompose(n, d):
    """Isotypic decomposition of degree-d polynomials as a list of dicts."""
    return [_json.loads(doc) for doc in decompose_json(n, d)]


def invariance_check(symbol, group, seed=1, trials=100):
    """Randomized invariance report as a dict."""
    return _json.loads(invariance_check_json(symbol, group, seed, trials))
