"""Dirichlet and Hardy space numerics on the upper half-plane.

Function and self-map specs are the JSON objects accepted by the command-line
tool, given either as dicts or as JSON text.
"""

import json

from . import _halfplane
from ._halfplane import (
    HalfplaneError,
    NonFiniteSample,
    NotInSpace,
    ParseError,
    __version__,
    cayley,
    cayley_inverse,
    dirichlet_energy_disk,
    hardy_norm_disk,
)

__all__ = [
    "HalfplaneError",
    "NonFiniteSample",
    "NotInSpace",
    "ParseError",
    "__version__",
    "approximant_errors",
    "cayley",
    "cayley_inverse",
    "complement",
    "compose",
    "dirichlet_energy_disk",
    "hardy_norm_disk",
    "membership",
    "norm",
    "residuals",
    "verify",
]


def _text(spec):
    return spec if isinstance(spec, str) else json.dumps(spec)


def norm(spec, method="exact", **params):
    """Squared Dirichlet norm report as a dict; method is 'exact' or 'quadrature'."""
    return json.loads(_halfplane.norm(_text(spec), method, **params))


def approximant_errors(spec, k_max, **params):
    """Squared errors of the partial-sum rational approximants r_0..r_kmax."""
    return _halfplane.approximant_errors(_text(spec), k_max, **params)


def membership(spec):
    return _halfplane.membership(_text(spec))


def compose(map_spec, spec):
    """f∘φ as a diskpoly (or rational) spec dict."""
    return json.loads(_halfplane.compose(_text(map_spec), _text(spec)))


def _basis(k):
    return {"kind": "diskpoly", "coeffs": [[0, 0]] * k + [[1, 0]]}


def residuals(map_spec, degrees, targets=None):
    """Squared distances from each target to span{C_φ e_k : k ≤ N}, per N.

    Targets default to e_1..e_4; results are keyed by target id.
    """
    if targets is None:
        targets = [_basis(k) for k in range(1, 5)]
        curves = _halfplane.residuals(_text(map_spec), list(degrees), [_text(t) for t in targets])
        return {f"e{k}": curves[f"target{k - 1}"] for k in range(1, 5)}
    return _halfplane.residuals(_text(map_spec), list(degrees), [_text(t) for t in targets])


def complement(map_spec, box=(-2.0, 2.0, 0.0, 2.0), samples=100000, seed=0):
    return _halfplane.complement(_text(map_spec), list(box), samples, seed)


def verify(suite, seed=0):
    """List of check dicts (check_id, measured, tolerance, pass)."""
    return _halfplane.verify(suite, seed)
