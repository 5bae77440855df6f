"""Exact-arithmetic toolkit for full-wreath-product arboreal Galois groups.

Builds degree-d trinomials f(x) = x^d - b*x^m and base points x0 over Q
whose iterated preimage trees realize the full n-fold wreath product of
S_d at every certified depth, and emits machine-checkable certificates
for the underlying hypotheses, cross-validated by independent oracles
(resultants, exhaustive group enumeration, Frobenius cycle-type
sampling).
"""

from .arith import INFINITY, Rational, crt, is_prime, is_square, legendre, val
from .certify import (
    Certificate,
    certify,
    compute_fn,
    compute_fn_even,
    compute_fn_odd,
    exhibit_odd_prime_q,
)
from .construct import (
    IterInstance,
    build_params,
    build_params_even,
    build_params_odd,
)
from .frobenius import chebotarev_distance, factor_tree, sample_distribution
from .newton import newton_polygon, predict_two_segments, ramification_tower
from .permgroup import (
    Perm,
    TreeAutomorphism,
    closure,
    enumerate_wreath,
    gen_sd_check,
    leaf_type_distribution,
    wreath_order,
)
from .poly import (
    Poly,
    Trinomial,
    compose,
    crit_product,
    disc_iterate,
    disc_resultant,
    disc_trinomial,
    eisenstein_at,
    iterate,
    resultant,
)
from .polymod import PolyModP, factor_mod_p

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "INFINITY",
    "IterInstance",
    "Perm",
    "Poly",
    "PolyModP",
    "Rational",
    "TreeAutomorphism",
    "Trinomial",
    "build_params",
    "build_params_even",
    "build_params_odd",
    "certify",
    "chebotarev_distance",
    "closure",
    "compose",
    "compute_fn",
    "compute_fn_even",
    "compute_fn_odd",
    "crit_product",
    "crt",
    "disc_iterate",
    "disc_resultant",
    "disc_trinomial",
    "eisenstein_at",
    "enumerate_wreath",
    "exhibit_odd_prime_q",
    "factor_mod_p",
    "factor_tree",
    "gen_sd_check",
    "is_prime",
    "is_square",
    "iterate",
    "leaf_type_distribution",
    "legendre",
    "newton_polygon",
    "predict_two_segments",
    "ramification_tower",
    "resultant",
    "sample_distribution",
    "val",
    "wreath_order",
]
