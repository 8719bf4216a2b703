"""Prover and verifier pairs, one per recognized graph class."""

from .circular import CIRC_SCHEME, PROPER_CIRC_SCHEME
from .interval_chordal import (
    CHORDAL_SCHEME,
    INTERVAL_SCHEME,
    PROPER_INTERVAL_SCHEME,
)
from .trapezoid_permutation import PERMUTATION_SCHEME, TRAPEZOID_SCHEME

ALL_SCHEMES = {
    scheme.tag: scheme
    for scheme in (
        PROPER_INTERVAL_SCHEME,
        INTERVAL_SCHEME,
        CHORDAL_SCHEME,
        PROPER_CIRC_SCHEME,
        CIRC_SCHEME,
        TRAPEZOID_SCHEME,
        PERMUTATION_SCHEME,
    )
}
