"""Exact toolkit for virtual singular twin monoids and groups."""

__version__ = "0.1.0"

from .ring import GaussianRational, LaurentPoly, parse_gaussian, parse_laurent
from .linalg import RingMatrix, mat_det, mat_mul, mat_rank
from .words import Word, free_reduce, is_pure, parse_word, pi_image
from .presentations import (
    RewriteTrace,
    derive_generator,
    map_F,
    map_G,
    presentation_catalog,
    search_equiv,
    verify_trace,
)
from .reps import (
    Eta1PrimeParams,
    Eta2PrimeParams,
    UpsilonParams,
    check_relations,
    rep_eta1,
    rep_eta1_prime,
    rep_eta2,
    rep_eta2_prime,
    rep_eval,
    rep_upsilon,
)
from .irreducibility import burnside_dimension, decide
