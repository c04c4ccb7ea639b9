"""Exact computation and verification of the Zaremba spectrum above 1/3."""

from .chains import (
    ABWord,
    canonicalize_chain,
    is_admissible,
    perron_value,
    quick_reject,
    section_value,
)
from .markoff import limit_of_family, limit_point, markoff_tree, trace_triple, z_prime
from .nielsen import NielsenWord, build_r, decompose, enumerate_admissible, symmetric_section, z_closed_form
from .rational_core import Chain, Mat2, QuadraticSurd, cf_from_rat, rat_from_cf
from .spectrum import bruteforce_spectrum, classified_spectrum, verify_classification
from .zaremba import z_bruteforce, z_perron

__version__ = "0.1.0"
