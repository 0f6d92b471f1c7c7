"""Exact computations in higher reduced enveloping algebras of SL2."""

from .abelian import analyze_ring, build_additive, build_multiplicative
from .algebra import AlgebraElement, Context, PbwMonomial, act_on_module, generator, pbw_multiply
from .analysis import (
    classify,
    find_intertwiners,
    find_isomorphism,
    irreducible_quotient,
    is_irreducible,
    kw_divisibility,
    maximal_submodule,
    restrict_and_decompose,
    spin,
)
from .combinatorics import base_p_digits, binom_mod_p, kummer_carry_vanishes
from .field import FieldElem, FiniteField, artin_schreier_roots, binom_field, make_artin_schreier, prime_field
from .modules import ModuleRep, baby_verma, induced_verma, lift_module, teenage_verma, verify_relations
from .weights import ChiForm, Weight, enumerate_weights, lambda_binom, lambda_binom_shifted, make_weight, standard_chi

__version__ = "0.1.0"
