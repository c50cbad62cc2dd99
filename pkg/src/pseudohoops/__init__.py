"""Finite pseudo-hoops: axioms, filters, state operators, real states and model search."""

from .algebra import Algebra, describe, is_pseudo_hoop, predicates, validate, violations
from .canonical import certificate, certificate_hash, canonical_form, is_isomorphic, isomorphism
from .classify import (
    classify_filter,
    fantastic_filters,
    involutive_filters,
    is_boolean_filter,
    is_fantastic_filter,
    is_involutive_filter,
)
from .constructors import builtin, chain, interval, one_element, product
from .errors import PseudoHoopError
from .fileformat import dump, dumps, load, loads
from .filters import (
    Filter,
    enumerate_filters,
    generated_filter,
    is_filter,
    is_simple,
    maximal_filters,
    normal_filters,
    quotient,
)
from .realstates import bosbach_polytope, measure_polytope
from .search import SearchQuery, enumerate_algebras, find_counterexample, run_query
from .states import (
    check_state_morphism,
    check_state_operator,
    enumerate_state_morphisms,
    enumerate_state_operators,
    extend_morphism,
)

__version__ = "0.1.0"
