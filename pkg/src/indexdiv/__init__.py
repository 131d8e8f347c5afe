"""Index divisibility sets and graphs for the orbit of 0 under integer polynomials."""

from .divgraph import (
    DivGraph,
    Edge,
    EdgeType,
    build_graph,
    classify_edge,
    export_graph,
    graph_from_records,
    open_question_scan,
    path_to,
    reconstruct_from_set,
)
from .divset import (
    DivisibilitySetWindow,
    check_closure_properties,
    check_exponent_shift,
    div_set_window,
    in_div_set,
    trinomial_prime_constraint,
)
from .orbit import (
    ModularOrbit,
    OrbitPrefix,
    ZeroClassification,
    classify_zero,
    iterate_index_mod,
    orbit_exact,
    orbit_mod,
    rank_of_apparition,
    valuation_of_term,
)
from .permlocal import (
    PermutationProfile,
    RestrictionReport,
    circulant_bruteforce,
    circulant_constant,
    density_scan,
    injectivity_resultant_check,
    linear_case_predicate,
    parity_restriction,
    power_map_parity,
    prime_in_divset_via_period,
    profile_mod_p,
    restriction_predicates,
)
from .poly import IntPolynomial, eval_exact, eval_mod, parse_poly, render
from .primes import prime_sieve
from .zsigmondy import (
    FinitenessVerdict,
    PrimitiveSplit,
    check_growth,
    finiteness_verdict,
    primitive_split_prefix,
    zsigmondy_window,
)

__version__ = "0.1.0"
