"""Substructural logics with halving, their pocrim/hoop/coop models, finite
countermodel search, and the associated problem corpus."""

from .algebra import (
    ClassFlags,
    Dyadic,
    DyadicModel,
    FiniteAlgebra,
    boolean_algebra,
    cap_add,
    classify,
    dyadic_battery,
    four_chain_non_hoop,
    half,
    halve,
    load_algebra,
    lukasiewicz_chain,
    natural_order_check,
    trivial_algebra,
    trunc_imp,
    validate_pocrim,
)
from .formula import (
    Conj,
    Falsity,
    Formula,
    Half,
    Imp,
    MetaVar,
    Truth,
    Var,
    match_schema,
    negate,
    parse,
    parse_pattern,
    pretty,
    substitute,
)
from .proofs import (
    AXIOM_SCHEMATA,
    Derivation,
    LOGICS,
    LogicSpec,
    Sequent,
    check_derivation,
    check_step,
    conjectured_rule_instance,
    parse_sequent,
)
from .search import (
    ClassFilter,
    ClassSpec,
    HornProblem,
    SearchConfig,
    canonical_form,
    canonical_key,
    enumerate_algebras,
    parse_clause,
    refute,
)
from .semantics import evaluate, satisfies, soundness_sweep, valid_in
from .corpus import PROBLEMS, Problem, export_prover9, export_tptp, get_problem, run_corpus

__version__ = "0.1.0"
