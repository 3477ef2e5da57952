"""Local search for Boolean CSP: given a formula over a fixed constraint
language, a satisfying assignment, and a distance budget k, decide whether a
strictly lighter satisfying assignment exists within Hamming distance k.

The package classifies the constraint language (deciding the polynomial /
fixed-parameter-tractable / W[1]-hard regime and the matching algorithm),
solves instances with the appropriate specialized algorithm or an exhaustive
oracle, and generates the hardness-reduction gadgets as verifiable test
instances.
"""

from .catalog import BUILTINS
from .classify import (
    LanguageVerdict,
    RelationClass,
    classify_language,
    classify_relation,
    flip_sets,
    flipsep_violation,
    horn_violation,
    is_affine,
    is_flip_separable,
    is_horn,
    is_ihsb_minus,
    is_one_valid,
    is_width2_affine,
    is_zero_valid,
)
from .core import (
    ARITY_MAX,
    Assignment,
    BudgetExceededError,
    Constraint,
    Decision,
    Formula,
    InvalidInstanceError,
    LsInstance,
    Relation,
    SolveStats,
    brute_force_ls,
    dist,
    satisfies,
    validate_instance,
    weight,
)
from .fileio import (
    InstanceFormatError,
    dumps_instance,
    load_graph,
    load_instance,
    load_relations,
    parse_instance,
    save_instance,
)
from .gadgets import (
    Graph,
    NonFlipSepWitness,
    NonHornWitness,
    RPrime,
    derive_implication,
    derive_r_prime,
    find_non_flipsep_witness,
    find_non_horn_witness,
    gen_domset_reduction,
    gen_one_in_three_from_vc,
    gen_pad_rprime_to_r,
    gen_vc_ls_from_clique,
    gen_w1_reduction,
    neq_elimination,
)
from .solve import (
    SolveConfig,
    WrongAlgorithmError,
    flip_sep_bst,
    horn_bst,
    ihsb_compile,
    ihsb_propagate,
    solve,
    width2_components,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
