"""eblab: a finite-model workbench for epistemic BL-algebras.

Construct finite BL-algebras exactly (integer tables, eager validation),
attach and enumerate epistemic operator pairs, quotient by epistemic filters,
compare with the pseudomonadic and bi-modal KD45 families, and build complex
algebras of possibilistic frames.  The ``eblab`` command line exposes all of
it; ``eblab paper-suite`` runs the full desk-scale verification suite.
"""

from .core import (
    AxiomEntry,
    AxiomReport,
    FiniteBLAlgebra,
    bl_algebra,
    boolean_algebra,
    direct_product,
    elements_of,
    godel_chain,
    is_isomorphic,
    is_subalgebra,
    mask_of,
    mv_chain,
    ordinal_sum,
    subalgebras,
    verify_bl,
)
from .epistemic import (
    CRelCompletePair,
    EpistemicStructure,
    check_c_relatively_complete,
    enumerate_ebl,
    epistemic_structure,
    focal_element,
    identity_structure,
    image_subalgebra,
    pair_from_structure,
    structure_from_pair,
    verify_derived,
    verify_ebl,
    verify_focal_formula,
    verify_monadic,
)
from .filters import (
    Congruence,
    compatible_congruences,
    congruence_of_filter,
    enumerate_filters,
    epistemic_filters,
    filter_of_congruence,
    is_epistemic_filter,
    is_implicative_filter,
    quotient,
)
from .correspond import (
    EquivalenceResult,
    FamilyCheck,
    equivalence_boolean,
    equivalence_godel,
    family_check,
    forall_filter_equivalence,
    monadic_subset_check,
    verify_bimodal_godel,
    verify_pseudomonadic,
)
from .frames import (
    FunctionAlgebra,
    PossibilisticFrame,
    coincidence,
    complex_structure,
    constant_image,
    frame_coincidence,
    function_algebra,
    normalization_square,
    pointwise_lift_structure,
    possibilistic_frame,
    solvability,
    unnormalized_focal_structure,
)
from .terms import (
    Statement,
    check_statement,
    named_library,
    parse,
    parse_statement,
    print_term,
)
from .textio import builtin, load_bundle, parse_bundle
from .config import RunConfig

__version__ = "0.1.0"
