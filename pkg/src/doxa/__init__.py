"""Reasoning toolkit for explicit and implicit beliefs over belief bases.

Model checking against multi-agent belief bases and notional models,
satisfiability and validity through a translation into awareness logic
with a serial tableau, and constructive transformations (filtration,
notional pinning, belief-model conversions) with countermodel extraction.
"""

from .errors import (
    AgentRangeError,
    ConditionViolationError,
    DoxaError,
    ModelFormatError,
    NotConsistentError,
    NotL0Error,
    NotSerialError,
    ParseError,
    ResourceLimitError,
    SigmaNotClosedError,
    StratificationError,
    UnknownStateError,
    UnknownWorldError,
)
from .syntax import (
    And,
    Atom,
    Box,
    Exp,
    FALSE,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Poss,
    TRUE,
    agents,
    atoms,
    is_l0,
    parse_formula,
    print_formula,
    size,
    subformulas,
)
from .mab import (
    MAB,
    BeliefBase,
    alternatives,
    eval_base,
    eval_mab,
    is_alternative,
    is_cmab,
)
from .ndm import (
    NDM,
    ConditionReport,
    FiltrationResult,
    QuasiNDM,
    Violation,
    check_conditions,
    cmab_to_ndm,
    eval_ndm,
    filtrate,
    ndm_to_cmab,
    quasi_to_ndm,
)
from .awareness import (
    Aware,
    AwarenessStructure,
    ExplicitBel,
    ImplicitBel,
    LgaAnd,
    LgaAtom,
    LgaFormula,
    LgaNot,
    awareness_to_quasi_ndm,
    eval_awareness,
    parse_lga,
    print_lga,
    quasi_ndm_to_awareness,
    translate,
    untranslate,
)
from .solver import (
    CertNode,
    SchemaReport,
    SolverResult,
    axiom_instance,
    bounded_model_search,
    check_axiom_schemas,
    sat_lda,
    tableau_sat,
    valid,
)

__version__ = "0.1.0"
