"""Judgment aggregation over single-variable modal agendas on cyclic Kripke frames."""

from .aggregation import (
    IssueOrder,
    Profile,
    SeqState,
    check_accept_forced,
    check_reject_forced,
    horn_aggregate,
    majority_outcome,
    paradox_witness,
    run_seq_majority,
    seq_majority,
)
from .covering import (
    ImpossibilityReport,
    JudgmentPair,
    Lt0Certificate,
    PointedMinimalCover,
    complete_judgment,
    find_pointed_minimal_cover,
    induced_judgment,
    is_consistent,
    is_minimally_inconsistent,
    is_pointed_minimal_cover,
    lt0_witness,
    min_inconsistent_from_pmc,
    verify_impossibility_frame,
)
from .errors import AgendaError, ConsistencyError, ModalAggError, ParameterError, ParseError, ResourceError
from .kripke import (
    ExplicitFrame,
    IndexedProposition,
    KripkeModel,
    ModalFormula,
    Op,
    evaluate,
    indexed_truth,
    parse,
    reduce_agenda_formula,
    reduce_step,
    truth_set,
)
from .residue import FRAME1, FRAME2, FrameSpec, ResidueSet, check_theorem_params, is_k_symmetric, normalize, translate

__version__ = "0.1.0"
