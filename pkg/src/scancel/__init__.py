"""Small-cancellation toolkit: word algebra, pieces, C'(lambda), Dehn's algorithm."""

from .cancellation import (
    PieceReport,
    check_c_prime,
    check_singular_asphericity_preconditions,
    max_common_prefix_table,
)
from .constructions import (
    build_independence_family,
    build_sop_cycle_presentation,
    paper_word,
    verify_independence,
    verify_sop_cycle,
)
from .dehn import VerificationError, VerifiedPresentation, dehn_step, is_trivial, verify
from .presentation import (
    Presentation,
    SymmetrizedSet,
    is_concise,
    parse_presentation,
    serialize_presentation,
    symmetrize,
)
from .words import Alphabet, Word, cyclic_reduce, free_reduce, visual_inverse

__version__ = "0.1.0"
