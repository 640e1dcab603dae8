"""Natural weak factorisation systems on small finite categories.

Finite sets, finite graphs and finite-dimensional vector spaces over Z/q
serve as base categories. The package builds the one-step comonad of a
generating set, the free module sequence and its converged n.w.f.s., and
checks the resulting structure exactly.
"""

from .arrows import (
    Arrow,
    Factorization,
    FactorizationStage,
    GeneratingSet,
    LawReport,
    Square,
    arrow,
    check_stage,
    enumerate_squares,
    id_square,
)
from .errors import CapExceeded, NotConverged, NwfsError, StageMismatch
from .fincat import FinGraph, FinMod, FinSet, Morphism, compose, enumeration_cap, identity
from .freeseq import SequenceState, converged_nwfs
from .onestep import onestep_stage

__all__ = [
    "Arrow",
    "CapExceeded",
    "Factorization",
    "FactorizationStage",
    "FinGraph",
    "FinMod",
    "FinSet",
    "GeneratingSet",
    "LawReport",
    "Morphism",
    "NotConverged",
    "NwfsError",
    "SequenceState",
    "Square",
    "StageMismatch",
    "arrow",
    "check_stage",
    "compose",
    "converged_nwfs",
    "enumerate_squares",
    "enumeration_cap",
    "id_square",
    "identity",
    "onestep_stage",
]
