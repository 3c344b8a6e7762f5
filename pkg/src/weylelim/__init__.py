"""Exact elimination in the bivariate Weyl algebra ``Q[x, y]<Dx, Dy>``."""

from .eliminate import (
    EliminationResult,
    NoKernelWithinBudget,
    ReductionMatrix,
    VIndex,
    WIndex,
    build_matrix,
    counting_bound,
    eliminate,
    enumerate_V,
    enumerate_W,
    nullspace,
)
from .exactarith import NEG_INF, BiPoly, poly_arith, poly_diff, poly_total_degree
from .parser import ParseError, parse, parse_operator
from .reduce import (
    AnnihilatorPair,
    GapReport,
    InvalidSystemError,
    ReducedForm,
    claim_gap_demo,
    make_system,
    reduce_full,
    reduce_step,
)
from .series import TruncatedSeries
from .verify import CheckReport, SampleSystem, check_annihilates, check_certificate, sample_system
from .weyl import (
    WeylOperator,
    adjoint,
    commute_past,
    leibniz_left,
    leibniz_right,
    op_apply,
    op_mul,
)

__version__ = "0.1.0"

__all__ = [
    "AnnihilatorPair",
    "BiPoly",
    "CheckReport",
    "EliminationResult",
    "GapReport",
    "InvalidSystemError",
    "NEG_INF",
    "NoKernelWithinBudget",
    "ParseError",
    "ReducedForm",
    "ReductionMatrix",
    "SampleSystem",
    "TruncatedSeries",
    "VIndex",
    "WIndex",
    "WeylOperator",
    "adjoint",
    "build_matrix",
    "check_annihilates",
    "check_certificate",
    "claim_gap_demo",
    "commute_past",
    "counting_bound",
    "eliminate",
    "enumerate_V",
    "enumerate_W",
    "leibniz_left",
    "leibniz_right",
    "make_system",
    "nullspace",
    "op_apply",
    "op_mul",
    "parse",
    "parse_operator",
    "poly_arith",
    "poly_diff",
    "poly_total_degree",
    "reduce_full",
    "reduce_step",
    "sample_system",
]
