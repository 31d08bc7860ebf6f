"""Exact real arithmetic over approximate rationals."""
from .approx_rationals import DYADIC, RATIONAL, ApproxRationalOps, get_backend
from .completion import (
    Real,
    UcFun,
    approximate,
    compress,
    real_add,
    real_bind,
    real_from_int,
    real_from_rational,
    real_map,
    real_map2,
    real_mul,
    real_neg,
    real_return,
    real_sub,
    to_decimal,
)
from .dyadic import Dyadic, Ordering
from .errors import DomainError, ExactRealError, InvalidWitness, ResourceLimitError, WitnessNotFound
from .functions import atan_aq, cos_aq, exp_aq, pi, real_atan, real_cos, real_exp, real_sin, sin_aq
from .order import PosWitness, apart_witness, lt_witness_search, nonneg_upto, real_div, real_recip
from .roots import real_sqrt, sqrt_core, wolfram_iterate

__version__ = "0.1.0"
