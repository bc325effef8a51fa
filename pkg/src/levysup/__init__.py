"""Supremum functionals of spectrally one-sided stable Levy processes.

Analytic evaluation of the expected supremum and supremum tail for
spectrally positive / negative strictly stable processes (plus the Brownian
case), together with an independent Monte Carlo path engine used to verify
every formula.
"""

from ._backend import backend_name
from .errors import ConvergenceError, DomainError, TailBoundError
from .levy_model import (MarginalLaw, brownian, spectrally_negative_stable,
                         spectrally_positive_stable)
from .mc_engine import McConfig, McEstimate, estimate_esup, estimate_sup_tail
from .stable_dist import StableParams
from .sup_calc import (SupQuery, albin_upper_bound,
                       esup_spectrally_negative, esup_spectrally_positive,
                       esup_stable_negative_closed,
                       sup_tail_spectrally_positive, sup_tail_stable_negative,
                       theorem_factor)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DomainError",
    "TailBoundError",
    "MarginalLaw",
    "StableParams",
    "SupQuery",
    "McConfig",
    "McEstimate",
    "backend_name",
    "brownian",
    "spectrally_negative_stable",
    "spectrally_positive_stable",
    "theorem_factor",
    "sup_tail_stable_negative",
    "sup_tail_spectrally_positive",
    "esup_spectrally_negative",
    "esup_spectrally_positive",
    "esup_stable_negative_closed",
    "albin_upper_bound",
    "estimate_sup_tail",
    "estimate_esup",
    "__version__",
]
