"""Prior-reversible Metropolis-Hastings samplers for Bessel-K and gamma
product priors, with forward models, diagnostics, and experiment runners."""

__version__ = "0.1.0"

from .bessel_k import BKParams, bk_char_fn, bk_density, bk_log_density, sample_bk
from .innovations import (bk_innovation_cf, exp_innovation_cf, gamma_innovation_cf,
                          sample_bk_innovation, sample_exp_innovation,
                          sample_gamma_innovation)
from .kernels import (ExpForward, ExpReverse, Product, RcarGamma, Symmetrized,
                      detailed_balance_test)
from .mh import (ChainConfig, ChainRecord, PriorSpec, mh_accept, run_generic_mh,
                 run_lifted_rcar, run_lifted_sarsd)
from .rng import ParameterDomainError, RngHandle

__all__ = [
    "BKParams", "bk_char_fn", "bk_density", "bk_log_density", "sample_bk",
    "bk_innovation_cf", "exp_innovation_cf", "gamma_innovation_cf",
    "sample_bk_innovation", "sample_exp_innovation", "sample_gamma_innovation",
    "ExpForward", "ExpReverse", "Product", "RcarGamma", "Symmetrized",
    "detailed_balance_test",
    "ChainConfig", "ChainRecord", "PriorSpec", "mh_accept", "run_generic_mh",
    "run_lifted_rcar", "run_lifted_sarsd",
    "ParameterDomainError", "RngHandle",
]
