"""Robust variable selection with Lasso on centered response ranks."""

from .cd import (DesignMatrix, FitResult, PenaltySpec, fit_weighted_lasso,
                 lambda_max, lambda_path, standardize)
from .errors import (ConfigError, DataError, DegenerateColumnError,
                     InvalidFoldsError, InvalidInputError, NonConvergedError,
                     RankLassoError)
from .lad import LadFit, default_lambda_lad, fit_lad_lasso
from .metrics import FdTpCurve, ReplicateEval, eval_selection, fd_tp_curve, opq
from .oracle import (MonteCarloEstimate, PopulationModel, Theta0Estimate,
                     TheoryReport, cif_empirical, cif_lower_bound_equicorr,
                     gamma_beta_mc, grad_decomposition_check, theory_report,
                     theta0, theta0_mc, ustat_A)
from .ranks import CenteredRanks, centered_ranks, ranks
from .select import (METHODS, SelectionResult, SelectorSpec,
                     adaptive_rank_lasso, adaptive_weights, cv_plain_lasso,
                     cv_rank_lasso, default_lambda_rl, fit_selector,
                     rank_lasso, threshold_coefficients,
                     thresholded_rank_lasso)
from .simdata import (PAPER_GRID, ScenarioConfig, SimulatedDataset,
                      dataset_to_csv, gen_gaussian_design, gen_response,
                      gen_snp_design, simulate, substream)

__version__ = "0.1.0"

__all__ = [
    "CenteredRanks", "ConfigError", "DataError", "DegenerateColumnError",
    "DesignMatrix", "FdTpCurve", "FitResult", "InvalidFoldsError",
    "InvalidInputError", "LadFit", "METHODS", "MonteCarloEstimate",
    "NonConvergedError", "PAPER_GRID", "PenaltySpec", "PopulationModel",
    "RankLassoError", "ReplicateEval", "ScenarioConfig", "SelectionResult",
    "SelectorSpec", "SimulatedDataset", "Theta0Estimate", "TheoryReport",
    "adaptive_rank_lasso", "adaptive_weights", "centered_ranks",
    "cif_empirical", "cif_lower_bound_equicorr", "cv_plain_lasso",
    "cv_rank_lasso", "dataset_to_csv", "default_lambda_lad",
    "default_lambda_rl", "threshold_coefficients",
    "eval_selection", "fd_tp_curve", "fit_lad_lasso", "fit_selector",
    "fit_weighted_lasso", "gamma_beta_mc", "gen_gaussian_design",
    "gen_response", "gen_snp_design", "grad_decomposition_check",
    "lambda_max", "lambda_path", "opq", "rank_lasso", "ranks", "simulate",
    "standardize", "substream", "theory_report", "theta0", "theta0_mc",
    "thresholded_rank_lasso", "ustat_A",
]
