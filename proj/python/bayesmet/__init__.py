"""Personick bounds and Bayesian error simulation for two-mode interferometry."""

from ._core import (
    BayesmetError,
    FlatPrior,
    FockDims,
    MseCurve,
    PersonickSolution,
    TwoModeState,
    TwoPhotonProbe,
    best_fisher_two_photon,
    classical_fisher,
    collective_bound,
    encode_phase,
    j_parameter,
    lossy_sweep,
    make_probe,
    mandel_q,
    mean_photon_number,
    mu_tau,
    narrow_prior_bound,
    personick_solve,
    quantum_fisher,
    scheme_likelihood,
    simulate,
    single_shot_bound,
)

__all__ = [
    "BayesmetError",
    "FlatPrior",
    "FockDims",
    "MseCurve",
    "PersonickSolution",
    "TwoModeState",
    "TwoPhotonProbe",
    "best_fisher_two_photon",
    "classical_fisher",
    "collective_bound",
    "encode_phase",
    "j_parameter",
    "lossy_sweep",
    "make_probe",
    "mandel_q",
    "mean_photon_number",
    "mu_tau",
    "narrow_prior_bound",
    "personick_solve",
    "quantum_fisher",
    "scheme_likelihood",
    "simulate",
    "single_shot_bound",
]
