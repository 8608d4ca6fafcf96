#pragma once

#include <optional>

#include "bayesmet/bayes_sim.hpp"
#include "bayesmet/fisher.hpp"
#include "bayesmet/io.hpp"
#include "bayesmet/loss.hpp"

namespace bayesmet {

/// One row of the standard result schema.
struct ResultRow {
    std::string state, scheme;
    double w0 = 0, theta_bar = 0;
    int mu = 0;
    double mse = 0, stderr_ = 0, taylor_delta = 0, crb = 0;
    std::uint64_t seed = 0;
};

std::vector<std::string> result_header(bool loss_columns = false);
std::vector<std::string> result_cells(const ResultRow& row, double eta = -1);

struct ProbeSummary {
    double nbar, mandel_q, j_param, fq, tail_prob;
};
ProbeSummary summarize_probe(const ProbeKind& kind);

/// Builds the POVM named by `scheme` for this probe ("optimal" solves the
/// single-shot problem first; physical schemes live on the enlarged ambient
/// space so every populated photon-number sector is covered).
Povm scheme_for_probe(const std::string& scheme, const TwoModeState& probe,
                      const FlatPrior& prior, const ExperimentConfig& cfg);

/// Full pipeline for one (state, scheme, prior) cell. scheme "collective"
/// fills the curve with the joint-copy bounds instead of simulating.
MseCurve run_curve(const std::string& state, const std::string& scheme, const FlatPrior& prior,
                   int mu_max, const ExperimentConfig& cfg, double* fq_out = nullptr);

std::vector<ResultRow> rows_from_curve(const std::string& state, const std::string& scheme,
                                       const FlatPrior& prior, const MseCurve& curve, double fq);

}  // namespace bayesmet
