#pragma once

#include <cstdint>
#include <vector>

#include "bayesmet/povm.hpp"
#include "bayesmet/prior.hpp"

namespace bayesmet {

struct SamplingBudget {
    long samples_per_mu = 50000;
    long enumeration_limit = 150000;  // max outcome-multiset count for exact evaluation
    int grid_points = 0;              // 0 = auto (Simpson refinement + Fisher-based floor)
    std::uint64_t seed = 20190527;
    bool taylor = false;
    std::vector<int> checkpoints;     // empty = all mu for small sweeps, log-spaced otherwise
};

struct MseCurve {
    std::vector<int> mu;
    std::vector<double> mse;
    std::vector<double> stderr_;      // 0 for exact checkpoints
    std::vector<double> taylor_band;  // empty unless requested
    std::vector<std::uint8_t> exact;
    std::uint64_t seed = 0;
    int grid_points = 0;
};

/// Outcome likelihoods tabulated over a theta grid (rows: outcome, cols: grid).
struct LikelihoodTable {
    ThetaGrid grid;
    FlatPrior prior;
    RealMatrix rows;
};

LikelihoodTable build_table(const Povm& povm, const TwoModeState& probe, const ThetaGrid& grid,
                            const FlatPrior& prior);

/// Merges outcomes whose normalised likelihood rows coincide (posterior-
/// equivalent, exact for the Bayesian MSE) and drops zero-probability rows.
LikelihoodTable compress_rows(const LikelihoodTable& table, double tol = 1e-10);

/// Posterior density on the grid given an outcome sequence; throws on zero
/// evidence. Computed in log space.
RealVector posterior(const ThetaGrid& grid, const FlatPrior& prior, const RealMatrix& rows,
                     const std::vector<int>& outcomes);

double posterior_mean(const ThetaGrid& grid, const RealVector& density);
double posterior_variance(const ThetaGrid& grid, const RealVector& density);

/// Average posterior variance after mu repetitions, per checkpoint: exact
/// multiset enumeration when feasible, seeded Monte Carlo otherwise.
MseCurve mse_curve_from_table(const LikelihoodTable& table, int mu_max,
                              const SamplingBudget& budget = {});

MseCurve mse_repeated(const TwoModeState& probe, const Povm& povm, const FlatPrior& prior,
                      int mu_max, const SamplingBudget& budget = {});

/// Fourth-central-moment band on the quadratic error (same decomposition).
std::vector<double> taylor_error_band(const TwoModeState& probe, const Povm& povm,
                                      const FlatPrior& prior, int mu_max,
                                      const SamplingBudget& budget = {});

struct MuTauOptions {
    double band = 0.08;        // relative slack on the target
    double stderr_mult = 1.0;  // persistence allowance in propagated sigmas
};

/// Smallest mu whose relative deviation from the 1/(mu fq) asymptote stays
/// within the target (plus slack) for the rest of the curve.
int mu_tau(const MseCurve& curve, double fq, double eps_target, MuTauOptions opts = {});

/// Classical Fisher information evaluated from a likelihood table by central
/// differences at the prior mean (used for grid sizing and the CRB column).
double table_fisher(const LikelihoodTable& table);

}  // namespace bayesmet
