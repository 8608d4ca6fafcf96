#pragma once

#include <utility>
#include <vector>

#include "bayesmet/fock.hpp"
#include "bayesmet/prior.hpp"

namespace bayesmet {

/// (1/W0) integral of exp(-i q theta) over the prior support (closed form).
cxd kernel_k(double q, const FlatPrior& prior);
/// (1/W0) integral of theta exp(-i q theta) over the prior support.
cxd kernel_l(double q, const FlatPrior& prior);

/// Dense prior kernels indexed by (n m),(k l) with exponent x = n-m+l-k,
/// i.e. K_{nmkl} = (1/W0) int exp(-i x theta / 2). Intended for small dims;
/// the pipeline uses the scalar kernels on a probe's support instead.
std::pair<Matrix, Matrix> kernel_matrices(const FlatPrior& prior, FockDims dims);

/// Number-basis elements carried by a support-compressed representation.
/// phase_q(u) is the exponent of the family phase exp(-i phase_q theta):
/// (n-m)/2 for the Jz encoding.
struct SupportBasis {
    FockDims dims;
    std::vector<std::pair<int, int>> nm;  // empty for composite (tensor-power) bases
    RealVector phase_q;

    int size() const { return static_cast<int>(phase_q.size()); }
    int flat_index(int i) const { return nm.at(i).first * dims.d2 + nm.at(i).second; }
};

/// Prior-averaged moments rho = int p(t) rho(t), rho_bar = int p(t) rho(t) t
/// on the support basis.
struct MomentPair {
    SupportBasis basis;
    Matrix rho;
    Matrix rho_bar;
    FlatPrior prior;
};

MomentPair averaged_moments(const TwoModeState& probe, const FlatPrior& prior,
                            double amp_tol = 1e-14);

/// Moments for a general covariant family rho(theta) = rho0 o exp_phases,
/// rho(theta)_{uv} = rho0_{uv} exp(-i (q_u - q_v) theta).
MomentPair moments_from_family(const Matrix& rho0, const SupportBasis& basis,
                               const FlatPrior& prior);

/// Optimal single-shot estimator: S rho + rho S = 2 rho_bar on the support.
struct PersonickSolution {
    SupportBasis basis;
    FlatPrior prior;
    int support_dim = 0;
    RealVector estimates;                          // ascending, with multiplicity
    Matrix projectors;                             // basis.size() x support_dim
    double bound = 0.0;                            // int p t^2 - Tr(rho_bar S)
    double bound_dual = 0.0;                       // prior variance - Var_rho(S)
    double trace_rho_s = 0.0;                      // should equal the prior mean
    double sylvester_residual = 0.0;               // relative Frobenius, support-projected
    int clipped_denominators = 0;
    std::vector<std::vector<int>> degenerate_groups;

    Matrix s_matrix() const;                       // on the support basis
};

PersonickSolution solve_estimator(const MomentPair& moments, double support_cutoff = 1e-12);

double single_shot_bound(const PersonickSolution& sol, const FlatPrior& prior);

/// Narrow-prior approximation prior_var * (1 - prior_var * fq).
double narrow_prior_bound(const TwoModeState& probe, const FlatPrior& prior, double fq,
                          bool* narrow_warning = nullptr);

/// Collective bound on mu identical copies, built from the same closed-form
/// kernels on the mu-fold tensor power of the probe's support.
double collective_bound(const TwoModeState& probe, const FlatPrior& prior, int mu,
                        long dim_limit = 4096);

}  // namespace bayesmet
