#pragma once

#include "bayesmet/bayes_sim.hpp"
#include "bayesmet/fisher.hpp"
#include "bayesmet/personick.hpp"

namespace bayesmet {

/// Single-arm photon loss as a fictitious beam splitter of transmissivity eta:
/// Kraus operators K_l = (1-eta)^{l/2} eta^{N1/2} a1^l / sqrt(l!).
struct LossChannel {
    double eta = 1.0;

    /// Two-mode Kraus operators on (d,d), enough to absorb max_photons losses.
    std::vector<Matrix> kraus(int d, int max_photons = 2) const;
};

/// Two-photon input sum_k c_k |k, 2-k>.
struct TwoPhotonProbe {
    cxd c0{0, 0}, c1{0, 0}, c2{0, 0};

    double norm2() const { return std::norm(c0) + std::norm(c1) + std::norm(c2); }
};

/// rho(phi) = exp(-i N1 phi) (sum_l K_l |psi0><psi0| K_l^dag) exp(i N1 phi)
/// on the flattened (3,3) space.
Matrix lossy_encoded_state(const TwoPhotonProbe& probe, const LossChannel& channel, double phi);

/// Mixed-state QFI of the lossy family (phi-independent).
double lossy_qfi(const TwoPhotonProbe& probe, const LossChannel& channel);

/// Probe with the largest QFI over real amplitudes on the unit sphere.
TwoPhotonProbe best_fisher_two_photon(double eta);

struct LossSweepResult {
    TwoPhotonProbe probe;
    PersonickSolution solution;
    MseCurve curve;
    double fq = 0.0;
};

/// Loss demonstration: optimal-QFI probe (or a caller-supplied one),
/// Personick solution of the lossy family, and the repeated-measurement
/// error of its optimal POVM.
LossSweepResult lossy_personick_sweep(double eta, const FlatPrior& prior, int mu_max,
                                      const SamplingBudget& budget = {},
                                      const TwoPhotonProbe* probe_override = nullptr);

}  // namespace bayesmet
