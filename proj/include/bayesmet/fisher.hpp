#pragma once

#include "bayesmet/povm.hpp"

namespace bayesmet {

struct FisherReport {
    double f_classical = 0.0;
    double f_quantum = 0.0;
    double crb(int mu) const { return 1.0 / (mu * f_quantum); }
};

struct FisherDiagnostics {
    int dropped_outcomes = 0;      // p below the floor with negligible slope
    int singular_outcomes = 0;     // p below the floor but non-vanishing slope
};

/// F = sum_n p'(n|theta)^2 / p(n|theta) with the analytic derivative of the
/// encoded state pushed through the measurement.
double classical_fisher(const Povm& povm, const TwoModeState& probe, double theta,
                        FisherDiagnostics* diag = nullptr, double p_floor = 1e-14);

/// Pure-state QFI for the exp(-i Jz theta) encoding: 4 Var(Jz).
double quantum_fisher(const TwoModeState& probe);

/// Pure-state QFI for an arbitrary Hermitian generator on the flattened space.
double quantum_fisher(const TwoModeState& probe, const Matrix& generator);

struct PathSymmetricIdentity {
    double fq;       // 4 Var(Jz)
    double product;  // nbar (1 + Q)(1 - J)
};
PathSymmetricIdentity path_symmetric_identity(const TwoModeState& probe);

/// Mixed-state QFI and SLD from rho and drho/dtheta via the eigenbasis.
struct SldResult {
    double fq;
    Matrix sld;
};
SldResult sld_qfi(const Matrix& rho, const Matrix& drho, double support_cutoff = 1e-12);

}  // namespace bayesmet
