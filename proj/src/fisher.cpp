#include "bayesmet/fisher.hpp"

namespace bayesmet {

double classical_fisher(const Povm& povm, const TwoModeState& probe, double theta,
                        FisherDiagnostics* diag, double p_floor) {
    const TwoModeState enc = encode_phase(probe, theta);
    Matrix amps = Matrix::Zero(povm.dims.d1, povm.dims.d2);
    amps.topLeftCorner(enc.dims.d1, enc.dims.d2) = enc.amps;
    Matrix damps = amps;
    for (int n = 0; n < povm.dims.d1; ++n)
        for (int m = 0; m < povm.dims.d2; ++m) damps(n, m) *= cxd(0, -(n - m) / 2.0);

    const Vector a = raw_amplitudes(povm, amps);
    const Vector da = raw_amplitudes(povm, damps);

    RealVector p = RealVector::Zero(povm.n_outcomes);
    RealVector dp = RealVector::Zero(povm.n_outcomes);
    double tot_p = 0, tot_dp = 0;
    for (int k = 0; k < a.size(); ++k) {
        const int out = povm.outcome_of[k];
        const double pk = std::norm(a[k]);
        const double dpk = 2.0 * std::real(std::conj(a[k]) * da[k]);
        p[out] += pk;
        dp[out] += dpk;
        tot_p += pk;
        tot_dp += dpk;
    }
    if (povm.has_remainder) {
        p[povm.n_outcomes - 1] += std::max(0.0, 1.0 - tot_p);
        dp[povm.n_outcomes - 1] += -tot_dp;
    }

    double f = 0;
    for (int k = 0; k < p.size(); ++k) {
        if (p[k] < p_floor) {
            const double contrib = dp[k] * dp[k] / std::max(p[k], 1e-300);
            if (diag) {
                if (contrib < 1e-10)
                    ++diag->dropped_outcomes;
                else
                    ++diag->singular_outcomes;
            }
            continue;
        }
        f += dp[k] * dp[k] / p[k];
    }
    return f;
}

double quantum_fisher(const TwoModeState& probe) {
    double m1 = 0, m2 = 0;
    for (int n = 0; n < probe.dims.d1; ++n) {
        for (int m = 0; m < probe.dims.d2; ++m) {
            const double p = std::norm(probe.amps(n, m));
            if (p == 0) continue;
            const double jz = (n - m) / 2.0;
            m1 += p * jz;
            m2 += p * jz * jz;
        }
    }
    return 4.0 * (m2 - m1 * m1);
}

double quantum_fisher(const TwoModeState& probe, const Matrix& generator) {
    Vector v(probe.dims.size());
    for (int n = 0; n < probe.dims.d1; ++n)
        for (int m = 0; m < probe.dims.d2; ++m) v[n * probe.dims.d2 + m] = probe.amps(n, m);
    const Vector gv = generator * v;
    const double m1 = std::real(v.dot(gv));
    const double m2 = std::real(gv.dot(gv));
    return 4.0 * (m2 - m1 * m1);
}

PathSymmetricIdentity path_symmetric_identity(const TwoModeState& probe) {
    PathSymmetricIdentity out{};
    out.fq = quantum_fisher(probe);
    const double nbar = mean_photon_number(probe);
    const double q = mandel_q(probe);
    const double j = j_parameter(probe);
    out.product = nbar * (1.0 + q) * (1.0 - j);
    return out;
}

SldResult sld_qfi(const Matrix& rho, const Matrix& drho, double support_cutoff) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    const RealVector& p = es.eigenvalues();
    const Matrix& v = es.eigenvectors();
    const Matrix dr = v.adjoint() * drho * v;
    const int n = static_cast<int>(p.size());
    Matrix l_d = Matrix::Zero(n, n);
    double fq = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double den = p[i] + p[j];
            if (den < support_cutoff) continue;
            l_d(i, j) = 2.0 * dr(i, j) / den;
            fq += 2.0 * std::norm(dr(i, j)) / den;
        }
    }
    return {fq, v * l_d * v.adjoint()};
}

}  // namespace bayesmet
