#include "bayesmet/loss.hpp"

#include <cmath>

namespace bayesmet {

namespace {

constexpr int kD = 3;  // per-mode cutoff for the two-photon family

Vector probe_vector(const TwoPhotonProbe& p) {
    // |k, 2-k> flattened as k * kD + (2 - k)
    Vector v = Vector::Zero(kD * kD);
    v[0 * kD + 2] = p.c0;
    v[1 * kD + 1] = p.c1;
    v[2 * kD + 0] = p.c2;
    return v;
}

RealVector n1_diag() {
    RealVector q(kD * kD);
    for (int n = 0; n < kD; ++n)
        for (int m = 0; m < kD; ++m) q[n * kD + m] = n;
    return q;
}

Matrix lossy_density(const TwoPhotonProbe& probe, const LossChannel& channel) {
    const Vector v = probe_vector(probe);
    Matrix rho = Matrix::Zero(kD * kD, kD * kD);
    for (const Matrix& k : channel.kraus(kD)) {
        const Vector kv = k * v;
        rho += kv * kv.adjoint();
    }
    return rho;
}

}  // namespace

std::vector<Matrix> LossChannel::kraus(int d, int max_photons) const {
    const Matrix a1 = kron2(annihilation_op(d), Matrix::Identity(d, d));
    Matrix eta_half = Matrix::Zero(d * d, d * d);
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m)
            eta_half(n * d + m, n * d + m) = std::pow(eta, n / 2.0);
    std::vector<Matrix> ks;
    Matrix al = Matrix::Identity(d * d, d * d);
    double lfact = 1.0;
    for (int l = 0; l <= max_photons; ++l) {
        if (l > 0) {
            al = a1 * al;
            lfact *= l;
        }
        ks.push_back(std::pow(1.0 - eta, l / 2.0) * eta_half * al / std::sqrt(lfact));
    }
    return ks;
}

Matrix lossy_encoded_state(const TwoPhotonProbe& probe, const LossChannel& channel, double phi) {
    Matrix rho = lossy_density(probe, channel);
    const RealVector q = n1_diag();
    for (int u = 0; u < rho.rows(); ++u)
        for (int v = 0; v < rho.cols(); ++v)
            rho(u, v) *= std::exp(cxd(0, -(q[u] - q[v]) * phi));
    return rho;
}

double lossy_qfi(const TwoPhotonProbe& probe, const LossChannel& channel) {
    const Matrix rho = lossy_density(probe, channel);
    const RealVector q = n1_diag();
    Matrix n1 = Matrix::Zero(rho.rows(), rho.cols());
    for (int u = 0; u < rho.rows(); ++u) n1(u, u) = q[u];
    const Matrix drho = cxd(0, -1) * (n1 * rho - rho * n1);
    return sld_qfi(rho, drho).fq;
}

TwoPhotonProbe best_fisher_two_photon(double eta) {
    if (!(eta > 0.0) || eta > 1.0) throw Error("transmissivity must lie in (0, 1]");
    const LossChannel ch{eta};
    auto eval = [&](double p0, double p1, double sign2) {
        const double p2 = 1.0 - p0 - p1;
        if (p2 < 0) return std::pair<double, TwoPhotonProbe>{-1.0, {}};
        TwoPhotonProbe pr{std::sqrt(p0), std::sqrt(p1), sign2 * std::sqrt(p2)};
        return std::pair<double, TwoPhotonProbe>{lossy_qfi(pr, ch), pr};
    };

    double best_f = -1.0;
    TwoPhotonProbe best{};
    double c0 = 0.5, c1 = 0.0;  // centre of the refinement window (p0, p1)
    double span = 1.0;
    const int steps = 20;
    for (int level = 0; level < 5; ++level) {
        for (int i = 0; i <= steps; ++i) {
            for (int j = 0; j <= steps; ++j) {
                const double p0 = c0 + span * (i - steps / 2.0) / steps;
                const double p1 = c1 + span * (j - steps / 2.0) / steps;
                if (p0 < 0 || p1 < 0 || p0 + p1 > 1) continue;
                for (double s : {1.0, -1.0}) {
                    auto [f, pr] = eval(p0, p1, s);
                    // prefer the non-negative sign on ties
                    if (f > best_f + 1e-12 || (f > best_f - 1e-12 && s > 0 && best.c2.real() < 0)) {
                        best_f = f;
                        best = pr;
                    }
                }
            }
        }
        c0 = std::norm(best.c0);
        c1 = std::norm(best.c1);
        span /= steps / 2.0;
    }
    return best;
}

LossSweepResult lossy_personick_sweep(double eta, const FlatPrior& prior, int mu_max,
                                      const SamplingBudget& budget,
                                      const TwoPhotonProbe* probe_override) {
    LossSweepResult out;
    out.probe = probe_override ? *probe_override : best_fisher_two_photon(eta);
    const LossChannel ch{eta};
    const Matrix rho0 = lossy_density(out.probe, ch);
    out.fq = lossy_qfi(out.probe, ch);

    SupportBasis basis;
    basis.dims = FockDims{kD, kD};
    basis.phase_q = n1_diag();
    for (int n = 0; n < kD; ++n)
        for (int m = 0; m < kD; ++m) basis.nm.emplace_back(n, m);
    out.solution = solve_estimator(moments_from_family(rho0, basis, prior));

    // grouped likelihood rows of the solution's projective measurement
    int n_grid = budget.grid_points > 0 ? budget.grid_points : 4001;
    const double sigma_min = 1.0 / std::sqrt(out.fq * std::max(mu_max, 1));
    n_grid = std::min(std::max(n_grid, static_cast<int>(std::ceil(8.0 * prior.width / sigma_min)) | 1),
                      24001);
    LikelihoodTable table;
    table.grid = ThetaGrid::simpson(prior, n_grid);
    table.prior = prior;
    const auto& sol = out.solution;
    const int n_groups = static_cast<int>(sol.degenerate_groups.size());
    table.rows.resize(n_groups + 1, table.grid.size());
    const RealVector& q = basis.phase_q;
    for (int g = 0; g < table.grid.size(); ++g) {
        const double phi = table.grid.points[g];
        Matrix rho_phi = rho0;
        for (int u = 0; u < rho_phi.rows(); ++u)
            for (int v = 0; v < rho_phi.cols(); ++v)
                rho_phi(u, v) *= std::exp(cxd(0, -(q[u] - q[v]) * phi));
        double tot = 0;
        for (int gi = 0; gi < n_groups; ++gi) {
            double p = 0;
            for (int idx : sol.degenerate_groups[gi]) {
                const auto col = sol.projectors.col(idx);
                p += std::real(col.dot(rho_phi * col));
            }
            p = std::max(p, 0.0);
            table.rows(gi, g) = p;
            tot += p;
        }
        table.rows(n_groups, g) = std::max(0.0, 1.0 - tot);
    }
    out.curve = mse_curve_from_table(table, mu_max, budget);
    return out;
}

}  // namespace bayesmet
