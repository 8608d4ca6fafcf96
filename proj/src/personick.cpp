#include "bayesmet/personick.hpp"

#include <algorithm>
#include <cmath>

namespace bayesmet {

cxd kernel_k(double q, const FlatPrior& prior) {
    if (q == 0.0) return 1.0;
    const double u = q * prior.width / 2.0;
    return std::exp(cxd(0, -q * prior.mean)) * std::sin(u) / u;
}

cxd kernel_l(double q, const FlatPrior& prior) {
    if (q == 0.0) return prior.mean;
    const cxd a = std::exp(cxd(0, -q * prior.mean));
    const double b = std::sin(q * prior.width / 2.0);
    const double c = std::cos(q * prior.width / 2.0);
    const cxd d = cxd(prior.mean, -1.0 / q);
    return (a / q) * (2.0 * b * d / prior.width + cxd(0, c));
}

std::pair<Matrix, Matrix> kernel_matrices(const FlatPrior& prior, FockDims dims) {
    const int s = dims.size();
    Matrix K(s, s), L(s, s);
    for (int i = 0; i < s; ++i) {
        const int n = i / dims.d2, m = i % dims.d2;
        for (int j = 0; j < s; ++j) {
            const int k = j / dims.d2, l = j % dims.d2;
            const double q = (n - m + l - k) / 2.0;
            K(i, j) = kernel_k(q, prior);
            L(i, j) = kernel_l(q, prior);
        }
    }
    return {std::move(K), std::move(L)};
}

MomentPair moments_from_family(const Matrix& rho0, const SupportBasis& basis,
                               const FlatPrior& prior) {
    const int s = basis.size();
    MomentPair m;
    m.basis = basis;
    m.prior = prior;
    m.rho.resize(s, s);
    m.rho_bar.resize(s, s);
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            const double dq = basis.phase_q[i] - basis.phase_q[j];
            m.rho(i, j) = rho0(i, j) * kernel_k(dq, prior);
            m.rho_bar(i, j) = rho0(i, j) * kernel_l(dq, prior);
        }
    }
    return m;
}

MomentPair averaged_moments(const TwoModeState& probe, const FlatPrior& prior, double amp_tol) {
    SupportBasis basis;
    basis.dims = probe.dims;
    std::vector<cxd> amps;
    for (int n = 0; n < probe.dims.d1; ++n) {
        for (int m = 0; m < probe.dims.d2; ++m) {
            if (std::abs(probe.amps(n, m)) > amp_tol) {
                basis.nm.emplace_back(n, m);
                amps.push_back(probe.amps(n, m));
            }
        }
    }
    const int s = static_cast<int>(basis.nm.size());
    if (s == 0) throw Error("probe has no support above the amplitude tolerance");
    basis.phase_q.resize(s);
    Vector v(s);
    for (int i = 0; i < s; ++i) {
        basis.phase_q[i] = (basis.nm[i].first - basis.nm[i].second) / 2.0;
        v[i] = amps[i];
    }
    Matrix rho0 = v * v.adjoint();
    return moments_from_family(rho0, basis, prior);
}

Matrix PersonickSolution::s_matrix() const {
    Matrix s = Matrix::Zero(projectors.rows(), projectors.rows());
    for (int k = 0; k < support_dim; ++k)
        s += estimates[k] * (projectors.col(k) * projectors.col(k).adjoint());
    return s;
}

PersonickSolution solve_estimator(const MomentPair& moments, double support_cutoff) {
    if (!(support_cutoff > 0.0)) throw Error("support cutoff must be positive");
    if (moments.rho.rows() == 0) throw NumericalError("empty support: no moments to solve");
    Eigen::SelfAdjointEigenSolver<Matrix> es(moments.rho);
    const RealVector& p = es.eigenvalues();
    const int s = static_cast<int>(p.size());
    int first = s;
    for (int i = 0; i < s; ++i) {
        if (p[i] > support_cutoff) {
            first = i;
            break;
        }
    }
    const int r = s - first;
    if (r == 0) throw NumericalError("empty support: no eigenvalue of rho exceeds the cutoff");

    Matrix V = es.eigenvectors().rightCols(r);
    RealVector ps = p.tail(r);
    Matrix rb_d = V.adjoint() * moments.rho_bar * V;

    PersonickSolution sol;
    sol.basis = moments.basis;
    sol.prior = moments.prior;
    sol.support_dim = r;
    sol.clipped_denominators = 0;

    Matrix s_d(r, r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            double den = ps[i] + ps[j];
            if (den < 2 * support_cutoff) {
                den = 2 * support_cutoff;
                ++sol.clipped_denominators;
            }
            s_d(i, j) = 2.0 * rb_d(i, j) / den;
        }
    }

    Eigen::SelfAdjointEigenSolver<Matrix> es_s(s_d);
    sol.estimates = es_s.eigenvalues();
    sol.projectors = V * es_s.eigenvectors();

    // degenerate eigenvalues grouped at relative tolerance 1e-9
    const double scale = std::max(sol.estimates.cwiseAbs().maxCoeff(), 1e-30);
    for (int k = 0; k < r; ++k) {
        if (!sol.degenerate_groups.empty() &&
            std::abs(sol.estimates[k] - sol.estimates[sol.degenerate_groups.back().front()]) <
                1e-9 * scale) {
            sol.degenerate_groups.back().push_back(k);
        } else {
            sol.degenerate_groups.push_back({k});
        }
    }

    const double tr_rb_s = (rb_d * s_d).trace().real();
    const double tr_rho_s2 = tr_rb_s;  // Tr(rho S^2) = Tr(rho_bar S) via the Sylvester equation
    Matrix rho_d = ps.cast<cxd>().asDiagonal();
    sol.trace_rho_s = (rho_d * s_d).trace().real();
    sol.bound = moments.prior.second_moment() - tr_rb_s;
    sol.bound_dual =
        moments.prior.variance() - (tr_rho_s2 - sol.trace_rho_s * sol.trace_rho_s);

    Matrix resid = s_d * rho_d + rho_d * s_d - 2.0 * rb_d;
    double denom = rb_d.norm();
    sol.sylvester_residual = denom > 0 ? resid.norm() / denom : resid.norm();
    return sol;
}

double single_shot_bound(const PersonickSolution& sol, const FlatPrior& prior) {
    if (std::abs(prior.width - sol.prior.width) > 1e-12 ||
        std::abs(prior.mean - sol.prior.mean) > 1e-12)
        throw Error("prior does not match the one used for the moments");
    return sol.bound;
}

double narrow_prior_bound(const TwoModeState&, const FlatPrior& prior, double fq,
                          bool* narrow_warning) {
    if (narrow_warning) *narrow_warning = prior.width > 0.5;
    const double v = prior.variance();
    return v * (1.0 - v * fq);
}

double collective_bound(const TwoModeState& probe, const FlatPrior& prior, int mu,
                        long dim_limit) {
    if (mu < 1) throw Error("collective bound requires mu >= 1");
    std::vector<double> qs;
    std::vector<cxd> amps;
    for (int n = 0; n < probe.dims.d1; ++n) {
        for (int m = 0; m < probe.dims.d2; ++m) {
            if (std::abs(probe.amps(n, m)) > 1e-14) {
                qs.push_back((n - m) / 2.0);
                amps.push_back(probe.amps(n, m));
            }
        }
    }
    const long s = static_cast<long>(qs.size());
    long dim = 1;
    for (int t = 0; t < mu; ++t) {
        dim *= s;
        if (dim > dim_limit)
            throw DimensionError("tensor-power dimension exceeds the configured limit");
    }

    SupportBasis basis;
    basis.dims = probe.dims;  // labels refer to single-copy indices; nm left empty
    basis.phase_q.resize(dim);
    Vector v(dim);
    for (long u = 0; u < dim; ++u) {
        long rest = u;
        double q = 0;
        cxd a = 1.0;
        for (int t = 0; t < mu; ++t) {
            const long idx = rest % s;
            rest /= s;
            q += qs[idx];
            a *= amps[idx];
        }
        basis.phase_q[u] = q;
        v[u] = a;
    }
    Matrix rho0 = v * v.adjoint();
    MomentPair m = moments_from_family(rho0, basis, prior);
    return solve_estimator(m).bound;
}

}  // namespace bayesmet
