#include "bayesmet/povm.hpp"

#include <algorithm>
#include <cstdio>

namespace bayesmet {

namespace {

std::string pair_label(int k1, int k2) {
    return "(" + std::to_string(k1) + "," + std::to_string(k2) + ")";
}

std::string quad_label(double q1, double q2, char tag) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(%.4f,%.4f,%c)", q1, q2, tag);
    return buf;
}

void apply_pre(const Povm& povm, Matrix& amps) {
    for (const auto& op : povm.pre) {
        std::visit(
            [&](const auto& step) {
                using T = std::decay_t<decltype(step)>;
                if constexpr (std::is_same_v<T, StepPhase1>) {
                    for (int n = 0; n < amps.rows(); ++n)
                        amps.row(n) *= std::exp(cxd(0, step.phi * n));
                } else if constexpr (std::is_same_v<T, StepPhase2>) {
                    for (int m = 0; m < amps.cols(); ++m)
                        amps.col(m) *= std::exp(cxd(0, step.phi * m));
                } else if constexpr (std::is_same_v<T, StepBeamSplitter>) {
                    apply_beam_splitter(amps, step.phi);
                } else if constexpr (std::is_same_v<T, StepDisplace1>) {
                    static thread_local Matrix cached;
                    static thread_local cxd cached_alpha;
                    static thread_local int cached_d = -1;
                    if (cached_d != amps.rows() || cached_alpha != step.alpha) {
                        cached = displacement_op(static_cast<int>(amps.rows()), step.alpha);
                        cached_alpha = step.alpha;
                        cached_d = static_cast<int>(amps.rows());
                    }
                    amps = cached * amps;
                }
            },
            op);
    }
}

}  // namespace

int Povm::raw_count() const {
    switch (kind) {
        case ReadoutKind::NumberBasis:
            return dims.size();
        case ReadoutKind::QuadraturePair: {
            const int d = static_cast<int>(quad_basis.cols());
            return d + d * (d - 1);  // diagonal pairs + (plus,minus) per i<j
        }
        case ReadoutKind::ProjectorColumns:
            return static_cast<int>(columns.cols());
    }
    return 0;
}

Vector raw_amplitudes(const Povm& povm, const Matrix& amps_in) {
    Matrix amps = amps_in;
    apply_pre(povm, amps);
    switch (povm.kind) {
        case ReadoutKind::NumberBasis: {
            Vector v(amps.size());
            int idx = 0;
            for (int n = 0; n < amps.rows(); ++n)
                for (int m = 0; m < amps.cols(); ++m) v[idx++] = amps(n, m);
            return v;
        }
        case ReadoutKind::QuadraturePair: {
            const Matrix a = povm.quad_basis.adjoint() * amps * povm.quad_basis.conjugate();
            const int d = static_cast<int>(a.rows());
            Vector v(povm.raw_count());
            int idx = 0;
            for (int i = 0; i < d; ++i) v[idx++] = a(i, i);
            const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
            for (int i = 0; i < d; ++i) {
                for (int j = i + 1; j < d; ++j) {
                    v[idx++] = (a(i, j) + a(j, i)) * inv_sqrt2;
                    v[idx++] = (a(i, j) - a(j, i)) * inv_sqrt2;
                }
            }
            return v;
        }
        case ReadoutKind::ProjectorColumns: {
            Vector flat(amps.size());
            int idx = 0;
            for (int n = 0; n < amps.rows(); ++n)
                for (int m = 0; m < amps.cols(); ++m) flat[idx++] = amps(n, m);
            return povm.columns.adjoint() * flat;
        }
    }
    return {};
}

RealVector likelihood(const Povm& povm, const TwoModeState& encoded_state) {
    if (!povm.dims.contains(encoded_state.dims))
        throw DimensionError("state does not fit the povm ambient space");
    Matrix amps = Matrix::Zero(povm.dims.d1, povm.dims.d2);
    amps.topLeftCorner(encoded_state.dims.d1, encoded_state.dims.d2) = encoded_state.amps;
    Vector raw = raw_amplitudes(povm, amps);

    RealVector p = RealVector::Zero(povm.n_outcomes);
    double total = 0.0;
    for (int k = 0; k < raw.size(); ++k) {
        const double pk = std::norm(raw[k]);
        p[povm.outcome_of[k]] += pk;
        total += pk;
    }
    if (povm.has_remainder) p[povm.n_outcomes - 1] += std::max(0.0, 1.0 - total);
    for (int k = 0; k < p.size(); ++k)
        if (p[k] < 0) p[k] = 0;
    return p;
}

RealVector likelihood_density(const Povm& povm, const Matrix& rho) {
    if (rho.rows() != povm.dims.size())
        throw DimensionError("density matrix does not match the povm ambient space");
    // Effects are rank-1 bundles over raw results; evaluate via the spectral
    // decomposition of rho to reuse the pure-state path.
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    RealVector p = RealVector::Zero(povm.n_outcomes);
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double w = es.eigenvalues()[i];
        if (w < 1e-15) continue;
        TwoModeState st;
        st.dims = povm.dims;
        st.amps = Matrix::Zero(povm.dims.d1, povm.dims.d2);
        for (int n = 0; n < povm.dims.d1; ++n)
            for (int m = 0; m < povm.dims.d2; ++m)
                st.amps(n, m) = es.eigenvectors()(n * povm.dims.d2 + m, i);
        p += w * likelihood(povm, st);
    }
    return p;
}

Matrix Povm::effect_matrix(int outcome) const {
    const int dim = dims.size();
    Matrix e = Matrix::Zero(dim, dim);
    // raw projector vectors are W^dag |raw>, recovered by pushing basis
    // vectors through the adjoint of the pre-op sequence via raw_amplitudes.
    Matrix probe = Matrix::Zero(dims.d1, dims.d2);
    Matrix raw_rows(raw_count(), dim);
    for (int n = 0; n < dims.d1; ++n) {
        for (int m = 0; m < dims.d2; ++m) {
            probe.setZero();
            probe(n, m) = 1.0;
            raw_rows.col(n * dims.d2 + m) = raw_amplitudes(*this, probe);
        }
    }
    for (int k = 0; k < raw_count(); ++k) {
        if (outcome_of[k] != outcome) continue;
        e += raw_rows.row(k).adjoint() * raw_rows.row(k);
    }
    if (has_remainder && outcome == n_outcomes - 1) {
        Matrix sum = Matrix::Zero(dim, dim);
        for (int k = 0; k < raw_count(); ++k)
            sum += raw_rows.row(k).adjoint() * raw_rows.row(k);
        e += Matrix::Identity(dim, dim) - sum;
    }
    return e;
}

Povm build_scheme(const SchemeKind& kind, FockDims dims) {
    Povm p;
    p.dims = dims;
    std::visit(
        [&](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, CountingEven> || std::is_same_v<T, CountingOdd> ||
                          std::is_same_v<T, ParityScheme>) {
                const double phi2 = std::is_same_v<T, CountingOdd> ? -M_PI / 2 : -M_PI / 4;
                p.pre = {StepPhase2{phi2}, StepBeamSplitter{M_PI / 2}};
                p.kind = ReadoutKind::NumberBasis;
                if constexpr (std::is_same_v<T, ParityScheme>) {
                    p.n_outcomes = 4;
                    p.outcome_of.resize(dims.size());
                    for (int n = 0; n < dims.d1; ++n)
                        for (int m = 0; m < dims.d2; ++m)
                            p.outcome_of[n * dims.d2 + m] = (n % 2) * 2 + (m % 2);
                    p.labels = {"(+,+)", "(+,-)", "(-,+)", "(-,-)"};
                } else {
                    p.n_outcomes = dims.size();
                    p.outcome_of.resize(dims.size());
                    for (int i = 0; i < dims.size(); ++i) {
                        p.outcome_of[i] = i;
                        p.labels.push_back(pair_label(i / dims.d2, i % dims.d2));
                    }
                }
            } else if constexpr (std::is_same_v<T, Quadratures8>) {
                if (dims.d1 != dims.d2)
                    throw DimensionError("quadrature scheme requires equal mode cutoffs");
                p.pre = {StepPhase1{-M_PI / 4}, StepBeamSplitter{-M_PI / 2}};
                p.kind = ReadoutKind::QuadraturePair;
                Eigen::SelfAdjointEigenSolver<Matrix> es(quadrature_op(dims.d1, k.angle));
                p.quad_basis = es.eigenvectors();
                p.quad_values = es.eigenvalues();
                const int d = dims.d1;
                p.n_outcomes = p.raw_count();
                p.outcome_of.resize(p.n_outcomes);
                for (int i = 0; i < p.n_outcomes; ++i) p.outcome_of[i] = i;
                for (int i = 0; i < d; ++i)
                    p.labels.push_back(quad_label(p.quad_values[i], p.quad_values[i], '+'));
                for (int i = 0; i < d; ++i) {
                    for (int j = i + 1; j < d; ++j) {
                        p.labels.push_back(quad_label(p.quad_values[i], p.quad_values[j], '+'));
                        p.labels.push_back(quad_label(p.quad_values[i], p.quad_values[j], '-'));
                    }
                }
            } else if constexpr (std::is_same_v<T, UndoPreparation>) {
                p.pre = {StepPhase1{-k.jz_phase / 2}, StepPhase2{k.jz_phase / 2},
                         StepBeamSplitter{-M_PI / 2}, StepDisplace1{-k.alpha}};
                p.kind = ReadoutKind::NumberBasis;
                p.n_outcomes = dims.size();
                p.outcome_of.resize(dims.size());
                for (int i = 0; i < dims.size(); ++i) {
                    p.outcome_of[i] = i;
                    p.labels.push_back(pair_label(i / dims.d2, i % dims.d2));
                }
            } else if constexpr (std::is_same_v<T, OptimalSingleShot>) {
                const auto& sol = *k.solution;
                if (!dims.contains(sol.basis.dims))
                    throw DimensionError("povm dims smaller than the solution's space");
                p.kind = ReadoutKind::ProjectorColumns;
                p.columns = Matrix::Zero(dims.size(), sol.support_dim);
                for (int i = 0; i < sol.basis.size(); ++i) {
                    const int flat = sol.basis.nm[i].first * dims.d2 + sol.basis.nm[i].second;
                    p.columns.row(flat) = sol.projectors.row(i);
                }
                p.outcome_of.resize(sol.support_dim);
                p.n_outcomes = static_cast<int>(sol.degenerate_groups.size()) + 1;
                for (int g = 0; g < static_cast<int>(sol.degenerate_groups.size()); ++g) {
                    char buf[48];
                    std::snprintf(buf, sizeof(buf), "s=%.9f",
                                  sol.estimates[sol.degenerate_groups[g].front()]);
                    p.labels.push_back(buf);
                    for (int idx : sol.degenerate_groups[g]) p.outcome_of[idx] = g;
                }
                p.has_remainder = true;
                p.labels.push_back("outside-support");
            }
        },
        kind);
    return p;
}

SchemeKind scheme_from_name(const std::string& name, cxd undo_alpha, double quad_angle,
                            double undo_phase) {
    if (name == "counting-even" || name == "counting") return CountingEven{};
    if (name == "counting-odd") return CountingOdd{};
    if (name == "quadratures" || name == "quadratures8") return Quadratures8{quad_angle};
    if (name == "undo") return UndoPreparation{undo_alpha, undo_phase};
    if (name == "parity") return ParityScheme{};
    throw Error("unknown scheme name: " + name);
}

std::string scheme_name(const SchemeKind& kind) {
    return std::visit(
        [](const auto& k) -> std::string {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, CountingEven>) return "counting-even";
            if constexpr (std::is_same_v<T, CountingOdd>) return "counting-odd";
            if constexpr (std::is_same_v<T, Quadratures8>) return "quadratures";
            if constexpr (std::is_same_v<T, UndoPreparation>) return "undo";
            if constexpr (std::is_same_v<T, ParityScheme>) return "parity";
            return "optimal";
        },
        kind);
}

}  // namespace bayesmet
