#include "bayesmet/fock.hpp"

#include <algorithm>
#include <vector>

namespace bayesmet {

Matrix annihilation_op(int d) {
    Matrix a = Matrix::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Matrix number_op(int d) {
    Matrix n = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) n(k, k) = k;
    return n;
}

Matrix parity_op(int d) {
    Matrix p = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
    return p;
}

Matrix quadrature_op(int d, double angle) {
    Matrix a = annihilation_op(d);
    return (std::exp(cxd(0, angle)) * a.adjoint() + std::exp(cxd(0, -angle)) * a) / std::sqrt(2.0);
}

Matrix expm_antihermitian(const Matrix& g) {
    // g = -g^dag, so h = i g is Hermitian and exp(g) = V exp(-i diag) V^dag.
    Matrix h = cxd(0, 1) * g;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const auto& w = es.eigenvalues();
    Vector phases(w.size());
    for (int i = 0; i < w.size(); ++i) phases[i] = std::exp(cxd(0, -w[i]));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix displacement_op(int d, cxd alpha) {
    Matrix a = annihilation_op(d);
    Matrix g = alpha * a.adjoint() - std::conj(alpha) * a;
    return expm_antihermitian(g);
}

Matrix squeezing_op(int d, cxd r) {
    Matrix a = annihilation_op(d);
    Matrix a2 = a * a;
    Matrix g = (std::conj(r) * a2 - r * a2.adjoint()) / 2.0;
    return expm_antihermitian(g);
}

Matrix kron2(const Matrix& m1, const Matrix& m2) {
    const int r1 = static_cast<int>(m1.rows()), c1 = static_cast<int>(m1.cols());
    const int r2 = static_cast<int>(m2.rows()), c2 = static_cast<int>(m2.cols());
    Matrix out(r1 * r2, c1 * c2);
    for (int i = 0; i < r1; ++i)
        for (int j = 0; j < c1; ++j) out.block(i * r2, j * c2, r2, c2) = m1(i, j) * m2;
    return out;
}

Matrix jx_op(FockDims dims) {
    Matrix a1 = kron2(annihilation_op(dims.d1), Matrix::Identity(dims.d2, dims.d2));
    Matrix a2 = kron2(Matrix::Identity(dims.d1, dims.d1), annihilation_op(dims.d2));
    return (a1.adjoint() * a2 + a2.adjoint() * a1) / 2.0;
}

Matrix jz_op(FockDims dims) {
    Matrix out = Matrix::Zero(dims.size(), dims.size());
    for (int n = 0; n < dims.d1; ++n)
        for (int m = 0; m < dims.d2; ++m) out(n * dims.d2 + m, n * dims.d2 + m) = (n - m) / 2.0;
    return out;
}

Matrix encoding_op(FockDims dims, double theta) {
    Matrix out = Matrix::Zero(dims.size(), dims.size());
    for (int n = 0; n < dims.d1; ++n)
        for (int m = 0; m < dims.d2; ++m)
            out(n * dims.d2 + m, n * dims.d2 + m) = std::exp(cxd(0, -(n - m) * theta / 2.0));
    return out;
}

namespace {

// Per-sector blocks of exp(-i phi Jx) on a (d1, d2) grid. Sectors that stick
// out of the grid use the exponential of the truncated Jx block, which keeps
// the map exactly unitary on the truncated space.
std::vector<Matrix> bs_sector_blocks(int d1, int d2, double phi) {
    const int max_n = d1 + d2 - 2;
    std::vector<Matrix> blocks;
    blocks.reserve(max_n + 1);
    for (int N = 0; N <= max_n; ++N) {
        const int lo = std::max(0, N - (d2 - 1));
        const int hi = std::min(N, d1 - 1);
        const int len = hi - lo + 1;
        Matrix jx = Matrix::Zero(len, len);
        for (int n = lo; n < hi; ++n) {
            const double v = std::sqrt(static_cast<double>((n + 1) * (N - n))) / 2.0;
            jx(n - lo + 1, n - lo) = v;
            jx(n - lo, n - lo + 1) = v;
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(jx);
        Vector ph(len);
        for (int i = 0; i < len; ++i) ph[i] = std::exp(cxd(0, -phi * es.eigenvalues()[i]));
        blocks.push_back(es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint());
    }
    return blocks;
}

}  // namespace

void apply_beam_splitter(Matrix& amps, double phi) {
    const int d1 = static_cast<int>(amps.rows());
    const int d2 = static_cast<int>(amps.cols());
    const int max_n = d1 + d2 - 2;
    static thread_local std::vector<Matrix> cache;
    static thread_local double cache_phi = 0.0;
    static thread_local int cache_d1 = -1, cache_d2 = -1;
    if (cache_d1 != d1 || cache_d2 != d2 || cache_phi != phi) {
        cache = bs_sector_blocks(d1, d2, phi);
        cache_phi = phi;
        cache_d1 = d1;
        cache_d2 = d2;
    }
    Vector buf(max_n + 1), out(max_n + 1);
    for (int N = 0; N <= max_n; ++N) {
        const int lo = std::max(0, N - (d2 - 1));
        const int hi = std::min(N, d1 - 1);
        const int len = hi - lo + 1;
        bool any = false;
        for (int n = lo; n <= hi; ++n) {
            buf[n - lo] = amps(n, N - n);
            if (buf[n - lo] != cxd(0, 0)) any = true;
        }
        if (!any) continue;
        out.head(len) = cache[N] * buf.head(len);
        for (int n = lo; n <= hi; ++n) amps(n, N - n) = out[n - lo];
    }
}

namespace {

Vector coherent_column(int d, cxd alpha, double* tail = nullptr) {
    // c_n = exp(-|a|^2/2) a^n / sqrt(n!)
    Vector c(d);
    c[0] = std::exp(-std::norm(alpha) / 2.0);
    for (int n = 1; n < d; ++n) c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    if (tail) {
        *tail = 0.0;
        cxd last = c[d - 1];
        for (int n = d; n < d + 2000; ++n) {
            last *= alpha / std::sqrt(static_cast<double>(n));
            const double p = std::norm(last);
            *tail += p;
            if (p < 1e-40 * std::max(1.0, *tail)) break;
        }
    }
    return c;
}

double top_level_mass(const Matrix& amps) {
    double row = amps.row(amps.rows() - 1).squaredNorm();
    double col = amps.col(amps.cols() - 1).squaredNorm();
    return std::max(row, col);
}

}  // namespace

FockDims default_dims(const ProbeKind& kind) {
    return std::visit(
        [](const auto& k) -> FockDims {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Coherent>) return {21, 21};
            if constexpr (std::is_same_v<T, Noon>) return {k.n + 1, k.n + 1};
            if constexpr (std::is_same_v<T, TwinSqueezedVacuum>) return {51, 51};
            if constexpr (std::is_same_v<T, SqueezedEntangled>) return {61, 61};
            return {51, 51};
        },
        kind);
}

TwoModeState make_probe(const ProbeKind& kind) { return make_probe(kind, default_dims(kind)); }

ProbeKind probe_from_name(const std::string& name) {
    if (name == "coherent") return Coherent{};
    if (name == "noon") return Noon{};
    if (name == "tsv") return TwinSqueezedVacuum{};
    if (name == "ses") return SqueezedEntangled{};
    if (name == "tsc" || name == "tsc-opt") return tsc_optimal();
    if (name == "tsc-int") return tsc_intermediate();
    throw Error("unknown state name: " + name);
}

std::string probe_name(const ProbeKind& kind) {
    return std::visit(
        [](const auto& k) -> std::string {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Coherent>) return "coherent";
            if constexpr (std::is_same_v<T, Noon>) return "noon";
            if constexpr (std::is_same_v<T, TwinSqueezedVacuum>) return "tsv";
            if constexpr (std::is_same_v<T, SqueezedEntangled>) return "ses";
            if constexpr (std::is_same_v<T, TwinSqueezedCat>)
                return k.r == 1.103 ? "tsc-int" : "tsc-opt";
            return "unknown";
        },
        kind);
}

TwoModeState make_probe(const ProbeKind& kind, FockDims dims, double tail_threshold) {
    if (dims.d1 < 1 || dims.d2 < 1) throw DimensionError("fock cutoffs must be positive");
    TwoModeState st;
    st.dims = dims;
    st.amps = Matrix::Zero(dims.d1, dims.d2);
    double analytic_deficit = -1.0;  // set when the pre-rotation column is exact

    std::visit(
        [&](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Coherent>) {
                // exp(-i pi/2 Jx) D1(alpha)|0,0> in closed form: the product
                // coherent state with amplitudes (alpha/sqrt2, -i alpha/sqrt2)
                double t1 = 0, t2 = 0;
                const cxd half = k.alpha / std::sqrt(2.0);
                const Vector c1 = coherent_column(dims.d1, half, &t1);
                const Vector c2 = coherent_column(dims.d2, half * cxd(0, -1), &t2);
                st.amps = c1 * c2.transpose();
                analytic_deficit = t1 + t2;
            } else if constexpr (std::is_same_v<T, Noon>) {
                if (k.n >= dims.d1 || k.n >= dims.d2)
                    throw CutoffError("NOON photon number exceeds the cutoff");
                st.amps(k.n, 0) = 1.0 / std::sqrt(2.0);
                st.amps(0, k.n) = 1.0 / std::sqrt(2.0);
            } else if constexpr (std::is_same_v<T, TwinSqueezedVacuum>) {
                Vector col = squeezing_op(dims.d1, k.r).col(0);
                Vector col2 = dims.d2 == dims.d1 ? col : Vector(squeezing_op(dims.d2, k.r).col(0));
                st.amps = col * col2.transpose();
            } else if constexpr (std::is_same_v<T, SqueezedEntangled>) {
                // N (|r,0> + |0,r>), N = [2 + 2/cosh|r|]^{-1/2}
                Vector col1 = squeezing_op(dims.d1, k.r).col(0);
                Vector col2 = dims.d2 == dims.d1 ? col1 : Vector(squeezing_op(dims.d2, k.r).col(0));
                st.amps.col(0) += col1;
                st.amps.row(0) += col2.transpose();
                st.amps *= 1.0 / std::sqrt(2.0 + 2.0 / std::cosh(std::abs(k.r)));
            } else if constexpr (std::is_same_v<T, TwinSqueezedCat>) {
                // per mode: N S(r)(|a> + |-a>), N = (2 + 2 exp(-2|a|^2))^{-1/2}
                auto cat = [&](int d) -> Vector {
                    Vector c = coherent_column(d, k.alpha) + coherent_column(d, -k.alpha);
                    c *= 1.0 / std::sqrt(2.0 + 2.0 * std::exp(-2.0 * std::norm(cxd(k.alpha, 0))));
                    return squeezing_op(d, k.r) * c;
                };
                Vector c1 = cat(dims.d1);
                Vector c2 = dims.d2 == dims.d1 ? c1 : cat(dims.d2);
                st.amps = c1 * c2.transpose();
            }
        },
        kind);

    double pre = st.amps.squaredNorm();
    const bool exact_support = std::holds_alternative<Noon>(kind);
    const double deficit = analytic_deficit >= 0 ? analytic_deficit : std::abs(1.0 - pre);
    st.tail_prob = deficit + (exact_support ? 0.0 : top_level_mass(st.amps));
    if (st.tail_prob > tail_threshold)
        throw CutoffError("truncation tail " + std::to_string(st.tail_prob) +
                          " above threshold " + std::to_string(tail_threshold));
    st.amps /= std::sqrt(pre);
    return st;
}

TwoModeState embedded(const TwoModeState& state, FockDims dims) {
    if (!dims.contains(state.dims)) throw DimensionError("embedding target smaller than state");
    TwoModeState out;
    out.dims = dims;
    out.tail_prob = state.tail_prob;
    out.amps = Matrix::Zero(dims.d1, dims.d2);
    out.amps.topLeftCorner(state.dims.d1, state.dims.d2) = state.amps;
    return out;
}

TwoModeState encode_phase(const TwoModeState& state, double theta) {
    if (!std::isfinite(theta)) throw Error("phase must be finite");
    TwoModeState out = state;
    for (int n = 0; n < state.dims.d1; ++n)
        for (int m = 0; m < state.dims.d2; ++m)
            out.amps(n, m) *= std::exp(cxd(0, -(n - m) * theta / 2.0));
    return out;
}

namespace {

struct ModeMoments {
    double m1_1, m2_1;   // <N1>, <N1^2>
    double m1_2, m2_2;   // <N2>, <N2^2>
    double cross;        // <N1 N2>
};

ModeMoments photon_moments(const TwoModeState& st) {
    ModeMoments mm{0, 0, 0, 0, 0};
    for (int n = 0; n < st.dims.d1; ++n) {
        for (int m = 0; m < st.dims.d2; ++m) {
            double p = std::norm(st.amps(n, m));
            if (p == 0.0) continue;
            mm.m1_1 += p * n;
            mm.m2_1 += p * n * static_cast<double>(n);
            mm.m1_2 += p * m;
            mm.m2_2 += p * m * static_cast<double>(m);
            mm.cross += p * n * static_cast<double>(m);
        }
    }
    return mm;
}

}  // namespace

double mean_photon_number(const TwoModeState& state) {
    auto mm = photon_moments(state);
    return mm.m1_1 + mm.m1_2;
}

double mandel_q(const TwoModeState& state, double symmetry_tol) {
    auto mm = photon_moments(state);
    double nbar = mm.m1_1 + mm.m1_2;
    if (nbar <= 0.0) throw Error("mandel_q undefined for zero mean photon number");
    double q1 = (4 * mm.m2_1 - nbar * nbar - 2 * nbar) / (2 * nbar);
    double q2 = (4 * mm.m2_2 - nbar * nbar - 2 * nbar) / (2 * nbar);
    if (std::abs(q1 - q2) > symmetry_tol)
        throw Error("state is not path-symmetric: per-mode Mandel values differ");
    return 0.5 * (q1 + q2);
}

double j_parameter(const TwoModeState& state, double symmetry_tol) {
    auto mm = photon_moments(state);
    double nbar = mm.m1_1 + mm.m1_2;
    double v1 = mm.m2_1 - mm.m1_1 * mm.m1_1;
    double v2 = mm.m2_2 - mm.m1_2 * mm.m1_2;
    if (v1 <= 0.0 || v2 <= 0.0)
        throw NumericalError("j_parameter undefined: a mode has zero number variance");
    if (std::abs(mm.m1_1 - mm.m1_2) > symmetry_tol * std::max(1.0, nbar))
        throw Error("state is not path-symmetric: mode means differ");
    return (mm.cross - nbar * nbar / 4.0) / std::sqrt(v1 * v2);
}

}  // namespace bayesmet
