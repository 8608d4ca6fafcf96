#pragma once

#include <cmath>
#include <variant>

#include "bayesmet/common.hpp"

namespace bayesmet {

/// Pure two-mode state on a truncated Fock space. amps(n,m) is the |n,m>
/// amplitude; tail_prob records the truncation diagnostic from construction
/// (norm deficit before renormalisation plus the heaviest top-level marginal).
struct TwoModeState {
    FockDims dims;
    Matrix amps;
    double tail_prob = 0.0;

    double norm() const { return amps.norm(); }
};

// Probe families, parameterised as in the reference configuration (mean
// photon number 2). The cat-state alphas are fixed by that energy constraint.
struct Coherent {
    cxd alpha = cxd(std::sqrt(2.0), 0.0);
};
struct Noon {
    int n = 2;
};
struct TwinSqueezedVacuum {
    double r = std::asinh(1.0);
};
struct SqueezedEntangled {
    double r = std::log(2.0 + std::sqrt(3.0));
};
struct TwinSqueezedCat {
    double r = 1.215;
    double alpha = 0.9594687019;
};

inline TwinSqueezedCat tsc_optimal() { return TwinSqueezedCat{}; }
inline TwinSqueezedCat tsc_intermediate() { return TwinSqueezedCat{1.103, 1.0899410115}; }

using ProbeKind = std::variant<Coherent, Noon, TwinSqueezedVacuum, SqueezedEntangled, TwinSqueezedCat>;

/// Per-mode cutoffs large enough for the default probes.
FockDims default_dims(const ProbeKind& kind);

/// Name registry used by the CLI and config files: coherent, noon, tsv, ses,
/// tsc (alias tsc-opt), tsc-int.
ProbeKind probe_from_name(const std::string& name);
std::string probe_name(const ProbeKind& kind);

/// Builds a normalised probe; throws CutoffError when the recorded truncation
/// tail exceeds the threshold.
TwoModeState make_probe(const ProbeKind& kind, FockDims dims, double tail_threshold = 1e-3);
TwoModeState make_probe(const ProbeKind& kind);

TwoModeState embedded(const TwoModeState& state, FockDims dims);

/// exp(-i Jz theta): multiplies amps(n,m) by exp(-i (n-m) theta / 2).
TwoModeState encode_phase(const TwoModeState& state, double theta);

double mean_photon_number(const TwoModeState& state);

/// Intra-mode correlation (4<N1^2> - nbar^2 - 2 nbar) / (2 nbar) for
/// path-symmetric states; throws when the two per-mode values disagree.
double mandel_q(const TwoModeState& state, double symmetry_tol = 1e-6);

/// Inter-mode correlation (<N1 N2> - nbar^2/4) / (dN1 dN2).
double j_parameter(const TwoModeState& state, double symmetry_tol = 1e-6);

// Truncated single-mode operators.
Matrix annihilation_op(int d);
Matrix number_op(int d);
Matrix parity_op(int d);
/// (e^{i angle} a^dag + e^{-i angle} a) / sqrt(2)
Matrix quadrature_op(int d, double angle);
Matrix displacement_op(int d, cxd alpha);
/// exp[(conj(r) a^2 - r a^dag^2)/2]
Matrix squeezing_op(int d, cxd r);

// Two-mode operators (flattening |n,m> -> n*d2 + m).
Matrix kron2(const Matrix& mode1, const Matrix& mode2);
Matrix jx_op(FockDims dims);
Matrix jz_op(FockDims dims);
Matrix encoding_op(FockDims dims, double theta);

/// exp(G) for anti-Hermitian G via the eigendecomposition of iG.
Matrix expm_antihermitian(const Matrix& g);

/// Applies exp(-i phi Jx) in place, block-diagonally over total photon
/// number. Sectors that stick out of the grid are handled on their truncated
/// block (unitary only up to the truncation tail).
void apply_beam_splitter(Matrix& amps, double phi);

/// POVM ambient dims holding every photon-number sector a probe populates.
inline FockDims recommended_povm_dims(FockDims probe) {
    return FockDims{probe.d1 + probe.d2 - 1, probe.d1 + probe.d2 - 1};
}

}  // namespace bayesmet
