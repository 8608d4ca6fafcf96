#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bayesmet/fock.hpp"
#include "bayesmet/personick.hpp"

namespace bayesmet {

// Operations applied to the encoded state before the readout basis.
struct StepPhase1 {
    double phi;
};
struct StepPhase2 {
    double phi;
};
struct StepBeamSplitter {
    double phi;  // exp(-i phi Jx)
};
struct StepDisplace1 {
    cxd alpha;
};
using StepOp = std::variant<StepPhase1, StepPhase2, StepBeamSplitter, StepDisplace1>;

enum class ReadoutKind {
    NumberBasis,      // count photons in both modes
    QuadraturePair,   // swap-symmetrised eigenbasis of the truncated X1 (x) X2
    ProjectorColumns  // explicit rank-1 columns plus the complement remainder
};

/// Measurement scheme as pre-ops plus a readout basis, with raw readout
/// results grouped into outcomes. Effects are materialised on demand.
struct Povm {
    FockDims dims;
    std::vector<StepOp> pre;
    ReadoutKind kind = ReadoutKind::NumberBasis;

    Matrix quad_basis;        // QuadraturePair: columns are X eigenvectors
    RealVector quad_values;
    Matrix columns;           // ProjectorColumns: ambient-dim x m

    std::vector<int> outcome_of;  // raw index -> outcome id
    int n_outcomes = 0;           // includes the remainder when present
    bool has_remainder = false;
    std::vector<std::string> labels;

    int raw_count() const;
    /// Dense effect matrix on the ambient space; meant for small dims.
    Matrix effect_matrix(int outcome) const;
};

struct CountingEven {};
struct CountingOdd {};
struct Quadratures8 {
    double angle = M_PI / 8;
};
struct UndoPreparation {
    cxd alpha;
    double jz_phase = M_PI;  // 0 restores the plain preparation inverse
};
struct ParityScheme {};
struct OptimalSingleShot {
    std::shared_ptr<const PersonickSolution> solution;
};
using SchemeKind =
    std::variant<CountingEven, CountingOdd, Quadratures8, UndoPreparation, ParityScheme,
                 OptimalSingleShot>;

SchemeKind scheme_from_name(const std::string& name, cxd undo_alpha = cxd(std::sqrt(2.0), 0),
                            double quad_angle = M_PI / 8, double undo_phase = M_PI);
std::string scheme_name(const SchemeKind& kind);

Povm build_scheme(const SchemeKind& kind, FockDims dims);

/// Raw readout amplitudes for an arbitrary (not necessarily normalised)
/// amplitude grid; used by likelihoods and Fisher derivatives.
Vector raw_amplitudes(const Povm& povm, const Matrix& amps);

/// Born-rule outcome probabilities for an encoded pure state.
RealVector likelihood(const Povm& povm, const TwoModeState& encoded_state);

/// Same for a density matrix on the povm's ambient space.
RealVector likelihood_density(const Povm& povm, const Matrix& rho);

}  // namespace bayesmet
