#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bayesmet/bayes_sim.hpp"
#include "bayesmet/povm.hpp"
#include "oracles.hpp"

using namespace bayesmet;

namespace {

void check_complete_and_positive(const Povm& povm, double tol = 1e-8) {
    const int dim = povm.dims.size();
    Matrix sum = Matrix::Zero(dim, dim);
    for (int k = 0; k < povm.n_outcomes; ++k) {
        const Matrix e = povm.effect_matrix(k);
        Eigen::SelfAdjointEigenSolver<Matrix> es(e);
        CHECK(es.eigenvalues().minCoeff() > -1e-10);
        sum += e;
    }
    CHECK((sum - Matrix::Identity(dim, dim)).norm() < tol);
}

double noon_counting_p20(double theta) { return 0.5 * std::pow(std::sin(theta - M_PI / 4), 2); }
double noon_counting_p11(double theta) { return std::pow(std::cos(theta - M_PI / 4), 2); }

}  // namespace

TEST_CASE("parity scheme on small dims: completeness, positivity, projectivity") {
    const Povm parity = build_scheme(ParityScheme{}, FockDims{3, 3});
    CHECK(parity.n_outcomes == 4);
    check_complete_and_positive(parity);
    for (int k = 0; k < 4; ++k) {
        const Matrix e = parity.effect_matrix(k);
        CHECK((e * e - e).norm() < 1e-8);
    }
}

TEST_CASE("counting scheme effects are complete") {
    check_complete_and_positive(build_scheme(CountingEven{}, FockDims{5, 5}));
    check_complete_and_positive(build_scheme(CountingOdd{}, FockDims{4, 4}));
}

TEST_CASE("photon counting likelihoods for the two-photon path-entangled probe") {
    const TwoModeState noon = make_probe(Noon{2}, FockDims{3, 3});
    const Povm povm = build_scheme(CountingEven{}, recommended_povm_dims(noon.dims));
    const int d2 = povm.dims.d2;

    for (double theta : {-0.6, -0.1, 0.0, 0.33, M_PI / 4}) {
        const RealVector p = likelihood(povm, encode_phase(noon, theta));
        CHECK(std::abs(p.sum() - 1.0) < 1e-8);
        CHECK(p.minCoeff() >= 0.0);
        CHECK(std::abs(p[2 * d2 + 0] - noon_counting_p20(theta)) < 1e-12);
        CHECK(std::abs(p[0 * d2 + 2] - noon_counting_p20(theta)) < 1e-12);
        CHECK(std::abs(p[1 * d2 + 1] - noon_counting_p11(theta)) < 1e-12);
    }

    // at theta = pi/4 the (1,1) outcome is certain
    const RealVector p = likelihood(povm, encode_phase(noon, M_PI / 4));
    CHECK(p[1 * d2 + 1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("parity equals counting up to outcome relabelling for the NOON probe") {
    const TwoModeState noon = make_probe(Noon{2}, FockDims{3, 3});
    const FockDims dims = recommended_povm_dims(noon.dims);
    const Povm counting = build_scheme(CountingEven{}, dims);
    const Povm parity = build_scheme(ParityScheme{}, dims);
    for (double theta : {-0.5, 0.2, 0.7}) {
        const RealVector pc = likelihood(counting, encode_phase(noon, theta));
        const RealVector pp = likelihood(parity, encode_phase(noon, theta));
        // counting outcomes grouped by parity pairs reproduce the parity rows
        RealVector grouped = RealVector::Zero(4);
        for (int n = 0; n < dims.d1; ++n)
            for (int m = 0; m < dims.d2; ++m)
                grouped[(n % 2) * 2 + (m % 2)] += pc[n * dims.d2 + m];
        CHECK((grouped - pp).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("undoing the preparation of the unencoded coherent probe returns vacuum") {
    const TwoModeState coh = make_probe(Coherent{});
    const Povm undo = build_scheme(UndoPreparation{cxd(std::sqrt(2.0), 0), 0.0},
                                   recommended_povm_dims(coh.dims));
    const RealVector p = likelihood(undo, encode_phase(coh, 0.0));
    CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("likelihoods are normalised for every scheme") {
    const TwoModeState tsv = make_probe(TwinSqueezedVacuum{}, FockDims{31, 31}, 1e-2);
    const FockDims dims = recommended_povm_dims(tsv.dims);
    for (const SchemeKind kind :
         {SchemeKind{CountingEven{}}, SchemeKind{ParityScheme{}}, SchemeKind{Quadratures8{}}}) {
        const Povm povm = build_scheme(kind, dims);
        const RealVector p = likelihood(povm, encode_phase(tsv, 0.37));
        CHECK(p.minCoeff() >= 0.0);
        CHECK(std::abs(p.sum() - 1.0) < 1e-8);
    }
}

TEST_CASE("quadrature readout converges under cutoff doubling and saturates for NOON") {
    const TwoModeState noon = make_probe(Noon{2}, FockDims{3, 3});
    const FlatPrior prior(0.0, M_PI / 2);
    SamplingBudget budget;
    budget.grid_points = 1001;

    double prev = -1;
    for (int d : {9, 17, 33}) {
        const Povm povm = build_scheme(Quadratures8{}, FockDims{d, d});
        const double m1 = mse_repeated(noon, povm, prior, 1, budget).mse.at(0);
        if (prev > 0) CHECK(std::abs(m1 - prev) / prev < 0.01);
        prev = m1;
    }
    const double bound = M_PI * M_PI / 48.0 - 1.0 / (M_PI * M_PI);
    CHECK(prev == doctest::Approx(bound).epsilon(2e-5));
}

TEST_CASE("optimal single-shot scheme wraps the estimator spectrum") {
    const TwoModeState noon = make_probe(Noon{2}, FockDims{3, 3});
    const FlatPrior prior(0.0, M_PI / 2);
    auto sol = std::make_shared<PersonickSolution>(solve_estimator(averaged_moments(noon, prior)));
    const Povm povm = build_scheme(OptimalSingleShot{sol}, noon.dims);
    CHECK(povm.n_outcomes == 3);  // two estimates plus the remainder
    check_complete_and_positive(povm);
    const RealVector p = likelihood(povm, encode_phase(noon, 0.1));
    CHECK(p[povm.n_outcomes - 1] < 1e-10);
    CHECK(std::abs(p.sum() - 1.0) < 1e-10);
}

TEST_CASE("dimension and name errors") {
    const Povm small = build_scheme(CountingEven{}, FockDims{3, 3});
    const TwoModeState big = make_probe(Coherent{});
    CHECK_THROWS_AS(likelihood(small, big), DimensionError);
    CHECK_THROWS(scheme_from_name("not-a-scheme"));
    CHECK(scheme_name(scheme_from_name("parity")) == "parity");
}
