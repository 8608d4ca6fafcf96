#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bayesmet/fisher.hpp"
#include "bayesmet/fock.hpp"
#include "oracles.hpp"

using namespace bayesmet;

namespace {

TwoModeState enlarged_probe(const ProbeKind& kind) {
    FockDims d = default_dims(kind);
    d.d1 += 20;
    d.d2 += 20;
    return make_probe(kind, d);
}

}  // namespace

TEST_CASE("single-mode operator algebra") {
    const int d = 12;
    Matrix a = annihilation_op(d);
    Matrix comm = a * a.adjoint() - a.adjoint() * a;
    // [a, a^dag] = 1 away from the truncation edge
    CHECK((comm.topLeftCorner(d - 1, d - 1) - Matrix::Identity(d - 1, d - 1)).norm() < 1e-12);

    for (const Matrix& h : {number_op(d), parity_op(d), quadrature_op(d, M_PI / 8)})
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

    FockDims dims{5, 5};
    for (const Matrix& h : {jx_op(dims), jz_op(dims)})
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

    // displacement and squeezing unitary on the low-photon block
    Matrix dsp = displacement_op(24, cxd(0.7, 0.2));
    Matrix gap = dsp.adjoint() * dsp - Matrix::Identity(24, 24);
    CHECK(gap.topLeftCorner(8, 8).cwiseAbs().maxCoeff() < 1e-10);
    Matrix sq = squeezing_op(40, 0.9);
    Matrix gap2 = sq.adjoint() * sq - Matrix::Identity(40, 40);
    CHECK(gap2.topLeftCorner(10, 10).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("beam splitter is norm preserving sector by sector") {
    FockDims dims{7, 7};
    TwoModeState st = make_probe(Noon{3}, dims);
    Matrix amps = st.amps;
    apply_beam_splitter(amps, M_PI / 2);
    CHECK(amps.norm() == doctest::Approx(1.0).epsilon(1e-12));
    // agrees with the dense matrix exponential of Jx
    Matrix u = oracles::expm_taylor(cxd(0, -M_PI / 2) * jx_op(dims));
    Vector flat(dims.size());
    for (int n = 0; n < dims.d1; ++n)
        for (int m = 0; m < dims.d2; ++m) flat[n * dims.d2 + m] = st.amps(n, m);
    Vector ref = u * flat;
    for (int n = 0; n < dims.d1; ++n)
        for (int m = 0; m < dims.d2; ++m)
            CHECK(std::abs(amps(n, m) - ref[n * dims.d2 + m]) < 1e-10);
}

TEST_CASE("probe construction basics") {
    const TwoModeState noon = make_probe(Noon{2}, FockDims{3, 3});
    CHECK(std::abs(noon.amps(2, 0) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(noon.amps(0, 2) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(mean_photon_number(noon) == doctest::Approx(2.0).epsilon(1e-12));

    const TwoModeState coh = make_probe(Coherent{});
    CHECK(coh.norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(mean_photon_number(coh) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(coh.tail_prob < 1e-18);  // every populated level fits comfortably

    // zero squeezing is vacuum
    const TwoModeState vac = make_probe(TwinSqueezedVacuum{0.0}, FockDims{9, 9});
    CHECK(std::abs(vac.amps(0, 0) - 1.0) < 1e-12);
    CHECK(mean_photon_number(vac) == doctest::Approx(0.0).epsilon(1e-12));

    // sinh identity: nbar(tsv) = 2 sinh^2(r) with r = asinh(1)
    const double expected = 2.0 * std::pow(std::sinh(std::asinh(1.0)), 2);
    const TwoModeState tsv = make_probe(TwinSqueezedVacuum{});
    CHECK(mean_photon_number(tsv) == doctest::Approx(expected).epsilon(1e-7));

    CHECK_THROWS_AS(make_probe(TwinSqueezedVacuum{}, FockDims{5, 5}), CutoffError);
}

TEST_CASE("normalization after construction") {
    for (const ProbeKind kind : {ProbeKind{Coherent{}}, ProbeKind{Noon{}},
                                 ProbeKind{TwinSqueezedVacuum{}}, ProbeKind{SqueezedEntangled{}},
                                 ProbeKind{tsc_optimal()}, ProbeKind{tsc_intermediate()}}) {
        const TwoModeState st = make_probe(kind);
        CHECK(std::abs(st.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("reference probe properties") {
    struct Row {
        ProbeKind kind;
        double q, j, fq;
        bool exact_q, exact_j;
    };
    const std::vector<Row> rows = {
        {TwinSqueezedVacuum{}, 3.0, 0.0, 8.0, true, true},
        {SqueezedEntangled{}, 9.0, -0.1, 22.0, false, false},
        {tsc_optimal(), 11.75, 0.0, 25.49, false, true},
        {tsc_intermediate(), 10.00, 0.0, 22.00, false, true},
        {Noon{}, 0.0, -1.0, 4.0, true, true},
        {Coherent{}, 0.0, 0.0, 2.0, true, true},
    };
    for (const auto& row : rows) {
        CAPTURE(probe_name(row.kind));
        const TwoModeState st = enlarged_probe(row.kind);
        CHECK(std::abs(mean_photon_number(st) - 2.0) < 1e-3);
        const double q = mandel_q(st);
        const double j = j_parameter(st);
        if (row.exact_q)
            CHECK(std::abs(q - row.q) < 1e-6);
        else
            CHECK(std::abs(q - row.q) < 0.01 * std::abs(row.q));
        if (row.exact_j)
            CHECK(std::abs(j - row.j) < 1e-6);
        else
            CHECK(std::abs(j - row.j) < 0.01 * std::abs(row.j) + 1e-12);
        CHECK(std::abs(quantum_fisher(st) - row.fq) < 0.01 * row.fq);
        CHECK(q >= -1.0);
        CHECK(j >= -1.0 - 1e-9);
        CHECK(j <= 1.0 + 1e-9);
    }
}

TEST_CASE("phase encoding") {
    const TwoModeState noon = make_probe(Noon{2}, FockDims{3, 3});

    SUBCASE("theta = 0 is the identity") {
        const TwoModeState same = encode_phase(noon, 0.0);
        CHECK((same.amps - noon.amps).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("analytic phases") {
        const double th = 0.7;
        const TwoModeState enc = encode_phase(noon, th);
        CHECK(std::abs(enc.amps(2, 0) - std::exp(cxd(0, -th)) / std::sqrt(2.0)) < 1e-14);
        CHECK(std::abs(enc.amps(0, 2) - std::exp(cxd(0, th)) / std::sqrt(2.0)) < 1e-14);
    }

    SUBCASE("norm preserved exactly and composition holds") {
        const TwoModeState coh = make_probe(Coherent{});
        const TwoModeState a = encode_phase(encode_phase(coh, 0.31), 0.27);
        const TwoModeState b = encode_phase(coh, 0.58);
        CHECK(a.norm() == doctest::Approx(coh.norm()).epsilon(1e-15));
        CHECK((a.amps - b.amps).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("2 pi period for integer photon-number differences") {
        // independent oracle: dense matrix exponential of the generator
        const Matrix u = oracles::expm_taylor(cxd(0, -2 * M_PI) * jz_op(noon.dims));
        Vector flat(noon.dims.size());
        for (int n = 0; n < 3; ++n)
            for (int m = 0; m < 3; ++m) flat[n * 3 + m] = noon.amps(n, m);
        const Vector rotated = u * flat;
        const TwoModeState enc = encode_phase(noon, 2 * M_PI);
        cxd overlap = 0;
        for (int n = 0; n < 3; ++n)
            for (int m = 0; m < 3; ++m) {
                overlap += std::conj(noon.amps(n, m)) * enc.amps(n, m);
                CHECK(std::abs(enc.amps(n, m) - rotated[n * 3 + m]) < 1e-12);
            }
        CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-12);
    }
}

TEST_CASE("correlation measure edge cases") {
    const TwoModeState vac = make_probe(TwinSqueezedVacuum{0.0}, FockDims{5, 5});
    CHECK_THROWS(mandel_q(vac));

    // per-mode Fock state: both number variances vanish
    TwoModeState fock;
    fock.dims = {4, 4};
    fock.amps = Matrix::Zero(4, 4);
    fock.amps(2, 1) = 1.0;
    CHECK_THROWS_AS(j_parameter(fock), NumericalError);

    // asymmetric state fails the path-symmetry gate
    TwoModeState asym;
    asym.dims = {4, 4};
    asym.amps = Matrix::Zero(4, 4);
    asym.amps(0, 0) = std::sqrt(0.5);
    asym.amps(3, 0) = std::sqrt(0.5);
    CHECK_THROWS(mandel_q(asym));
}

TEST_CASE("probe name registry") {
    CHECK(probe_name(probe_from_name("tsc-int")) == "tsc-int");
    CHECK(probe_name(probe_from_name("ses")) == "ses");
    CHECK_THROWS(probe_from_name("nope"));
}
