#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "bayesmet/io.hpp"
#include "bayesmet/runner.hpp"

using namespace bayesmet;

TEST_CASE("config round trip is the identity") {
    ExperimentConfig cfg;
    cfg.command = "simulate";
    cfg.states = {"tsv", "ses"};
    cfg.schemes = {"optimal", "quadratures"};
    cfg.w0 = {M_PI / 2, 0.1};
    cfg.theta_bar = 0.125;
    cfg.mu_max = 123;
    cfg.seed = 987654321;
    cfg.samples = 4200;
    cfg.taylor = true;
    cfg.out = "run.csv";
    const ExperimentConfig back = ExperimentConfig::parse(cfg.serialize());
    CHECK(back == cfg);
    CHECK(ExperimentConfig::parse(back.serialize()).serialize() == cfg.serialize());
}

TEST_CASE("config rejects unknown keys and bad lines") {
    CHECK_THROWS_AS(ExperimentConfig::parse("bogus_key = 1\n"), Error);
    CHECK_THROWS_AS(ExperimentConfig::parse("not a key value line\n"), Error);
    const ExperimentConfig ok = ExperimentConfig::parse("# comment only\nmu_max = 7 # tail\n");
    CHECK(ok.mu_max == 7);
}

TEST_CASE("csv output is deterministic and atomic") {
    CsvWriter a(result_header());
    CsvWriter b(result_header());
    ResultRow row;
    row.state = "noon";
    row.scheme = "optimal";
    row.w0 = M_PI / 2;
    row.mu = 3;
    row.mse = 5.3510123456789e-2;
    row.crb = 1.0 / 12;
    row.seed = 42;
    a.add_row(result_cells(row));
    b.add_row(result_cells(row));
    CHECK(a.to_string() == b.to_string());
    // at least six significant digits, scientific
    CHECK(a.to_string().find("5.35101235e-02") != std::string::npos);

    const std::string path = "test_io_tmp.csv";
    a.write(path);
    std::ifstream is(path);
    CHECK(is.good());
    std::ifstream tmp(path + ".tmp");
    CHECK_FALSE(tmp.good());
    const CsvFile parsed = CsvFile::read(path);
    CHECK(parsed.header == result_header());
    CHECK(parsed.rows.size() == 1);
    CHECK(parsed.column("mse") == 5);
    std::remove(path.c_str());
}

TEST_CASE("row width is validated") {
    CsvWriter w({"a", "b"});
    CHECK_THROWS_AS(w.add_row({"only-one"}), Error);
}
