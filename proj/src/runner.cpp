#include "bayesmet/runner.hpp"

namespace bayesmet {

std::vector<std::string> result_header(bool loss_columns) {
    std::vector<std::string> h{"state", "scheme", "W0",  "theta_bar", "mu",
                               "mse",   "stderr", "taylor_delta", "crb", "seed"};
    if (loss_columns) {
        h.push_back("eta");
        h.push_back("encoding");
    }
    return h;
}

std::vector<std::string> result_cells(const ResultRow& row, double eta) {
    std::vector<std::string> c{row.state,
                               row.scheme,
                               CsvWriter::num(row.w0),
                               CsvWriter::num(row.theta_bar),
                               CsvWriter::integer(row.mu),
                               CsvWriter::num(row.mse),
                               CsvWriter::num(row.stderr_),
                               CsvWriter::num(row.taylor_delta),
                               CsvWriter::num(row.crb),
                               std::to_string(row.seed)};
    if (eta >= 0) {
        c.push_back(CsvWriter::num(eta));
        c.push_back("single-arm");
    }
    return c;
}

ProbeSummary summarize_probe(const ProbeKind& kind) {
    // enlarged cutoffs for converged moments of the squeezed families
    FockDims dims = default_dims(kind);
    dims.d1 += 20;
    dims.d2 += 20;
    const TwoModeState probe = make_probe(kind, dims);
    ProbeSummary s{};
    s.nbar = mean_photon_number(probe);
    s.mandel_q = mandel_q(probe);
    s.j_param = j_parameter(probe);
    s.fq = quantum_fisher(probe);
    s.tail_prob = make_probe(kind).tail_prob;
    return s;
}

Povm scheme_for_probe(const std::string& scheme, const TwoModeState& probe,
                      const FlatPrior& prior, const ExperimentConfig& cfg) {
    if (scheme == "optimal") {
        auto sol = std::make_shared<PersonickSolution>(
            solve_estimator(averaged_moments(probe, prior)));
        return build_scheme(OptimalSingleShot{sol}, probe.dims);
    }
    cxd undo_alpha(std::sqrt(2.0), 0.0);
    const SchemeKind kind =
        scheme_from_name(scheme, undo_alpha, cfg.quad_angle, cfg.undo_phase);
    return build_scheme(kind, recommended_povm_dims(probe.dims));
}

MseCurve run_curve(const std::string& state, const std::string& scheme, const FlatPrior& prior,
                   int mu_max, const ExperimentConfig& cfg, double* fq_out) {
    const ProbeKind kind = probe_from_name(state);
    const TwoModeState probe = make_probe(kind);
    if (fq_out) *fq_out = quantum_fisher(probe);

    SamplingBudget budget;
    budget.samples_per_mu = cfg.samples;
    budget.grid_points = cfg.grid_points;
    budget.seed = cfg.seed;
    budget.taylor = cfg.taylor;

    if (scheme == "collective") {
        MseCurve curve;
        curve.seed = cfg.seed;
        for (int mu = 1; mu <= mu_max; ++mu) {
            curve.mu.push_back(mu);
            curve.mse.push_back(collective_bound(probe, prior, mu));
            curve.stderr_.push_back(0.0);
            curve.exact.push_back(1);
            if (cfg.taylor) curve.taylor_band.push_back(0.0);
        }
        return curve;
    }
    const Povm povm = scheme_for_probe(scheme, probe, prior, cfg);
    return mse_repeated(probe, povm, prior, mu_max, budget);
}

std::vector<ResultRow> rows_from_curve(const std::string& state, const std::string& scheme,
                                       const FlatPrior& prior, const MseCurve& curve, double fq) {
    std::vector<ResultRow> rows;
    for (size_t i = 0; i < curve.mu.size(); ++i) {
        ResultRow r;
        r.state = state;
        r.scheme = scheme;
        r.w0 = prior.width;
        r.theta_bar = prior.mean;
        r.mu = curve.mu[i];
        r.mse = curve.mse[i];
        r.stderr_ = curve.stderr_[i];
        r.taylor_delta = curve.taylor_band.empty() ? 0.0 : curve.taylor_band[i];
        r.crb = fq > 0 ? 1.0 / (curve.mu[i] * fq) : 0.0;
        r.seed = curve.seed;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace bayesmet
