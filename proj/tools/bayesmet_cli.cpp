// Command-line runner: probe properties, single-shot bounds and spectra, and
// repeated-measurement error curves written as CSV.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "bayesmet/runner.hpp"

using namespace bayesmet;

namespace {

int cmd_state_info(const std::string& state, const std::string& curve_file,
                   const std::string& curve_scheme) {
    const ProbeKind kind = probe_from_name(state);
    const ProbeSummary s = summarize_probe(kind);
    std::printf("state        %s\n", state.c_str());
    std::printf("nbar         %.6f\n", s.nbar);
    std::printf("mandel_q     %.6f\n", s.mandel_q);
    std::printf("j_parameter  %.6f\n", s.j_param);
    std::printf("fisher_q     %.6f\n", s.fq);
    std::printf("tail_prob    %.3e\n", s.tail_prob);
    if (!curve_file.empty()) {
        const CsvFile csv = CsvFile::read(curve_file);
        const int c_state = csv.column("state"), c_scheme = csv.column("scheme");
        const int c_mu = csv.column("mu"), c_mse = csv.column("mse"), c_se = csv.column("stderr");
        if (c_state < 0 || c_mu < 0 || c_mse < 0) throw Error("curve file lacks the result schema");
        MseCurve curve;
        for (const auto& row : csv.rows) {
            if (row[c_state] != state) continue;
            if (c_scheme >= 0 && !curve_scheme.empty() && row[c_scheme] != curve_scheme) continue;
            curve.mu.push_back(std::stoi(row[c_mu]));
            curve.mse.push_back(std::stod(row[c_mse]));
            curve.stderr_.push_back(c_se >= 0 ? std::stod(row[c_se]) : 0.0);
            curve.exact.push_back(0);
        }
        if (curve.mu.empty()) throw Error("no rows in the curve file match state " + state);
        std::printf("mu_tau       %d\n", mu_tau(curve, s.fq, 0.05));
    }
    return 0;
}

int cmd_personick(const ExperimentConfig& cfg) {
    CsvWriter csv({"state", "W0", "theta_bar", "index", "estimate"});
    for (const auto& state : cfg.states) {
        const TwoModeState probe = make_probe(probe_from_name(state));
        for (double w0 : cfg.w0) {
            const FlatPrior prior(cfg.theta_bar, w0);
            const PersonickSolution sol = solve_estimator(averaged_moments(probe, prior));
            std::printf("%-9s W0=%.6f theta_bar=%.6f bound=%.8e support=%d\n", state.c_str(), w0,
                        cfg.theta_bar, sol.bound, sol.support_dim);
            for (int i = 0; i < sol.estimates.size(); ++i)
                csv.add_row({state, CsvWriter::num(w0), CsvWriter::num(cfg.theta_bar),
                             CsvWriter::integer(i), CsvWriter::num(sol.estimates[i])});
        }
    }
    if (!cfg.out.empty()) csv.write(cfg.out);
    return 0;
}

int cmd_simulate(const ExperimentConfig& cfg) {
    CsvWriter csv(result_header());
    for (const auto& state : cfg.states) {
        for (const auto& scheme : cfg.schemes) {
            for (double w0 : cfg.w0) {
                const FlatPrior prior(cfg.theta_bar, w0);
                double fq = 0;
                const MseCurve curve = run_curve(state, scheme, prior, cfg.mu_max, cfg, &fq);
                for (const auto& row : rows_from_curve(state, scheme, prior, curve, fq))
                    csv.add_row(result_cells(row));
                std::fprintf(stderr, "done: %s / %s / W0=%.4f (%zu checkpoints)\n", state.c_str(),
                             scheme.c_str(), w0, curve.mu.size());
            }
        }
    }
    if (!cfg.out.empty())
        csv.write(cfg.out);
    else
        std::fputs(csv.to_string().c_str(), stdout);
    return 0;
}

int cmd_loss(const ExperimentConfig& cfg) {
    const FlatPrior prior(cfg.theta_bar, cfg.w0.at(0));
    SamplingBudget budget;
    budget.samples_per_mu = cfg.samples;
    budget.grid_points = cfg.grid_points;
    budget.seed = cfg.seed;
    budget.taylor = cfg.taylor;
    const LossSweepResult res = lossy_personick_sweep(cfg.eta, prior, cfg.mu_max, budget);
    std::printf("eta=%.4f  qfi=%.6f  bound=%.8e  probe=(%.6f, %.6f, %.6f)\n", cfg.eta, res.fq,
                res.solution.bound, res.probe.c0.real(), res.probe.c1.real(),
                res.probe.c2.real());
    CsvWriter csv(result_header(true));
    for (const auto& row :
         rows_from_curve("two-photon-loss", "optimal", prior, res.curve, res.fq))
        csv.add_row(result_cells(row, cfg.eta));
    if (!cfg.out.empty()) csv.write(cfg.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian phase-estimation bounds and simulations for two-mode interferometry"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string config_path, state_one = "noon", curve_file, curve_scheme = "optimal";
    std::vector<std::string> state_args, scheme_args;
    std::vector<double> w0_args;

    auto add_common = [&](CLI::App* sub, bool with_schemes) {
        sub->add_option("--config", config_path, "key = value experiment file");
        sub->add_option("--state", state_args, "probe state names");
        if (with_schemes) sub->add_option("--scheme", scheme_args, "measurement scheme names");
        sub->add_option("--w0", w0_args, "prior widths (radians)");
        sub->add_option("--theta-bar", cfg.theta_bar, "prior mean (radians)");
        sub->add_option("--mu-max", cfg.mu_max, "largest repetition count");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--samples", cfg.samples, "Monte Carlo samples per checkpoint");
        sub->add_option("--grid-points", cfg.grid_points, "theta grid size (0 = auto)");
        sub->add_flag("--taylor", cfg.taylor, "emit the Taylor band column");
        sub->add_option("--out", cfg.out, "output CSV path");
    };

    auto* info = app.add_subcommand("state-info", "probe properties (nbar, Q, J, Fq)");
    info->add_option("--state", state_one, "probe state name")->required();
    info->add_option("--curve", curve_file, "result CSV for the mu_tau column");
    info->add_option("--curve-scheme", curve_scheme, "scheme to select in the curve file");

    auto* pers = app.add_subcommand("personick", "single-shot bound and estimator spectrum");
    add_common(pers, false);

    auto* sim = app.add_subcommand("simulate", "repeated-measurement error curves");
    add_common(sim, true);
    sim->add_option("--quad-angle", cfg.quad_angle, "quadrature rotation angle");
    sim->add_option("--undo-phase", cfg.undo_phase, "extra Jz phase of the undo scheme");

    auto* loss = app.add_subcommand("loss", "single-arm photon-loss demonstration");
    add_common(loss, false);
    loss->add_option("--eta", cfg.eta, "transmissivity of the lossy arm");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        if (!config_path.empty()) {
            const ExperimentConfig from_flags = cfg;
            cfg = ExperimentConfig::load(config_path);
            auto seen = [&](const char* name) {
                const CLI::Option* opt = active->get_option_no_throw(name);
                return opt != nullptr && opt->count() > 0;
            };
            if (seen("--theta-bar")) cfg.theta_bar = from_flags.theta_bar;
            if (seen("--mu-max")) cfg.mu_max = from_flags.mu_max;
            if (seen("--seed")) cfg.seed = from_flags.seed;
            if (seen("--samples")) cfg.samples = from_flags.samples;
            if (seen("--grid-points")) cfg.grid_points = from_flags.grid_points;
            if (seen("--taylor")) cfg.taylor = from_flags.taylor;
            if (seen("--out")) cfg.out = from_flags.out;
            if (seen("--eta")) cfg.eta = from_flags.eta;
            if (seen("--quad-angle")) cfg.quad_angle = from_flags.quad_angle;
            if (seen("--undo-phase")) cfg.undo_phase = from_flags.undo_phase;
        }
        if (!state_args.empty()) cfg.states = state_args;
        if (!scheme_args.empty()) cfg.schemes = scheme_args;
        if (!w0_args.empty()) cfg.w0 = w0_args;

        if (*info) return cmd_state_info(state_one, curve_file, curve_scheme);
        if (*pers) return cmd_personick(cfg);
        if (*sim) return cmd_simulate(cfg);
        if (*loss) return cmd_loss(cfg);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        const bool config_issue = std::string(e.what()).rfind("unknown", 0) == 0 ||
                                  std::string(e.what()).find("config") != std::string::npos;
        return config_issue ? 2 : 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 2;
}
