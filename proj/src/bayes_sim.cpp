#include "bayesmet/bayes_sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "bayesmet/parallel.hpp"
#include "bayesmet/rng.hpp"

namespace bayesmet {

namespace {

constexpr double kLogFloor = -745.0;  // log of the smallest normal double, roughly

struct RowStats {
    double weight;  // prior-measure evidence (includes multiplicity terms in LL)
    double var;
    double d4;
};

// Posterior moments for one unnormalised log-likelihood row.
RowStats row_stats(const double* ll, const ThetaGrid& grid, bool taylor) {
    const int g = grid.size();
    double mx = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < g; ++i) mx = std::max(mx, ll[i]);
    RowStats st{0, 0, 0};
    if (!std::isfinite(mx)) return st;
    double z = 0, m1 = 0, m2 = 0, m3 = 0, m4 = 0;
    for (int i = 0; i < g; ++i) {
        const double f = std::exp(ll[i] - mx) * grid.weights[i];
        if (f == 0.0) continue;
        const double t = grid.points[i];
        z += f;
        m1 += f * t;
        const double t2 = t * t;
        m2 += f * t2;
        if (taylor) {
            m3 += f * t2 * t;
            m4 += f * t2 * t2;
        }
    }
    if (z <= 0) return st;
    m1 /= z;
    m2 /= z;
    st.weight = z * std::exp(mx);
    st.var = m2 - m1 * m1;
    if (taylor) {
        m3 /= z;
        m4 /= z;
        st.d4 = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * m1 * m1 * m1 * m1;
    }
    return st;
}

double log_multiset_count(long k, long mu) {
    return std::lgamma(mu + k) - std::lgamma(static_cast<double>(k)) - std::lgamma(mu + 1.0);
}

// All nonnegative integer count vectors of length k summing to mu.
void enumerate_counts(int k, int mu, std::vector<int>& cur, std::vector<int>& flat) {
    if (k == 1) {
        cur.back() = mu;
        flat.insert(flat.end(), cur.begin(), cur.end());
        return;
    }
    const int pos = static_cast<int>(cur.size()) - k;
    for (int c = 0; c <= mu; ++c) {
        cur[pos] = c;
        enumerate_counts(k - 1, mu - c, cur, flat);
    }
    cur[pos] = 0;
}

struct CoreTable {
    RealMatrix log_rows;   // K x G
    RealMatrix cum;        // K x G column-wise cumulative probabilities
    RealVector cum_prior;  // grid sampling distribution
};

CoreTable prepare(const LikelihoodTable& table) {
    CoreTable c;
    const int k = static_cast<int>(table.rows.rows());
    const int g = table.grid.size();
    c.log_rows.resize(k, g);
    c.cum.resize(k, g);
    for (int j = 0; j < g; ++j) {
        double tot = 0;
        for (int i = 0; i < k; ++i) {
            const double p = std::max(table.rows(i, j), 0.0);
            c.log_rows(i, j) = p > 0 ? std::log(p) : kLogFloor;
            tot += p;
            c.cum(i, j) = tot;
        }
        if (tot > 0) c.cum.col(j) /= tot;
    }
    c.cum_prior.resize(g);
    double acc = 0;
    for (int j = 0; j < g; ++j) {
        acc += table.grid.weights[j];
        c.cum_prior[j] = acc;
    }
    c.cum_prior /= acc;
    return c;
}

int search_cum(const double* cum, int n, double u) {
    int lo = 0, hi = n - 1;
    while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (cum[mid] < u)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

struct PointResult {
    double mse, stderr_, band;
    bool exact;
};

PointResult evaluate_exact(const CoreTable& core, const LikelihoodTable& table, int mu,
                           bool taylor) {
    const int k = static_cast<int>(core.log_rows.rows());
    std::vector<int> cur(k, 0), flat;
    enumerate_counts(k, mu, cur, flat);
    const long m = static_cast<long>(flat.size()) / k;
    const double log_prior = -std::log(table.prior.width);

    const long chunk = 2048;
    const long n_chunks = (m + chunk - 1) / chunk;
    std::vector<double> sums(n_chunks, 0.0), bands(n_chunks, 0.0);
    parallel_for(n_chunks, [&](long ci) {
        const long lo = ci * chunk, hi = std::min(m, lo + chunk);
        RealMatrix counts(hi - lo, k);
        RealVector lmult(hi - lo);
        for (long r = lo; r < hi; ++r) {
            double lm = std::lgamma(mu + 1.0);
            for (int i = 0; i < k; ++i) {
                const int c = flat[r * k + i];
                counts(r - lo, i) = c;
                lm -= std::lgamma(c + 1.0);
            }
            lmult[r - lo] = lm;
        }
        RealMatrix ll = counts * core.log_rows;
        RealVector row(ll.cols());
        double s = 0, b = 0;
        for (long r = 0; r < hi - lo; ++r) {
            row = ll.row(r).transpose().array() + lmult[r] + log_prior;
            auto st = row_stats(row.data(), table.grid, taylor);
            s += st.weight * st.var;
            b += st.weight * st.d4;
        }
        sums[ci] = s;
        bands[ci] = b;
    });
    double mse = std::accumulate(sums.begin(), sums.end(), 0.0);
    double band = std::accumulate(bands.begin(), bands.end(), 0.0) / 12.0;
    return {mse, 0.0, band, true};
}

PointResult evaluate_mc(const CoreTable& core, const LikelihoodTable& table, int mu, long n,
                        std::uint64_t seed, bool taylor) {
    const int k = static_cast<int>(core.log_rows.rows());
    const int g = table.grid.size();
    const double log_prior = -std::log(table.prior.width);
    const long chunk = 512;
    const long n_chunks = (n + chunk - 1) / chunk;
    std::vector<double> s1(n_chunks, 0.0), s2(n_chunks, 0.0), sb(n_chunks, 0.0);
    parallel_for(n_chunks, [&](long ci) {
        const long lo = ci * chunk, hi = std::min(n, lo + chunk);
        RealMatrix counts = RealMatrix::Zero(hi - lo, k);
        for (long s = lo; s < hi; ++s) {
            CounterRng rng(seed, (static_cast<std::uint64_t>(mu) << 40) + s);
            const int gi = search_cum(core.cum_prior.data(), g, rng.next_double());
            const double* cum = core.cum.col(gi).data();
            for (int d = 0; d < mu; ++d) {
                const int out = search_cum(cum, k, rng.next_double());
                counts(s - lo, out) += 1.0;
            }
        }
        RealMatrix ll = counts * core.log_rows;
        RealVector row(ll.cols());
        double a = 0, b = 0, c = 0;
        for (long r = 0; r < hi - lo; ++r) {
            row = ll.row(r).transpose().array() + log_prior;
            auto st = row_stats(row.data(), table.grid, taylor);
            a += st.var;
            b += st.var * st.var;
            c += st.d4;
        }
        s1[ci] = a;
        s2[ci] = b;
        sb[ci] = c;
    });
    const double sum = std::accumulate(s1.begin(), s1.end(), 0.0);
    const double sumsq = std::accumulate(s2.begin(), s2.end(), 0.0);
    const double mean = sum / n;
    const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    const double band = std::accumulate(sb.begin(), sb.end(), 0.0) / n / 12.0;
    return {mean, std::sqrt(var / n), band, false};
}

std::vector<int> auto_checkpoints(int mu_max) {
    std::vector<int> cps;
    if (mu_max <= 16) {
        for (int m = 1; m <= mu_max; ++m) cps.push_back(m);
        return cps;
    }
    for (int m = 1; m <= 10; ++m) cps.push_back(m);
    const double ratio = std::pow(10.0, 1.0 / 48.0);
    double x = 10.0;
    while (x < mu_max) {
        x *= ratio;
        const int m = std::min(mu_max, static_cast<int>(std::lround(x)));
        if (m > cps.back()) cps.push_back(m);
    }
    if (cps.back() != mu_max) cps.push_back(mu_max);
    return cps;
}

}  // namespace

LikelihoodTable build_table(const Povm& povm, const TwoModeState& probe, const ThetaGrid& grid,
                            const FlatPrior& prior) {
    LikelihoodTable table;
    table.grid = grid;
    table.prior = prior;
    table.rows.resize(povm.n_outcomes, grid.size());
    parallel_for(grid.size(), [&](long j) {
        const RealVector p = likelihood(povm, encode_phase(probe, grid.points[j]));
        table.rows.col(j) = p;
    });
    return table;
}

LikelihoodTable compress_rows(const LikelihoodTable& table, double tol) {
    const int k = static_cast<int>(table.rows.rows());
    const int g = table.grid.size();
    RealVector totals(k);
    for (int i = 0; i < k; ++i) {
        double tot = 0;
        for (int j = 0; j < g; ++j) tot += table.rows(i, j) * table.grid.weights[j];
        totals[i] = tot;
    }
    // outcomes below this mass shift the MSE by < 1e-8 * prior variance
    const double drop = 1e-8 * table.prior.width;

    std::vector<std::vector<int>> groups;
    std::map<long, std::vector<int>> buckets;  // quantised posterior mean -> group ids
    for (int i = 0; i < k; ++i) {
        if (totals[i] <= drop) continue;
        RealVector norm = table.rows.row(i).transpose() / totals[i];
        double mean = 0;
        for (int j = 0; j < g; ++j) mean += norm[j] * table.grid.weights[j] * table.grid.points[j];
        const long key = std::lround(mean * 1e6);
        bool merged = false;
        for (long dk = -1; dk <= 1 && !merged; ++dk) {
            auto it = buckets.find(key + dk);
            if (it == buckets.end()) continue;
            for (int gi : it->second) {
                const int rep = groups[gi].front();
                const RealVector repn = table.rows.row(rep).transpose() / totals[rep];
                if ((repn - norm).cwiseAbs().maxCoeff() < tol) {
                    groups[gi].push_back(i);
                    merged = true;
                    break;
                }
            }
        }
        if (!merged) {
            buckets[key].push_back(static_cast<int>(groups.size()));
            groups.push_back({i});
        }
    }
    if (groups.empty()) throw NumericalError("all likelihood rows are empty");
    LikelihoodTable out;
    out.grid = table.grid;
    out.prior = table.prior;
    out.rows.resize(groups.size(), g);
    for (size_t gi = 0; gi < groups.size(); ++gi) {
        out.rows.row(gi).setZero();
        for (int i : groups[gi]) out.rows.row(gi) += table.rows.row(i);
    }
    return out;
}

RealVector posterior(const ThetaGrid& grid, const FlatPrior& prior, const RealMatrix& rows,
                     const std::vector<int>& outcomes) {
    const int g = grid.size();
    RealVector ll = RealVector::Constant(g, -std::log(prior.width));
    for (int out : outcomes) {
        if (out < 0 || out >= rows.rows()) throw Error("outcome index out of range");
        for (int j = 0; j < g; ++j) {
            const double p = rows(out, j);
            ll[j] += p > 0 ? std::log(p) : kLogFloor;
        }
    }
    const double mx = ll.maxCoeff();
    RealVector dens(g);
    double z = 0;
    for (int j = 0; j < g; ++j) {
        dens[j] = std::exp(ll[j] - mx);
        z += dens[j] * grid.weights[j];
    }
    if (!(z > 0) || z * std::exp(mx) < 1e-300)
        throw NumericalError("zero evidence for the observed outcome sequence");
    return dens / z;
}

double posterior_mean(const ThetaGrid& grid, const RealVector& density) {
    double m = 0;
    for (int j = 0; j < grid.size(); ++j) m += density[j] * grid.points[j] * grid.weights[j];
    return m;
}

double posterior_variance(const ThetaGrid& grid, const RealVector& density) {
    double m1 = 0, m2 = 0;
    for (int j = 0; j < grid.size(); ++j) {
        const double f = density[j] * grid.weights[j];
        m1 += f * grid.points[j];
        m2 += f * grid.points[j] * grid.points[j];
    }
    return m2 - m1 * m1;
}

double table_fisher(const LikelihoodTable& table) {
    const int g = table.grid.size();
    const int j0 = g / 2;
    const double h = table.grid.points[1] - table.grid.points[0];
    double f = 0;
    for (int i = 0; i < table.rows.rows(); ++i) {
        const double p = table.rows(i, j0);
        if (p < 1e-12) continue;
        const double dp = (table.rows(i, j0 + 1) - table.rows(i, j0 - 1)) / (2 * h);
        f += dp * dp / p;
    }
    return f;
}

MseCurve mse_curve_from_table(const LikelihoodTable& raw_table, int mu_max,
                              const SamplingBudget& budget) {
    LikelihoodTable table = compress_rows(raw_table);
    CoreTable core = prepare(table);
    const int k = static_cast<int>(table.rows.rows());

    MseCurve curve;
    curve.seed = budget.seed;
    curve.grid_points = table.grid.size();
    if (mu_max < 1) return curve;
    std::vector<int> cps = budget.checkpoints.empty() ? auto_checkpoints(mu_max)
                                                      : budget.checkpoints;
    for (int mu : cps) {
        if (mu < 1 || mu > mu_max) continue;
        PointResult pr{};
        if (log_multiset_count(k, mu) <= std::log(static_cast<double>(budget.enumeration_limit)))
            pr = evaluate_exact(core, table, mu, budget.taylor);
        else
            pr = evaluate_mc(core, table, mu, budget.samples_per_mu, budget.seed, budget.taylor);
        curve.mu.push_back(mu);
        curve.mse.push_back(pr.mse);
        curve.stderr_.push_back(pr.stderr_);
        curve.exact.push_back(pr.exact ? 1 : 0);
        if (budget.taylor) curve.taylor_band.push_back(pr.band);
    }
    return curve;
}

MseCurve mse_repeated(const TwoModeState& probe, const Povm& povm, const FlatPrior& prior,
                      int mu_max, const SamplingBudget& budget) {
    LikelihoodTable table;
    int n = budget.grid_points;
    if (n > 0) {
        table = build_table(povm, probe, ThetaGrid::simpson(prior, n), prior);
    } else {
        // Simpson refinement until the single-shot value settles
        n = 1001;
        double prev = -1;
        for (int iter = 0;; ++iter) {
            table = build_table(povm, probe, ThetaGrid::simpson(prior, n), prior);
            const double m1 = mse_curve_from_table(table, 1, budget).mse.at(0);
            if ((prev > 0 && std::abs(m1 - prev) < 1e-4 * prev) || iter == 3) break;
            prev = m1;
            n = 2 * n - 1;
        }
        // then make sure the deepest posterior width stays resolved
        const double fisher = std::max(table_fisher(table), 1e-6);
        const double sigma_min = 1.0 / std::sqrt(fisher * std::max(mu_max, 1));
        const int for_depth =
            std::min(24001, static_cast<int>(std::ceil(8.0 * prior.width / sigma_min)) | 1);
        if (for_depth > n) {
            n = for_depth;
            table = build_table(povm, probe, ThetaGrid::simpson(prior, n), prior);
        }
    }
    return mse_curve_from_table(table, mu_max, budget);
}

std::vector<double> taylor_error_band(const TwoModeState& probe, const Povm& povm,
                                      const FlatPrior& prior, int mu_max,
                                      const SamplingBudget& budget) {
    SamplingBudget b = budget;
    b.taylor = true;
    return mse_repeated(probe, povm, prior, mu_max, b).taylor_band;
}

int mu_tau(const MseCurve& curve, double fq, double eps_target, MuTauOptions opts) {
    const int n = static_cast<int>(curve.mu.size());
    if (n == 0) throw Error("mu_tau needs a non-empty curve");
    std::vector<double> eps(n), sigma(n);
    for (int i = 0; i < n; ++i) {
        const double crb = 1.0 / (curve.mu[i] * fq);
        eps[i] = std::abs(curve.mse[i] - crb) / curve.mse[i];
        sigma[i] = curve.stderr_[i] * crb / (curve.mse[i] * curve.mse[i]);
    }
    const double thr = eps_target * (1.0 + opts.band);
    int first = -1;
    for (int i = 0; i < n; ++i) {
        bool ok = true;
        for (int j = i; j < n; ++j) {
            if (eps[j] > thr + opts.stderr_mult * sigma[j]) {
                ok = false;
                break;
            }
        }
        if (ok) {
            first = i;
            break;
        }
    }
    if (first < 0) throw NumericalError("curve never settles within the target relative error");
    if (first == 0) return curve.mu[0];
    const int mu_lo = curve.mu[first - 1], mu_hi = curve.mu[first];
    if (mu_hi - mu_lo <= 1 || eps[first - 1] <= thr) return mu_hi;
    // log-log interpolation of the crossing, rounded up to the next integer
    const double x0 = std::log(static_cast<double>(mu_lo)), x1 = std::log(static_cast<double>(mu_hi));
    const double y0 = eps[first - 1], y1 = eps[first];
    if (y0 <= y1) return mu_hi;
    const double x = x0 + (x1 - x0) * (y0 - thr) / (y0 - y1);
    const int m = static_cast<int>(std::ceil(std::exp(x) - 1e-9));
    return std::min(std::max(m, mu_lo + 1), mu_hi);
}

}  // namespace bayesmet
