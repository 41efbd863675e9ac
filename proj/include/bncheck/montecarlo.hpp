#ifndef BNCHECK_MONTECARLO_HPP
#define BNCHECK_MONTECARLO_HPP

/*
 * Monte Carlo harness: samples `trials` graphs from G(n, p), checks the
 * inequality and the three proof events on each, and aggregates.
 *
 * Trial k uses seed derive_trial_seed(master, k). Trials run on a pool of
 * worker threads, but rows are stored by trial index and every aggregate is
 * accumulated in trial order, so the CSV and JSON outputs do not depend on
 * the number of workers.
 */

#include "experiment.hpp"
#include "graph.hpp"
#include "rng.hpp"
#include "theory_bounds.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace bncheck {

struct MonteCarloConfig {
    std::size_t n = 50;
    double p = 0.5;
    double eps = 0.5;
    double c0 = 1.0;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::size_t dense_limit = 2048;
    std::optional<double> clique_time_budget{}; ///< seconds per trial; none = unlimited
    std::size_t threads = 1;

    void validate() const {
        if (trials < 1) throw InvalidParameter("trials must be at least 1");
        if (n < 2) throw InvalidParameter("n must be at least 2");
        if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("p must lie in (0, 1)");
        BoundParams{eps, p, c0}.validate();
        if (clique_time_budget && !(*clique_time_budget > 0.0))
            throw InvalidParameter("clique_time_budget must be positive");
    }
};

/// Reads {n, p, eps, C0, trials, seed, out_dir, dense_limit, clique_time_budget}.
/// n, p, trials and seed are required; eps defaults to 0.5 and C0 to 1.
inline MonteCarloConfig parse_config(const nlohmann::json& j) {
    MonteCarloConfig c;
    try {
        c.n = j.at("n").get<std::size_t>();
        c.p = j.at("p").get<double>();
        c.trials = j.at("trials").get<std::size_t>();
        c.seed = j.at("seed").get<std::uint64_t>();
        c.eps = j.value("eps", c.eps);
        c.c0 = j.value("C0", c.c0);
        c.out_dir = j.value("out_dir", c.out_dir);
        c.dense_limit = j.value("dense_limit", c.dense_limit);
        if (j.contains("clique_time_budget") && !j.at("clique_time_budget").is_null())
            c.clique_time_budget = j.at("clique_time_budget").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidParameter(std::string("bad Monte Carlo config: ") + e.what());
    }
    c.validate();
    return c;
}

struct MonteCarloRow {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::size_t e = 0;
    std::size_t omega = 0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool holds = false; ///< false for invalid trials
    bool event_x = false;
    bool event_y = false;
    bool event_z = false;
    bool is_complete = false;
    bool certified = false; ///< false when omega is uncertified or the eigensolver failed
    std::string error;      ///< diagnostic for invalid trials
    double spectral_seconds = 0.0;
    double clique_seconds = 0.0;
};

struct MonteCarloAggregates {
    std::size_t holds_count = 0;
    double holds_fraction = 0.0;
    double event_x_fraction = 0.0;
    double event_y_fraction = 0.0;
    double event_z_fraction = 0.0;
    double all_events_fraction = 0.0;
    double not_z_fraction = 0.0; ///< empirical frequency of the edge-count tail event
    double min_slack = std::numeric_limits<double>::infinity();
    double theorem_lower_bound = 0.0;
    double hoeffding_tail = 0.0;
    double n0 = 0.0;
    bool n_exceeds_n0 = false;
    bool p_admissible = false;
    std::size_t complete_draws = 0;
    std::size_t counterexamples = 0; ///< certified, non-complete, violating
    std::size_t invalid_trials = 0;
    std::size_t implication_failures = 0; ///< n > n0, X and Y and Z, yet not holds
};

struct MonteCarloReport {
    MonteCarloConfig config;
    std::vector<MonteCarloRow> rows;
    MonteCarloAggregates aggregates;

    bool alert() const noexcept {
        return aggregates.counterexamples > 0 || aggregates.invalid_trials > 0 || aggregates.implication_failures > 0;
    }
};

inline MonteCarloRow run_trial(const MonteCarloConfig& cfg, std::size_t trial) {
    using clock = std::chrono::steady_clock;
    MonteCarloRow row;
    row.trial = trial;
    row.seed = derive_trial_seed(cfg.seed, trial);
    const Graph g = sample_gnp({cfg.n, cfg.p, row.seed}, std::max(cfg.n, kDefaultMaxOrder));
    row.e = g.edge_count();
    row.is_complete = g.is_complete();

    SpectralOptions sopts;
    sopts.dense_limit = cfg.dense_limit;
    std::optional<std::chrono::duration<double>> budget;
    if (cfg.clique_time_budget) budget = std::chrono::duration<double>(*cfg.clique_time_budget);

    SpectralSummary spec;
    const auto t0 = clock::now();
    try {
        spec = top_two(g, sopts);
    } catch (const ConvergenceError& e) {
        row.error = e.what();
    }
    const auto t1 = clock::now();
    const auto clq = max_clique(g, budget);
    const auto t2 = clock::now();
    row.spectral_seconds = std::chrono::duration<double>(t1 - t0).count();
    row.clique_seconds = std::chrono::duration<double>(t2 - t1).count();

    if (clq.time_limited && row.error.empty()) row.error = "clique search hit its time budget";
    row.certified = row.error.empty();

    const auto check = evaluate_inequality(g, spec, clq);
    const auto events = evaluate_events(cfg.n, row.e, clq.omega, spec.lambda1, spec.lambda2, {cfg.eps, cfg.p, cfg.c0});
    row.omega = check.omega;
    row.lambda1 = check.lambda1;
    row.lambda2 = check.lambda2;
    row.lhs = check.lhs;
    row.rhs = check.rhs;
    row.slack = check.slack;
    row.holds = row.certified && check.holds;
    row.event_x = events.event_x;
    row.event_y = events.event_y;
    row.event_z = events.event_z;
    return row;
}

inline MonteCarloAggregates aggregate(const MonteCarloConfig& cfg, const std::vector<MonteCarloRow>& rows) {
    MonteCarloAggregates a;
    const auto thr = lemma31_thresholds({cfg.eps, cfg.p, cfg.c0});
    a.n0 = thr.n0;
    a.p_admissible = thr.p_admissible;
    a.n_exceeds_n0 = thr.p_admissible && static_cast<double>(cfg.n) > thr.n0;
    std::size_t x = 0, y = 0, z = 0, all = 0;
    for (const auto& r : rows) {
        if (!r.certified) {
            ++a.invalid_trials;
            continue;
        }
        a.holds_count += r.holds ? 1 : 0;
        x += r.event_x ? 1 : 0;
        y += r.event_y ? 1 : 0;
        z += r.event_z ? 1 : 0;
        const bool conj = r.event_x && r.event_y && r.event_z;
        all += conj ? 1 : 0;
        a.min_slack = std::min(a.min_slack, r.slack);
        a.complete_draws += r.is_complete ? 1 : 0;
        if (!r.holds && !r.is_complete) ++a.counterexamples;
        if (a.n_exceeds_n0 && conj && !r.holds) ++a.implication_failures;
    }
    const double t = static_cast<double>(rows.size());
    a.holds_fraction = static_cast<double>(a.holds_count) / t;
    a.event_x_fraction = static_cast<double>(x) / t;
    a.event_y_fraction = static_cast<double>(y) / t;
    a.event_z_fraction = static_cast<double>(z) / t;
    a.all_events_fraction = static_cast<double>(all) / t;
    a.not_z_fraction = static_cast<double>(rows.size() - a.invalid_trials - z) / t;
    const double nd = static_cast<double>(cfg.n);
    a.hoeffding_tail = hoeffding_edge_tail(nd, cfg.p, cfg.eps);
    a.theorem_lower_bound = theorem_lower_bound(nd, cfg.p, cfg.eps);
    return a;
}

inline MonteCarloReport run_monte_carlo(const MonteCarloConfig& cfg) {
    cfg.validate();
    MonteCarloReport report;
    report.config = cfg;
    report.rows.resize(cfg.trials);

    const std::size_t workers = std::clamp<std::size_t>(cfg.threads, 1, cfg.trials);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < cfg.trials; k = next++) report.rows[k] = run_trial(cfg, k);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    report.aggregates = aggregate(cfg, report.rows);
    return report;
}

inline constexpr const char* kTrialCsvHeader =
    "trial,seed,n,p,e,omega,lambda1,lambda2,lhs,rhs,slack,holds,event_x,event_y,event_z,is_complete,certified";

/// %.17g round-trips every double.
inline std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_trials_csv(const MonteCarloReport& report, std::ostream& out) {
    const auto& c = report.config;
    out << kTrialCsvHeader << '\n';
    for (const auto& r : report.rows) {
        out << r.trial << ',' << r.seed << ',' << c.n << ',' << format_real(c.p) << ',' << r.e << ',' << r.omega
            << ',' << format_real(r.lambda1) << ',' << format_real(r.lambda2) << ',' << format_real(r.lhs) << ','
            << format_real(r.rhs) << ',' << format_real(r.slack) << ',' << int(r.holds) << ',' << int(r.event_x)
            << ',' << int(r.event_y) << ',' << int(r.event_z) << ',' << int(r.is_complete) << ','
            << int(r.certified) << '\n';
    }
}

inline nlohmann::json config_json(const MonteCarloConfig& c) {
    nlohmann::json j{{"n", c.n},         {"p", c.p},           {"eps", c.eps},
                     {"C0", c.c0},       {"trials", c.trials}, {"seed", c.seed},
                     {"out_dir", c.out_dir}, {"dense_limit", c.dense_limit}};
    j["clique_time_budget"] = c.clique_time_budget ? nlohmann::json(*c.clique_time_budget) : nlohmann::json(nullptr);
    return j;
}

inline nlohmann::json aggregate_json(const MonteCarloReport& report) {
    const auto& a = report.aggregates;
    nlohmann::json j;
    j["config"] = config_json(report.config);
    j["holds_fraction"] = a.holds_fraction;
    j["holds_count"] = a.holds_count;
    j["event_x_fraction"] = a.event_x_fraction;
    j["event_y_fraction"] = a.event_y_fraction;
    j["event_z_fraction"] = a.event_z_fraction;
    j["all_events_fraction"] = a.all_events_fraction;
    j["not_z_fraction"] = a.not_z_fraction;
    j["min_slack"] = std::isfinite(a.min_slack) ? nlohmann::json(a.min_slack) : nlohmann::json(nullptr);
    j["theorem_lower_bound"] = a.theorem_lower_bound;
    j["hoeffding_tail"] = a.hoeffding_tail;
    j["n0"] = std::isfinite(a.n0) ? nlohmann::json(a.n0) : nlohmann::json(nullptr);
    j["n_exceeds_n0"] = a.n_exceeds_n0;
    j["p_admissible"] = a.p_admissible;
    j["complete_draws"] = a.complete_draws;
    j["counterexamples"] = a.counterexamples;
    j["invalid_trials"] = a.invalid_trials;
    j["implication_failures"] = a.implication_failures;
    return j;
}

/// Writes <out_dir>/trials.csv and <out_dir>/summary.json.
inline void write_report(const MonteCarloReport& report, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream csv(out_dir / "trials.csv", std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write " + (out_dir / "trials.csv").string());
        write_trials_csv(report, csv);
    }
    std::ofstream js(out_dir / "summary.json", std::ios::binary);
    if (!js) throw std::runtime_error("cannot write " + (out_dir / "summary.json").string());
    js << aggregate_json(report).dump(2) << '\n';
}

} // namespace bncheck

#endif
