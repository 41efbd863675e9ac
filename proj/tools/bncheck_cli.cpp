// bncheck: command-line front end.
//
//   bncheck check      --graph FILE
//   bncheck events     --graph FILE --eps E --p P [--c0 C]
//   bncheck sample     --n N --p P [--seed S] [--out FILE]
//   bncheck montecarlo --config FILE [--threads T] [--out-dir DIR]
//   bncheck thresholds --eps E --p P [--c0 C]
//   bncheck bounds     --n N --p P --eps E [--c0 C]
//
// JSON goes to stdout, diagnostics to stderr.
// Exit codes: 0 ok, 1 runtime error, 2 usage error, 3 montecarlo alert
// (a violating non-complete graph, or trials with uncertified results).

#include <bncheck/bncheck.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAlert = 3;

json real(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json to_json(const bncheck::InequalityCheck& c) {
    return {{"n", c.n},
            {"e", c.e},
            {"omega", c.omega},
            {"lambda1", c.lambda1},
            {"lambda2", c.lambda2},
            {"lhs", c.lhs},
            {"rhs", c.rhs},
            {"slack", c.slack},
            {"holds", c.holds},
            {"is_complete", c.is_complete},
            {"certified", c.certified}};
}

json to_json(const bncheck::EventTriple& t) {
    return {{"event_x", t.event_x}, {"event_y", t.event_y}, {"event_z", t.event_z}, {"x_lhs", t.x_lhs},
            {"x_rhs", t.x_rhs},     {"y_lhs", t.y_lhs},     {"y_rhs", t.y_rhs},     {"z_lhs", t.z_lhs},
            {"z_rhs", t.z_rhs}};
}

json to_json(const bncheck::ThresholdReport& r) {
    return {{"eps", r.eps},
            {"p", r.p},
            {"C0", r.c0},
            {"m0", real(r.m0)},
            {"m1", real(r.m1)},
            {"m2", real(r.m2)},
            {"m3", real(r.m3)},
            {"m4", real(r.m4)},
            {"n0_prime", real(r.n0_prime)},
            {"n0_double_prime", real(r.n0_double_prime)},
            {"n0", real(r.n0)},
            {"p_max", r.p_max},
            {"p_admissible", r.p_admissible},
            {"overflow", r.overflow}};
}

struct GraphAnalysis {
    bncheck::Graph graph;
    bncheck::SpectralSummary spectral;
    bncheck::CliqueResult clique;
};

GraphAnalysis analyse(const std::string& path, std::size_t dense_limit, std::optional<double> budget) {
    auto g = bncheck::read_edge_list_file(path);
    if (g.order() < 2) throw bncheck::InvalidParameter("graph needs at least two vertices");
    bncheck::SpectralOptions sopts;
    sopts.dense_limit = dense_limit;
    auto spec = bncheck::top_two(g, sopts);
    std::optional<std::chrono::duration<double>> b;
    if (budget) b = std::chrono::duration<double>(*budget);
    auto clq = bncheck::max_clique(g, b);
    if (clq.time_limited)
        throw bncheck::NonCertifiedError("clique search hit its time budget; omega is not certified");
    return {std::move(g), spec, std::move(clq)};
}

json spectral_json(const bncheck::SpectralSummary& s) {
    return {{"method", bncheck::to_string(s.method)}, {"residual1", s.residual1}, {"residual2", s.residual2}};
}

json witness_json(const bncheck::CliqueResult& c) {
    json w = json::array();
    for (auto v : c.witness) w.push_back(v + 1);
    return w;
}

std::string default_out_dir() {
    if (const char* env = std::getenv("BNCHECK_OUT_DIR"); env && *env) return env;
    return ".";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral clique inequality checker for G(n, p) random graphs"};
    app.require_subcommand(1);

    std::size_t dense_limit = 2048;
    std::optional<double> clique_budget;

    // check
    auto* check = app.add_subcommand("check", "Check lambda1^2 + lambda2^2 <= 2e(1 - 1/omega) on a graph file");
    std::string check_graph;
    check->add_option("--graph", check_graph, "Graph file (p edge / e lines)")->required();
    check->add_option("--dense-limit", dense_limit, "Largest order for the dense eigensolver");
    check->add_option("--clique-budget", clique_budget, "Clique search time budget in seconds")
        ->check(CLI::PositiveNumber);

    // events
    auto* events = app.add_subcommand("events", "Evaluate the events X, Y, Z on a graph file");
    std::string events_graph;
    bncheck::BoundParams ev_params;
    events->add_option("--graph", events_graph, "Graph file")->required();
    events->add_option("--eps", ev_params.eps, "eps in (0, 1)")->required();
    events->add_option("--p", ev_params.p, "Edge probability in (0, 1)")->required();
    events->add_option("--c0", ev_params.c0, "Constant C0 > 0")->capture_default_str();
    events->add_option("--dense-limit", dense_limit, "Largest order for the dense eigensolver");
    events->add_option("--clique-budget", clique_budget, "Clique search time budget in seconds")
        ->check(CLI::PositiveNumber);

    // sample
    auto* sample = app.add_subcommand("sample", "Sample a G(n, p) graph");
    bncheck::GnpParams gnp;
    std::string sample_out;
    sample->add_option("--n", gnp.n, "Vertex count")->required()->check(CLI::Range(std::size_t{1}, bncheck::kDefaultMaxOrder));
    sample->add_option("--p", gnp.p, "Edge probability in [0, 1]")->required()->check(CLI::Range(0.0, 1.0));
    sample->add_option("--seed", gnp.seed, "64-bit seed")->capture_default_str();
    sample->add_option("--out", sample_out, "Output file (stdout if omitted)");

    // montecarlo
    auto* mc = app.add_subcommand("montecarlo", "Run the Monte Carlo harness");
    std::string mc_config;
    std::size_t threads = 1;
    std::string mc_out_dir;
    mc->add_option("--config", mc_config, "JSON config file")->required()->check(CLI::ExistingFile);
    mc->add_option("--threads", threads, "Worker threads (results do not depend on this)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    mc->add_option("--out-dir", mc_out_dir, "Override out_dir from the config");

    // thresholds
    auto* thr = app.add_subcommand("thresholds", "Explicit thresholds m0..m4, n0', n0'', n0");
    bncheck::BoundParams thr_params;
    thr->add_option("--eps", thr_params.eps, "eps in (0, 1)")->required();
    thr->add_option("--p", thr_params.p, "Edge probability in (0, 1)")->required();
    thr->add_option("--c0", thr_params.c0, "Constant C0 > 0")->capture_default_str();

    // bounds
    auto* bnd = app.add_subcommand("bounds", "All closed-form bounds at a given n");
    double bnd_n = 0;
    bncheck::BoundParams bnd_params;
    bnd->add_option("--n", bnd_n, "Vertex count (>= 2)")->required();
    bnd->add_option("--p", bnd_params.p, "Edge probability in (0, 1)")->required();
    bnd->add_option("--eps", bnd_params.eps, "eps in (0, 1)")->required();
    bnd->add_option("--c0", bnd_params.c0, "Constant C0 > 0")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*check) {
            auto a = analyse(check_graph, dense_limit, clique_budget);
            auto j = to_json(bncheck::evaluate_inequality(a.graph, a.spectral, a.clique));
            j["spectral"] = spectral_json(a.spectral);
            j["witness"] = witness_json(a.clique);
            std::cout << j.dump(2) << '\n';
        } else if (*events) {
            ev_params.validate();
            auto a = analyse(events_graph, dense_limit, clique_budget);
            auto j = to_json(bncheck::evaluate_events(a.graph.order(), a.graph.edge_count(), a.clique.omega,
                                                      a.spectral.lambda1, a.spectral.lambda2, ev_params));
            const auto t = bncheck::lemma31_thresholds(ev_params);
            j["n0"] = real(t.n0);
            j["p_admissible"] = t.p_admissible;
            j["n_exceeds_n0"] = t.p_admissible && static_cast<double>(a.graph.order()) > t.n0;
            std::cout << j.dump(2) << '\n';
        } else if (*sample) {
            const auto g = bncheck::sample_gnp(gnp);
            if (!gnp.inside_model())
                std::cerr << "note: p = " << gnp.p << " is outside the open interval (0, 1) of the random-graph model\n";
            if (sample_out.empty()) {
                bncheck::write_edge_list(g, std::cout);
            } else {
                std::ofstream out(sample_out);
                if (!out) throw std::runtime_error("cannot write '" + sample_out + "'");
                bncheck::write_edge_list(g, out);
                json j{{"n", gnp.n}, {"p", gnp.p}, {"seed", gnp.seed}, {"edges", g.edge_count()},
                       {"inside_model", gnp.inside_model()}, {"out", sample_out}};
                std::cout << j.dump(2) << '\n';
            }
        } else if (*mc) {
            std::ifstream in(mc_config);
            if (!in) throw std::runtime_error("cannot open config '" + mc_config + "'");
            json raw;
            try {
                raw = json::parse(in);
            } catch (const json::parse_error& e) {
                throw bncheck::InvalidParameter(std::string("config is not valid JSON: ") + e.what());
            }
            auto cfg = bncheck::parse_config(raw);
            if (!raw.contains("out_dir")) cfg.out_dir = default_out_dir();
            if (!mc_out_dir.empty()) cfg.out_dir = mc_out_dir;
            cfg.threads = threads;
            const auto report = bncheck::run_monte_carlo(cfg);
            bncheck::write_report(report, cfg.out_dir);
            std::cout << bncheck::aggregate_json(report).dump(2) << '\n';
            if (report.alert()) {
                std::cerr << "alert: " << report.aggregates.counterexamples << " violating non-complete graph(s), "
                          << report.aggregates.invalid_trials << " invalid trial(s)\n";
                return kExitAlert;
            }
        } else if (*thr) {
            std::cout << to_json(bncheck::lemma31_thresholds(thr_params)).dump(2) << '\n';
        } else if (*bnd) {
            bnd_params.validate();
            const auto sides = bncheck::lemma31_sides(bnd_n, bnd_params);
            json j{{"n", bnd_n},
                   {"p", bnd_params.p},
                   {"eps", bnd_params.eps},
                   {"C0", bnd_params.c0},
                   {"juhasz_expected_lambda1", bncheck::juhasz_expected_lambda1(static_cast<std::size_t>(bnd_n), bnd_params.p)},
                   {"fk_lambda2_bound", bncheck::fk_lambda2_bound(bnd_n, bnd_params)},
                   {"clique_asymptote", bncheck::clique_asymptote(bnd_n, bnd_params.p)},
                   {"lemma31_lhs", real(sides.lhs)},
                   {"lemma31_rhs", real(sides.rhs)},
                   {"lemma31_holds", sides.lhs <= sides.rhs},
                   {"hoeffding_edge_tail", bncheck::hoeffding_edge_tail(bnd_n, bnd_params.p, bnd_params.eps)},
                   {"theorem_lower_bound", bncheck::theorem_lower_bound(bnd_n, bnd_params.p, bnd_params.eps)},
                   {"p_max", bncheck::lemma31_p_max(bnd_params.eps)},
                   {"p_admissible", bnd_params.p <= bncheck::lemma31_p_max(bnd_params.eps)}};
            std::cout << j.dump(2) << '\n';
        }
    } catch (const bncheck::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}
