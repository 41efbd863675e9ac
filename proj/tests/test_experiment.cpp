#include <bncheck/experiment.hpp>
#include <bncheck/graph_io.hpp>
#include <bncheck/montecarlo.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

using namespace bncheck;
using Catch::Matchers::WithinAbs;

TEST_CASE("checker on closed-form cases", "[experiment]") {
    const auto p3 = check_conjecture(make_named(GraphFamily::path, 3));
    CHECK_THAT(p3.lhs, WithinAbs(2.0, 1e-12));
    CHECK(p3.rhs == 2.0);
    CHECK(p3.holds);
    CHECK_THAT(p3.slack, WithinAbs(0.0, 1e-12));
    CHECK_FALSE(p3.is_complete);

    const auto k3 = check_conjecture(make_named(GraphFamily::complete, 3));
    CHECK_THAT(k3.lhs, WithinAbs(5.0, 1e-12));
    CHECK_THAT(k3.rhs, WithinAbs(4.0, 1e-15));
    CHECK_FALSE(k3.holds);
    CHECK(k3.is_complete);

    const auto c5 = check_conjecture(make_named(GraphFamily::cycle, 5));
    CHECK_THAT(c5.lhs, WithinAbs(4.381966011250105, 1e-12));
    CHECK(c5.rhs == 5.0);
    CHECK(c5.holds);

    const auto empty = check_conjecture(make_named(GraphFamily::empty, 4));
    CHECK(empty.lhs == 0.0);
    CHECK(empty.rhs == 0.0);
    CHECK(empty.holds);
    CHECK(empty.omega == 1);

    CHECK_THROWS_AS(check_conjecture(Graph(1)), InvalidParameter);
}

TEST_CASE("complete graphs miss by exactly one", "[experiment]") {
    for (std::size_t n = 2; n <= 30; ++n) {
        const auto c = check_conjecture(make_named(GraphFamily::complete, n));
        INFO("K_" << n);
        CHECK_FALSE(c.holds);
        CHECK(c.is_complete);
        CHECK_THAT(c.slack, WithinAbs(-1.0, 1e-9));
    }
}

TEST_CASE("star graphs are equality cases", "[experiment]") {
    // K_{1,1} is K_2 and is excluded.
    for (std::size_t b = 2; b <= 40; ++b) {
        const auto c = check_conjecture(complete_bipartite(1, b));
        CHECK(c.holds);
        CHECK_THAT(c.slack, WithinAbs(0.0, 1e-9 * std::max(1.0, c.rhs)));
    }
}

TEST_CASE("equality tolerance rule", "[experiment]") {
    const auto at = evaluate_inequality(10, 20, 3, 5.0, 3.0);
    CHECK(at.rhs == Catch::Approx(2.0 * 20 * (2.0 / 3.0)));
    CHECK(at.holds == (at.lhs <= at.rhs + 1e-9 * std::max(1.0, at.rhs)));
    // lhs exceeding rhs by less than the tolerance still holds.
    const double rhs = 2.0 * 10 * 0.5;
    const double l1 = std::sqrt(rhs + 0.5e-9 * rhs);
    CHECK(evaluate_inequality(6, 10, 2, l1, 0.0).holds);
    const double l2 = std::sqrt(rhs + 2e-9 * rhs);
    CHECK_FALSE(evaluate_inequality(6, 10, 2, l2, 0.0).holds);
}

TEST_CASE("non-certified clique search raises", "[experiment]") {
    CheckOptions opts;
    opts.clique_budget = std::chrono::duration<double>(1e-7);
    CHECK_THROWS_AS(check_conjecture(sample_gnp({400, 0.9, 3}), opts), NonCertifiedError);
}

TEST_CASE("triangle-free graphs always satisfy the inequality", "[experiment]") {
    std::size_t seen = 0;
    for (std::uint64_t s = 0; s < 400; ++s) {
        const auto g = sample_gnp({12 + s % 20, 0.12, s});
        const auto c = check_conjecture(g);
        if (c.omega == 2) {
            CHECK(c.holds);
            ++seen;
        }
    }
    CHECK(seen > 50);
    for (std::size_t n = 4; n <= 30; ++n) CHECK(check_conjecture(make_named(GraphFamily::cycle, n)).holds);
}

TEST_CASE("verdict is invariant under relabelling", "[experiment]") {
    Xoshiro256StarStar rng(17);
    for (std::uint64_t s = 0; s < 25; ++s) {
        const auto g = sample_gnp({25 + s, 0.5, s});
        std::vector<std::size_t> perm(g.order());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto a = check_conjecture(g);
        const auto b = check_conjecture(g.permuted(perm));
        CHECK(a.n == b.n);
        CHECK(a.e == b.e);
        CHECK(a.omega == b.omega);
        CHECK_THAT(a.lambda1, WithinAbs(b.lambda1, 1e-9));
        CHECK_THAT(a.lambda2, WithinAbs(b.lambda2, 1e-9));
        CHECK_THAT(a.slack, WithinAbs(b.slack, 1e-8));
        CHECK(a.rhs == b.rhs);
        CHECK(a.holds == b.holds);
        CHECK(a.is_complete == b.is_complete);
    }
}

TEST_CASE("proof events", "[experiment]") {
    const BoundParams bp{0.5, 0.5, 1.0};
    // Empty graph: omega = 1 and e = 0 sink Y and Z.
    const auto empty = check_proof_events(make_named(GraphFamily::empty, 30), bp);
    CHECK_FALSE(empty.event_y);
    CHECK_FALSE(empty.event_z);
    CHECK(empty.event_x);
    CHECK(empty.y_rhs == 0.0);

    const auto k10 = check_proof_events(make_named(GraphFamily::complete, 10), bp);
    CHECK(k10.event_z);
    CHECK(k10.z_lhs == 11.25);
    CHECK(k10.z_rhs == 45.0);

    const auto g = sample_gnp({30, 0.5, 1});
    const auto ev = check_proof_events(g, bp);
    const auto chk = check_conjecture(g);
    CHECK(ev.x_lhs == Catch::Approx(chk.lhs));
    CHECK(ev.x_rhs == Catch::Approx(lemma31_lhs(30, bp)));
    CHECK(ev.event_x == (ev.x_lhs <= ev.x_rhs));
    CHECK(ev.event_y == (ev.y_lhs <= ev.y_rhs));
    CHECK(ev.event_z == (ev.z_lhs <= ev.z_rhs));
    CHECK(ev.z_rhs == static_cast<double>(g.edge_count()));

    CHECK_THROWS_AS(check_proof_events(g, {0.0, 0.5, 1.0}), InvalidParameter);
    CHECK_THROWS_AS(check_proof_events(Graph(1), bp), InvalidParameter);
}

TEST_CASE("event chain forces the inequality numerically", "[experiment]") {
    // Past n0 the three events imply the inequality through the bound sides lhs <= rhs.
    // Synthetic graph-level values are fed in because n0 is astronomically large.
    const BoundParams bp{0.5, 0.1, 1.0};
    const auto r = lemma31_thresholds(bp);
    for (double f : {1.5, 10.0, 100.0}) {
        const double n = r.n0 * f;
        const auto sides = lemma31_sides(n, bp);
        REQUIRE(sides.lhs <= sides.rhs);
        // Worst case allowed by X, Y and Z: lhs at its X bound, omega and e at their Y, Z bounds.
        const double lhs = sides.lhs;
        const double omega_min = 1.0 / (std::log(1.0 / bp.p) / (2.0 * (1.0 - bp.eps) * std::log(n)));
        const double e_min = bp.p * (1.0 - bp.eps) * n * (n - 1.0) / 2.0;
        const double rhs = 2.0 * e_min * (1.0 - 1.0 / omega_min);
        CHECK(lhs <= rhs * (1 + 1e-12));
    }
}

TEST_CASE("monte carlo on two-vertex graphs", "[experiment]") {
    MonteCarloConfig cfg;
    cfg.n = 2;
    cfg.p = 0.5;
    cfg.trials = 100;
    cfg.seed = 7;
    const auto rep = run_monte_carlo(cfg);
    std::size_t empties = 0;
    for (const auto& r : rep.rows) {
        if (r.e == 0) {
            ++empties;
            CHECK(r.holds);
            CHECK(r.lhs == 0.0);
            CHECK(r.rhs == 0.0);
        } else {
            CHECK_FALSE(r.holds);
            CHECK(r.is_complete);
            CHECK_THAT(r.lhs, WithinAbs(2.0, 1e-12));
            CHECK(r.rhs == 1.0);
        }
    }
    CHECK(rep.aggregates.holds_fraction == static_cast<double>(empties) / 100.0);
    CHECK(rep.aggregates.complete_draws == 100 - empties);
    CHECK(rep.aggregates.counterexamples == 0);
    CHECK(std::abs(rep.aggregates.holds_fraction - 0.5) < 0.2);
    CHECK_FALSE(rep.alert());
}

TEST_CASE("monte carlo aggregates and invariants", "[experiment]") {
    MonteCarloConfig cfg;
    cfg.n = 30;
    cfg.p = 0.5;
    cfg.eps = 0.5;
    cfg.trials = 60;
    cfg.seed = 42;
    const auto rep = run_monte_carlo(cfg);
    const auto& a = rep.aggregates;
    std::size_t holds = 0, all = 0;
    for (std::size_t k = 0; k < rep.rows.size(); ++k) {
        const auto& r = rep.rows[k];
        CHECK(r.trial == k);
        CHECK(r.seed == derive_trial_seed(42, k));
        CHECK(r.certified);
        holds += r.holds;
        all += r.event_x && r.event_y && r.event_z;
        if (r.omega == 2) CHECK(r.holds);
    }
    CHECK(a.holds_fraction == static_cast<double>(holds) / 60.0);
    CHECK(a.all_events_fraction == static_cast<double>(all) / 60.0);
    CHECK(a.holds_fraction == 1.0);
    CHECK(a.min_slack > 0.0);
    CHECK(a.theorem_lower_bound == theorem_lower_bound(30, 0.5, 0.5));
    CHECK(a.hoeffding_tail == hoeffding_edge_tail(30, 0.5, 0.5));
    CHECK_FALSE(a.n_exceeds_n0);
    CHECK(a.invalid_trials == 0);
}

TEST_CASE("monte carlo is independent of the worker count", "[experiment]") {
    MonteCarloConfig cfg;
    cfg.n = 24;
    cfg.p = 0.4;
    cfg.trials = 40;
    cfg.seed = 9;
    std::string first;
    for (std::size_t threads : {1, 2, 5}) {
        cfg.threads = threads;
        std::ostringstream csv;
        write_trials_csv(run_monte_carlo(cfg), csv);
        if (first.empty()) first = csv.str();
        CHECK(csv.str() == first);
    }
    CHECK(first.rfind(std::string(kTrialCsvHeader) + "\n", 0) == 0);
}

TEST_CASE("monte carlo flags time-limited trials as invalid", "[experiment]") {
    MonteCarloConfig cfg;
    cfg.n = 300;
    cfg.p = 0.9;
    cfg.trials = 2;
    cfg.seed = 1;
    cfg.clique_time_budget = 1e-7;
    const auto rep = run_monte_carlo(cfg);
    CHECK(rep.aggregates.invalid_trials == 2);
    CHECK(rep.aggregates.holds_fraction == 0.0);
    CHECK(rep.alert());
    for (const auto& r : rep.rows) {
        CHECK_FALSE(r.certified);
        CHECK_FALSE(r.error.empty());
    }
}

TEST_CASE("config parsing", "[experiment]") {
    const auto cfg = parse_config(nlohmann::json::parse(
        R"({"n": 40, "p": 0.5, "eps": 0.2, "C0": 2, "trials": 10, "seed": 3, "out_dir": "x",
            "dense_limit": 100, "clique_time_budget": null})"));
    CHECK(cfg.n == 40);
    CHECK(cfg.eps == 0.2);
    CHECK(cfg.c0 == 2.0);
    CHECK(cfg.dense_limit == 100);
    CHECK_FALSE(cfg.clique_time_budget);
    CHECK(cfg.out_dir == "x");

    CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"n": 40, "p": 0.5, "trials": 10})")), InvalidParameter);
    CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"n": 40, "p": 1.0, "trials": 10, "seed": 1})")),
                    InvalidParameter);
    CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"n": 1, "p": 0.5, "trials": 10, "seed": 1})")),
                    InvalidParameter);
    CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"n": 10, "p": 0.5, "trials": 0, "seed": 1})")),
                    InvalidParameter);
    CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"n": "ten", "p": 0.5, "trials": 3, "seed": 1})")),
                    InvalidParameter);
}

TEST_CASE("report files", "[experiment]") {
    MonteCarloConfig cfg;
    cfg.n = 10;
    cfg.p = 0.5;
    cfg.trials = 5;
    cfg.seed = 1;
    const auto dir = std::filesystem::temp_directory_path() / "bncheck_report_test";
    std::filesystem::remove_all(dir);
    const auto rep = run_monte_carlo(cfg);
    write_report(rep, dir);
    std::ifstream csv(dir / "trials.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == kTrialCsvHeader);
    std::size_t lines = 0;
    for (std::string l; std::getline(csv, l);) ++lines;
    CHECK(lines == 5);
    std::ifstream js(dir / "summary.json");
    const auto j = nlohmann::json::parse(js);
    CHECK(j.at("holds_fraction").get<double>() == rep.aggregates.holds_fraction);
    CHECK(j.at("config").at("n") == 10);
    for (const char* key : {"event_x_fraction", "event_y_fraction", "event_z_fraction", "min_slack",
                            "theorem_lower_bound", "hoeffding_tail", "invalid_trials"})
        CHECK(j.contains(key));
    std::filesystem::remove_all(dir);
}
