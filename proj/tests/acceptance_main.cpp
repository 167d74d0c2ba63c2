// Acceptance suite: runs every release criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria. Use --criterion N to run a single one.

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lcp/chain_sampler.hpp"
#include "lcp/scenario.hpp"
#include "path_oracle.hpp"

using namespace lcp;

namespace {

#ifndef LCP_SCENARIO_DIR
#define LCP_SCENARIO_DIR "scenarios"
#endif

struct Outcome {
    bool pass = true;
    std::string detail;
};

using CriterionFn = std::function<Outcome()>;

std::filesystem::path scenario_file(const char* name) {
    return std::filesystem::path(LCP_SCENARIO_DIR) / name;
}

Eigen::MatrixXd example_chain() {
    Eigen::MatrixXd m(3, 3);
    m << 0.50, 0.25, 0.25,
         0.40, 0.40, 0.20,
         0.30, 0.30, 0.40;
    return m;
}

const std::vector<GridPosition> kScenario1Best = {
    {0, 0}, {1, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 4}, {5, 4}};
const std::vector<GridPosition> kScenario2Best = {
    {0, 0}, {0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}, {4, 4}, {5, 4}};
const std::vector<double> kTable1 = {1.0, 0.898, 0.809, 0.729, 0.656, 0.590, 0.531};
const std::vector<double> kTable2 = {1.0,   0.898, 0.799, 0.729,
                                     0.656, 0.590, 0.531, 0.478};

std::string path_to_string(const std::vector<GridPosition>& cells) {
    std::ostringstream oss;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) oss << "->";
        oss << to_string(cells[i]);
    }
    return oss.str();
}

// 1. 1,921 paths on the 6x5 segment in under a second.
Outcome criterion_path_count() {
    const auto t0 = std::chrono::steady_clock::now();
    const PathSet set = enumerate_paths(RoadGrid(6, 5), {0, 0}, {5, 4});
    const auto t1 = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(t1 - t0).count();
    Outcome out;
    out.pass = set.paths.size() == 1921 && secs < 1.0;
    std::ostringstream oss;
    oss << set.paths.size() << " paths in " << secs << " s (want 1921 in < 1 s)";
    out.detail = oss.str();
    return out;
}

// 2. Length-reward extrema: max exactly 1, min 0.22 +/- 0.005.
Outcome criterion_length_reward_extrema() {
    const RoadGrid grid(6, 5);
    const PathSet set = enumerate_paths(grid, {0, 0}, {5, 4});
    double min_r = 2.0, max_r = -2.0;
    for (const Path& p : set.paths) {
        const double r = length_reward(grid, set, p);
        min_r = std::min(min_r, r);
        max_r = std::max(max_r, r);
    }
    Outcome out;
    const bool max_ok = max_r == 1.0;
    const bool min_ok = std::abs(min_r - 0.22) <= 0.005;
    out.pass = max_ok && min_ok;
    std::ostringstream oss;
    oss << "max=" << max_r << " (want exactly 1), min=" << min_r
        << " (want 0.22 +/- 0.005)";
    out.detail = oss.str();
    return out;
}

Outcome check_best_path(const char* file, const std::vector<GridPosition>& want) {
    const Scenario s = load_scenario(scenario_file(file));
    const PlanResult r = run_scenario(s);
    const Path& best = r.paths.paths[static_cast<std::size_t>(r.best.path_id)];
    Outcome out;
    out.pass = best.waypoints == want;
    out.detail = std::string(file) + ": best " + path_to_string(best.waypoints) +
                 (out.pass ? " as expected" : " but want " + path_to_string(want));
    return out;
}

// 3. Bundled scenarios select the published best paths.
Outcome criterion_scenario_paths() {
    const Outcome a = check_best_path("scenario1.json", kScenario1Best);
    const Outcome b = check_best_path("scenario2.json", kScenario2Best);
    return Outcome{a.pass && b.pass, a.detail + "; " + b.detail};
}

// 4. Cumulative reward extrema within +/- 2.0 of the published values.
Outcome criterion_reward_extrema() {
    Outcome out;
    std::ostringstream oss;
    const struct {
        const char* file;
        double max, min;
    } targets[] = {{"scenario1.json", 46.21, 20.34}, {"scenario2.json", 43.58, 19.91}};
    for (const auto& t : targets) {
        const Scenario s = load_scenario(scenario_file(t.file));
        const PlanResult r = run_scenario(s);
        const bool ok = std::abs(r.reward_extrema.first - t.max) <= 2.0 &&
                        std::abs(r.reward_extrema.second - t.min) <= 2.0;
        out.pass = out.pass && ok;
        oss << t.file << ": max=" << r.reward_extrema.first
            << " min=" << r.reward_extrema.second << " (want " << t.max << "/"
            << t.min << " +/- 2.0) ";
    }
    out.detail = oss.str();
    return out;
}

Outcome check_waypoint_decay(const char* file, const std::vector<double>& table) {
    const Scenario s = load_scenario(scenario_file(file));
    const PlanResult r = run_scenario(s);
    const std::vector<double> shown = display_rewards(r.best.waypoint_rewards, s.gamma);
    Outcome out;
    std::ostringstream oss;
    oss << file << ": ";
    if (shown.size() != table.size()) {
        out.pass = false;
        oss << "got " << shown.size() << " waypoints, want " << table.size();
        out.detail = oss.str();
        return out;
    }
    if (shown.front() != 1.0) {
        out.pass = false;
        oss << "start value " << shown.front() << " != 1 ";
    }
    for (std::size_t q = 1; q < shown.size(); ++q) {
        const double ratio = shown[q] / shown[q - 1];
        if (std::abs(ratio - 0.90) > 0.02) {
            out.pass = false;
            oss << "ratio[" << q << "]=" << ratio << " outside 0.90 +/- 0.02 ";
        }
        if (std::abs(shown[q] - table[q]) > 0.05) {
            out.pass = false;
            oss << "row[" << q << "]=" << shown[q] << " vs table " << table[q]
                << " off by > 0.05 ";
        }
    }
    if (out.pass) oss << "decays at 0.90 and matches the published table";
    out.detail = oss.str();
    return out;
}

// 5. Displayed waypoint values decay by 0.90 and match the tables.
Outcome criterion_waypoint_decay() {
    const Outcome a = check_waypoint_decay("scenario1.json", kTable1);
    const Outcome b = check_waypoint_decay("scenario2.json", kTable2);
    return Outcome{a.pass && b.pass, a.detail + "; " + b.detail};
}

// 6. Enumerator equals the brute-force oracle on all small grids.
Outcome criterion_oracle_equivalence() {
    long long cases = 0, mismatches = 0;
    for (int rows = 1; rows <= 4; ++rows) {
        for (int lanes = 1; lanes <= 4; ++lanes) {
            const RoadGrid g(rows, lanes);
            for (int sr = 0; sr < rows; ++sr)
                for (int sl = 0; sl < lanes; ++sl)
                    for (int gr = 0; gr < rows; ++gr)
                        for (int gl = 0; gl < lanes; ++gl) {
                            ++cases;
                            auto expected = oracle::brute_force_paths(
                                rows, lanes, {sr, sl}, {gr, gl});
                            std::vector<oracle::CellPath> actual;
                            try {
                                const PathSet set =
                                    enumerate_paths(g, {sr, sl}, {gr, gl});
                                for (const Path& p : set.paths)
                                    actual.push_back(oracle::to_cells(p));
                            } catch (const NoPathError&) {
                            }
                            std::sort(expected.begin(), expected.end());
                            std::sort(actual.begin(), actual.end());
                            if (expected != actual) ++mismatches;
                        }
        }
    }
    Outcome out;
    out.pass = mismatches == 0;
    std::ostringstream oss;
    oss << cases << " start/goal cases, " << mismatches << " mismatches";
    out.detail = oss.str();
    return out;
}

// 7. Matrix power correctness and stochasticity of all powers to 64.
Outcome criterion_matrix_power() {
    Outcome out;
    std::ostringstream oss;
    const StochasticMatrix chain = StochasticMatrix::validated(example_chain());
    const double p00 = power(chain, 2)(0, 0);
    if (std::abs(p00 - 0.425) > 1e-12) {
        out.pass = false;
        oss << "P^2[0,0]=" << p00 << " != 0.425 ";
    } else {
        oss << "P^2[0,0]=0.425 exact; ";
    }
    double worst = 0.0;
    for (const StochasticMatrix& base : {default_speed_matrix(), default_lane_matrix(5)}) {
        for (int k = 0; k <= 64; ++k) {
            const Eigen::MatrixXd p = power(base, k).matrix();
            for (Eigen::Index i = 0; i < p.rows(); ++i) {
                worst = std::max(worst, std::abs(p.row(i).sum() - 1.0));
                if (p.row(i).minCoeff() < 0.0) out.pass = false;
            }
        }
    }
    if (worst > 1e-9) out.pass = false;
    oss << "worst row-sum drift over k<=64: " << worst << " (want <= 1e-9)";
    out.detail = oss.str();
    return out;
}

// 8. Monte Carlo sampling agrees with the matrix powers and reproduces.
Outcome criterion_monte_carlo() {
    Outcome out;
    std::ostringstream oss;
    double worst = 0.0;
    const std::vector<std::pair<std::string, StochasticMatrix>> models = {
        {"example", StochasticMatrix::validated(example_chain())},
        {"speed", default_speed_matrix()},
        {"lane", default_lane_matrix(5)},
    };
    for (const auto& [name, m] : models) {
        for (int h = 1; h <= 5; ++h) {
            const ChainSampleReport rep = sample_chain(m, 0, h, 100000, 20240811);
            worst = std::max(worst, rep.max_abs_error);
            if (rep.max_abs_error > 0.01) {
                out.pass = false;
                oss << name << "@h" << h << " err " << rep.max_abs_error << " ";
            }
        }
    }
    const ChainSampleReport a =
        sample_chain(default_speed_matrix(), 6, 4, 100000, 99);
    const ChainSampleReport b =
        sample_chain(default_speed_matrix(), 6, 4, 100000, 99);
    const bool reproducible =
        a.empirical == b.empirical && a.max_abs_error == b.max_abs_error;
    if (!reproducible) {
        out.pass = false;
        oss << "fixed-seed runs differ ";
    }
    oss << "worst max_abs_error=" << worst << " (want <= 0.01), bit-reproducible="
        << (reproducible ? "yes" : "no");
    out.detail = oss.str();
    return out;
}

// 9. Property sweep: path invariants, probability ranges, determinism.
Outcome criterion_properties() {
    Outcome out;
    std::ostringstream oss;
    const RoadGrid grid(6, 5);
    const PathSet set = enumerate_paths(grid, {0, 0}, {5, 4});
    for (const Path& p : set.paths) {
        if (!is_valid_path(grid, p)) out.pass = false;
        for (std::size_t i = 1; i < p.waypoints.size(); ++i) {
            if (p.waypoints[i].row < p.waypoints[i - 1].row) out.pass = false;
        }
    }
    oss << "all " << set.paths.size() << " paths satisfy the invariants; ";

    const Scenario s = load_scenario(scenario_file("scenario1.json"));
    const PlanResult r1 = run_scenario(s, 1);
    bool in_range = true;
    for (const PathEvaluation& e : r1.all_evaluations) {
        for (double w : e.waypoint_rewards) {
            if (w < 0.0 || w > 1.0) in_range = false;
        }
        if (e.waypoint_rewards.front() != 1.0) in_range = false;
    }
    if (!in_range) out.pass = false;
    oss << "waypoint rewards in [0,1]: " << (in_range ? "yes" : "NO") << "; ";

    const PlanResult r2 = run_scenario(s, 1);
    const PlanResult r4 = run_scenario(s, 4);
    const std::string t1 = render_path_table(r1, s, ExportFormat::Csv) +
                           render_waypoint_table(r1, s, ExportFormat::Csv) +
                           render_reward_histogram(r1, s, ExportFormat::Csv);
    const std::string t2 = render_path_table(r2, s, ExportFormat::Csv) +
                           render_waypoint_table(r2, s, ExportFormat::Csv) +
                           render_reward_histogram(r2, s, ExportFormat::Csv);
    const std::string t4 = render_path_table(r4, s, ExportFormat::Csv) +
                           render_waypoint_table(r4, s, ExportFormat::Csv) +
                           render_reward_histogram(r4, s, ExportFormat::Csv);
    const bool deterministic = t1 == t2 && t1 == t4;
    if (!deterministic) out.pass = false;
    oss << "byte-identical across repeats and 1/4 workers: "
        << (deterministic ? "yes" : "NO");
    out.detail = oss.str();
    return out;
}

// 10. Full pipeline with export finishes in under five seconds.
Outcome criterion_runtime() {
    const auto t0 = std::chrono::steady_clock::now();
    const Scenario s = load_scenario(scenario_file("scenario1.json"));
    const PlanResult r = run_scenario(s);
    const auto dir = std::filesystem::temp_directory_path() / "lcp_acceptance_export";
    export_results(r, s, dir, ExportFormat::Csv);
    const auto t1 = std::chrono::steady_clock::now();
    std::filesystem::remove_all(dir);
    const double secs = std::chrono::duration<double>(t1 - t0).count();
    Outcome out;
    out.pass = secs < 5.0;
    std::ostringstream oss;
    oss << "pipeline + export took " << secs << " s (want < 5 s)";
    out.detail = oss.str();
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);
    }

    const std::vector<std::pair<std::string, CriterionFn>> criteria = {
        {"path enumeration count and runtime", criterion_path_count},
        {"length-reward extrema", criterion_length_reward_extrema},
        {"scenario best-path reproduction", criterion_scenario_paths},
        {"cumulative reward extrema", criterion_reward_extrema},
        {"waypoint table decay", criterion_waypoint_decay},
        {"oracle equivalence on small grids", criterion_oracle_equivalence},
        {"matrix-power correctness", criterion_matrix_power},
        {"Monte Carlo agreement", criterion_monte_carlo},
        {"property suite", criterion_properties},
        {"end-to-end runtime", criterion_runtime},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int number = static_cast<int>(i) + 1;
        if (only != 0 && only != number) continue;
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        std::cout << (out.pass ? "[PASS]" : "[FAIL]") << " criterion " << number
                  << " (" << criteria[i].first << "): " << out.detail << "\n";
        if (!out.pass) ++failures;
    }
    return failures;
}
