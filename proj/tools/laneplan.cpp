#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lcp/chain_sampler.hpp"
#include "lcp/scenario.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitNoPath = 2;

lcp::ExportFormat parse_format(const std::string& name) {
    if (name == "csv") return lcp::ExportFormat::Csv;
    if (name == "json") return lcp::ExportFormat::Json;
    throw lcp::ValidationError("unknown format " + name + " (expected csv or json)");
}

lcp::Scenario load_with_overrides(const std::string& file,
                                  std::optional<double> gamma) {
    lcp::Scenario s = lcp::load_scenario(file);
    if (gamma) {
        if (*gamma < 0.0 || *gamma > 1.0) {
            throw lcp::ValidationError("gamma override must lie in [0, 1]");
        }
        s.gamma = *gamma;
    }
    return s;
}

void print_best_path(const lcp::PlanResult& result, const lcp::Scenario& s) {
    const lcp::Path& best = result.paths.paths[static_cast<std::size_t>(result.best.path_id)];
    std::cout << "best path (id " << best.id << "): ";
    for (std::size_t i = 0; i < best.waypoints.size(); ++i) {
        if (i) std::cout << " -> ";
        std::cout << lcp::to_string(best.waypoints[i]);
    }
    std::cout << "\ncumulative reward: " << result.best.cumulative_reward
              << "\nlength: " << lcp::path_length(s.grid, best)
              << " m, length reward: " << result.best.length_reward << "\n";
    const std::vector<double> shown =
        lcp::display_rewards(result.best.waypoint_rewards, s.gamma);
    std::cout << "waypoint rewards:\n";
    for (std::size_t q = 0; q < best.waypoints.size(); ++q) {
        std::cout << "  " << lcp::to_string(best.waypoints[q]) << "  "
                  << shown[q] << "\n";
    }
}

int run_plan(const std::string& scenario_file, const std::string& out_dir,
             const std::string& format, std::optional<double> gamma, int top_k) {
    const lcp::Scenario s = load_with_overrides(scenario_file, gamma);
    const lcp::PlanResult result = lcp::run_scenario(s);
    print_best_path(result, s);
    std::cout << "paths evaluated: " << result.path_count
              << ", reward extrema: [" << result.reward_extrema.second << ", "
              << result.reward_extrema.first << "]\n";
    if (top_k > 0) {
        std::vector<const lcp::PathEvaluation*> order;
        order.reserve(result.all_evaluations.size());
        for (const auto& e : result.all_evaluations) order.push_back(&e);
        std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
            if (a->cumulative_reward != b->cumulative_reward) {
                return a->cumulative_reward > b->cumulative_reward;
            }
            return a->path_id < b->path_id;
        });
        std::cout << "top " << top_k << " paths:\n";
        for (int i = 0; i < top_k && i < static_cast<int>(order.size()); ++i) {
            std::cout << "  id " << order[i]->path_id << "  reward "
                      << order[i]->cumulative_reward << "\n";
        }
    }
    if (!out_dir.empty()) {
        const auto written =
            lcp::export_results(result, s, out_dir, parse_format(format));
        for (const auto& f : written) std::cout << "wrote " << f.string() << "\n";
    }
    return kExitOk;
}

int run_paths(const std::string& scenario_file, const std::string& out_dir,
              const std::string& format) {
    const lcp::Scenario s = lcp::load_scenario(scenario_file);
    const lcp::PathSet set = lcp::enumerate_paths(s.grid, s.ego.start, s.ego.goal);
    double reward_min = 1.0;
    for (const lcp::Path& p : set.paths) {
        reward_min = std::min(reward_min, lcp::length_reward(s.grid, set, p));
    }
    std::cout << "paths: " << set.paths.size() << "\n"
              << "shortest: " << set.shortest_length_m << " m, longest: "
              << set.longest_length_m << " m\n"
              << "length-reward extrema: [" << reward_min << ", 1]\n";
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const bool csv = parse_format(format) == lcp::ExportFormat::Csv;
        const std::filesystem::path target =
            std::filesystem::path(out_dir) / (csv ? "path_list.csv" : "path_list.json");
        std::ofstream out(target, std::ios::binary);
        if (!out) throw lcp::IoError("cannot open " + target.string());
        if (csv) {
            out << "path_id,length_m,length_reward,waypoints\n";
            for (const lcp::Path& p : set.paths) {
                out << p.id << ',' << lcp::path_length(s.grid, p) << ','
                    << lcp::length_reward(s.grid, set, p) << ",\"";
                for (std::size_t i = 0; i < p.waypoints.size(); ++i) {
                    if (i) out << ' ';
                    out << lcp::to_string(p.waypoints[i]);
                }
                out << "\"\n";
            }
        } else {
            json rows = json::array();
            for (const lcp::Path& p : set.paths) {
                json cells = json::array();
                for (const auto& w : p.waypoints) cells.push_back({w.row, w.lane});
                rows.push_back({{"path_id", p.id},
                                {"length_m", lcp::path_length(s.grid, p)},
                                {"length_reward", lcp::length_reward(s.grid, set, p)},
                                {"waypoints", std::move(cells)}});
            }
            out << rows.dump(2) << "\n";
        }
        std::cout << "wrote " << target.string() << "\n";
    }
    return kExitOk;
}

json matrix_report(const Eigen::MatrixXd& m, const std::string& name) {
    json rep;
    rep["name"] = name;
    rep["dimension"] = m.rows();
    json sums = json::array();
    bool ok = m.rows() == m.cols() && m.rows() > 0;
    std::string detail;
    for (Eigen::Index i = 0; i < m.rows() && ok; ++i) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (m(i, j) < 0.0 || m(i, j) > 1.0) {
                ok = false;
                detail = "row " + std::to_string(i) + " has entry outside [0,1]";
            }
            sum += m(i, j);
        }
        sums.push_back(sum);
        if (ok && std::abs(sum - 1.0) > lcp::kRowSumTolerance) {
            ok = false;
            detail = "row " + std::to_string(i) + " sums to " + std::to_string(sum);
        }
    }
    rep["row_sums"] = std::move(sums);
    rep["stochastic"] = ok;
    if (!ok) rep["error"] = detail.empty() ? "matrix is not square" : detail;
    return rep;
}

Eigen::MatrixXd load_matrix_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw lcp::IoError("cannot open matrix file " + file);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw lcp::ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("matrix")) doc = doc.at("matrix");
    if (!doc.is_array()) throw lcp::ParseError("matrix file must hold a 2D array");
    Eigen::MatrixXd m(doc.size(), doc.empty() ? 0 : doc[0].size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        if (!doc[i].is_array() || doc[i].size() != static_cast<std::size_t>(m.cols())) {
            throw lcp::ParseError("matrix file has ragged rows");
        }
        for (std::size_t j = 0; j < doc[i].size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                doc[i][j].get<double>();
        }
    }
    return m;
}

int run_validate(const std::string& matrix_file, const std::string& scenario_file) {
    json report;
    bool all_ok = true;
    if (!matrix_file.empty()) {
        const Eigen::MatrixXd m = load_matrix_file(matrix_file);
        report = matrix_report(m, matrix_file);
        all_ok = report["stochastic"].get<bool>();
    } else {
        const lcp::Scenario s = lcp::load_scenario(scenario_file);
        json items = json::array();
        for (const lcp::VehicleSpec& v : s.vehicles) {
            items.push_back(matrix_report(v.model.speed_matrix.matrix(),
                                          v.id + ".speed_matrix"));
            for (int r = 0; r < lcp::kSpeedRangeCount; ++r) {
                items.push_back(matrix_report(
                    v.model.lane_matrices[r].matrix(),
                    v.id + ".lane_matrices[" + std::to_string(r) + "]"));
            }
        }
        for (const json& item : items) all_ok = all_ok && item["stochastic"].get<bool>();
        report["matrices"] = std::move(items);
        report["scenario"] = scenario_file;
    }
    report["pass"] = all_ok;
    std::cout << report.dump(2) << "\n";
    return all_ok ? kExitOk : kExitInvalidInput;
}

int run_sample(const std::string& matrix_file, const std::string& scenario_file,
               const std::string& vehicle_id, bool layered, int start, int start_lane,
               int horizon, std::int64_t samples, std::uint64_t seed) {
    json report;
    if (layered) {
        if (scenario_file.empty()) {
            throw lcp::ValidationError("--layered sampling needs --scenario");
        }
        const lcp::Scenario s = lcp::load_scenario(scenario_file);
        const lcp::VehicleSpec* vehicle = nullptr;
        for (const lcp::VehicleSpec& v : s.vehicles) {
            if (v.id == vehicle_id) vehicle = &v;
        }
        if (!vehicle) throw lcp::ValidationError("unknown vehicle id " + vehicle_id);
        const int bin = start >= 0 ? start : lcp::speed_bin(vehicle->speed_mph).index;
        const int lane = start_lane >= 0 ? start_lane : vehicle->start.lane;
        const lcp::LayeredSampleReport rep =
            lcp::sample_layered(vehicle->model, bin, lane, horizon, samples, seed);
        report = {{"vehicle", vehicle_id},
                  {"start_speed_bin", rep.start_speed_bin},
                  {"start_lane", rep.start_lane},
                  {"horizon", rep.horizon},
                  {"samples", rep.samples},
                  {"speed_marginal", rep.speed_marginal},
                  {"speed_reference", rep.speed_reference},
                  {"lane_marginal", rep.lane_marginal},
                  {"lane_reference", rep.lane_reference},
                  {"speed_max_abs_error", rep.speed_max_abs_error},
                  {"lane_max_abs_error", rep.lane_max_abs_error}};
    } else {
        if (matrix_file.empty()) {
            throw lcp::ValidationError("chain sampling needs --matrix");
        }
        const lcp::StochasticMatrix m =
            lcp::StochasticMatrix::validated(load_matrix_file(matrix_file));
        const lcp::ChainSampleReport rep =
            lcp::sample_chain(m, std::max(start, 0), horizon, samples, seed);
        report = {{"matrix", matrix_file},
                  {"start_state", rep.start_state},
                  {"horizon", rep.horizon},
                  {"samples", rep.samples},
                  {"empirical_distribution", rep.empirical},
                  {"reference_distribution", rep.reference},
                  {"max_abs_error", rep.max_abs_error}};
    }
    std::cout << report.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Probabilistic lane-change path planner"};
    app.require_subcommand(1);

    std::string scenario_file;
    std::string matrix_file;
    std::string out_dir;
    std::string format = "csv";
    std::string vehicle_id;
    double gamma_value = -1.0;
    bool gamma_set = false;
    int top_k = 0;
    bool layered = false;
    int start = -1;
    int start_lane = -1;
    int horizon = 1;
    std::int64_t samples = 100000;
    std::uint64_t seed = 0;

    CLI::App* plan = app.add_subcommand("plan", "plan the safest path for a scenario");
    plan->add_option("--scenario", scenario_file, "scenario JSON file")->required();
    plan->add_option("--out", out_dir, "directory for result tables");
    plan->add_option("--format", format, "csv or json")->capture_default_str();
    plan->add_option("--gamma", gamma_value, "discount factor override")
        ->each([&](const std::string&) { gamma_set = true; });
    plan->add_option("--top-k", top_k, "print the k best paths");

    CLI::App* paths = app.add_subcommand("paths", "enumerate paths and length rewards");
    paths->add_option("--scenario", scenario_file, "scenario JSON file")->required();
    paths->add_option("--out", out_dir, "directory for the full path listing");
    paths->add_option("--format", format, "csv or json")->capture_default_str();

    CLI::App* validate =
        app.add_subcommand("validate-model", "check matrices for row-stochasticity");
    validate->add_option("--matrix", matrix_file, "JSON matrix file");
    validate->add_option("--scenario", scenario_file, "scenario JSON file");

    CLI::App* sample =
        app.add_subcommand("sample", "Monte Carlo check of a Markov model");
    sample->add_option("--matrix", matrix_file, "JSON matrix file");
    sample->add_option("--scenario", scenario_file, "scenario JSON file");
    sample->add_option("--vehicle", vehicle_id, "vehicle id for layered sampling");
    sample->add_flag("--layered", layered, "sample the two-layer model");
    sample->add_option("--start", start, "start state / speed bin");
    sample->add_option("--start-lane", start_lane, "start lane for layered sampling");
    sample->add_option("--horizon", horizon, "number of steps")->capture_default_str();
    sample->add_option("--samples", samples, "sample count")->capture_default_str();
    sample->add_option("--seed", seed, "RNG seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (plan->parsed()) {
            return run_plan(scenario_file, out_dir, format,
                            gamma_set ? std::optional<double>(gamma_value) : std::nullopt,
                            top_k);
        }
        if (paths->parsed()) return run_paths(scenario_file, out_dir, format);
        if (validate->parsed()) {
            if (matrix_file.empty() && scenario_file.empty()) {
                std::cerr << "error: validate-model needs --matrix or --scenario\n";
                return kExitInvalidInput;
            }
            return run_validate(matrix_file, scenario_file);
        }
        if (sample->parsed()) {
            return run_sample(matrix_file, scenario_file, vehicle_id, layered, start,
                              start_lane, horizon, samples, seed);
        }
    } catch (const lcp::NoPathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoPath;
    } catch (const lcp::NotStochasticError& e) {
        std::cerr << "error: " << e.what() << " (row " << e.row << ", sum " << e.sum
                  << ")\n";
        return kExitInvalidInput;
    } catch (const lcp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitOk;
}
