#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lcp/reward.hpp"

namespace lcp {

// Full planning problem: grid, ego, surrounding vehicles and knobs.
// `empty_road` permits a vehicle-free run where every waypoint reward
// is 1; otherwise at least one vehicle is required.
struct Scenario {
    RoadGrid grid{6, 5};
    EgoState ego;
    std::vector<VehicleSpec> vehicles;
    double gamma = 0.9;
    double time_step_s = 1.0;
    bool empty_road = false;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct PlanResult {
    PathEvaluation best;
    std::vector<PathEvaluation> all_evaluations;  // ordered by path id
    std::size_t path_count = 0;
    std::pair<double, double> reward_extrema;  // (max, min)
    PathSet paths;
};

// Parses and fully validates a scenario document. Malformed JSON maps
// to ParseError, semantic problems to ValidationError. Missing vehicle
// matrices take the published defaults, missing gamma takes 0.9.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario(const std::filesystem::path& file);

// Inverse of parse_scenario: writes every field explicitly so that
// parse(serialize(s)) == s.
nlohmann::json scenario_to_json(const Scenario& s);

// Runs the full pipeline: enumerate paths, score every waypoint against
// every vehicle, aggregate cumulative rewards and pick the best path.
// Deterministic for fixed inputs regardless of `threads`.
PlanResult run_scenario(const Scenario& s, int threads = 1);

enum class ExportFormat { Csv, Json };

// Per-path table: id, length, length reward, cumulative reward.
std::string render_path_table(const PlanResult& r, const Scenario& s, ExportFormat f);
// Best-path waypoint table using the display reward convention.
std::string render_waypoint_table(const PlanResult& r, const Scenario& s,
                                  ExportFormat f);
// Length-reward distribution: one row per distinct path length.
std::string render_reward_histogram(const PlanResult& r, const Scenario& s,
                                    ExportFormat f);

// Writes the three tables into `dir` (paths.*, best_path.*, histogram.*).
// Returns the written file paths. Throws IoError on filesystem failure.
std::vector<std::filesystem::path> export_results(const PlanResult& r,
                                                  const Scenario& s,
                                                  const std::filesystem::path& dir,
                                                  ExportFormat f);

}  // namespace lcp
