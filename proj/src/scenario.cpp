#include "lcp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace lcp {
namespace {

using nlohmann::json;

GridPosition parse_cell(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
        !j[1].is_number_integer()) {
        throw ParseError(what + " must be an [row, lane] integer pair");
    }
    return GridPosition{j[0].get<int>(), j[1].get<int>()};
}

Eigen::MatrixXd parse_matrix(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) {
        throw ParseError(what + " must be a non-empty 2D array");
    }
    const std::size_t rows = j.size();
    Eigen::MatrixXd m;
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array()) throw ParseError(what + " row " + std::to_string(i) +
                                              " is not an array");
        if (i == 0) m.resize(rows, row.size());
        if (row.size() != static_cast<std::size_t>(m.cols())) {
            throw ParseError(what + " has ragged rows");
        }
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (!row[k].is_number()) throw ParseError(what + " has a non-numeric entry");
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                row[k].get<double>();
        }
    }
    return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

StochasticMatrix parse_stochastic(const json& j, const std::string& what) {
    try {
        return StochasticMatrix::validated(parse_matrix(j, what));
    } catch (const NotStochasticError& e) {
        throw ValidationError(what + ": " + e.what());
    }
}

void validate_cell(const RoadGrid& grid, const GridPosition& p,
                   const std::string& what) {
    if (!grid.contains(p)) {
        throw ValidationError(what + " " + to_string(p) + " is outside the grid");
    }
}

// Matrix powers for one vehicle, shared read-only by all path workers.
struct ModelPowers {
    std::vector<Eigen::MatrixXd> speed;                // [k]
    std::vector<std::vector<Eigen::MatrixXd>> lane;    // [range][k]
};

ModelPowers build_powers(const LayeredVehicleModel& model, int kmax) {
    ModelPowers pw;
    pw.speed.reserve(kmax + 1);
    pw.speed.push_back(Eigen::MatrixXd::Identity(kSpeedRangeCount, kSpeedRangeCount));
    for (int k = 1; k <= kmax; ++k) {
        pw.speed.push_back(pw.speed.back() * model.speed_matrix.matrix());
    }
    pw.lane.resize(kSpeedRangeCount);
    for (int r = 0; r < kSpeedRangeCount; ++r) {
        const Eigen::MatrixXd& q = model.lane_matrices[r].matrix();
        auto& lst = pw.lane[r];
        lst.reserve(kmax + 1);
        lst.push_back(Eigen::MatrixXd::Identity(q.rows(), q.cols()));
        for (int k = 1; k <= kmax; ++k) lst.push_back(lst.back() * q);
    }
    return pw;
}

}  // namespace

Scenario parse_scenario(const json& doc) {
    if (!doc.is_object()) throw ParseError("scenario document must be a JSON object");

    Scenario s;
    if (doc.contains("grid")) {
        const json& g = doc.at("grid");
        if (!g.is_object()) throw ParseError("grid must be an object");
        try {
            s.grid = RoadGrid(g.value("rows", 6), g.value("lanes", 5),
                              g.value("cell_length_m", 10.0),
                              g.value("cell_width_m", 4.0));
        } catch (const ValidationError&) {
            throw;
        } catch (const json::exception& e) {
            throw ParseError(std::string("grid: ") + e.what());
        }
    }

    if (!doc.contains("ego")) throw ParseError("scenario is missing \"ego\"");
    const json& ego = doc.at("ego");
    s.ego.start = parse_cell(ego.contains("start") ? ego.at("start") : json(),
                             "ego.start");
    s.ego.goal = parse_cell(ego.contains("goal") ? ego.at("goal") : json(), "ego.goal");
    if (!ego.contains("speed_mph") || !ego.at("speed_mph").is_number()) {
        throw ParseError("ego.speed_mph must be a number");
    }
    s.ego.speed_mph = ego.at("speed_mph").get<double>();

    s.gamma = doc.value("gamma", 0.9);
    s.time_step_s = doc.value("time_step_s", 1.0);
    s.empty_road = doc.value("empty_road", false);

    if (doc.contains("vehicles")) {
        const json& arr = doc.at("vehicles");
        if (!arr.is_array()) throw ParseError("vehicles must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const json& v = arr[i];
            const std::string tag = "vehicles[" + std::to_string(i) + "]";
            if (!v.is_object()) throw ParseError(tag + " must be an object");
            const std::string id = v.value("id", "C" + std::to_string(i + 1));
            const GridPosition start =
                parse_cell(v.contains("start") ? v.at("start") : json(), tag + ".start");
            if (!v.contains("speed_mph") || !v.at("speed_mph").is_number()) {
                throw ParseError(tag + ".speed_mph must be a number");
            }
            const double speed_mph = v.at("speed_mph").get<double>();

            StochasticMatrix speed = v.contains("speed_matrix")
                ? parse_stochastic(v.at("speed_matrix"), tag + ".speed_matrix")
                : default_speed_matrix();
            std::vector<StochasticMatrix> lanes;
            if (v.contains("lane_matrices")) {
                const json& lm = v.at("lane_matrices");
                if (!lm.is_array() || lm.size() != kSpeedRangeCount) {
                    throw ParseError(tag + ".lane_matrices must hold one matrix per "
                                     "speed range (12)");
                }
                for (int r = 0; r < kSpeedRangeCount; ++r) {
                    lanes.push_back(parse_stochastic(
                        lm[r], tag + ".lane_matrices[" + std::to_string(r) + "]"));
                }
            } else {
                lanes.assign(kSpeedRangeCount, default_lane_matrix(s.grid.lanes()));
            }
            try {
                s.vehicles.push_back(VehicleSpec{
                    id, start, speed_mph,
                    make_layered_model(std::move(speed), std::move(lanes))});
            } catch (const ValidationError& e) {
                throw ValidationError(tag + ": " + e.what());
            }
        }
    }

    // semantic validation
    validate_cell(s.grid, s.ego.start, "ego start");
    validate_cell(s.grid, s.ego.goal, "ego goal");
    if (!(s.ego.speed_mph > 0.0) || s.ego.speed_mph > kMaxSpeedMph) {
        throw ValidationError("ego speed must lie in (0, 60] mph");
    }
    if (s.ego.start == s.ego.goal && !s.empty_road) {
        throw ValidationError("ego start equals goal; use empty_road for the "
                              "trivial scenario");
    }
    if (!(s.gamma >= 0.0) || s.gamma > 1.0) {
        throw ValidationError("gamma must lie in [0, 1]");
    }
    if (!(s.time_step_s > 0.0)) {
        throw ValidationError("time_step_s must be positive");
    }
    if (s.vehicles.empty() && !s.empty_road) {
        throw ValidationError("scenario has no vehicles; set empty_road to plan "
                              "on an empty segment");
    }
    if (!s.vehicles.empty() && s.empty_road) {
        throw ValidationError("empty_road scenario must not list vehicles");
    }
    std::set<std::pair<int, int>> starts{{s.ego.start.row, s.ego.start.lane}};
    std::set<std::string> ids;
    for (const VehicleSpec& v : s.vehicles) {
        validate_cell(s.grid, v.start, "vehicle " + v.id + " start");
        if (!(v.speed_mph >= 0.0) || v.speed_mph > kMaxSpeedMph) {
            throw ValidationError("vehicle " + v.id + " speed must lie in [0, 60] mph");
        }
        if (!starts.insert({v.start.row, v.start.lane}).second) {
            throw ValidationError("vehicle " + v.id +
                                  " starts on an already occupied cell");
        }
        if (!ids.insert(v.id).second) {
            throw ValidationError("duplicate vehicle id " + v.id);
        }
        for (const StochasticMatrix& q : v.model.lane_matrices) {
            if (q.size() != s.grid.lanes()) {
                throw ValidationError("vehicle " + v.id + " lane matrices must be " +
                                      std::to_string(s.grid.lanes()) + "x" +
                                      std::to_string(s.grid.lanes()));
            }
        }
    }
    return s;
}

Scenario parse_scenario_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return parse_scenario(doc);
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open scenario file " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

json scenario_to_json(const Scenario& s) {
    json doc;
    doc["grid"] = {{"rows", s.grid.rows()},
                   {"lanes", s.grid.lanes()},
                   {"cell_length_m", s.grid.cell_length_m()},
                   {"cell_width_m", s.grid.cell_width_m()}};
    doc["ego"] = {{"start", {s.ego.start.row, s.ego.start.lane}},
                  {"goal", {s.ego.goal.row, s.ego.goal.lane}},
                  {"speed_mph", s.ego.speed_mph}};
    doc["gamma"] = s.gamma;
    doc["time_step_s"] = s.time_step_s;
    doc["empty_road"] = s.empty_road;
    json vehicles = json::array();
    for (const VehicleSpec& v : s.vehicles) {
        json jv;
        jv["id"] = v.id;
        jv["start"] = {v.start.row, v.start.lane};
        jv["speed_mph"] = v.speed_mph;
        jv["speed_matrix"] = matrix_to_json(v.model.speed_matrix.matrix());
        json lanes = json::array();
        for (const StochasticMatrix& q : v.model.lane_matrices) {
            lanes.push_back(matrix_to_json(q.matrix()));
        }
        jv["lane_matrices"] = std::move(lanes);
        vehicles.push_back(std::move(jv));
    }
    doc["vehicles"] = std::move(vehicles);
    return doc;
}

PlanResult run_scenario(const Scenario& s, int threads) {
    PlanResult result;
    result.paths = enumerate_paths(s.grid, s.ego.start, s.ego.goal);
    const std::size_t n = result.paths.paths.size();
    result.path_count = n;

    const double ego_mps = mph_to_mps(s.ego.speed_mph);
    const int kmax = static_cast<int>(
        std::lround(result.paths.longest_length_m / ego_mps / s.time_step_s)) + 1;

    std::vector<ModelPowers> powers;
    std::vector<SpeedRange> current_bins;
    powers.reserve(s.vehicles.size());
    for (const VehicleSpec& v : s.vehicles) {
        powers.push_back(build_powers(v.model, kmax));
        current_bins.push_back(speed_bin(v.speed_mph));
    }

    result.all_evaluations.resize(n);
    auto evaluate_path = [&](std::size_t idx) {
        const Path& p = result.paths.paths[idx];
        PathEvaluation ev;
        ev.path_id = p.id;
        ev.gamma = s.gamma;
        ev.waypoint_count = static_cast<int>(p.waypoints.size());
        ev.length_reward = length_reward(s.grid, result.paths, p);
        ev.waypoint_rewards.assign(p.waypoints.size(), 1.0);
        if (!s.vehicles.empty()) {
            double dist = 0.0;
            for (std::size_t q = 1; q < p.waypoints.size(); ++q) {
                dist += segment_length(s.grid, p.waypoints[q - 1], p.waypoints[q]);
                const double t_e = dist / ego_mps;
                const int k = static_cast<int>(std::lround(t_e / s.time_step_s));
                double sum = 0.0;
                for (std::size_t m = 0; m < s.vehicles.size(); ++m) {
                    const VehicleSpec& v = s.vehicles[m];
                    const RequiredSpeed req =
                        required_speed(s.grid, v, p.waypoints[q], t_e);
                    double p_cc = 0.0;
                    if (req.reachable) {
                        const int jb = speed_bin(req.mph).index;
                        const double p_c = powers[m].speed[k](current_bins[m].index, jb);
                        const double p_l =
                            powers[m].lane[jb][k](v.start.lane, p.waypoints[q].lane);
                        p_cc = p_c * p_l;
                    }
                    sum += 1.0 - p_cc;
                }
                ev.waypoint_rewards[q] = sum / static_cast<double>(s.vehicles.size());
            }
        }
        ev.cumulative_reward =
            cumulative_reward(ev.length_reward, ev.waypoint_rewards, s.gamma);
        result.all_evaluations[idx] = std::move(ev);
    };

    if (threads <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) evaluate_path(i);
    } else {
        const int workers = std::min<int>(threads, std::thread::hardware_concurrency());
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n; i += workers) evaluate_path(i);
            });
        }
        for (std::thread& t : pool) t.join();
    }

    result.best = select_best_path(result.all_evaluations);
    double best_r = result.all_evaluations[0].cumulative_reward;
    double worst_r = best_r;
    for (const PathEvaluation& e : result.all_evaluations) {
        best_r = std::max(best_r, e.cumulative_reward);
        worst_r = std::min(worst_r, e.cumulative_reward);
    }
    result.reward_extrema = {best_r, worst_r};
    return result;
}

namespace {

std::string format_double(double v, int precision) {
    std::ostringstream oss;
    oss.setf(std::ios::fixed);
    oss.precision(precision);
    oss << v;
    return oss.str();
}

}  // namespace

std::string render_path_table(const PlanResult& r, const Scenario& s, ExportFormat f) {
    if (f == ExportFormat::Csv) {
        std::ostringstream out;
        out << "path_id,length_m,length_reward,cumulative_reward\n";
        for (std::size_t i = 0; i < r.all_evaluations.size(); ++i) {
            const PathEvaluation& e = r.all_evaluations[i];
            out << e.path_id << ',' << format_double(path_length(s.grid, r.paths.paths[i]), 4)
                << ',' << format_double(e.length_reward, 6) << ','
                << format_double(e.cumulative_reward, 4) << '\n';
        }
        return out.str();
    }
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < r.all_evaluations.size(); ++i) {
        const PathEvaluation& e = r.all_evaluations[i];
        rows.push_back({{"path_id", e.path_id},
                        {"length_m", path_length(s.grid, r.paths.paths[i])},
                        {"length_reward", e.length_reward},
                        {"cumulative_reward", e.cumulative_reward}});
    }
    return rows.dump(2) + "\n";
}

std::string render_waypoint_table(const PlanResult& r, const Scenario& s,
                                  ExportFormat f) {
    const Path& best = r.paths.paths[static_cast<std::size_t>(r.best.path_id)];
    const std::vector<double> shown = display_rewards(r.best.waypoint_rewards, s.gamma);
    if (f == ExportFormat::Csv) {
        std::ostringstream out;
        out << "waypoint,reward\n";
        for (std::size_t q = 0; q < best.waypoints.size(); ++q) {
            out << '"' << to_string(best.waypoints[q]) << "\","
                << format_double(shown[q], 3) << '\n';
        }
        return out.str();
    }
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t q = 0; q < best.waypoints.size(); ++q) {
        rows.push_back({{"waypoint", {best.waypoints[q].row, best.waypoints[q].lane}},
                        {"reward", shown[q]}});
    }
    return rows.dump(2) + "\n";
}

std::string render_reward_histogram(const PlanResult& r, const Scenario& s,
                                    ExportFormat f) {
    std::map<long long, std::pair<double, int>> bins;  // length key -> (reward, count)
    for (std::size_t i = 0; i < r.all_evaluations.size(); ++i) {
        const double len = path_length(s.grid, r.paths.paths[i]);
        const long long key = std::llround(len * 1e6);
        auto it = bins.try_emplace(key, r.all_evaluations[i].length_reward, 0).first;
        it->second.second += 1;
    }
    if (f == ExportFormat::Csv) {
        std::ostringstream out;
        out << "length_m,length_reward,path_count\n";
        for (const auto& [key, value] : bins) {
            out << format_double(static_cast<double>(key) / 1e6, 4) << ','
                << format_double(value.first, 6) << ',' << value.second << '\n';
        }
        return out.str();
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [key, value] : bins) {
        rows.push_back({{"length_m", static_cast<double>(key) / 1e6},
                        {"length_reward", value.first},
                        {"path_count", value.second}});
    }
    return rows.dump(2) + "\n";
}

std::vector<std::filesystem::path> export_results(const PlanResult& r,
                                                  const Scenario& s,
                                                  const std::filesystem::path& dir,
                                                  ExportFormat f) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());
    const std::string ext = f == ExportFormat::Csv ? ".csv" : ".json";
    const std::vector<std::pair<std::string, std::string>> files = {
        {"paths" + ext, render_path_table(r, s, f)},
        {"best_path" + ext, render_waypoint_table(r, s, f)},
        {"histogram" + ext, render_reward_histogram(r, s, f)},
    };
    std::vector<std::filesystem::path> written;
    for (const auto& [name, content] : files) {
        const std::filesystem::path target = dir / name;
        std::ofstream out(target, std::ios::binary);
        if (!out) throw IoError("cannot open " + target.string() + " for writing");
        out << content;
        if (!out) throw IoError("failed writing " + target.string());
        written.push_back(target);
    }
    return written;
}

}  // namespace lcp
