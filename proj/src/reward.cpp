#include "lcp/reward.hpp"

namespace lcp {

double waypoint_reward(const WaypointRisk& risk) {
    if (risk.per_vehicle.empty()) {
        throw EmptyScenarioError("waypoint reward undefined without vehicles");
    }
    double sum = 0.0;
    for (const auto& [id, p_cc] : risk.per_vehicle) sum += 1.0 - p_cc;
    return sum / static_cast<double>(risk.per_vehicle.size());
}

double cumulative_reward(double len_reward, std::span<const double> waypoint_rewards,
                         double gamma) {
    const std::size_t g = waypoint_rewards.size();
    double sum = 0.0;
    double weight = gamma * gamma;  // gamma^k starting at k = 2
    for (std::size_t k = 2; k <= g; ++k) {
        sum += weight * waypoint_rewards[k - 1];
        weight *= gamma;
    }
    return (len_reward / 3.0 + sum / static_cast<double>(g)) * 100.0;
}

std::vector<double> display_rewards(std::span<const double> waypoint_rewards,
                                    double gamma) {
    std::vector<double> out(waypoint_rewards.size());
    if (out.empty()) return out;
    out[0] = 1.0;
    double weight = 1.0;
    for (std::size_t q = 1; q < out.size(); ++q) {
        weight *= gamma;
        out[q] = weight * waypoint_rewards[q];
    }
    return out;
}

const PathEvaluation& select_best_path(std::span<const PathEvaluation> evaluations) {
    if (evaluations.empty()) throw NoPathError("no path evaluations");
    const PathEvaluation* best = &evaluations[0];
    for (const PathEvaluation& e : evaluations.subspan(1)) {
        if (e.cumulative_reward > best->cumulative_reward ||
            (e.cumulative_reward == best->cumulative_reward &&
             e.path_id < best->path_id)) {
            best = &e;
        }
    }
    return *best;
}

}  // namespace lcp
