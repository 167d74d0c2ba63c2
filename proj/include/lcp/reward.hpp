#pragma once

#include <span>
#include <vector>

#include "lcp/crash.hpp"

namespace lcp {

// Per-path evaluation produced by the planning pipeline.
struct PathEvaluation {
    int path_id = 0;
    std::vector<double> waypoint_rewards;  // aligned to waypoints, [0] = 1
    double cumulative_reward = 0.0;
    double length_reward = 0.0;
    double gamma = 0.9;
    int waypoint_count = 0;  // g
};

// Mean non-crash probability over all surrounding vehicles:
// (1/w) * sum(1 - P_CC_k). Throws EmptyScenarioError when no vehicles
// were evaluated.
double waypoint_reward(const WaypointRisk& risk);

// Discounted cumulative path reward:
//   R = (r_len/3 + (1/g) * sum_{k=2..g} gamma^k * r_k) * 100
// with waypoints indexed 1-based from the start.
double cumulative_reward(double len_reward, std::span<const double> waypoint_rewards,
                         double gamma);

// Waypoint values as printed in reports: the start shows 1, a waypoint
// q >= 1 steps from the start shows gamma^q * r. This matches the
// decay of the reported tables; the cumulative reward above does not
// use these values.
std::vector<double> display_rewards(std::span<const double> waypoint_rewards,
                                    double gamma);

// Highest cumulative reward; exact ties resolved toward the smallest
// path id. Throws NoPathError on an empty sequence.
const PathEvaluation& select_best_path(std::span<const PathEvaluation> evaluations);

}  // namespace lcp
