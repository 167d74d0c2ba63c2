#pragma once

#include <vector>

#include "lcp/road_grid.hpp"

namespace lcp {

// Ordered waypoint sequence from start to goal.
struct Path {
    int id = 0;
    std::vector<GridPosition> waypoints;
};

struct PathSet {
    std::vector<Path> paths;
    double shortest_length_m = 0.0;
    double longest_length_m = 0.0;
};

// Enumerates every admissible path from start to goal by depth-first
// search over the directed grid graph. A path is admissible when
//   - consecutive waypoints are connected by one of the five actions,
//   - no cell repeats,
//   - no two pure-lateral steps are taken in a row,
//   - pure-lateral steps only reduce the lane distance to the goal.
// Expansion order is Forward, DiagonalRight, DiagonalLeft, LateralRight,
// LateralLeft; ids follow emission order. Throws NoPathError when the
// set is empty.
PathSet enumerate_paths(const RoadGrid& grid, const GridPosition& start,
                        const GridPosition& goal);

// Sum of segment lengths over consecutive waypoint pairs, in meters.
double path_length(const RoadGrid& grid, const Path& p);

// Length-based reward: 1 - (L(p) - L_shortest) / L_shortest.
// Equals 1 for a shortest path, goes negative past twice its length.
double length_reward(const RoadGrid& grid, const PathSet& set, const Path& p);

// True when p satisfies adjacency, simplicity and the lateral-pair ban.
bool is_valid_path(const RoadGrid& grid, const Path& p);

}  // namespace lcp
