#include "lcp/road_grid.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace lcp {

std::ostream& operator<<(std::ostream& os, const GridPosition& p) {
    return os << '(' << p.row << ',' << p.lane << ')';
}

std::string to_string(const GridPosition& p) {
    std::ostringstream oss;
    oss << p;
    return oss.str();
}

RoadGrid::RoadGrid(int rows, int lanes, double cell_length_m, double cell_width_m)
    : rows_(rows), lanes_(lanes), cell_length_m_(cell_length_m),
      cell_width_m_(cell_width_m) {
    if (rows < 1 || lanes < 1) {
        throw ValidationError("grid must have at least one row and one lane");
    }
    if (!(cell_length_m > 0.0) || !(cell_width_m > 0.0)) {
        throw ValidationError("grid cell dimensions must be positive");
    }
}

std::string to_string(Action a) {
    switch (a) {
        case Action::Forward:       return "Forward";
        case Action::LateralRight:  return "LateralRight";
        case Action::LateralLeft:   return "LateralLeft";
        case Action::DiagonalRight: return "DiagonalRight";
        case Action::DiagonalLeft:  return "DiagonalLeft";
    }
    return "?";
}

GridPosition apply_action(const RoadGrid& grid, const GridPosition& pos, Action a) {
    const auto [di, dj] = action_delta(a);
    const GridPosition target{pos.row + di, pos.lane + dj};
    if (!grid.contains(target)) {
        throw OutOfBoundsError(to_string(a) + " from " + to_string(pos) +
                               " leaves the grid");
    }
    return target;
}

Action action_between(const GridPosition& from, const GridPosition& to) {
    const int di = to.row - from.row;
    const int dj = to.lane - from.lane;
    for (Action a : kActionOrder) {
        if (action_delta(a) == std::pair{di, dj}) return a;
    }
    throw NotAdjacentError("no permissible action connects " + to_string(from) +
                           " and " + to_string(to));
}

double segment_length(const RoadGrid& grid, const GridPosition& from,
                      const GridPosition& to) {
    // Symmetric in its arguments: look for a connecting action either way.
    const int di = std::abs(to.row - from.row);
    const int dj = std::abs(to.lane - from.lane);
    if (di == 1 && dj == 0) return grid.cell_length_m();
    if (di == 0 && dj == 1) return grid.cell_width_m();
    if (di == 1 && dj == 1) return std::hypot(grid.cell_length_m(), grid.cell_width_m());
    throw NotAdjacentError("cells " + to_string(from) + " and " + to_string(to) +
                           " are not one step apart");
}

}  // namespace lcp
