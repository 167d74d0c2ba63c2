#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include "lcp/errors.hpp"

namespace lcp {

// Cell coordinate on the road lattice. `row` grows in the travel
// direction, `lane` indexes lane columns left to right.
struct GridPosition {
    int row = 0;
    int lane = 0;

    friend bool operator==(const GridPosition&, const GridPosition&) = default;
};

std::ostream& operator<<(std::ostream& os, const GridPosition& p);
std::string to_string(const GridPosition& p);

// Metric grid model of a straight road segment.
class RoadGrid {
  public:
    RoadGrid(int rows, int lanes, double cell_length_m = 10.0,
             double cell_width_m = 4.0);

    int rows() const { return rows_; }
    int lanes() const { return lanes_; }
    double cell_length_m() const { return cell_length_m_; }
    double cell_width_m() const { return cell_width_m_; }

    bool contains(const GridPosition& p) const {
        return p.row >= 0 && p.row < rows_ && p.lane >= 0 && p.lane < lanes_;
    }

    friend bool operator==(const RoadGrid&, const RoadGrid&) = default;

  private:
    int rows_;
    int lanes_;
    double cell_length_m_;
    double cell_width_m_;
};

enum class Action {
    Forward,
    LateralRight,
    LateralLeft,
    DiagonalRight,
    DiagonalLeft,
};

// Expansion order used by the path search; also the tie-break order.
inline constexpr std::array<Action, 5> kActionOrder = {
    Action::Forward,      Action::DiagonalRight, Action::DiagonalLeft,
    Action::LateralRight, Action::LateralLeft,
};

constexpr bool is_pure_lateral(Action a) {
    return a == Action::LateralRight || a == Action::LateralLeft;
}

// Row/lane displacement of one action.
constexpr std::pair<int, int> action_delta(Action a) {
    switch (a) {
        case Action::Forward:       return {1, 0};
        case Action::LateralRight:  return {0, 1};
        case Action::LateralLeft:   return {0, -1};
        case Action::DiagonalRight: return {1, 1};
        case Action::DiagonalLeft:  return {1, -1};
    }
    return {0, 0};
}

std::string to_string(Action a);

// Target cell of taking `a` from `pos`. Throws OutOfBoundsError if the
// move leaves the grid.
GridPosition apply_action(const RoadGrid& grid, const GridPosition& pos, Action a);

// Unique action connecting two cells. Throws NotAdjacentError if the
// cells are not one permissible step apart.
Action action_between(const GridPosition& from, const GridPosition& to);

// Center-to-center distance of one permissible step, in meters.
double segment_length(const RoadGrid& grid, const GridPosition& from,
                      const GridPosition& to);

}  // namespace lcp
