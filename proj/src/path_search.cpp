#include "lcp/path_search.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <optional>
#include <vector>

namespace lcp {
namespace {

class PathEnumerator {
  public:
    PathEnumerator(const RoadGrid& grid, GridPosition start, GridPosition goal)
        : grid_(grid), goal_(goal),
          visited_(static_cast<std::size_t>(grid.rows()) * grid.lanes(), false) {
        trail_.reserve(visited_.size());
        trail_.push_back(start);
        mark(start, true);
    }

    std::vector<Path> run() {
        expand(std::nullopt);
        return std::move(found_);
    }

  private:
    std::size_t cell_index(const GridPosition& p) const {
        return static_cast<std::size_t>(p.row) * grid_.lanes() + p.lane;
    }
    void mark(const GridPosition& p, bool v) { visited_[cell_index(p)] = v; }

    void expand(std::optional<Action> last) {
        const GridPosition pos = trail_.back();
        if (pos == goal_) {
            found_.push_back(Path{static_cast<int>(found_.size()), trail_});
            return;
        }
        for (Action a : kActionOrder) {
            const auto [di, dj] = action_delta(a);
            const GridPosition next{pos.row + di, pos.lane + dj};
            if (!grid_.contains(next)) continue;
            if (visited_[cell_index(next)]) continue;
            if (is_pure_lateral(a)) {
                if (last && is_pure_lateral(*last)) continue;
                // lane shifts must move toward the goal lane
                if (std::abs(next.lane - goal_.lane) >= std::abs(pos.lane - goal_.lane))
                    continue;
            }
            trail_.push_back(next);
            mark(next, true);
            expand(a);
            mark(next, false);
            trail_.pop_back();
        }
    }

    const RoadGrid& grid_;
    GridPosition goal_;
    std::vector<bool> visited_;
    std::vector<GridPosition> trail_;
    std::vector<Path> found_;
};

}  // namespace

PathSet enumerate_paths(const RoadGrid& grid, const GridPosition& start,
                        const GridPosition& goal) {
    if (!grid.contains(start) || !grid.contains(goal)) {
        throw OutOfBoundsError("start or goal outside the grid");
    }
    PathSet set;
    set.paths = PathEnumerator(grid, start, goal).run();
    if (set.paths.empty()) {
        throw NoPathError("no admissible path from " + to_string(start) + " to " +
                          to_string(goal));
    }
    double shortest = std::numeric_limits<double>::infinity();
    double longest = 0.0;
    for (const Path& p : set.paths) {
        const double len = path_length(grid, p);
        shortest = std::min(shortest, len);
        longest = std::max(longest, len);
    }
    set.shortest_length_m = shortest;
    set.longest_length_m = longest;
    return set;
}

double path_length(const RoadGrid& grid, const Path& p) {
    double total = 0.0;
    for (std::size_t i = 1; i < p.waypoints.size(); ++i) {
        total += segment_length(grid, p.waypoints[i - 1], p.waypoints[i]);
    }
    return total;
}

double length_reward(const RoadGrid& grid, const PathSet& set, const Path& p) {
    const double shortest = set.shortest_length_m;
    return 1.0 - (path_length(grid, p) - shortest) / shortest;
}

bool is_valid_path(const RoadGrid& grid, const Path& p) {
    if (p.waypoints.empty()) return false;
    std::vector<bool> seen(static_cast<std::size_t>(grid.rows()) * grid.lanes(), false);
    std::optional<Action> last;
    for (std::size_t i = 0; i < p.waypoints.size(); ++i) {
        const GridPosition& w = p.waypoints[i];
        if (!grid.contains(w)) return false;
        const std::size_t idx = static_cast<std::size_t>(w.row) * grid.lanes() + w.lane;
        if (seen[idx]) return false;
        seen[idx] = true;
        if (i > 0) {
            Action a;
            try {
                a = action_between(p.waypoints[i - 1], w);
            } catch (const NotAdjacentError&) {
                return false;
            }
            if (last && is_pure_lateral(*last) && is_pure_lateral(a)) return false;
            last = a;
        }
    }
    return true;
}

}  // namespace lcp
