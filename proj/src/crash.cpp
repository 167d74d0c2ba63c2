#include "lcp/crash.hpp"

#include <cmath>
#include <stdexcept>

namespace lcp {

double travel_time(const RoadGrid& grid, const Path& path, int waypoint_index,
                   const EgoState& ego) {
    if (waypoint_index < 1 ||
        waypoint_index >= static_cast<int>(path.waypoints.size())) {
        throw std::invalid_argument("waypoint_index must address a moved-to waypoint");
    }
    if (!(ego.speed_mph > 0.0)) {
        throw ZeroSpeedError("ego speed must be positive");
    }
    double dist = 0.0;
    for (int i = 1; i <= waypoint_index; ++i) {
        dist += segment_length(grid, path.waypoints[i - 1], path.waypoints[i]);
    }
    return dist / mph_to_mps(ego.speed_mph);
}

RequiredSpeed required_speed(const RoadGrid& grid, const VehicleSpec& vehicle,
                             const GridPosition& waypoint, double t_e) {
    if (!(t_e > 0.0)) throw std::invalid_argument("t_e must be positive");
    if (waypoint.row < vehicle.start.row) {
        return {0.0, false};  // vehicles do not reverse
    }
    const double dist =
        std::hypot((waypoint.row - vehicle.start.row) * grid.cell_length_m(),
                   (waypoint.lane - vehicle.start.lane) * grid.cell_width_m());
    const double mph = mps_to_mph(dist / t_e);
    return {mph, mph <= kMaxSpeedMph};
}

double crash_probability(const RoadGrid& grid, const VehicleSpec& vehicle,
                         const GridPosition& waypoint, double t_e,
                         double time_step_s) {
    const RequiredSpeed req = required_speed(grid, vehicle, waypoint, t_e);
    if (!req.reachable) return 0.0;
    const int steps = static_cast<int>(std::lround(t_e / time_step_s));
    const SpeedRange current = speed_bin(vehicle.speed_mph);
    const SpeedRange needed = speed_bin(req.mph);
    const double p_c = speed_transition_prob(vehicle.model, current, needed, steps);
    const double p_l = lane_transition_prob(vehicle.model, needed,
                                            vehicle.start.lane, waypoint.lane, steps);
    return p_c * p_l;
}

WaypointRisk waypoint_risk(const RoadGrid& grid,
                           const std::vector<VehicleSpec>& vehicles,
                           const GridPosition& waypoint, double t_e,
                           double time_step_s) {
    WaypointRisk risk{waypoint, {}};
    risk.per_vehicle.reserve(vehicles.size());
    for (const VehicleSpec& v : vehicles) {
        risk.per_vehicle.emplace_back(
            v.id, crash_probability(grid, v, waypoint, t_e, time_step_s));
    }
    return risk;
}

}  // namespace lcp
