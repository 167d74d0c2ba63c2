#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lcp/markov.hpp"
#include "lcp/path_search.hpp"
#include "lcp/road_grid.hpp"

namespace lcp {

inline constexpr double kMetersPerSecondPerMph = 0.44704;

constexpr double mph_to_mps(double mph) { return mph * kMetersPerSecondPerMph; }
constexpr double mps_to_mph(double mps) { return mps / kMetersPerSecondPerMph; }

// A surrounding vehicle: start cell, current speed and its layered model.
struct VehicleSpec {
    std::string id;
    GridPosition start;
    double speed_mph = 0.0;
    LayeredVehicleModel model;

    friend bool operator==(const VehicleSpec&, const VehicleSpec&) = default;
};

struct EgoState {
    GridPosition start;
    GridPosition goal;
    double speed_mph = 0.0;

    friend bool operator==(const EgoState&, const EgoState&) = default;
};

// Crash probability of each vehicle at one waypoint.
struct WaypointRisk {
    GridPosition waypoint;
    std::vector<std::pair<std::string, double>> per_vehicle;  // id -> P_CC
};

// Speed a vehicle would need to reach a waypoint in time t_e. A waypoint
// behind the vehicle or a speed past 60 mph is flagged unreachable
// rather than treated as an error.
struct RequiredSpeed {
    double mph = 0.0;
    bool reachable = false;
};

// Seconds for the ego to reach waypoint_index along the path
// (cumulative along-path distance over ego speed). The start waypoint
// (index 0) is excluded by precondition.
double travel_time(const RoadGrid& grid, const Path& path, int waypoint_index,
                   const EgoState& ego);

RequiredSpeed required_speed(const RoadGrid& grid, const VehicleSpec& vehicle,
                             const GridPosition& waypoint, double t_e);

// P_CC = P_C * P_L evaluated at k = round(t_e / time_step_s) chain steps;
// zero when the waypoint is unreachable for the vehicle.
double crash_probability(const RoadGrid& grid, const VehicleSpec& vehicle,
                         const GridPosition& waypoint, double t_e,
                         double time_step_s = 1.0);

WaypointRisk waypoint_risk(const RoadGrid& grid,
                           const std::vector<VehicleSpec>& vehicles,
                           const GridPosition& waypoint, double t_e,
                           double time_step_s = 1.0);

}  // namespace lcp
