#pragma once

#include <cstdint>
#include <vector>

#include "lcp/markov.hpp"

namespace lcp {

// Empirical k-step distribution of a chain against the matrix-power row.
struct ChainSampleReport {
    int start_state = 0;
    int horizon = 0;
    std::int64_t samples = 0;
    std::vector<double> empirical;
    std::vector<double> reference;
    double max_abs_error = 0.0;
};

// Joint empirical distribution of the layered model over (speed bin, lane),
// with exact reference marginals from the layer recursion.
struct LayeredSampleReport {
    int start_speed_bin = 0;
    int start_lane = 0;
    int horizon = 0;
    std::int64_t samples = 0;
    Eigen::MatrixXd joint_empirical;          // bins x lanes
    std::vector<double> speed_marginal;
    std::vector<double> lane_marginal;
    std::vector<double> speed_reference;      // power of the speed matrix
    std::vector<double> lane_reference;       // exact layered recursion
    double speed_max_abs_error = 0.0;
    double lane_max_abs_error = 0.0;
};

// Simulates `samples` independent walks of `horizon` steps, all drawn
// from a deterministic generator seeded with `seed`; reports are
// bit-identical for equal inputs.
ChainSampleReport sample_chain(const StochasticMatrix& m, int start, int horizon,
                               std::int64_t samples, std::uint64_t seed);

// Per step the speed bin moves first, then the lane is drawn from the
// new bin's lane matrix.
LayeredSampleReport sample_layered(const LayeredVehicleModel& model,
                                   int start_speed_bin, int start_lane, int horizon,
                                   std::int64_t samples, std::uint64_t seed);

// Exact joint distribution of the layered model after `horizon` steps
// (bins x lanes); the oracle behind the sampled report.
Eigen::MatrixXd layered_distribution(const LayeredVehicleModel& model,
                                     int start_speed_bin, int start_lane,
                                     int horizon);

}  // namespace lcp
