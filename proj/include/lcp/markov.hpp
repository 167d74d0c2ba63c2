#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lcp/errors.hpp"

namespace lcp {

inline constexpr int kSpeedRangeCount = 12;
inline constexpr double kMaxSpeedMph = 60.0;
inline constexpr double kSpeedBinWidthMph = 5.0;
inline constexpr double kRowSumTolerance = 1e-9;

// Square row-stochastic matrix. Construction goes through validated(),
// which checks entry bounds and row sums.
class StochasticMatrix {
  public:
    static StochasticMatrix validated(Eigen::MatrixXd m);

    const Eigen::MatrixXd& matrix() const { return m_; }
    Eigen::Index size() const { return m_.rows(); }
    double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    friend bool operator==(const StochasticMatrix& a, const StochasticMatrix& b) {
        return a.m_ == b.m_;
    }

  private:
    friend StochasticMatrix power(const StochasticMatrix&, int);
    explicit StochasticMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
    Eigen::MatrixXd m_;
};

// k-fold matrix product; k = 0 yields the identity.
StochasticMatrix power(const StochasticMatrix& m, int k);

// One of the twelve 5 mph speed ranges A..L covering [0, 60] mph.
struct SpeedRange {
    int index = 0;

    double lower_mph() const { return kSpeedBinWidthMph * index; }
    double upper_mph() const { return kSpeedBinWidthMph * (index + 1); }
    char label() const { return static_cast<char>('A' + index); }

    friend bool operator==(const SpeedRange&, const SpeedRange&) = default;
};

// Bins a speed into its range: index = floor(v/5), 60 mph capped into L.
// Throws SpeedOutOfRangeError outside [0, 60].
SpeedRange speed_bin(double speed_mph);

// Two-layer Markov model of one surrounding vehicle: a 12x12 speed-range
// chain and one lane chain per speed range.
struct LayeredVehicleModel {
    StochasticMatrix speed_matrix;
    std::vector<StochasticMatrix> lane_matrices;  // one per speed range

    friend bool operator==(const LayeredVehicleModel&, const LayeredVehicleModel&) = default;
};

LayeredVehicleModel make_layered_model(StochasticMatrix speed,
                                       std::vector<StochasticMatrix> lanes);

// P_m^steps[from, to]
double speed_transition_prob(const LayeredVehicleModel& model, SpeedRange from,
                             SpeedRange to, int steps);

// Q_m^steps(range)[from_lane, to_lane]
double lane_transition_prob(const LayeredVehicleModel& model, SpeedRange range,
                            int from_lane, int to_lane, int steps);

// Published example matrices, used as defaults for unspecified vehicles.
StochasticMatrix default_speed_matrix();
StochasticMatrix default_lane_matrix(int lanes);
LayeredVehicleModel default_vehicle_model(int lanes);

}  // namespace lcp
