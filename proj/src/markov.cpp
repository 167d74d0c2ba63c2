#include "lcp/markov.hpp"

#include <cmath>
#include <string>

namespace lcp {

StochasticMatrix StochasticMatrix::validated(Eigen::MatrixXd m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw ValidationError("transition matrix must be square and non-empty");
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double v = m(i, j);
            if (!(v >= 0.0) || v > 1.0) {
                throw NotStochasticError("row " + std::to_string(i) +
                                             " has entry outside [0,1]",
                                         static_cast<int>(i), v);
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kRowSumTolerance) {
            throw NotStochasticError("row " + std::to_string(i) + " sums to " +
                                         std::to_string(sum) + ", expected 1",
                                     static_cast<int>(i), sum);
        }
    }
    return StochasticMatrix(std::move(m));
}

StochasticMatrix power(const StochasticMatrix& m, int k) {
    if (k < 0) throw ValidationError("matrix power requires k >= 0");
    const Eigen::Index n = m.size();
    Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < k; ++i) acc = acc * m.matrix();
    return StochasticMatrix(std::move(acc));
}

SpeedRange speed_bin(double speed_mph) {
    if (!(speed_mph >= 0.0) || speed_mph > kMaxSpeedMph) {
        throw SpeedOutOfRangeError("speed " + std::to_string(speed_mph) +
                                   " mph outside [0, 60]");
    }
    const int idx = std::min(static_cast<int>(speed_mph / kSpeedBinWidthMph),
                             kSpeedRangeCount - 1);
    return SpeedRange{idx};
}

LayeredVehicleModel make_layered_model(StochasticMatrix speed,
                                       std::vector<StochasticMatrix> lanes) {
    if (speed.size() != kSpeedRangeCount) {
        throw ValidationError("speed matrix must be 12x12");
    }
    if (lanes.size() != kSpeedRangeCount) {
        throw ValidationError("expected one lane matrix per speed range");
    }
    for (std::size_t i = 1; i < lanes.size(); ++i) {
        if (lanes[i].size() != lanes[0].size()) {
            throw ValidationError("lane matrices must share one dimension");
        }
    }
    return LayeredVehicleModel{std::move(speed), std::move(lanes)};
}

double speed_transition_prob(const LayeredVehicleModel& model, SpeedRange from,
                             SpeedRange to, int steps) {
    return power(model.speed_matrix, steps)(from.index, to.index);
}

double lane_transition_prob(const LayeredVehicleModel& model, SpeedRange range,
                            int from_lane, int to_lane, int steps) {
    const StochasticMatrix& q = model.lane_matrices.at(range.index);
    if (from_lane < 0 || from_lane >= q.size() || to_lane < 0 || to_lane >= q.size()) {
        throw OutOfBoundsError("lane index outside the lane matrix");
    }
    return power(q, steps)(from_lane, to_lane);
}

StochasticMatrix default_speed_matrix() {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(kSpeedRangeCount, kSpeedRangeCount);
    p(0, 0) = 0.85; p(0, 1) = 0.15;
    p(1, 0) = 0.01; p(1, 1) = 0.80; p(1, 2) = 0.19;
    p(2, 2) = 0.99; p(2, 3) = 0.01;
    for (int i = 3; i <= 10; ++i) {
        p(i, i - 1) = 0.01; p(i, i) = 0.98; p(i, i + 1) = 0.01;
    }
    p(11, 10) = 0.01; p(11, 11) = 0.99;
    return StochasticMatrix::validated(std::move(p));
}

StochasticMatrix default_lane_matrix(int lanes) {
    if (lanes < 1) throw ValidationError("lane matrix needs at least one lane");
    if (lanes == 5) {
        Eigen::MatrixXd q(5, 5);
        q << 0.8, 0.2, 0.0, 0.0, 0.0,
             0.1, 0.7, 0.2, 0.0, 0.0,
             0.0, 0.3, 0.6, 0.1, 0.0,
             0.0, 0.0, 0.2, 0.7, 0.1,
             0.0, 0.0, 0.0, 0.4, 0.6;
        return StochasticMatrix::validated(std::move(q));
    }
    // Other lane counts get a generic sticky tridiagonal chain.
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(lanes, lanes);
    for (int i = 0; i < lanes; ++i) {
        if (lanes == 1) {
            q(i, i) = 1.0;
            continue;
        }
        const bool left = i > 0;
        const bool right = i + 1 < lanes;
        q(i, i) = 0.8;
        if (left && right) {
            q(i, i - 1) = 0.1;
            q(i, i + 1) = 0.1;
        } else if (right) {
            q(i, i + 1) = 0.2;
        } else {
            q(i, i - 1) = 0.2;
        }
    }
    return StochasticMatrix::validated(std::move(q));
}

LayeredVehicleModel default_vehicle_model(int lanes) {
    std::vector<StochasticMatrix> qs(kSpeedRangeCount, default_lane_matrix(lanes));
    return make_layered_model(default_speed_matrix(), std::move(qs));
}

}  // namespace lcp
