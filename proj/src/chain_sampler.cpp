#include "lcp/chain_sampler.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace lcp {
namespace {

double next_uniform(std::mt19937_64& rng) {
    // 53-bit mantissa in [0, 1); avoids distribution objects so results
    // stay identical across standard library implementations.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int step_state(const Eigen::MatrixXd& m, int state, double u) {
    double acc = 0.0;
    const Eigen::Index n = m.cols();
    for (Eigen::Index j = 0; j < n; ++j) {
        acc += m(state, j);
        if (u < acc) return static_cast<int>(j);
    }
    return static_cast<int>(n - 1);
}

void check_sampling_args(Eigen::Index n, int start, int horizon, std::int64_t samples) {
    if (start < 0 || start >= n) throw std::invalid_argument("start state out of range");
    if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
    if (samples < 1) throw std::invalid_argument("need at least one sample");
}

}  // namespace

ChainSampleReport sample_chain(const StochasticMatrix& m, int start, int horizon,
                               std::int64_t samples, std::uint64_t seed) {
    const Eigen::Index n = m.size();
    check_sampling_args(n, start, horizon, samples);

    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n), 0);
    for (std::int64_t s = 0; s < samples; ++s) {
        int state = start;
        for (int t = 0; t < horizon; ++t) {
            state = step_state(m.matrix(), state, next_uniform(rng));
        }
        ++counts[static_cast<std::size_t>(state)];
    }

    ChainSampleReport rep;
    rep.start_state = start;
    rep.horizon = horizon;
    rep.samples = samples;
    rep.empirical.resize(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < rep.empirical.size(); ++i) {
        rep.empirical[i] = static_cast<double>(counts[i]) / static_cast<double>(samples);
    }
    const Eigen::MatrixXd ref = power(m, horizon).matrix();
    rep.reference.resize(static_cast<std::size_t>(n));
    rep.max_abs_error = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        rep.reference[static_cast<std::size_t>(j)] = ref(start, j);
        rep.max_abs_error = std::max(
            rep.max_abs_error,
            std::abs(rep.empirical[static_cast<std::size_t>(j)] - ref(start, j)));
    }
    return rep;
}

Eigen::MatrixXd layered_distribution(const LayeredVehicleModel& model,
                                     int start_speed_bin, int start_lane,
                                     int horizon) {
    const Eigen::Index lanes = model.lane_matrices.at(0).size();
    Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(kSpeedRangeCount, lanes);
    dist(start_speed_bin, start_lane) = 1.0;
    const Eigen::MatrixXd& p = model.speed_matrix.matrix();
    for (int t = 0; t < horizon; ++t) {
        Eigen::MatrixXd next = Eigen::MatrixXd::Zero(kSpeedRangeCount, lanes);
        for (int b = 0; b < kSpeedRangeCount; ++b) {
            for (Eigen::Index l = 0; l < lanes; ++l) {
                const double mass = dist(b, l);
                if (mass == 0.0) continue;
                for (int b2 = 0; b2 < kSpeedRangeCount; ++b2) {
                    const double pb = p(b, b2);
                    if (pb == 0.0) continue;
                    const Eigen::MatrixXd& q = model.lane_matrices[b2].matrix();
                    for (Eigen::Index l2 = 0; l2 < lanes; ++l2) {
                        next(b2, l2) += mass * pb * q(l, l2);
                    }
                }
            }
        }
        dist = std::move(next);
    }
    return dist;
}

LayeredSampleReport sample_layered(const LayeredVehicleModel& model,
                                   int start_speed_bin, int start_lane, int horizon,
                                   std::int64_t samples, std::uint64_t seed) {
    const Eigen::Index lanes = model.lane_matrices.at(0).size();
    check_sampling_args(kSpeedRangeCount, start_speed_bin, horizon, samples);
    if (start_lane < 0 || start_lane >= lanes) {
        throw std::invalid_argument("start lane out of range");
    }

    std::mt19937_64 rng(seed);
    Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(kSpeedRangeCount, lanes);
    for (std::int64_t s = 0; s < samples; ++s) {
        int bin = start_speed_bin;
        int lane = start_lane;
        for (int t = 0; t < horizon; ++t) {
            bin = step_state(model.speed_matrix.matrix(), bin, next_uniform(rng));
            lane = step_state(model.lane_matrices[bin].matrix(), lane,
                              next_uniform(rng));
        }
        counts(bin, lane) += 1.0;
    }

    LayeredSampleReport rep;
    rep.start_speed_bin = start_speed_bin;
    rep.start_lane = start_lane;
    rep.horizon = horizon;
    rep.samples = samples;
    rep.joint_empirical = counts / static_cast<double>(samples);

    rep.speed_marginal.assign(kSpeedRangeCount, 0.0);
    rep.lane_marginal.assign(static_cast<std::size_t>(lanes), 0.0);
    for (int b = 0; b < kSpeedRangeCount; ++b) {
        for (Eigen::Index l = 0; l < lanes; ++l) {
            rep.speed_marginal[b] += rep.joint_empirical(b, l);
            rep.lane_marginal[static_cast<std::size_t>(l)] += rep.joint_empirical(b, l);
        }
    }

    const Eigen::MatrixXd speed_ref = power(model.speed_matrix, horizon).matrix();
    const Eigen::MatrixXd joint_ref =
        layered_distribution(model, start_speed_bin, start_lane, horizon);
    rep.speed_reference.assign(kSpeedRangeCount, 0.0);
    rep.lane_reference.assign(static_cast<std::size_t>(lanes), 0.0);
    for (int b = 0; b < kSpeedRangeCount; ++b) {
        rep.speed_reference[b] = speed_ref(start_speed_bin, b);
        for (Eigen::Index l = 0; l < lanes; ++l) {
            rep.lane_reference[static_cast<std::size_t>(l)] += joint_ref(b, l);
        }
    }
    rep.speed_max_abs_error = 0.0;
    for (int b = 0; b < kSpeedRangeCount; ++b) {
        rep.speed_max_abs_error = std::max(
            rep.speed_max_abs_error,
            std::abs(rep.speed_marginal[b] - rep.speed_reference[b]));
    }
    rep.lane_max_abs_error = 0.0;
    for (std::size_t l = 0; l < rep.lane_marginal.size(); ++l) {
        rep.lane_max_abs_error = std::max(
            rep.lane_max_abs_error, std::abs(rep.lane_marginal[l] - rep.lane_reference[l]));
    }
    return rep;
}

}  // namespace lcp
