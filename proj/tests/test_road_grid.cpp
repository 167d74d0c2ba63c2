#include <doctest.h>

#include "lcp/road_grid.hpp"

using namespace lcp;

TEST_CASE("grid construction validates dimensions") {
    CHECK_NOTHROW(RoadGrid(6, 5));
    CHECK_THROWS_AS(RoadGrid(0, 5), ValidationError);
    CHECK_THROWS_AS(RoadGrid(6, 0), ValidationError);
    CHECK_THROWS_AS(RoadGrid(6, 5, -1.0, 4.0), ValidationError);
    CHECK_THROWS_AS(RoadGrid(6, 5, 10.0, 0.0), ValidationError);

    const RoadGrid g(6, 5);
    CHECK(g.cell_length_m() == 10.0);
    CHECK(g.cell_width_m() == 4.0);
}

TEST_CASE("apply_action follows the directed edge set") {
    const RoadGrid g(6, 5);
    CHECK(apply_action(g, {0, 0}, Action::Forward) == GridPosition{1, 0});
    CHECK(apply_action(g, {2, 3}, Action::DiagonalRight) == GridPosition{3, 4});
    CHECK(apply_action(g, {1, 1}, Action::LateralRight) == GridPosition{1, 2});
    CHECK(apply_action(g, {1, 1}, Action::LateralLeft) == GridPosition{1, 0});
    CHECK(apply_action(g, {1, 1}, Action::DiagonalLeft) == GridPosition{2, 0});

    CHECK_THROWS_AS(apply_action(g, {0, 0}, Action::LateralLeft), OutOfBoundsError);
    CHECK_THROWS_AS(apply_action(g, {5, 0}, Action::Forward), OutOfBoundsError);
    CHECK_THROWS_AS(apply_action(g, {0, 4}, Action::LateralRight), OutOfBoundsError);
}

TEST_CASE("action_between inverts apply_action") {
    const RoadGrid g(6, 5);
    CHECK(action_between({1, 1}, {1, 2}) == Action::LateralRight);
    CHECK(action_between({0, 0}, {1, 1}) == Action::DiagonalRight);
    CHECK_THROWS_AS(action_between({0, 0}, {2, 0}), NotAdjacentError);
    CHECK_THROWS_AS(action_between({0, 0}, {0, 0}), NotAdjacentError);
    // backward row step is not a permissible action
    CHECK_THROWS_AS(action_between({1, 0}, {0, 0}), NotAdjacentError);

    for (int row = 0; row < g.rows(); ++row) {
        for (int lane = 0; lane < g.lanes(); ++lane) {
            for (Action a : kActionOrder) {
                const GridPosition from{row, lane};
                GridPosition to;
                try {
                    to = apply_action(g, from, a);
                } catch (const OutOfBoundsError&) {
                    continue;
                }
                CHECK(action_between(from, to) == a);
            }
        }
    }
}

TEST_CASE("segment_length measures center-to-center distances") {
    const RoadGrid g(6, 5);
    CHECK(segment_length(g, {0, 0}, {1, 0}) == doctest::Approx(10.0));
    CHECK(segment_length(g, {0, 0}, {0, 1}) == doctest::Approx(4.0));
    CHECK(segment_length(g, {0, 0}, {1, 1}) ==
          doctest::Approx(10.770329614269007).epsilon(1e-12));
    CHECK_THROWS_AS(segment_length(g, {0, 0}, {2, 0}), NotAdjacentError);

    SUBCASE("symmetric in its arguments") {
        for (int row = 0; row + 1 < g.rows(); ++row) {
            for (int lane = 0; lane + 1 < g.lanes(); ++lane) {
                const GridPosition a{row, lane};
                for (const GridPosition b :
                     {GridPosition{row + 1, lane}, GridPosition{row, lane + 1},
                      GridPosition{row + 1, lane + 1}}) {
                    CHECK(segment_length(g, a, b) == segment_length(g, b, a));
                }
            }
        }
    }

    SUBCASE("lateral < forward < diagonal for the default cell") {
        const double lat = segment_length(g, {0, 0}, {0, 1});
        const double fwd = segment_length(g, {0, 0}, {1, 0});
        const double diag = segment_length(g, {0, 0}, {1, 1});
        CHECK(lat < fwd);
        CHECK(fwd < diag);
    }
}
