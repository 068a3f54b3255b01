// Copyright 2026 The cycledom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cycledom/optimizer.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cycledom/analytics.hpp"
#include "cycledom/error.hpp"
#include "oracles.hpp"

namespace cycledom {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(OptimizeTheta, MatchesSchedule) {
    for (int n = 5; n <= 13; ++n) {
        const auto r = optimize_theta(n, default_grid_size(n));
        EXPECT_NEAR(r.theta_star, schedule_theta(n), 1e-8) << n;
        EXPECT_NEAR(r.d_star, closed_form_long(n, schedule_theta(n)), 1e-12);
        EXPECT_NEAR(r.n_theta_star, n * r.theta_star, 1e-12);
        EXPECT_EQ(r.theta_grid.size(), static_cast<std::size_t>(default_grid_size(n) + 1));
        EXPECT_EQ(r.values.size(), r.theta_grid.size());
    }
}

TEST(OptimizeTheta, DetectsTheTieAtTen) {
    const auto r = optimize_theta(10, default_grid_size(10));
    ASSERT_EQ(r.ties.size(), 2u);
    EXPECT_NEAR(r.ties[0], 2 * kPi / 10, 1e-8);
    EXPECT_NEAR(r.ties[1], 4 * kPi / 10, 1e-8);
    EXPECT_NEAR(closed_form_long(10, r.ties[0]), closed_form_long(10, r.ties[1]), 1e-9);
    EXPECT_EQ(optimize_theta(9, default_grid_size(9)).ties.size(), 1u);
    EXPECT_EQ(optimize_theta(11, default_grid_size(11)).ties.size(), 1u);
}

TEST(OptimizeTheta, RejectsCoarseGrids) {
    try {
        optimize_theta(10, 39);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::Precondition);
    }
    EXPECT_NO_THROW(optimize_theta(10, 40));
    EXPECT_THROW(optimize_theta(2, 512), Error);
}

TEST(Scan, StepsAreSixOrSevenApart) {
    const auto rows = theta_step_scan(5, 37);
    ASSERT_EQ(rows.size(), 33u);
    const auto steps = step_positions(rows);
    ASSERT_GE(steps.size(), 3u);
    EXPECT_EQ(steps.front(), 11);
    for (std::size_t k = 1; k < steps.size(); ++k) {
        const int gap = steps[k] - steps[k - 1];
        EXPECT_TRUE(gap == 6 || gap == 7) << steps[k - 1] << " -> " << steps[k];
    }
    // Steps recur 20 apart once both ends are in range.
    for (int s : steps) {
        if (s + 20 <= 37) EXPECT_NE(std::find(steps.begin(), steps.end(), s + 20), steps.end()) << s;
    }
    for (const auto &row : rows) {
        if (row.n <= 10) EXPECT_NEAR(row.n_theta_star, 2 * kPi, 1e-7);
    }
}

TEST(Scan, WorkerCountDoesNotChangeRows) {
    const auto a = theta_step_scan(5, 20, 1);
    const auto b = theta_step_scan(5, 20, 3);
    std::ostringstream sa, sb;
    write_scan_csv(a, sa, 17);
    write_scan_csv(b, sb, 17);
    EXPECT_EQ(sa.str(), sb.str());
    EXPECT_EQ(sa.str().substr(0, sa.str().find('\n')), "n,theta_star,n_theta_star,d_star");
    EXPECT_THROW(theta_step_scan(4, 10), Error);
    EXPECT_THROW(theta_step_scan(10, 9), Error);
}

TEST(FullOptimization, ReachesTheAnsatzValue) {
    for (int n = 5; n <= 9; ++n) {
        const auto r = optimize_full(n, kDefaultRestarts, 0);
        const double ansatz = closed_form_long(n, schedule_theta(n));
        EXPECT_NEAR(r.value, ansatz, 1e-6) << n;
        EXPECT_EQ(r.strategy.alice[0], 0.0);
        EXPECT_NEAR(exact_expectation_quantum(DominationTable::build(CycleGame(n)), r.strategy), r.value, 1e-12);
        EXPECT_FALSE(r.lower_bound_only);
        EXPECT_EQ(r.restarts, kDefaultRestarts);
    }
}

TEST(FullOptimization, DeterministicAcrossWorkers) {
    const auto a = optimize_full(7, 8, 42, 1);
    const auto b = optimize_full(7, 8, 42, 4);
    const auto c = optimize_full(7, 8, 42, 1);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.strategy.alice, b.strategy.alice);
    EXPECT_EQ(a.strategy.bob, b.strategy.bob);
    EXPECT_EQ(a.best_restart, b.best_restart);
    EXPECT_EQ(a.strategy.alice, c.strategy.alice);
    EXPECT_TRUE(optimize_full(14, 1, 0).lower_bound_only);
    EXPECT_THROW(optimize_full(5, 0, 0), Error);
}

TEST(ClassicalSearch, ExhaustiveMatchesBruteForce) {
    for (int n = 3; n <= 7; ++n) {
        const auto t = DominationTable::build(CycleGame(n));
        const auto best = classical_optimum(t, ClassicalSearchMode::Exhaustive);
        EXPECT_EQ(best.value, oracle::classical_brute_force(n)) << n;
        EXPECT_EQ(exact_expectation_classical(t, best.strategy), best.value);
    }
}

TEST(ClassicalSearch, KnownOptima) {
    const auto v = [](int n) {
        return classical_optimum(DominationTable::build(CycleGame(n)), ClassicalSearchMode::Exhaustive).value;
    };
    EXPECT_EQ(v(5), Rational(23, 5));
    EXPECT_EQ(v(6), Rational(89, 18));
    EXPECT_EQ(v(7), Rational(249, 49));
}

TEST(ClassicalSearch, LocalSearchNeverBeatsExhaustive) {
    for (int n = 5; n <= 10; ++n) {
        const auto t = DominationTable::build(CycleGame(n));
        const auto ex = classical_optimum(t, ClassicalSearchMode::Exhaustive);
        const auto loc = classical_optimum(t, ClassicalSearchMode::LocalSearch, 9);
        EXPECT_LE(loc.value, ex.value);
        EXPECT_EQ(exact_expectation_classical(t, loc.strategy), loc.value);
    }
}

TEST(ClassicalSearch, RotatedOptimumIsOptimal) {
    const int n = 8;
    const auto t = DominationTable::build(CycleGame(n));
    const auto best = classical_optimum(t, ClassicalSearchMode::Exhaustive);
    std::vector<Move> a(n), b(n);
    for (int i = 0; i < n; ++i) {
        a[(i + 3) % n] = best.strategy.alice_map[i];
        b[(i + 3) % n] = best.strategy.bob_map[i];
    }
    EXPECT_EQ(exact_expectation_classical(t, ClassicalStrategy(a, b)), best.value);
}

TEST(ClassicalSearch, ExhaustiveLimit) {
    const auto t = DominationTable::build(CycleGame(13));
    try {
        classical_optimum(t, ClassicalSearchMode::Exhaustive);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::ModeError);
    }
}

}  // namespace
}  // namespace cycledom
