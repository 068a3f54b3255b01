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

#include "cycledom/strategy.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cycledom/analytics.hpp"
#include "cycledom/error.hpp"
#include "cycledom/optimizer.hpp"

namespace cycledom {
namespace {

constexpr double kPi = std::numbers::pi;

void expect_distribution(const OutcomeDistribution &d, double p00, double p01, double p10, double p11) {
    EXPECT_NEAR(d.p00, p00, 1e-15);
    EXPECT_NEAR(d.p01, p01, 1e-15);
    EXPECT_NEAR(d.p10, p10, 1e-15);
    EXPECT_NEAR(d.p11, p11, 1e-15);
}

TEST(OutcomeDistribution, Examples) {
    expect_distribution(bell_distribution(0.0), 0.5, 0.0, 0.0, 0.5);
    expect_distribution(bell_distribution(kPi), 0.0, 0.5, 0.5, 0.0);
    expect_distribution(bell_distribution(kPi / 2), 0.25, 0.25, 0.25, 0.25);
}

TEST(OutcomeDistribution, InvariantsOverRandomDifferences) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> angle(-20.0, 20.0);
    for (int k = 0; k < 1000; ++k) {
        const double d = angle(gen);
        const auto p = bell_distribution(d);
        EXPECT_NEAR(p.p00 + p.p01 + p.p10 + p.p11, 1.0, 1e-12);
        EXPECT_EQ(p.p00, p.p11);
        EXPECT_EQ(p.p01, p.p10);
        for (double x : {p.p00, p.p01}) {
            EXPECT_GE(x, 0.0);
            EXPECT_LE(x, 1.0);
        }
        const auto neg = bell_distribution(-d);
        const auto wrap = bell_distribution(d + 2 * kPi);
        EXPECT_NEAR(neg.p00, p.p00, 1e-15);
        EXPECT_NEAR(wrap.p00, p.p00, 1e-12);
        EXPECT_NEAR(wrap.p01, p.p01, 1e-12);
    }
}

TEST(OutcomeDistribution, GaugeOffsetLeavesEveryPairUnchanged) {
    const auto s = ansatz_strategy({7, 0.9});
    AngleStrategy shifted = s;
    for (auto &a : shifted.alice) a += 1.234;
    for (auto &b : shifted.bob) b += 1.234;
    for (int i = 1; i <= 7; ++i) {
        for (int j = 1; j <= 7; ++j) {
            const auto p = outcome_distribution(s, i, j);
            const auto q = outcome_distribution(shifted, i, j);
            EXPECT_NEAR(p.p00, q.p00, 1e-12);
            EXPECT_NEAR(p.p01, q.p01, 1e-12);
        }
    }
    EXPECT_THROW(outcome_distribution(s, 0, 1), Error);
    EXPECT_THROW(outcome_distribution(s, 1, 8), Error);
}

TEST(Ansatz, Examples) {
    const auto s5 = ansatz_strategy({5, 2 * kPi / 5});
    ASSERT_EQ(s5.n, 5);
    for (int i = 0; i < 5; ++i) {
        EXPECT_NEAR(s5.alice[i], i * 2 * kPi / 5, 1e-15);
        EXPECT_NEAR(s5.bob[i], kPi + i * 2 * kPi / 5, 1e-15);
    }
    const auto s11 = ansatz_strategy({11, 4 * kPi / 11});
    EXPECT_NEAR(s11.alice[1] - s11.alice[0], 4 * kPi / 11, 1e-15);
    const auto s3 = ansatz_strategy({3, 0.0});
    for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(s3.alice[i], 0.0);
        EXPECT_EQ(s3.bob[i], kPi);
    }
    EXPECT_THROW(ansatz_strategy({2, 0.1}), Error);
}

TEST(Ansatz, EqualSitesAlwaysSplit) {
    for (int n = 3; n <= 20; ++n) {
        const auto s = ansatz_strategy({n, 0.37 * n});
        for (int i = 1; i <= n; ++i) {
            const auto p = outcome_distribution(s, i, i);
            EXPECT_NEAR(p.p00 + p.p11, 0.0, 1e-15);
        }
    }
}

TEST(Schedule, Values) {
    EXPECT_DOUBLE_EQ(schedule_theta(5), 2 * kPi / 5);
    EXPECT_DOUBLE_EQ(schedule_theta(10), 2 * kPi / 10);
    EXPECT_DOUBLE_EQ(schedule_theta(12), 4 * kPi / 12);
    for (int n : {4, 14, 0}) {
        try {
            schedule_theta(n);
            FAIL() << n;
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), ErrorCode::OutOfSchedule);
        }
    }
}

TEST(Classical, LookupIgnoresTheOtherPlayer) {
    const auto c = ClassicalStrategy::constant(6, Move::One, Move::Zero);
    for (int site = 1; site <= 6; ++site) {
        EXPECT_EQ(classical_move(c, Player::Alice, site), Move::One);
        EXPECT_EQ(classical_move(c, Player::Bob, site), Move::Zero);
    }
    EXPECT_THROW(classical_move(c, Player::Bob, 7), Error);
    EXPECT_THROW(ClassicalStrategy({Move::One}, {}), Error);
}

// Among the optimal C5 strategies is one where Alice walks 1 -> 2 and Bob
// walks 5 -> 4 (the illustrated play-through).
TEST(Classical, IllustratedStrategyIsOptimal) {
    const CycleGame game(5);
    const auto table = DominationTable::build(game);
    const Rational best = classical_optimum(table, ClassicalSearchMode::Exhaustive).value;
    bool found = false;
    for (unsigned am = 0; am < 32 && !found; ++am) {
        for (unsigned bm = 0; bm < 32 && !found; ++bm) {
            std::vector<Move> a(5), b(5);
            for (int i = 0; i < 5; ++i) {
                a[i] = (am >> i) & 1u ? Move::One : Move::Zero;
                b[i] = (bm >> i) & 1u ? Move::One : Move::Zero;
            }
            ClassicalStrategy s(a, b);
            if (game.end_position(1, classical_move(s, Player::Alice, 1)) != 2) continue;
            if (game.end_position(5, classical_move(s, Player::Bob, 5)) != 4) continue;
            if (exact_expectation_classical(table, s) == best) {
                found = true;
                EXPECT_EQ(best, Rational(23, 5));
                EXPECT_EQ(table.at(1, bit_of(s.alice_map[0]), 5, bit_of(s.bob_map[4])), 5);
            }
        }
    }
    EXPECT_TRUE(found);
}

TEST(StrategyJson, RoundTripKeepsEveryBit) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> angle(-50.0, 50.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + trial % 11;
        std::vector<double> a(n), b(n);
        for (auto &x : a) x = angle(gen);
        for (auto &x : b) x = angle(gen);
        const AngleStrategy s(a, b);
        const auto back = strategy_from_json(strategy_to_json(s));
        EXPECT_EQ(back.n, n);
        EXPECT_EQ(back.alice, s.alice);
        EXPECT_EQ(back.bob, s.bob);
    }
}

TEST(StrategyJson, RejectsMalformedInput) {
    auto code_of = [](const std::string &text) {
        try {
            strategy_from_json(text);
        } catch (const Error &e) {
            return e.code();
        }
        return ErrorCode::Io;  // sentinel: no error
    };
    EXPECT_EQ(code_of("not json"), ErrorCode::Parse);
    EXPECT_EQ(code_of(R"({"n": 3, "alice": [0, 1, 2]})"), ErrorCode::Parse);
    EXPECT_EQ(code_of(R"({"n": 3, "alice": [0, 1, 2], "bob": [0, 1]})"), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of(R"({"n": 4, "alice": [0, 1, 2], "bob": [0, 1, 2]})"), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of(R"({"n": 3, "alice": ["x", 1, 2], "bob": [0, 1, 2]})"), ErrorCode::Parse);
}

TEST(AngleStrategy, GaugeFixing) {
    const AngleStrategy s({1.0, 2.0, 3.5}, {4.0, 0.5, -1.0});
    const auto g = s.gauge_fixed();
    EXPECT_EQ(g.alice[0], 0.0);
    EXPECT_DOUBLE_EQ(g.alice[2], 2.5);
    EXPECT_DOUBLE_EQ(g.bob[2], -2.0);
}

}  // namespace
}  // namespace cycledom
