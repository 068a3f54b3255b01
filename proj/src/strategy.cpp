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

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "cycledom/error.hpp"

namespace cycledom {

AngleStrategy::AngleStrategy(std::vector<double> alice_angles, std::vector<double> bob_angles)
    : n(static_cast<int>(alice_angles.size())), alice(std::move(alice_angles)), bob(std::move(bob_angles)) {
    if (alice.size() != bob.size()) {
        fail(ErrorCode::DimensionMismatch, "alice and bob angle lists differ in length");
    }
}

AngleStrategy AngleStrategy::gauge_fixed() const {
    AngleStrategy out = *this;
    if (n == 0) return out;
    const double offset = alice.front();
    for (auto &a : out.alice) a -= offset;
    for (auto &b : out.bob) b -= offset;
    return out;
}

double OutcomeDistribution::operator()(int alice_bit, int bob_bit) const {
    if (alice_bit == 0) return bob_bit == 0 ? p00 : p01;
    return bob_bit == 0 ? p10 : p11;
}

OutcomeDistribution bell_distribution(double difference) {
    const double c = std::cos(0.5 * difference);
    const double s = std::sin(0.5 * difference);
    const double same = 0.5 * c * c;
    const double diff = 0.5 * s * s;
    return {same, diff, diff, same};
}

OutcomeDistribution outcome_distribution(const AngleStrategy &strategy, int alice_site, int bob_site) {
    if (alice_site < 1 || alice_site > strategy.n || bob_site < 1 || bob_site > strategy.n) {
        fail(ErrorCode::InvalidArgument, "site outside 1..n");
    }
    return bell_distribution(strategy.bob[bob_site - 1] - strategy.alice[alice_site - 1]);
}

ClassicalStrategy::ClassicalStrategy(std::vector<Move> alice, std::vector<Move> bob)
    : n(static_cast<int>(alice.size())), alice_map(std::move(alice)), bob_map(std::move(bob)) {
    if (alice_map.size() != bob_map.size()) {
        fail(ErrorCode::DimensionMismatch, "alice and bob maps differ in length");
    }
}

ClassicalStrategy ClassicalStrategy::constant(int n, Move alice, Move bob) {
    return {std::vector<Move>(n, alice), std::vector<Move>(n, bob)};
}

Move classical_move(const ClassicalStrategy &strategy, Player player, int site) {
    if (site < 1 || site > strategy.n) {
        fail(ErrorCode::InvalidArgument, "site outside 1..n");
    }
    const auto &map = player == Player::Alice ? strategy.alice_map : strategy.bob_map;
    return map[site - 1];
}

AngleStrategy ansatz_strategy(const AnsatzParams &params) {
    if (params.n < 3) {
        fail(ErrorCode::InvalidArgument, "ansatz needs n >= 3");
    }
    std::vector<double> alice(params.n), bob(params.n);
    for (int i = 0; i < params.n; ++i) {
        alice[i] = i * params.theta;
        bob[i] = std::numbers::pi + alice[i];
    }
    return {std::move(alice), std::move(bob)};
}

double schedule_theta(int n) {
    if (n < 5 || n > 13) {
        fail(ErrorCode::OutOfSchedule,
             "no closed-form angle schedule for n=" + std::to_string(n) + "; use optimize_theta");
    }
    return (n <= 10 ? 2.0 : 4.0) * std::numbers::pi / n;
}

std::string strategy_to_json(const AngleStrategy &strategy) {
    nlohmann::json j;
    j["n"] = strategy.n;
    j["alice"] = strategy.alice;
    j["bob"] = strategy.bob;
    return j.dump();
}

AngleStrategy strategy_from_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::Parse, std::string("strategy JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("alice") || !j.contains("bob")) {
        fail(ErrorCode::Parse, "strategy JSON needs keys n, alice, bob");
    }
    try {
        const int n = j.at("n").get<int>();
        AngleStrategy s(j.at("alice").get<std::vector<double>>(), j.at("bob").get<std::vector<double>>());
        if (s.n != n) {
            fail(ErrorCode::DimensionMismatch, "strategy JSON: n does not match angle list length");
        }
        if (n < 3) {
            fail(ErrorCode::InvalidArgument, "strategy JSON: n must be >= 3");
        }
        return s;
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::Parse, std::string("strategy JSON: ") + e.what());
    }
}

}  // namespace cycledom
