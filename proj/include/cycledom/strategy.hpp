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

#ifndef CYCLEDOM_STRATEGY_HPP
#define CYCLEDOM_STRATEGY_HPP

#include <string>
#include <vector>

#include "cycledom/graph.hpp"

namespace cycledom {

enum class Player { Alice, Bob };

/// Per-site y-rotation angles (radians) for both players. Angles are kept
/// unreduced; only half-angle differences are ever observed.
struct AngleStrategy {
    int n = 0;
    std::vector<double> alice;
    std::vector<double> bob;

    AngleStrategy() = default;
    AngleStrategy(std::vector<double> alice_angles, std::vector<double> bob_angles);

    /// Copy with theta^A_1 subtracted from every angle.
    AngleStrategy gauge_fixed() const;
};

/// Joint distribution of the two measurement outcomes.
struct OutcomeDistribution {
    double p00 = 0.0;
    double p01 = 0.0;
    double p10 = 0.0;
    double p11 = 0.0;

    double operator()(int alice_bit, int bob_bit) const;
};

/// Distribution of a shared Bell pair after y-rotations whose angles differ
/// by `difference` = theta^B - theta^A.
OutcomeDistribution bell_distribution(double difference);

OutcomeDistribution outcome_distribution(const AngleStrategy &strategy, int alice_site, int bob_site);

struct ClassicalStrategy {
    int n = 0;
    std::vector<Move> alice_map;
    std::vector<Move> bob_map;

    ClassicalStrategy() = default;
    ClassicalStrategy(std::vector<Move> alice, std::vector<Move> bob);

    /// Every site mapped to `m` for both players.
    static ClassicalStrategy constant(int n, Move alice, Move bob);
};

Move classical_move(const ClassicalStrategy &strategy, Player player, int site);

struct AnsatzParams {
    int n = 0;
    double theta = 0.0;
};

/// theta^A_i = (i-1) theta, theta^B_i = pi + theta^A_i.
AngleStrategy ansatz_strategy(const AnsatzParams &params);

/// 2pi/n for 5 <= n <= 10, 4pi/n for 11 <= n <= 13; OutOfSchedule otherwise.
double schedule_theta(int n);

/// {"n": int, "alice": [...], "bob": [...]} with round-trip precision.
std::string strategy_to_json(const AngleStrategy &strategy);
AngleStrategy strategy_from_json(const std::string &text);

}  // namespace cycledom

#endif  // CYCLEDOM_STRATEGY_HPP
