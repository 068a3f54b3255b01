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

#ifndef CYCLEDOM_MONTECARLO_HPP
#define CYCLEDOM_MONTECARLO_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "cycledom/analytics.hpp"
#include "cycledom/graph.hpp"
#include "cycledom/rng.hpp"
#include "cycledom/strategy.hpp"

namespace cycledom {

enum class NoiseKind { Ideal, Werner, Readout };

const char *noise_kind_name(NoiseKind kind);
NoiseKind parse_noise_kind(const std::string &name);

/// werner: with probability p the joint outcome is replaced by a uniform one.
/// readout: each player's bit is flipped independently with probability p.
struct NoiseModel {
    NoiseKind kind = NoiseKind::Ideal;
    double p = 0.0;

    static NoiseModel ideal() { return {}; }
    static NoiseModel werner(double p);
    static NoiseModel readout(double p);

    void validate() const;
};

/// Both players flip fair coins.
struct RandomStrategy {
    int n = 0;
};

using StrategyDescriptor = std::variant<AngleStrategy, ClassicalStrategy, RandomStrategy>;

int strategy_size(const StrategyDescriptor &strategy);
const char *strategy_kind_name(const StrategyDescriptor &strategy);

/// Ideal joint outcome distribution for sites (1-based) under `strategy`.
OutcomeDistribution joint_distribution(const StrategyDescriptor &strategy, int alice_site, int bob_site);

OutcomeDistribution apply_noise(const OutcomeDistribution &dist, const NoiseModel &noise);

/// Exact expected dominated count under noise (no sampling).
double exact_expectation_noisy(const DominationTable &table, const StrategyDescriptor &strategy,
                               const NoiseModel &noise);

struct GameSample {
    int alice_site = 0;
    int bob_site = 0;
    int alice_bit = 0;
    int bob_bit = 0;
    int count = 0;
};

/// One game: uniform sites, then one uniform draw against the cumulative
/// (p00, p01, p10, p11) of the noise-adjusted distribution. Always consumes
/// exactly three draws (plus Lemire rejections for the sites).
GameSample sample_game(const DominationTable &table, const StrategyDescriptor &strategy, const NoiseModel &noise,
                       Rng &rng);

int play_once(const DominationTable &table, const StrategyDescriptor &strategy, const NoiseModel &noise,
              Rng &rng);

struct Checkpoint {
    std::uint64_t games = 0;
    double running_mean = 0.0;
};

struct SimulationRun {
    int n = 0;
    std::string strategy_kind;
    NoiseModel noise;
    std::uint64_t seed = 0;
    std::uint64_t num_games = 0;
    std::vector<Checkpoint> running_mean;
    double final_mean = 0.0;
    double std_error = 0.0;

    /// Header games,running_mean.
    void write_trace_csv(std::ostream &os, int precision) const;
    std::string to_json() const;
};

/// Games are split into fixed shards of kShardGames; shard s draws from
/// Rng(seed, s) and shard totals are integers, so results do not depend on
/// the worker count.
inline constexpr std::uint64_t kShardGames = 1u << 16;

/// Checkpoint positions: powers of two when every == 0, otherwise multiples
/// of `every`; num_games is always the last entry.
std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t num_games, std::uint64_t every);

SimulationRun run_simulation(const DominationTable &table, const StrategyDescriptor &strategy,
                             const NoiseModel &noise, std::uint64_t seed, std::uint64_t num_games,
                             std::uint64_t checkpoint_every = 0, int workers = 1);

struct AchievedAdvantage {
    int n = 0;
    NoiseModel noise;
    std::uint64_t seed = 0;
    std::uint64_t num_games = 0;
    AdvantageReport report;
    double q_std_error = 0.0;
    /// False when C came from local search (n above the exhaustive limit).
    bool classical_exact = true;
};

/// Q simulated from the scheduled ansatz under `noise`; C and R exact.
AchievedAdvantage achieved_advantage(int n, const NoiseModel &noise, std::uint64_t seed, std::uint64_t num_games,
                                     int workers = 1);

/// JSON array of {n, noise_kind, p, q, c, r, a, a_percent, seed, num_games}.
std::string campaign_to_json(const std::vector<AchievedAdvantage> &campaign);

/// Noise strength p at which the exact expected advantage of the scheduled
/// ansatz equals `target_a`. Searches p in [0, 1] (werner) or [0, 1/2]
/// (readout).
double calibrate_noise(int n, NoiseKind kind, double target_a);

}  // namespace cycledom

#endif  // CYCLEDOM_MONTECARLO_HPP
