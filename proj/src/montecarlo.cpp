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

#include "cycledom/montecarlo.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <iomanip>

#include <nlohmann/json.hpp>

#include "cycledom/error.hpp"
#include "cycledom/optimizer.hpp"
#include "parallel.hpp"

namespace cycledom {

const char *noise_kind_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::Ideal:
            return "ideal";
        case NoiseKind::Werner:
            return "werner";
        case NoiseKind::Readout:
            return "readout";
    }
    return "?";
}

NoiseKind parse_noise_kind(const std::string &name) {
    if (name == "ideal") return NoiseKind::Ideal;
    if (name == "werner") return NoiseKind::Werner;
    if (name == "readout") return NoiseKind::Readout;
    fail(ErrorCode::InvalidArgument, "unknown noise kind '" + name + "'");
}

NoiseModel NoiseModel::werner(double p) {
    NoiseModel m{NoiseKind::Werner, p};
    m.validate();
    return m;
}

NoiseModel NoiseModel::readout(double p) {
    NoiseModel m{NoiseKind::Readout, p};
    m.validate();
    return m;
}

void NoiseModel::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) {
        fail(ErrorCode::InvalidArgument, "noise strength must lie in [0, 1]");
    }
    if (kind == NoiseKind::Ideal && p != 0.0) {
        fail(ErrorCode::InvalidArgument, "ideal noise model requires p = 0");
    }
}

int strategy_size(const StrategyDescriptor &strategy) {
    return std::visit([](const auto &s) { return s.n; }, strategy);
}

const char *strategy_kind_name(const StrategyDescriptor &strategy) {
    switch (strategy.index()) {
        case 0:
            return "quantum";
        case 1:
            return "classical";
        default:
            return "random";
    }
}

OutcomeDistribution joint_distribution(const StrategyDescriptor &strategy, int alice_site, int bob_site) {
    if (const auto *q = std::get_if<AngleStrategy>(&strategy)) {
        return outcome_distribution(*q, alice_site, bob_site);
    }
    if (const auto *c = std::get_if<ClassicalStrategy>(&strategy)) {
        OutcomeDistribution d;
        const int a = bit_of(classical_move(*c, Player::Alice, alice_site));
        const int b = bit_of(classical_move(*c, Player::Bob, bob_site));
        (a == 0 ? (b == 0 ? d.p00 : d.p01) : (b == 0 ? d.p10 : d.p11)) = 1.0;
        return d;
    }
    return {0.25, 0.25, 0.25, 0.25};
}

OutcomeDistribution apply_noise(const OutcomeDistribution &d, const NoiseModel &noise) {
    const double p = noise.p;
    switch (noise.kind) {
        case NoiseKind::Ideal:
            return d;
        case NoiseKind::Werner: {
            const double keep = 1.0 - p;
            const double u = 0.25 * p;
            return {keep * d.p00 + u, keep * d.p01 + u, keep * d.p10 + u, keep * d.p11 + u};
        }
        case NoiseKind::Readout: {
            const double stay = (1.0 - p) * (1.0 - p);
            const double one = p * (1.0 - p);
            const double both = p * p;
            return {stay * d.p00 + one * (d.p01 + d.p10) + both * d.p11,
                    stay * d.p01 + one * (d.p00 + d.p11) + both * d.p10,
                    stay * d.p10 + one * (d.p00 + d.p11) + both * d.p01,
                    stay * d.p11 + one * (d.p01 + d.p10) + both * d.p00};
        }
    }
    return d;
}

namespace {

void require_consistent(const DominationTable &table, const StrategyDescriptor &strategy) {
    if (table.size() != strategy_size(strategy)) {
        fail(ErrorCode::DimensionMismatch, "table and strategy disagree on n");
    }
}

}  // namespace

double exact_expectation_noisy(const DominationTable &table, const StrategyDescriptor &strategy,
                               const NoiseModel &noise) {
    noise.validate();
    require_consistent(table, strategy);
    const int n = table.size();
    double sum = 0.0;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            const auto d = apply_noise(joint_distribution(strategy, i, j), noise);
            sum += d.p00 * table.at(i, 0, j, 0) + d.p01 * table.at(i, 0, j, 1) + d.p10 * table.at(i, 1, j, 0) +
                   d.p11 * table.at(i, 1, j, 1);
        }
    }
    return sum / (static_cast<double>(n) * n);
}

GameSample sample_game(const DominationTable &table, const StrategyDescriptor &strategy, const NoiseModel &noise,
                       Rng &rng) {
    require_consistent(table, strategy);
    const auto n = static_cast<std::uint32_t>(table.size());
    GameSample g;
    g.alice_site = static_cast<int>(rng.below(n)) + 1;
    g.bob_site = static_cast<int>(rng.below(n)) + 1;
    const auto d = apply_noise(joint_distribution(strategy, g.alice_site, g.bob_site), noise);
    const double u = rng.uniform01();
    if (u < d.p00) {
        g.alice_bit = 0, g.bob_bit = 0;
    } else if (u < d.p00 + d.p01) {
        g.alice_bit = 0, g.bob_bit = 1;
    } else if (u < d.p00 + d.p01 + d.p10) {
        g.alice_bit = 1, g.bob_bit = 0;
    } else {
        g.alice_bit = 1, g.bob_bit = 1;
    }
    g.count = table.at(g.alice_site, g.alice_bit, g.bob_site, g.bob_bit);
    return g;
}

int play_once(const DominationTable &table, const StrategyDescriptor &strategy, const NoiseModel &noise,
              Rng &rng) {
    return sample_game(table, strategy, noise, rng).count;
}

void SimulationRun::write_trace_csv(std::ostream &os, int precision) const {
    os << "games,running_mean\n";
    os << std::fixed << std::setprecision(precision);
    for (const auto &c : running_mean) os << c.games << ',' << c.running_mean << '\n';
}

std::string SimulationRun::to_json() const {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto &c : running_mean) trace.push_back({{"games", c.games}, {"running_mean", c.running_mean}});
    nlohmann::json j{{"n", n},
                     {"strategy", strategy_kind},
                     {"noise_kind", noise_kind_name(noise.kind)},
                     {"p", noise.p},
                     {"seed", seed},
                     {"num_games", num_games},
                     {"final_mean", final_mean},
                     {"std_error", std_error},
                     {"running_mean", trace}};
    return j.dump();
}

std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t num_games, std::uint64_t every) {
    std::vector<std::uint64_t> out;
    if (every == 0) {
        for (std::uint64_t g = 1; g < num_games; g *= 2) out.push_back(g);
    } else {
        for (std::uint64_t g = every; g < num_games; g += every) out.push_back(g);
    }
    out.push_back(num_games);
    return out;
}

namespace {

struct ShardResult {
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;
    std::vector<std::pair<std::size_t, std::int64_t>> prefix;  // (checkpoint index, partial sum)
};

}  // namespace

SimulationRun run_simulation(const DominationTable &table, const StrategyDescriptor &strategy,
                             const NoiseModel &noise, std::uint64_t seed, std::uint64_t num_games,
                             std::uint64_t checkpoint_every, int workers) {
    if (num_games < 1) {
        fail(ErrorCode::InvalidArgument, "num_games must be >= 1");
    }
    noise.validate();
    require_consistent(table, strategy);

    const auto checkpoints = checkpoint_schedule(num_games, checkpoint_every);
    const std::uint64_t shards = (num_games + kShardGames - 1) / kShardGames;
    std::vector<ShardResult> partial(shards);

    detail::parallel_for(static_cast<int>(shards), workers, [&](int s) {
        const std::uint64_t begin = static_cast<std::uint64_t>(s) * kShardGames;
        const std::uint64_t end = std::min(begin + kShardGames, num_games);
        auto cp = std::upper_bound(checkpoints.begin(), checkpoints.end(), begin);
        Rng rng(seed, static_cast<std::uint64_t>(s));
        ShardResult &r = partial[s];
        for (std::uint64_t g = begin; g < end; ++g) {
            const std::int64_t x = play_once(table, strategy, noise, rng);
            r.sum += x;
            r.sum_sq += x * x;
            if (cp != checkpoints.end() && *cp == g + 1) {
                r.prefix.emplace_back(static_cast<std::size_t>(cp - checkpoints.begin()), r.sum);
                ++cp;
            }
        }
    });

    SimulationRun run;
    run.n = table.size();
    run.strategy_kind = strategy_kind_name(strategy);
    run.noise = noise;
    run.seed = seed;
    run.num_games = num_games;
    run.running_mean.resize(checkpoints.size());
    std::int64_t before = 0;
    std::int64_t sum_sq = 0;
    for (const auto &r : partial) {
        for (const auto &[idx, partial_sum] : r.prefix) {
            run.running_mean[idx] = {checkpoints[idx],
                                     static_cast<double>(before + partial_sum) / static_cast<double>(checkpoints[idx])};
        }
        before += r.sum;
        sum_sq += r.sum_sq;
    }
    const auto total = static_cast<__int128>(before);
    const auto count = static_cast<__int128>(num_games);
    run.final_mean = static_cast<double>(before) / static_cast<double>(num_games);
    if (num_games > 1) {
        // (N sum x^2 - (sum x)^2) / (N (N - 1)), numerator exact.
        const __int128 numer = count * sum_sq - total * total;
        const double variance = static_cast<double>(numer) / (static_cast<double>(num_games) * (num_games - 1));
        run.std_error = std::sqrt(variance / static_cast<double>(num_games));
    }
    return run;
}

namespace {

struct Baseline {
    double c = 0.0;
    double r = 0.0;
    bool classical_exact = true;
};

Baseline classical_and_random(const DominationTable &table) {
    Baseline b;
    const bool exact = table.size() <= kExhaustiveLimit;
    const auto opt = classical_optimum(table, exact ? ClassicalSearchMode::Exhaustive : ClassicalSearchMode::LocalSearch,
                                       0, 256);
    b.c = boost::rational_cast<double>(opt.value);
    b.r = boost::rational_cast<double>(exact_expectation_random(table));
    b.classical_exact = exact;
    return b;
}

void require_advantage_range(int n) {
    if (n < 5 || n > 13) {
        fail(ErrorCode::InvalidArgument, "advantage is defined for 5 <= n <= 13");
    }
}

}  // namespace

AchievedAdvantage achieved_advantage(int n, const NoiseModel &noise, std::uint64_t seed, std::uint64_t num_games,
                                     int workers) {
    require_advantage_range(n);
    const auto table = DominationTable::build(CycleGame(n));
    const StrategyDescriptor quantum = ansatz_strategy({n, schedule_theta(n)});
    const auto run = run_simulation(table, quantum, noise, seed, num_games, 0, workers);
    const auto base = classical_and_random(table);

    AchievedAdvantage out;
    out.n = n;
    out.noise = noise;
    out.seed = seed;
    out.num_games = num_games;
    out.report = advantage(run.final_mean, base.c, base.r);
    out.q_std_error = run.std_error;
    out.classical_exact = base.classical_exact;
    return out;
}

std::string campaign_to_json(const std::vector<AchievedAdvantage> &campaign) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &e : campaign) {
        arr.push_back({{"n", e.n},
                       {"noise_kind", noise_kind_name(e.noise.kind)},
                       {"p", e.noise.p},
                       {"q", e.report.q},
                       {"c", e.report.c},
                       {"r", e.report.r},
                       {"a", e.report.a},
                       {"a_percent", e.report.a_percent()},
                       {"seed", e.seed},
                       {"num_games", e.num_games}});
    }
    return arr.dump();
}

double calibrate_noise(int n, NoiseKind kind, double target_a) {
    require_advantage_range(n);
    if (kind == NoiseKind::Ideal) {
        fail(ErrorCode::InvalidArgument, "calibration needs a werner or readout model");
    }
    const auto table = DominationTable::build(CycleGame(n));
    const StrategyDescriptor quantum = ansatz_strategy({n, schedule_theta(n)});
    const auto base = classical_and_random(table);
    auto gap = [&](double p) {
        const double q = exact_expectation_noisy(table, quantum, NoiseModel{kind, p});
        return advantage(q, base.c, base.r).a - target_a;
    };
    const double hi = kind == NoiseKind::Werner ? 1.0 : 0.5;
    const double g0 = gap(0.0);
    const double g1 = gap(hi);
    if (g0 < 0.0 || g1 > 0.0) {
        fail(ErrorCode::InvalidArgument, "target advantage outside the range reachable by this noise model");
    }
    if (g0 == 0.0) return 0.0;
    if (g1 == 0.0) return hi;
    std::uintmax_t iters = 200;
    auto [a, b] = boost::math::tools::toms748_solve(gap, 0.0, hi, g0, g1,
                                                    boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (a + b);
}

}  // namespace cycledom
