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

#include "cycledom/cycledom.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "cycledom/analytics.hpp"
#include "cycledom/error.hpp"
#include "cycledom/graph.hpp"
#include "cycledom/montecarlo.hpp"
#include "cycledom/optimizer.hpp"
#include "cycledom/strategy.hpp"

struct cd_table {
    cycledom::DominationTable table;
};
struct cd_strategy {
    cycledom::AngleStrategy strategy;
};
struct cd_classical {
    cycledom::ClassicalStrategy strategy;
};
struct cd_sweep {
    cycledom::ThetaSweepResult result;
};
struct cd_full_result {
    cycledom::FullOptimizationResult result;
};
struct cd_rng {
    cycledom::Rng rng;
};
struct cd_simulation {
    cycledom::SimulationRun run;
};

namespace {

using namespace cycledom;

thread_local std::string last_error;

struct NullArgument {
    const char *name;
};

template <typename T>
T *need(T *p, const char *name) {
    if (p == nullptr) throw NullArgument{name};
    return p;
}

cd_status status_of(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return CD_ERR_INVALID_ARGUMENT;
        case ErrorCode::OutOfSchedule:
            return CD_ERR_OUT_OF_SCHEDULE;
        case ErrorCode::DimensionMismatch:
            return CD_ERR_DIMENSION_MISMATCH;
        case ErrorCode::NormalizationMismatch:
            return CD_ERR_NORMALIZATION;
        case ErrorCode::DegenerateBaseline:
            return CD_ERR_DEGENERATE_BASELINE;
        case ErrorCode::ModeError:
            return CD_ERR_MODE;
        case ErrorCode::Precondition:
            return CD_ERR_PRECONDITION;
        case ErrorCode::Parse:
            return CD_ERR_PARSE;
        case ErrorCode::Io:
            return CD_ERR_IO;
    }
    return CD_ERR_INTERNAL;
}

template <typename Fn>
cd_status guard(Fn &&fn) noexcept {
    try {
        fn();
        last_error.clear();
        return CD_OK;
    } catch (const NullArgument &e) {
        last_error = std::string("null pointer argument: ") + e.name;
        return CD_ERR_NULL_POINTER;
    } catch (const Error &e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return CD_ERR_INTERNAL;
    } catch (const std::exception &e) {
        last_error = e.what();
        return CD_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return CD_ERR_INTERNAL;
    }
}

char *dup_string(const std::string &s) {
    auto *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

Move bit_arg(int bit) { return move_from_bit(bit); }

NoiseModel noise_of(cd_noise noise) {
    NoiseModel m;
    switch (noise.kind) {
        case CD_NOISE_IDEAL:
            m.kind = NoiseKind::Ideal;
            break;
        case CD_NOISE_WERNER:
            m.kind = NoiseKind::Werner;
            break;
        case CD_NOISE_READOUT:
            m.kind = NoiseKind::Readout;
            break;
        default:
            fail(ErrorCode::InvalidArgument, "unknown noise kind");
    }
    m.p = noise.p;
    m.validate();
    return m;
}

cd_noise c_noise(const NoiseModel &m) {
    const cd_noise_kind kind = m.kind == NoiseKind::Werner    ? CD_NOISE_WERNER
                               : m.kind == NoiseKind::Readout ? CD_NOISE_READOUT
                                                              : CD_NOISE_IDEAL;
    return {kind, m.p};
}

StrategyDescriptor descriptor(const cd_table *table, const cd_strategy *quantum, const cd_classical *classical) {
    if (quantum != nullptr && classical != nullptr) {
        fail(ErrorCode::InvalidArgument, "pass either a quantum or a classical strategy, not both");
    }
    if (quantum != nullptr) return quantum->strategy;
    if (classical != nullptr) return classical->strategy;
    return RandomStrategy{table->table.size()};
}

cd_advantage c_report(const AdvantageReport &r) { return {r.q, r.c, r.r, r.a, r.a_percent()}; }

void write_fraction(const Rational &v, std::int64_t *num, std::int64_t *den) {
    *need(num, "num") = v.numerator();
    *need(den, "den") = v.denominator();
}

}  // namespace

extern "C" {

const char *cd_version(void) { return "0.1.0"; }

const char *cd_status_name(cd_status status) {
    switch (status) {
        case CD_OK:
            return "ok";
        case CD_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case CD_ERR_OUT_OF_SCHEDULE:
            return "out of schedule";
        case CD_ERR_DIMENSION_MISMATCH:
            return "dimension mismatch";
        case CD_ERR_NORMALIZATION:
            return "normalization mismatch";
        case CD_ERR_DEGENERATE_BASELINE:
            return "degenerate baseline";
        case CD_ERR_MODE:
            return "mode error";
        case CD_ERR_PRECONDITION:
            return "precondition failed";
        case CD_ERR_PARSE:
            return "parse error";
        case CD_ERR_IO:
            return "io error";
        case CD_ERR_NULL_POINTER:
            return "null pointer";
        case CD_ERR_INTERNAL:
            return "internal error";
    }
    return "unknown status";
}

const char *cd_last_error(void) { return last_error.c_str(); }

void cd_string_free(char *s) { std::free(s); }

// ---- graph

cd_status cd_end_position(int n, int site, int bit, int *out) {
    return guard([&] { *need(out, "out") = CycleGame(n).end_position(site, bit_arg(bit)); });
}

cd_status cd_dominated_count(int n, int alice_site, int alice_bit, int bob_site, int bob_bit, int *out) {
    return guard([&] {
        const CycleGame game(n);
        game.check_site(alice_site);
        game.check_site(bob_site);
        *need(out, "out") = game.dominated_count(alice_site, bit_arg(alice_bit), bob_site, bit_arg(bob_bit));
    });
}

cd_status cd_table_create(int n, cd_table **out) {
    return guard([&] {
        need(out, "out");
        *out = new cd_table{DominationTable::build(CycleGame(n))};
    });
}

void cd_table_destroy(cd_table *table) { delete table; }

int cd_table_size(const cd_table *table) { return table ? table->table.size() : 0; }

cd_status cd_table_entry(const cd_table *table, int alice_site, int alice_bit, int bob_site, int bob_bit,
                         int *out) {
    return guard([&] {
        const auto &t = need(table, "table")->table;
        const CycleGame game(t.size());
        game.check_site(alice_site);
        game.check_site(bob_site);
        *need(out, "out") = t.at(alice_site, bit_of(bit_arg(alice_bit)), bob_site, bit_of(bit_arg(bob_bit)));
    });
}

cd_status cd_table_mean(const cd_table *table, int64_t *num, int64_t *den) {
    return guard([&] { write_fraction(need(table, "table")->table.mean(), num, den); });
}

cd_status cd_table_csv(const cd_table *table, char **out) {
    return guard([&] {
        std::ostringstream os;
        need(table, "table")->table.write_csv(os);
        *need(out, "out") = dup_string(os.str());
    });
}

// ---- strategies

cd_status cd_schedule_theta(int n, double *out) {
    return guard([&] { *need(out, "out") = schedule_theta(n); });
}

cd_status cd_strategy_ansatz(int n, double theta, cd_strategy **out) {
    return guard([&] {
        need(out, "out");
        *out = new cd_strategy{ansatz_strategy({n, theta})};
    });
}

cd_status cd_strategy_from_angles(int n, const double *alice, const double *bob, cd_strategy **out) {
    return guard([&] {
        need(out, "out");
        if (n < 3) fail(ErrorCode::InvalidArgument, "n must be >= 3");
        need(alice, "alice");
        need(bob, "bob");
        *out = new cd_strategy{AngleStrategy(std::vector<double>(alice, alice + n), std::vector<double>(bob, bob + n))};
    });
}

cd_status cd_strategy_from_json(const char *json, cd_strategy **out) {
    return guard([&] {
        need(out, "out");
        *out = new cd_strategy{strategy_from_json(need(json, "json"))};
    });
}

void cd_strategy_destroy(cd_strategy *strategy) { delete strategy; }

int cd_strategy_size(const cd_strategy *strategy) { return strategy ? strategy->strategy.n : 0; }

cd_status cd_strategy_angles(const cd_strategy *strategy, double *alice, double *bob) {
    return guard([&] {
        const auto &s = need(strategy, "strategy")->strategy;
        std::copy(s.alice.begin(), s.alice.end(), need(alice, "alice"));
        std::copy(s.bob.begin(), s.bob.end(), need(bob, "bob"));
    });
}

cd_status cd_strategy_json(const cd_strategy *strategy, char **out) {
    return guard([&] { *need(out, "out") = dup_string(strategy_to_json(need(strategy, "strategy")->strategy)); });
}

cd_status cd_outcome_distribution(const cd_strategy *strategy, int alice_site, int bob_site, double out[4]) {
    return guard([&] {
        const auto d = outcome_distribution(need(strategy, "strategy")->strategy, alice_site, bob_site);
        need(out, "out");
        out[0] = d.p00;
        out[1] = d.p01;
        out[2] = d.p10;
        out[3] = d.p11;
    });
}

cd_status cd_classical_create(int n, const int *alice_bits, const int *bob_bits, cd_classical **out) {
    return guard([&] {
        need(out, "out");
        if (n < 3) fail(ErrorCode::InvalidArgument, "n must be >= 3");
        need(alice_bits, "alice_bits");
        need(bob_bits, "bob_bits");
        std::vector<Move> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = bit_arg(alice_bits[i]);
            b[i] = bit_arg(bob_bits[i]);
        }
        *out = new cd_classical{ClassicalStrategy(std::move(a), std::move(b))};
    });
}

void cd_classical_destroy(cd_classical *strategy) { delete strategy; }

int cd_classical_size(const cd_classical *strategy) { return strategy ? strategy->strategy.n : 0; }

cd_status cd_classical_bits(const cd_classical *strategy, int *alice_bits, int *bob_bits) {
    return guard([&] {
        const auto &s = need(strategy, "strategy")->strategy;
        need(alice_bits, "alice_bits");
        need(bob_bits, "bob_bits");
        for (int i = 0; i < s.n; ++i) {
            alice_bits[i] = bit_of(s.alice_map[i]);
            bob_bits[i] = bit_of(s.bob_map[i]);
        }
    });
}

// ---- analytics

cd_status cd_exact_quantum(const cd_table *table, const cd_strategy *strategy, double *out) {
    return guard([&] {
        *need(out, "out") =
            exact_expectation_quantum(need(table, "table")->table, need(strategy, "strategy")->strategy);
    });
}

cd_status cd_exact_classical(const cd_table *table, const cd_classical *strategy, int64_t *num, int64_t *den) {
    return guard([&] {
        write_fraction(
            exact_expectation_classical(need(table, "table")->table, need(strategy, "strategy")->strategy), num,
            den);
    });
}

cd_status cd_exact_random(const cd_table *table, int64_t *num, int64_t *den) {
    return guard([&] { write_fraction(exact_expectation_random(need(table, "table")->table), num, den); });
}

cd_status cd_closed_form(int n, double theta, double *out) {
    return guard([&] {
        *need(out, "out") = closed_form_long(n, theta);
    });
}

cd_status cd_series_coefficients(int n, double *lambda, double *mu) {
    return guard([&] {
        need(lambda, "lambda");
        need(mu, "mu");
        const auto s = extract_series(n);
        *lambda = boost::rational_cast<double>(s.lambda);
        for (std::size_t l = 0; l < s.mu.size(); ++l) mu[l] = boost::rational_cast<double>(s.mu[l]);
    });
}

cd_status cd_series_json(int n, char **out) {
    return guard([&] {
        need(out, "out");
        *out = dup_string(extract_series(n).to_json());
    });
}

cd_status cd_advantage_compute(double q, double c, double r, cd_advantage *out) {
    return guard([&] { *need(out, "out") = c_report(advantage(q, c, r)); });
}

cd_status cd_advantage_json(const cd_advantage *report, char **out) {
    return guard([&] {
        const auto &r = *need(report, "report");
        *need(out, "out") = dup_string(AdvantageReport{r.q, r.c, r.r, r.a}.to_json());
    });
}

// ---- optimizer

cd_status cd_optimize_theta(int n, int grid_size, cd_sweep **out) {
    return guard([&] {
        need(out, "out");
        *out = new cd_sweep{optimize_theta(n, grid_size)};
    });
}

void cd_sweep_destroy(cd_sweep *sweep) { delete sweep; }
double cd_sweep_theta_star(const cd_sweep *sweep) { return sweep ? sweep->result.theta_star : 0.0; }
double cd_sweep_d_star(const cd_sweep *sweep) { return sweep ? sweep->result.d_star : 0.0; }
double cd_sweep_n_theta_star(const cd_sweep *sweep) { return sweep ? sweep->result.n_theta_star : 0.0; }
size_t cd_sweep_tie_count(const cd_sweep *sweep) { return sweep ? sweep->result.ties.size() : 0; }

double cd_sweep_tie(const cd_sweep *sweep, size_t k) {
    return sweep && k < sweep->result.ties.size() ? sweep->result.ties[k] : 0.0;
}

size_t cd_sweep_grid_points(const cd_sweep *sweep) { return sweep ? sweep->result.theta_grid.size() : 0; }

cd_status cd_sweep_grid(const cd_sweep *sweep, double *theta, double *values) {
    return guard([&] {
        const auto &r = need(sweep, "sweep")->result;
        std::copy(r.theta_grid.begin(), r.theta_grid.end(), need(theta, "theta"));
        std::copy(r.values.begin(), r.values.end(), need(values, "values"));
    });
}

cd_status cd_sweep_json(const cd_sweep *sweep, char **out) {
    return guard([&] {
        const auto &r = need(sweep, "sweep")->result;
        nlohmann::json j{{"n", r.n},
                         {"theta_star", r.theta_star},
                         {"n_theta_star", r.n_theta_star},
                         {"d_star", r.d_star},
                         {"ties", r.ties},
                         {"grid_size", r.theta_grid.size() - 1}};
        *need(out, "out") = dup_string(j.dump());
    });
}

int cd_default_grid_size(int n) { return default_grid_size(n); }

cd_status cd_theta_scan(int n_min, int n_max, int workers, cd_scan_row *rows) {
    return guard([&] {
        need(rows, "rows");
        const auto scan = theta_step_scan(n_min, n_max, workers);
        for (std::size_t k = 0; k < scan.size(); ++k) {
            rows[k] = {scan[k].n, scan[k].theta_star, scan[k].n_theta_star, scan[k].d_star};
        }
    });
}

namespace {
std::vector<ScanRow> scan_rows(const cd_scan_row *rows, size_t count) {
    std::vector<ScanRow> out(count);
    for (size_t k = 0; k < count; ++k) out[k] = {rows[k].n, rows[k].theta_star, rows[k].n_theta_star, rows[k].d_star};
    return out;
}
}  // namespace

cd_status cd_scan_csv(const cd_scan_row *rows, size_t count, int precision, char **out) {
    return guard([&] {
        std::ostringstream os;
        write_scan_csv(scan_rows(need(rows, "rows"), count), os, precision);
        *need(out, "out") = dup_string(os.str());
    });
}

cd_status cd_scan_steps(const cd_scan_row *rows, size_t count, int *steps, size_t *num_steps) {
    return guard([&] {
        const auto found = step_positions(scan_rows(need(rows, "rows"), count));
        std::copy(found.begin(), found.end(), need(steps, "steps"));
        *need(num_steps, "num_steps") = found.size();
    });
}

cd_status cd_optimize_full(int n, int restarts, uint64_t seed, int workers, cd_full_result **out) {
    return guard([&] {
        need(out, "out");
        *out = new cd_full_result{optimize_full(n, restarts, seed, workers)};
    });
}

void cd_full_result_destroy(cd_full_result *result) { delete result; }
double cd_full_result_value(const cd_full_result *result) { return result ? result->result.value : 0.0; }
double cd_full_result_gradient_norm(const cd_full_result *result) {
    return result ? result->result.gradient_norm : 0.0;
}
int cd_full_result_converged(const cd_full_result *result) { return result ? result->result.converged : 0; }
int cd_full_result_lower_bound_only(const cd_full_result *result) {
    return result ? result->result.lower_bound_only : 0;
}
int cd_full_result_restarts(const cd_full_result *result) { return result ? result->result.restarts : 0; }

cd_status cd_full_result_strategy(const cd_full_result *result, cd_strategy **out) {
    return guard([&] {
        need(out, "out");
        *out = new cd_strategy{need(result, "result")->result.strategy};
    });
}

cd_status cd_full_result_json(const cd_full_result *result, char **out) {
    return guard([&] {
        const auto &r = need(result, "result")->result;
        nlohmann::json j{{"n", r.strategy.n},
                         {"value", r.value},
                         {"gradient_norm", r.gradient_norm},
                         {"restarts", r.restarts},
                         {"best_restart", r.best_restart},
                         {"converged", r.converged},
                         {"lower_bound_only", r.lower_bound_only},
                         {"strategy", nlohmann::json::parse(strategy_to_json(r.strategy))}};
        *need(out, "out") = dup_string(j.dump());
    });
}

cd_status cd_classical_optimum(const cd_table *table, cd_search_mode mode, uint64_t seed, int restarts,
                               cd_classical **strategy, int64_t *num, int64_t *den) {
    return guard([&] {
        need(strategy, "strategy");
        if (mode != CD_SEARCH_EXHAUSTIVE && mode != CD_SEARCH_LOCAL) fail(ErrorCode::ModeError, "unknown search mode");
        const auto m = mode == CD_SEARCH_EXHAUSTIVE ? ClassicalSearchMode::Exhaustive : ClassicalSearchMode::LocalSearch;
        auto opt = classical_optimum(need(table, "table")->table, m, seed, restarts);
        write_fraction(opt.value, num, den);
        *strategy = new cd_classical{std::move(opt.strategy)};
    });
}

// ---- monte carlo

cd_status cd_rng_create(uint64_t seed, uint64_t stream, cd_rng **out) {
    return guard([&] {
        need(out, "out");
        *out = new cd_rng{Rng(seed, stream)};
    });
}

void cd_rng_destroy(cd_rng *rng) { delete rng; }

cd_status cd_play_once(const cd_table *table, const cd_strategy *quantum, const cd_classical *classical,
                       cd_noise noise, cd_rng *rng, int *out) {
    return guard([&] {
        const auto &t = need(table, "table")->table;
        const auto model = noise_of(noise);
        const auto s = descriptor(table, quantum, classical);
        if (strategy_size(s) != t.size()) fail(ErrorCode::DimensionMismatch, "table and strategy disagree on n");
        *need(out, "out") = play_once(t, s, model, need(rng, "rng")->rng);
    });
}

cd_status cd_exact_noisy(const cd_table *table, const cd_strategy *quantum, const cd_classical *classical,
                         cd_noise noise, double *out) {
    return guard([&] {
        const auto &t = need(table, "table")->table;
        *need(out, "out") = exact_expectation_noisy(t, descriptor(table, quantum, classical), noise_of(noise));
    });
}

cd_status cd_simulate(const cd_table *table, const cd_strategy *quantum, const cd_classical *classical,
                      cd_noise noise, uint64_t seed, uint64_t num_games, uint64_t checkpoint_every, int workers,
                      cd_simulation **out) {
    return guard([&] {
        need(out, "out");
        const auto &t = need(table, "table")->table;
        *out = new cd_simulation{run_simulation(t, descriptor(table, quantum, classical), noise_of(noise), seed,
                                                num_games, checkpoint_every, workers)};
    });
}

void cd_simulation_destroy(cd_simulation *sim) { delete sim; }
double cd_simulation_final_mean(const cd_simulation *sim) { return sim ? sim->run.final_mean : 0.0; }
double cd_simulation_std_error(const cd_simulation *sim) { return sim ? sim->run.std_error : 0.0; }
size_t cd_simulation_checkpoint_count(const cd_simulation *sim) { return sim ? sim->run.running_mean.size() : 0; }

cd_status cd_simulation_checkpoint(const cd_simulation *sim, size_t k, uint64_t *games, double *mean) {
    return guard([&] {
        const auto &r = need(sim, "sim")->run;
        if (k >= r.running_mean.size()) fail(ErrorCode::InvalidArgument, "checkpoint index out of range");
        *need(games, "games") = r.running_mean[k].games;
        *need(mean, "mean") = r.running_mean[k].running_mean;
    });
}

cd_status cd_simulation_trace_csv(const cd_simulation *sim, int precision, char **out) {
    return guard([&] {
        std::ostringstream os;
        need(sim, "sim")->run.write_trace_csv(os, precision);
        *need(out, "out") = dup_string(os.str());
    });
}

cd_status cd_simulation_json(const cd_simulation *sim, char **out) {
    return guard([&] { *need(out, "out") = dup_string(need(sim, "sim")->run.to_json()); });
}

cd_status cd_achieved_advantage(int n, cd_noise noise, uint64_t seed, uint64_t num_games, int workers,
                                cd_achieved *out) {
    return guard([&] {
        need(out, "out");
        const auto a = achieved_advantage(n, noise_of(noise), seed, num_games, workers);
        *out = {a.n, c_noise(a.noise), a.seed, a.num_games, c_report(a.report), a.q_std_error, a.classical_exact};
    });
}

cd_status cd_campaign_json(const cd_achieved *entries, size_t count, char **out) {
    return guard([&] {
        need(entries, "entries");
        std::vector<AchievedAdvantage> campaign(count);
        for (size_t k = 0; k < count; ++k) {
            const auto &e = entries[k];
            auto &c = campaign[k];
            c.n = e.n;
            c.noise = noise_of(e.noise);
            c.seed = e.seed;
            c.num_games = e.num_games;
            c.report = {e.report.q, e.report.c, e.report.r, e.report.a};
            c.q_std_error = e.q_std_error;
            c.classical_exact = e.classical_exact != 0;
        }
        *need(out, "out") = dup_string(campaign_to_json(campaign));
    });
}

cd_status cd_calibrate_noise(int n, cd_noise_kind kind, double target_a, double *p_out) {
    return guard([&] {
        need(p_out, "p_out");
        const auto model = noise_of({kind, 0.0});
        *p_out = calibrate_noise(n, model.kind, target_a);
    });
}

}  // extern "C"
