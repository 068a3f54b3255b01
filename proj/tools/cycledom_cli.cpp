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

// Command-line front end. Talks to the library only through cycledom.h.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cycledom/cycledom.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Failure {
    int exit_code;
    std::string message;
};

void check(cd_status status) {
    if (status == CD_OK) return;
    std::string msg = std::string(cd_status_name(status)) + ": " + cd_last_error();
    switch (status) {
        case CD_ERR_INVALID_ARGUMENT:
        case CD_ERR_OUT_OF_SCHEDULE:
        case CD_ERR_DIMENSION_MISMATCH:
        case CD_ERR_DEGENERATE_BASELINE:
        case CD_ERR_MODE:
        case CD_ERR_PRECONDITION:
            throw Failure{kExitUsage, msg};
        default:
            throw Failure{kExitRuntime, msg};
    }
}

[[noreturn]] void usage(const std::string &msg) { throw Failure{kExitUsage, msg}; }

template <typename T, void (*Destroy)(T *)>
struct Deleter {
    void operator()(T *p) const { Destroy(p); }
};
using Table = std::unique_ptr<cd_table, Deleter<cd_table, cd_table_destroy>>;
using Strategy = std::unique_ptr<cd_strategy, Deleter<cd_strategy, cd_strategy_destroy>>;
using Classical = std::unique_ptr<cd_classical, Deleter<cd_classical, cd_classical_destroy>>;
using Sweep = std::unique_ptr<cd_sweep, Deleter<cd_sweep, cd_sweep_destroy>>;
using FullResult = std::unique_ptr<cd_full_result, Deleter<cd_full_result, cd_full_result_destroy>>;
using Simulation = std::unique_ptr<cd_simulation, Deleter<cd_simulation, cd_simulation_destroy>>;

std::string take(char *s) {
    std::string out(s);
    cd_string_free(s);
    return out;
}

Table make_table(int n) {
    cd_table *t = nullptr;
    check(cd_table_create(n, &t));
    return Table(t);
}

std::string fixed(double v, int precision) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << v;
    return os.str();
}

struct Common {
    std::string format = "pretty";
    std::string output;
    std::optional<int> precision;
    int workers = 1;

    int digits(int fallback = 6) const { return precision.value_or(fallback); }
};

void emit(const Common &common, const std::string &text) {
    if (common.output.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        std::cout.flush();
        if (!std::cout) throw Failure{kExitRuntime, "failed writing to standard output"};
        return;
    }
    std::ofstream file(common.output, std::ios::binary);
    if (!file) throw Failure{kExitRuntime, "cannot open " + common.output + " for writing"};
    file << text;
    if (!text.empty() && text.back() != '\n') file << '\n';
    if (!file) throw Failure{kExitRuntime, "failed writing " + common.output};
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kExitRuntime, "cannot read " + path};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fraction_text(int64_t num, int64_t den) {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::string bits_text(const std::vector<int> &bits) {
    std::string s;
    for (int b : bits) s += static_cast<char>('0' + b);
    return s;
}

cd_noise parse_noise(const std::string &kind, double p) {
    if (kind == "ideal") {
        if (p != 0.0) usage("--p must be 0 for ideal noise");
        return {CD_NOISE_IDEAL, 0.0};
    }
    if (kind == "werner") return {CD_NOISE_WERNER, p};
    if (kind == "readout") return {CD_NOISE_READOUT, p};
    usage("unknown noise kind '" + kind + "'");
}

// ---- table

int cmd_table(const Common &common, int n) {
    auto table = make_table(n);
    int64_t num = 0, den = 1;
    check(cd_table_mean(table.get(), &num, &den));
    if (common.format == "csv") {
        char *csv = nullptr;
        check(cd_table_csv(table.get(), &csv));
        emit(common, take(csv));
        return kExitOk;
    }
    if (common.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 1; i <= n; ++i)
            for (int a = 0; a < 2; ++a)
                for (int j = 1; j <= n; ++j)
                    for (int b = 0; b < 2; ++b) {
                        int c = 0;
                        check(cd_table_entry(table.get(), i, a, j, b, &c));
                        rows.push_back({i, a, j, b, c});
                    }
        nlohmann::json doc{{"n", n},
                           {"columns", {"alice_site", "alice_bit", "bob_site", "bob_bit", "count"}},
                           {"rows", rows},
                           {"mean", {{"num", num}, {"den", den}}}};
        emit(common, doc.dump());
        return kExitOk;
    }
    // Rows: Bob (site, bit); columns: Alice (site, bit).
    std::ostringstream os;
    os << "Domination table C_" << n << " (rows: Bob site/bit, columns: Alice site/bit)\n";
    os << "        ";
    for (int i = 1; i <= n; ++i) os << std::setw(3) << i << "/0" << std::setw(3) << i << "/1";
    os << '\n';
    for (int j = 1; j <= n; ++j) {
        for (int b = 0; b < 2; ++b) {
            os << std::setw(4) << j << '/' << b << "  ";
            for (int i = 1; i <= n; ++i) {
                for (int a = 0; a < 2; ++a) {
                    int c = 0;
                    check(cd_table_entry(table.get(), i, a, j, b, &c));
                    os << std::setw(5) << c;
                }
            }
            os << '\n';
        }
    }
    os << "mean = " << fraction_text(num, den) << " = " << fixed(static_cast<double>(num) / den, common.digits())
       << '\n';
    emit(common, os.str());
    return kExitOk;
}

// ---- exact

struct StrategySource {
    std::optional<double> ansatz_theta;
    bool schedule = false;
    std::string file;
};

Strategy load_strategy(int n, const StrategySource &src, std::string *label) {
    const int chosen = (src.ansatz_theta ? 1 : 0) + (src.schedule ? 1 : 0) + (src.file.empty() ? 0 : 1);
    if (chosen != 1) usage("choose exactly one of --ansatz-theta, --schedule, --strategy-file");
    cd_strategy *s = nullptr;
    if (src.ansatz_theta) {
        check(cd_strategy_ansatz(n, *src.ansatz_theta, &s));
        *label = "ansatz";
    } else if (src.schedule) {
        double theta = 0.0;
        check(cd_schedule_theta(n, &theta));
        check(cd_strategy_ansatz(n, theta, &s));
        *label = "schedule";
    } else {
        check(cd_strategy_from_json(read_file(src.file).c_str(), &s));
        *label = "file";
    }
    Strategy out(s);
    if (cd_strategy_size(out.get()) != n) usage("strategy size does not match --n");
    return out;
}

int cmd_exact(const Common &common, int n, const StrategySource &src) {
    auto table = make_table(n);
    std::string label;
    auto strategy = load_strategy(n, src, &label);
    double d = 0.0;
    check(cd_exact_quantum(table.get(), strategy.get(), &d));
    const int digits = common.digits(9);
    if (common.format == "json") {
        char *sj = nullptr;
        check(cd_strategy_json(strategy.get(), &sj));
        nlohmann::json doc{{"n", n}, {"source", label}, {"d", d}, {"strategy", nlohmann::json::parse(take(sj))}};
        emit(common, doc.dump());
    } else if (common.format == "csv") {
        emit(common, "n,d\n" + std::to_string(n) + "," + fixed(d, digits) + "\n");
    } else {
        emit(common, "D = " + fixed(d, digits));
    }
    return kExitOk;
}

// ---- optimize

struct OptimizeArgs {
    std::string mode = "theta";
    int grid = 0;
    int restarts = 32;
    uint64_t seed = 0;
    std::string search = "exhaustive";
};

int optimize_theta(const Common &common, int n, const OptimizeArgs &args) {
    Sweep sweep;
    {
        cd_sweep *s = nullptr;
        check(cd_optimize_theta(n, args.grid > 0 ? args.grid : cd_default_grid_size(n), &s));
        sweep.reset(s);
    }
    const int digits = common.digits();
    if (common.format == "json") {
        char *j = nullptr;
        check(cd_sweep_json(sweep.get(), &j));
        emit(common, take(j));
    } else if (common.format == "csv") {
        std::ostringstream os;
        os << "theta,d\n";
        const size_t points = cd_sweep_grid_points(sweep.get());
        std::vector<double> theta(points), values(points);
        check(cd_sweep_grid(sweep.get(), theta.data(), values.data()));
        for (size_t k = 0; k < points; ++k) os << fixed(theta[k], digits) << ',' << fixed(values[k], digits) << '\n';
        emit(common, os.str());
    } else {
        std::ostringstream os;
        const double theta = cd_sweep_theta_star(sweep.get());
        os << "n = " << n << '\n'
           << "theta* = " << fixed(theta, digits) << " (" << fixed(theta * n / std::numbers::pi, digits)
           << " pi/n)\n"
           << "n theta* = " << fixed(cd_sweep_n_theta_star(sweep.get()), digits) << '\n'
           << "D* = " << fixed(cd_sweep_d_star(sweep.get()), digits) << '\n';
        const size_t ties = cd_sweep_tie_count(sweep.get());
        if (ties > 1) {
            os << "tied maximizers:";
            for (size_t k = 0; k < ties; ++k) os << ' ' << fixed(cd_sweep_tie(sweep.get(), k), digits);
            os << '\n';
        }
        emit(common, os.str());
    }
    return kExitOk;
}

int optimize_full(const Common &common, int n, const OptimizeArgs &args) {
    FullResult result;
    {
        cd_full_result *r = nullptr;
        check(cd_optimize_full(n, args.restarts, args.seed, common.workers, &r));
        result.reset(r);
    }
    const int digits = common.digits();
    if (common.format == "json") {
        char *j = nullptr;
        check(cd_full_result_json(result.get(), &j));
        emit(common, take(j));
        return kExitOk;
    }
    Strategy strategy;
    {
        cd_strategy *s = nullptr;
        check(cd_full_result_strategy(result.get(), &s));
        strategy.reset(s);
    }
    std::vector<double> alice(n), bob(n);
    check(cd_strategy_angles(strategy.get(), alice.data(), bob.data()));
    std::ostringstream os;
    if (common.format == "csv") {
        os << "site,alice,bob\n";
        for (int i = 0; i < n; ++i) os << i + 1 << ',' << fixed(alice[i], digits) << ',' << fixed(bob[i], digits) << '\n';
    } else {
        os << "n = " << n << '\n'
           << "D = " << fixed(cd_full_result_value(result.get()), digits)
           << (cd_full_result_lower_bound_only(result.get()) ? " (best found; lower bound only)" : "") << '\n'
           << "converged = " << (cd_full_result_converged(result.get()) ? "yes" : "no")
           << " (|grad| = " << std::scientific << std::setprecision(2) << cd_full_result_gradient_norm(result.get())
           << ")\n"
           << std::defaultfloat << "restarts = " << cd_full_result_restarts(result.get()) << '\n'
           << "site  alice  bob\n";
        for (int i = 0; i < n; ++i) os << i + 1 << "  " << fixed(alice[i], digits) << "  " << fixed(bob[i], digits) << '\n';
    }
    emit(common, os.str());
    return kExitOk;
}

int optimize_classical(const Common &common, int n, const OptimizeArgs &args) {
    auto table = make_table(n);
    cd_search_mode mode;
    if (args.search == "exhaustive") {
        mode = CD_SEARCH_EXHAUSTIVE;
    } else if (args.search == "local") {
        mode = CD_SEARCH_LOCAL;
    } else {
        usage("--search must be exhaustive or local");
    }
    cd_classical *raw = nullptr;
    int64_t num = 0, den = 1;
    check(cd_classical_optimum(table.get(), mode, args.seed, args.restarts, &raw, &num, &den));
    Classical strategy(raw);
    std::vector<int> alice(n), bob(n);
    check(cd_classical_bits(strategy.get(), alice.data(), bob.data()));
    const double value = static_cast<double>(num) / den;
    const int digits = common.digits();
    if (common.format == "json") {
        nlohmann::json doc{{"n", n},
                           {"search", args.search},
                           {"value", value},
                           {"value_num", num},
                           {"value_den", den},
                           {"alice", alice},
                           {"bob", bob}};
        emit(common, doc.dump());
    } else if (common.format == "csv") {
        std::ostringstream os;
        os << "site,alice_bit,bob_bit\n";
        for (int i = 0; i < n; ++i) os << i + 1 << ',' << alice[i] << ',' << bob[i] << '\n';
        emit(common, os.str());
    } else {
        emit(common, "n = " + std::to_string(n) + "\nC = " + fraction_text(num, den) + " = " + fixed(value, digits) +
                         "\nalice = " + bits_text(alice) + "\nbob   = " + bits_text(bob));
    }
    return kExitOk;
}

int cmd_optimize(const Common &common, int n, const OptimizeArgs &args) {
    if (args.mode == "theta") return optimize_theta(common, n, args);
    if (args.mode == "full") return optimize_full(common, n, args);
    if (args.mode == "classical") return optimize_classical(common, n, args);
    usage("--mode must be theta, full or classical");
}

// ---- scan

int cmd_scan(const Common &common, int n_min, int n_max) {
    if (n_max < n_min) usage("scan needs n_min <= n_max");
    std::vector<cd_scan_row> rows(static_cast<size_t>(n_max - n_min + 1));
    check(cd_theta_scan(n_min, n_max, common.workers, rows.data()));
    const int digits = common.digits();
    std::vector<int> steps(rows.size());
    size_t num_steps = 0;
    check(cd_scan_steps(rows.data(), rows.size(), steps.data(), &num_steps));
    steps.resize(num_steps);
    if (common.format == "csv") {
        char *csv = nullptr;
        check(cd_scan_csv(rows.data(), rows.size(), digits, &csv));
        emit(common, take(csv));
    } else if (common.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto &r : rows)
            arr.push_back({{"n", r.n}, {"theta_star", r.theta_star}, {"n_theta_star", r.n_theta_star}, {"d_star", r.d_star}});
        emit(common, nlohmann::json{{"rows", arr}, {"steps", steps}}.dump());
    } else {
        std::ostringstream os;
        os << std::setw(4) << "n" << std::setw(14) << "theta*" << std::setw(14) << "n theta*/pi" << std::setw(14)
           << "D*" << '\n';
        for (const auto &r : rows) {
            os << std::setw(4) << r.n << std::setw(14) << fixed(r.theta_star, digits) << std::setw(14)
               << fixed(r.n_theta_star / std::numbers::pi, digits) << std::setw(14) << fixed(r.d_star, digits) << '\n';
        }
        os << "steps at n =";
        for (int s : steps) os << ' ' << s;
        os << '\n';
        emit(common, os.str());
    }
    return kExitOk;
}

// ---- simulate

struct SimulateArgs {
    std::string strategy = "quantum";
    std::optional<double> theta;
    std::string strategy_file;
    std::string noise = "ideal";
    double p = 0.0;
    uint64_t seed = 0;
    uint64_t games = 1000000;
    uint64_t checkpoint_every = 0;
};

int cmd_simulate(const Common &common, int n, const SimulateArgs &args) {
    auto table = make_table(n);
    const cd_noise noise = parse_noise(args.noise, args.p);
    Strategy quantum;
    Classical classical;
    if (args.strategy == "quantum") {
        StrategySource src;
        if (args.theta) {
            src.ansatz_theta = args.theta;
        } else if (!args.strategy_file.empty()) {
            src.file = args.strategy_file;
        } else {
            src.schedule = true;
        }
        std::string label;
        quantum = load_strategy(n, src, &label);
    } else if (args.strategy == "classical") {
        cd_classical *raw = nullptr;
        int64_t num = 0, den = 1;
        const cd_search_mode mode = n <= 12 ? CD_SEARCH_EXHAUSTIVE : CD_SEARCH_LOCAL;
        check(cd_classical_optimum(table.get(), mode, 0, 256, &raw, &num, &den));
        classical.reset(raw);
    } else if (args.strategy != "random") {
        usage("--strategy must be quantum, classical or random");
    }
    if (args.games < 1) usage("--games must be >= 1");

    Simulation sim;
    {
        cd_simulation *raw = nullptr;
        check(cd_simulate(table.get(), quantum.get(), classical.get(), noise, args.seed, args.games,
                          args.checkpoint_every, common.workers, &raw));
        sim.reset(raw);
    }
    const int digits = common.digits();
    if (common.format == "json") {
        char *j = nullptr;
        check(cd_simulation_json(sim.get(), &j));
        emit(common, take(j));
    } else if (common.format == "csv") {
        char *csv = nullptr;
        check(cd_simulation_trace_csv(sim.get(), digits, &csv));
        emit(common, take(csv));
    } else {
        std::ostringstream os;
        os << "n = " << n << ", strategy = " << args.strategy << ", noise = " << args.noise << " (p = " << args.p
           << "), seed = " << args.seed << ", games = " << args.games << '\n'
           << "mean = " << fixed(cd_simulation_final_mean(sim.get()), digits)
           << " +/- " << fixed(cd_simulation_std_error(sim.get()), digits) << " (std. error)\n";
        emit(common, os.str());
    }
    return kExitOk;
}

// ---- advantage / calibrate

int cmd_advantage(const Common &common, const std::vector<int> &ns, const std::string &noise_kind, double p,
                  uint64_t seed, uint64_t games) {
    const cd_noise noise = parse_noise(noise_kind, p);
    if (games < 1) usage("--games must be >= 1");
    std::vector<cd_achieved> campaign(ns.size());
    for (size_t k = 0; k < ns.size(); ++k) {
        check(cd_achieved_advantage(ns[k], noise, seed, games, common.workers, &campaign[k]));
    }
    const int digits = common.digits();
    if (common.format == "json") {
        char *j = nullptr;
        check(cd_campaign_json(campaign.data(), campaign.size(), &j));
        emit(common, take(j));
    } else if (common.format == "csv") {
        std::ostringstream os;
        os << "n,noise_kind,p,q,c,r,a,a_percent,seed,num_games\n";
        for (const auto &e : campaign) {
            os << e.n << ',' << noise_kind << ',' << fixed(e.noise.p, digits) << ',' << fixed(e.report.q, digits)
               << ',' << fixed(e.report.c, digits) << ',' << fixed(e.report.r, digits) << ','
               << fixed(e.report.a, digits) << ',' << e.report.a_percent << ',' << e.seed << ',' << e.num_games
               << '\n';
        }
        emit(common, os.str());
    } else {
        std::ostringstream os;
        os << std::setw(4) << "n" << std::setw(12) << "Q" << std::setw(12) << "C" << std::setw(12) << "R"
           << std::setw(8) << "A" << '\n';
        for (const auto &e : campaign) {
            os << std::setw(4) << e.n << std::setw(12) << fixed(e.report.q, digits) << std::setw(12)
               << fixed(e.report.c, digits) << std::setw(12) << fixed(e.report.r, digits) << std::setw(7)
               << e.report.a_percent << "%" << (e.classical_exact ? "" : "  (C from local search)") << '\n';
        }
        os << "noise = " << noise_kind << " (p = " << p << "), seed = " << seed << ", games = " << games << '\n';
        emit(common, os.str());
    }
    return kExitOk;
}

int cmd_calibrate(const Common &common, int n, const std::string &noise_kind, double target) {
    const cd_noise noise = parse_noise(noise_kind, 0.0);
    if (noise.kind == CD_NOISE_IDEAL) usage("calibrate needs --noise werner or readout");
    double p = 0.0;
    check(cd_calibrate_noise(n, noise.kind, target, &p));
    const int digits = common.digits();
    if (common.format == "json") {
        emit(common, nlohmann::json{{"n", n}, {"noise_kind", noise_kind}, {"target_a", target}, {"p", p}}.dump());
    } else if (common.format == "csv") {
        emit(common, "n,noise_kind,target_a,p\n" + std::to_string(n) + "," + noise_kind + "," + fixed(target, digits) +
                         "," + fixed(p, digits) + "\n");
    } else {
        emit(common, "p = " + fixed(p, digits));
    }
    return kExitOk;
}

int default_workers() {
    if (const char *env = std::getenv("CYCLEDOM_WORKERS")) {
        try {
            const int w = std::stoi(env);
            if (w >= 1) return w;
        } catch (const std::exception &) {
        }
        throw Failure{kExitUsage, "CYCLEDOM_WORKERS must be a positive integer"};
    }
    return 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Two-player graph-domination game on cycle graphs: tables, exact values, optimizers, simulation"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    Common common;
    try {
        common.workers = default_workers();
    } catch (const Failure &f) {
        std::cerr << "error: " << f.message << '\n';
        return f.exit_code;
    }
    app.add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "pretty"}))
        ->capture_default_str();
    app.add_option("--output,-o", common.output, "Write output to this file instead of stdout");
    app.add_option("--precision", common.precision, "Decimals for floating-point output (default 6; exact: 9)")
        ->check(CLI::Range(0, 17));
    app.add_option("--workers", common.workers, "Worker threads (default $CYCLEDOM_WORKERS or 1)")
        ->check(CLI::PositiveNumber);

    int n = 0;
    auto *table = app.add_subcommand("table", "Emit the domination table of C_n");
    table->add_option("--n", n, "Cycle size")->required();

    StrategySource source;
    auto *exact = app.add_subcommand("exact", "Exact expected domination of an angle strategy");
    exact->add_option("--n", n, "Cycle size")->required();
    exact->add_option("--ansatz-theta", source.ansatz_theta, "Linear ansatz with this increment (radians)");
    exact->add_flag("--schedule", source.schedule, "Linear ansatz with the scheduled increment (5 <= n <= 13)");
    exact->add_option("--strategy-file", source.file, "Strategy JSON {n, alice, bob}");

    OptimizeArgs opt;
    auto *optimize = app.add_subcommand("optimize", "Optimal strategies");
    optimize->add_option("--n", n, "Cycle size")->required();
    optimize->add_option("--mode", opt.mode, "theta | full | classical")->capture_default_str();
    optimize->add_option("--grid", opt.grid, "theta grid size (default max(512, 8n))");
    optimize->add_option("--restarts", opt.restarts, "Restarts for full / local search")->capture_default_str();
    optimize->add_option("--seed", opt.seed, "Seed")->capture_default_str();
    optimize->add_option("--search", opt.search, "Classical search: exhaustive | local")->capture_default_str();

    int n_min = 0, n_max = 0;
    auto *scan = app.add_subcommand("scan", "Optimal n*theta for a range of cycle sizes");
    scan->add_option("n_min", n_min, "Smallest n")->required();
    scan->add_option("n_max", n_max, "Largest n")->required();

    SimulateArgs sim;
    auto *simulate = app.add_subcommand("simulate", "Monte Carlo play");
    simulate->add_option("--n", n, "Cycle size")->required();
    simulate->add_option("--strategy", sim.strategy, "quantum | classical | random")->capture_default_str();
    simulate->add_option("--theta", sim.theta, "Ansatz increment for the quantum strategy (default: schedule)");
    simulate->add_option("--strategy-file", sim.strategy_file, "Quantum strategy JSON");
    simulate->add_option("--noise", sim.noise, "ideal | werner | readout")->capture_default_str();
    simulate->add_option("--p", sim.p, "Noise strength")->check(CLI::Range(0.0, 1.0));
    simulate->add_option("--seed", sim.seed, "Seed")->capture_default_str();
    simulate->add_option("--games", sim.games, "Number of games")->capture_default_str();
    simulate->add_option("--checkpoint-every", sim.checkpoint_every, "Checkpoint spacing (0 = powers of two)");

    std::vector<int> adv_ns;
    std::string adv_noise = "ideal";
    double adv_p = 0.0;
    uint64_t adv_seed = 0, adv_games = 1000000;
    auto *adv = app.add_subcommand("advantage", "Achieved quantum advantage (Q simulated, C and R exact)");
    adv->add_option("--n", adv_ns, "Cycle size(s), e.g. 5,6,7")->required()->delimiter(',');
    adv->add_option("--noise", adv_noise, "ideal | werner | readout")->capture_default_str();
    adv->add_option("--p", adv_p, "Noise strength")->check(CLI::Range(0.0, 1.0));
    adv->add_option("--seed", adv_seed, "Seed")->capture_default_str();
    adv->add_option("--games", adv_games, "Games per cycle size")->capture_default_str();

    std::string cal_noise = "werner";
    double cal_target = 0.0;
    auto *cal = app.add_subcommand("calibrate", "Noise strength giving a target expected advantage");
    cal->add_option("--n", n, "Cycle size")->required();
    cal->add_option("--noise", cal_noise, "werner | readout")->capture_default_str();
    cal->add_option("--target", cal_target, "Target advantage as a fraction, e.g. 0.14")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*table) return cmd_table(common, n);
        if (*exact) return cmd_exact(common, n, source);
        if (*optimize) return cmd_optimize(common, n, opt);
        if (*scan) return cmd_scan(common, n_min, n_max);
        if (*simulate) return cmd_simulate(common, n, sim);
        if (*adv) return cmd_advantage(common, adv_ns, adv_noise, adv_p, adv_seed, adv_games);
        if (*cal) return cmd_calibrate(common, n, cal_noise, cal_target);
    } catch (const Failure &f) {
        std::cerr << "error: " << f.message << '\n';
        return f.exit_code;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}
