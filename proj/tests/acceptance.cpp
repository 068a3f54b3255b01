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

// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails. argv[1] is the path to the command-line tool.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cycledom/analytics.hpp"
#include "cycledom/graph.hpp"
#include "cycledom/montecarlo.hpp"
#include "cycledom/optimizer.hpp"
#include "cycledom/strategy.hpp"
#include "data/reference_tables.hpp"
#include "oracles.hpp"

namespace cd = cycledom;

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

cd::DominationTable table_of(int n) { return cd::DominationTable::build(cd::CycleGame(n)); }

Outcome table_fidelity() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto c5 = table_of(5);
    const auto c10 = table_of(10);
    const int c5_direct = cd::oracle::reference_mismatches(c5, cd::testdata::kReferenceC5, false);
    const int c5_mirror = cd::oracle::reference_mismatches(c5, cd::testdata::kReferenceC5, true);
    const int c10_direct = cd::oracle::reference_mismatches(c10, cd::testdata::kReferenceC10, false);
    const int c10_mirror = cd::oracle::reference_mismatches(c10, cd::testdata::kReferenceC10, true);
    const double elapsed = seconds_since(t0);
    o.detail << "C5 mismatches " << c5_direct << " (mirror " << c5_mirror << "), C10 mismatches " << c10_direct
             << " (mirror " << c10_mirror << "), " << elapsed << " s";
    o.require(std::min(c5_direct, c5_mirror) == 0, "C5 table differs from the printed reference");
    o.require(std::min(c10_direct, c10_mirror) == 0, "C10 table differs from the printed reference");
    o.require(elapsed < 1.0, "slower than 1 s");
    return o;
}

Outcome random_baseline() {
    Outcome o;
    const auto r = cd::exact_expectation_random(table_of(5));
    o.detail << "R5 = " << r;
    o.require(r == cd::Rational(21, 5), "R5 != 21/5");
    return o;
}

Outcome classical_optimum() {
    Outcome o;
    const auto t0 = Clock::now();
    cd::Rational c5;
    for (int n = 5; n <= 12; ++n) {
        const auto v = cd::classical_optimum(table_of(n), cd::ClassicalSearchMode::Exhaustive).value;
        if (n == 5) c5 = v;
    }
    const double elapsed = seconds_since(t0);
    o.detail << "C5 = " << c5 << ", n=5..12 in " << elapsed << " s";
    o.require(c5 == cd::Rational(23, 5), "C5 != 23/5");
    o.require(elapsed < 60.0, "slower than 60 s");
    return o;
}

Outcome quantum_optimum() {
    Outcome o;
    const double d5 = cd::exact_expectation_quantum(table_of(5), cd::ansatz_strategy({5, cd::schedule_theta(5)}));
    double worst = 0.0;
    for (int n = 6; n <= 13; ++n) {
        const auto t = table_of(n);
        for (int k = 0; k < 100; ++k) {
            const double theta = 2 * kPi * k / 100.0;
            worst = std::max(worst, std::abs(cd::closed_form_long(n, theta) -
                                             cd::exact_expectation_quantum(t, cd::ansatz_strategy({n, theta}))));
        }
    }
    o.detail << std::setprecision(10) << "D5 = " << d5 << ", max |closed form - table sum| = " << worst;
    o.require(std::abs(d5 - 4.67361) <= 1e-5, "D5 off by more than 1e-5");
    o.require(worst <= 1e-9, "closed form disagrees with the table sum");
    return o;
}

cd::Rational half(int twice) { return cd::Rational(twice, 2); }

Outcome series_coefficients() {
    Outcome o;
    struct Row {
        int n;
        cd::Rational lambda;
        std::vector<cd::Rational> mu;
    };
    const std::vector<Row> published = {
        {5, 85, {2, half(-9), -3, half(1)}},
        {6, 138, {5, -4, -6, -2, 1}},
        {7, 203, {6, half(-5), -6, half(-9), -1, 1}},
        {8, 280, {7, -3, -5, -4, -3, -1, 1}},
        {9, 369, {8, half(-7), -6, half(-5), -2, -3, -1, 1}},
        {10, 470, {9, -4, -7, -3, 0, -2, -3, -1, 1}},
        {11, 583, {10, half(-9), -8, half(-7), 0, 0, -2, -3, -1, 1}},
    };
    int wrong = 0;
    double worst = 0.0;
    for (const auto &row : published) {
        const auto s = cd::extract_series(row.n);
        if (s.lambda != row.lambda) ++wrong;
        for (std::size_t l = 0; l < row.mu.size(); ++l) {
            if (l >= s.mu.size() || s.mu[l] != row.mu[l]) ++wrong;
        }
        for (int k = 0; k < 100; ++k) {
            const double theta = 2 * kPi * k / 100.0;
            worst = std::max(worst, std::abs(s.evaluate(theta) - cd::closed_form_long(row.n, theta)));
        }
    }
    o.detail << "n=5..11: " << wrong << " coefficients differ, series vs closed form max error " << worst;
    o.require(wrong == 0, "coefficients differ from the published table");
    o.require(worst <= 1e-9, "series disagrees with the closed form");
    return o;
}

Outcome theta_schedule() {
    Outcome o;
    double worst = 0.0;
    for (int n = 5; n <= 13; ++n) {
        const auto r = cd::optimize_theta(n, cd::default_grid_size(n));
        const double expect = n <= 10 ? 2 * kPi / n : 4 * kPi / n;
        worst = std::max(worst, std::abs(r.theta_star - expect));
    }
    const auto r10 = cd::optimize_theta(10, cd::default_grid_size(10));
    const double gap =
        r10.ties.size() == 2 ? std::abs(cd::closed_form_long(10, r10.ties[0]) - cd::closed_form_long(10, r10.ties[1]))
                             : 1.0;
    o.detail << "max |theta* - schedule| = " << worst << ", n=10 maximizers " << r10.ties.size()
             << " (value gap " << gap << ")";
    o.require(worst <= 1e-8, "theta* off schedule");
    o.require(r10.ties.size() == 2 && gap <= 1e-9, "n=10 tie not detected");
    return o;
}

Outcome step_scan() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto rows = cd::theta_step_scan(5, 37);
    const double elapsed = seconds_since(t0);
    const auto steps = cd::step_positions(rows);
    o.detail << "steps at";
    for (int s : steps) o.detail << ' ' << s;
    o.detail << ", " << elapsed << " s";
    o.require(steps.size() >= 2, "fewer than two steps");
    for (std::size_t k = 1; k < steps.size(); ++k) {
        const int gap = steps[k] - steps[k - 1];
        o.require(gap == 6 || gap == 7, "step gap " + std::to_string(gap));
    }
    o.require(elapsed < 30.0, "slower than 30 s");
    return o;
}

Outcome full_optimization() {
    Outcome o;
    double worst_value = 0.0;
    for (int n = 5; n <= 9; ++n) {
        const auto r = cd::optimize_full(n, cd::kDefaultRestarts, 0);
        worst_value = std::max(worst_value, std::abs(r.value - cd::closed_form_long(n, cd::schedule_theta(n))));
    }
    double worst_grad = 0.0;
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
    for (int n = 5; n <= 9; ++n) {
        const auto t = table_of(n);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> a(n), b(n);
            for (auto &x : a) x = angle(gen);
            for (auto &x : b) x = angle(gen);
            const auto g = cd::quantum_gradient(t, cd::AngleStrategy(a, b));
            for (int k = 0; k < 2 * n; ++k) {
                const double h = 1e-6;
                auto pa = a, pb = b, ma = a, mb = b;
                (k < n ? pa[k] : pb[k - n]) += h;
                (k < n ? ma[k] : mb[k - n]) -= h;
                const double fd = (cd::exact_expectation_quantum(t, cd::AngleStrategy(pa, pb)) -
                                   cd::exact_expectation_quantum(t, cd::AngleStrategy(ma, mb))) /
                                  (2 * h);
                worst_grad = std::max(worst_grad, std::abs(g[k] - fd) / std::max(1.0, std::abs(fd)));
            }
        }
    }
    o.detail << "max |D_full - D_ansatz| = " << worst_value << ", max gradient relative error " << worst_grad;
    o.require(worst_value <= 1e-6, "optimizer misses the ansatz value");
    o.require(worst_grad <= 1e-5, "gradient disagrees with finite differences");
    return o;
}

Outcome predicted_advantage() {
    Outcome o;
    const int expected[] = {18, 11, 20};
    for (int k = 0; k < 3; ++k) {
        const int n = 5 + k;
        const auto t = table_of(n);
        const double q = cd::exact_expectation_quantum(t, cd::ansatz_strategy({n, cd::schedule_theta(n)}));
        const double c = boost::rational_cast<double>(
            cd::classical_optimum(t, cd::ClassicalSearchMode::Exhaustive).value);
        const double r = boost::rational_cast<double>(cd::exact_expectation_random(t));
        const double a = cd::advantage(q, c, r).a * 100.0;
        o.detail << (k ? ", " : "") << "n=" << n << " A=" << std::fixed << std::setprecision(2) << a << "%";
        o.require(std::abs(a - expected[k]) <= 1.0, "n=" + std::to_string(n) + " outside " +
                                                         std::to_string(expected[k]) + "% +/- 1");
    }
    return o;
}

Outcome simulation_convergence() {
    Outcome o;
    const auto t = table_of(5);
    const cd::StrategyDescriptor quantum = cd::ansatz_strategy({5, cd::schedule_theta(5)});
    const cd::StrategyDescriptor classical = cd::classical_optimum(t, cd::ClassicalSearchMode::Exhaustive).strategy;
    const std::uint64_t games = 1000000;
    const auto t0 = Clock::now();
    const auto q = cd::run_simulation(t, quantum, cd::NoiseModel::ideal(), 0, games);
    const double elapsed = seconds_since(t0);
    const auto c = cd::run_simulation(t, classical, cd::NoiseModel::ideal(), 0, games);
    const double exact = cd::exact_expectation_quantum(t, std::get<cd::AngleStrategy>(quantum));

    // Per-game spread from each full run, scaled to every checkpoint.
    const double q_sd = q.std_error * std::sqrt(static_cast<double>(games));
    const double c_sd = c.std_error * std::sqrt(static_cast<double>(games));
    std::uint64_t first_overlap = 0;
    for (std::size_t k = 0; k < q.running_mean.size(); ++k) {
        const auto g = q.running_mean[k].games;
        if (g < 1024) continue;
        const double se = (q_sd + c_sd) / std::sqrt(static_cast<double>(g));
        if (q.running_mean[k].running_mean - c.running_mean[k].running_mean < se) {
            first_overlap = g;
            break;
        }
    }
    o.detail << std::setprecision(7) << "Q = " << q.final_mean << " +/- " << q.std_error << " (exact " << exact
             << "), C run " << c.final_mean << ", " << std::setprecision(3) << elapsed << " s";
    if (first_overlap) o.detail << ", running means overlap at " << first_overlap << " games";
    o.require(std::abs(q.final_mean - exact) <= 3 * q.std_error, "mean outside 3 standard errors");
    o.require(q.std_error < 1e-3, "standard error not below 1e-3");
    o.require(first_overlap == 0, "quantum and classical traces not separated from 1024 games");
    o.require(elapsed < 10.0, "slower than 10 s");
    return o;
}

Outcome noise_endpoints() {
    Outcome o;
    const auto t = table_of(5);
    const cd::StrategyDescriptor quantum = cd::ansatz_strategy({5, cd::schedule_theta(5)});
    const auto ideal = cd::run_simulation(t, quantum, cd::NoiseModel::ideal(), 0, 1000000);
    const auto w0 = cd::run_simulation(t, quantum, cd::NoiseModel::werner(0.0), 0, 1000000);
    const auto w1 = cd::run_simulation(t, quantum, cd::NoiseModel::werner(1.0), 0, 1000000);
    const double r = boost::rational_cast<double>(cd::exact_expectation_random(t));
    const double p = cd::calibrate_noise(5, cd::NoiseKind::Werner, 0.14);
    const auto achieved = cd::achieved_advantage(5, cd::NoiseModel::werner(p), 0, 1000000);
    o.detail << std::setprecision(7) << "p=0 mean " << w0.final_mean << " (ideal " << ideal.final_mean
             << "), p=1 mean " << w1.final_mean << " (R " << r << "), calibrated p = " << p << " gives A = "
             << achieved.report.a * 100 << "%";
    o.require(w0.final_mean == ideal.final_mean && w0.std_error == ideal.std_error, "werner p=0 differs from ideal");
    o.require(std::abs(w1.final_mean - r) <= 3 * w1.std_error, "werner p=1 away from the random baseline");
    o.require(achieved.report.a >= 0.12 && achieved.report.a <= 0.16, "calibrated advantage outside 12-16%");
    return o;
}

std::string capture(const std::string &cmd, int &status) {
    std::string out;
    FILE *p = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!p) {
        status = -1;
        return out;
    }
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
    const int raw = pclose(p);
    status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return out;
}

Outcome reproducibility(const std::string &cli) {
    Outcome o;
    const std::vector<std::string> commands = {
        "simulate --n 5 --games 1000000 --seed 0",
        "simulate --n 7 --strategy classical --games 300000 --seed 11",
        "simulate --n 6 --strategy random --games 300000 --seed 12",
        "simulate --n 6 --noise werner --p 0.2 --games 300000 --seed 13 --checkpoint-every 5000",
        "simulate --n 5 --noise readout --p 0.05 --games 300000 --seed 14",
        "advantage --n 5,6,7 --games 200000 --seed 15",
        "advantage --n 5 --noise werner --p 0.04 --games 200000 --seed 16",
        "optimize --n 6 --mode full --restarts 8 --seed 17",
        "optimize --n 9 --mode classical --search local --seed 18",
        "calibrate --n 5 --noise readout --target 0.14",
    };
    int checked = 0;
    for (const auto &args : commands) {
        for (const char *format : {"json", "csv"}) {
            const std::string base = cli + " --format " + format + " " + args;
            int s1 = 0, s2 = 0, s3 = 0;
            const auto a = capture(base + " --workers 1", s1);
            const auto b = capture(base + " --workers 1", s2);
            const auto c = capture(base + " --workers 4", s3);
            ++checked;
            if (s1 != 0 || s2 != 0 || s3 != 0) {
                o.require(false, "'" + args + "' exited nonzero");
            } else if (a != b || a != c) {
                o.require(false, "'" + args + "' (" + format + ") output differs");
            }
        }
    }
    o.detail << checked << " command/format pairs compared over repeat and worker counts 1, 4";
    return o;
}

}  // namespace

int main(int argc, char **argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-cycledom-cli>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"table fidelity", table_fidelity},
        {"random baseline", random_baseline},
        {"classical optimum", classical_optimum},
        {"quantum optimum", quantum_optimum},
        {"series coefficients", series_coefficients},
        {"theta schedule", theta_schedule},
        {"step scan", step_scan},
        {"full optimization", full_optimization},
        {"advantage", predicted_advantage},
        {"simulation convergence", simulation_convergence},
        {"noise endpoints", noise_endpoints},
        {"reproducibility", [&] { return reproducibility(cli); }},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << k + 1 << ". " << criteria[k].first
                  << ": " << o.detail.str() << std::endl;
    }
    std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
