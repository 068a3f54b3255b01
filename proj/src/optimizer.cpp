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

#include <gsl/gsl_blas.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <array>
#include <bit>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <iomanip>
#include <memory>
#include <mutex>
#include <numbers>

#include "cycledom/analytics.hpp"
#include "cycledom/error.hpp"
#include "cycledom/rng.hpp"
#include "parallel.hpp"

namespace cycledom {

namespace {

constexpr double kTieTolerance = 1e-9;

// Maximizer of closed_form_long inside [lo, hi] around a grid peak.
double refine_peak(int n, double lo, double hi) {
    auto deriv = [n](double t) { return closed_form_long_derivative(n, t); };
    const double dlo = deriv(lo);
    const double dhi = deriv(hi);
    if (dlo > 0.0 && dhi < 0.0) {
        std::uintmax_t iters = 200;
        auto [a, b] = boost::math::tools::toms748_solve(deriv, lo, hi, dlo, dhi,
                                                        boost::math::tools::eps_tolerance<double>(52), iters);
        return 0.5 * (a + b);
    }
    std::uintmax_t iters = 500;
    auto neg = [n](double t) { return -closed_form_long(n, t); };
    return boost::math::tools::brent_find_minima(neg, lo, hi, 52, iters).first;
}

struct Candidate {
    double theta;
    double value;
};

}  // namespace

int default_grid_size(int n) { return std::max(512, 8 * n); }

ThetaSweepResult optimize_theta(int n, int grid_size) {
    if (n < 3) {
        fail(ErrorCode::InvalidArgument, "optimize_theta needs n >= 3");
    }
    if (grid_size < 4 * n) {
        fail(ErrorCode::Precondition, "grid_size must be >= 4n (" + std::to_string(4 * n) + ")");
    }
    const double pi = std::numbers::pi;
    ThetaSweepResult out;
    out.n = n;
    out.theta_grid.resize(grid_size + 1);
    out.values.resize(grid_size + 1);
    for (int k = 0; k <= grid_size; ++k) {
        out.theta_grid[k] = 2.0 * pi * k / grid_size;
        out.values[k] = closed_form_long(n, out.theta_grid[k]);
    }
    out.theta_grid.back() = 2.0 * pi;

    // D(theta) = D(-theta), so the search stays in (0, pi].
    const int last = grid_size / 2;
    std::vector<Candidate> peaks;
    for (int k = 1; k <= last; ++k) {
        const auto &v = out.values;
        if (v[k] < v[k - 1] || v[k] < v[k + 1]) continue;
        const double lo = out.theta_grid[k - 1];
        const double hi = std::min(out.theta_grid[k + 1], pi);
        double t = refine_peak(n, lo, hi);
        double d = closed_form_long(n, t);
        if (d < v[k]) {
            t = out.theta_grid[k];
            d = v[k];
        }
        if (t > 0.0 && t <= pi) peaks.push_back({t, d});
    }
    if (peaks.empty()) {
        fail(ErrorCode::Precondition, "no interior maximum found on the grid");
    }

    const auto best = std::max_element(peaks.begin(), peaks.end(),
                                       [](const Candidate &a, const Candidate &b) { return a.value < b.value; });
    out.d_star = best->value;
    for (const auto &c : peaks) {
        if (c.value < out.d_star - kTieTolerance) continue;
        const bool duplicate = std::any_of(out.ties.begin(), out.ties.end(),
                                           [&](double t) { return std::abs(t - c.theta) < 1e-9; });
        if (!duplicate) out.ties.push_back(c.theta);
    }
    std::sort(out.ties.begin(), out.ties.end());
    out.theta_star = out.ties.front();
    out.d_star = closed_form_long(n, out.theta_star);
    out.n_theta_star = n * out.theta_star;
    return out;
}

std::vector<ScanRow> theta_step_scan(int n_min, int n_max, int workers) {
    if (n_min < 5 || n_max < n_min) {
        fail(ErrorCode::InvalidArgument, "scan needs 5 <= n_min <= n_max");
    }
    std::vector<ScanRow> rows(n_max - n_min + 1);
    detail::parallel_for(static_cast<int>(rows.size()), workers, [&](int k) {
        const int n = n_min + k;
        const auto sweep = optimize_theta(n, default_grid_size(n));
        rows[k] = {n, sweep.theta_star, sweep.n_theta_star, sweep.d_star};
    });
    return rows;
}

std::vector<int> step_positions(const std::vector<ScanRow> &rows) {
    std::vector<int> steps;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto prev = std::lround(rows[k - 1].n_theta_star / (2.0 * std::numbers::pi));
        const auto cur = std::lround(rows[k].n_theta_star / (2.0 * std::numbers::pi));
        if (prev != cur) steps.push_back(rows[k].n);
    }
    return steps;
}

void write_scan_csv(const std::vector<ScanRow> &rows, std::ostream &os, int precision) {
    os << "n,theta_star,n_theta_star,d_star\n";
    os << std::fixed << std::setprecision(precision);
    for (const auto &r : rows) {
        os << r.n << ',' << r.theta_star << ',' << r.n_theta_star << ',' << r.d_star << '\n';
    }
}

// ---------------------------------------------------------------------------
// Full 2n-angle optimization.

namespace {

struct Problem {
    const DominationTable *table;
    int n;
};

AngleStrategy unpack(const gsl_vector *x, int n) {
    std::vector<double> alice(n, 0.0), bob(n);
    for (int i = 1; i < n; ++i) alice[i] = gsl_vector_get(x, i - 1);
    for (int j = 0; j < n; ++j) bob[j] = gsl_vector_get(x, n - 1 + j);
    return {std::move(alice), std::move(bob)};
}

void pack_gradient(const std::vector<double> &grad, int n, gsl_vector *g) {
    // Minimizing -D; drop the pinned theta^A_1 component.
    for (int k = 1; k < 2 * n; ++k) gsl_vector_set(g, k - 1, -grad[k]);
}

double neg_value(const gsl_vector *x, void *params) {
    const auto &p = *static_cast<const Problem *>(params);
    return -exact_expectation_quantum(*p.table, unpack(x, p.n));
}

void neg_gradient(const gsl_vector *x, void *params, gsl_vector *g) {
    const auto &p = *static_cast<const Problem *>(params);
    pack_gradient(quantum_gradient(*p.table, unpack(x, p.n)), p.n, g);
}

void neg_both(const gsl_vector *x, void *params, double *f, gsl_vector *g) {
    const auto &p = *static_cast<const Problem *>(params);
    const auto s = unpack(x, p.n);
    *f = -exact_expectation_quantum(*p.table, s);
    pack_gradient(quantum_gradient(*p.table, s), p.n, g);
}

double free_gradient_norm(const std::vector<double> &grad) {
    double s = 0.0;
    for (std::size_t k = 1; k < grad.size(); ++k) s += grad[k] * grad[k];
    return std::sqrt(s);
}

struct VectorDeleter {
    void operator()(gsl_vector *v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
    void operator()(gsl_multimin_fdfminimizer *m) const { gsl_multimin_fdfminimizer_free(m); }
};

struct LocalResult {
    AngleStrategy strategy;
    double value = 0.0;
    double gradient_norm = 0.0;
};

LocalResult ascend(const DominationTable &table, int n, std::uint64_t seed, int restart) {
    const std::size_t dim = 2 * static_cast<std::size_t>(n) - 1;
    Rng rng(seed, static_cast<std::uint64_t>(restart));
    std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(dim));
    for (std::size_t k = 0; k < dim; ++k) gsl_vector_set(x.get(), k, 2.0 * std::numbers::pi * rng.uniform01());

    Problem problem{&table, n};
    gsl_multimin_function_fdf fdf{&neg_value, &neg_gradient, &neg_both, dim, &problem};
    std::unique_ptr<gsl_multimin_fdfminimizer, MinimizerDeleter> solver(
        gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, dim));

    // Restarting from the last iterate discards a stale Hessian estimate,
    // which matters on the flat directions left by the reflection symmetry.
    for (int round = 0; round < 8; ++round) {
        gsl_multimin_fdfminimizer_set(solver.get(), &fdf, x.get(), 0.05, 0.1);
        for (int iter = 0; iter < 2000; ++iter) {
            if (gsl_multimin_fdfminimizer_iterate(solver.get()) != GSL_SUCCESS) break;
            if (gsl_multimin_test_gradient(solver->gradient, 1e-11) == GSL_SUCCESS) break;
        }
        gsl_vector_memcpy(x.get(), solver->x);
        if (gsl_blas_dnrm2(solver->gradient) <= 1e-11) break;
    }

    LocalResult out;
    out.strategy = unpack(x.get(), n);
    out.value = exact_expectation_quantum(table, out.strategy);
    out.gradient_norm = free_gradient_norm(quantum_gradient(table, out.strategy));
    return out;
}

void disable_gsl_abort() {
    static std::once_flag once;
    std::call_once(once, [] { gsl_set_error_handler_off(); });
}

}  // namespace

FullOptimizationResult optimize_full(int n, int restarts, std::uint64_t seed, int workers) {
    if (restarts < 1) {
        fail(ErrorCode::InvalidArgument, "restarts must be >= 1");
    }
    disable_gsl_abort();
    const auto table = DominationTable::build(CycleGame(n));
    std::vector<LocalResult> results(restarts);
    detail::parallel_for(restarts, workers, [&](int k) { results[k] = ascend(table, n, seed, k); });

    int best = 0;
    for (int k = 1; k < restarts; ++k) {
        if (results[k].value > results[best].value) best = k;
    }
    FullOptimizationResult out;
    out.strategy = results[best].strategy.gauge_fixed();
    out.value = results[best].value;
    out.gradient_norm = results[best].gradient_norm;
    out.restarts = restarts;
    out.best_restart = best;
    out.converged = out.gradient_norm <= 1e-8;
    out.lower_bound_only = n > 13;
    return out;
}

// ---------------------------------------------------------------------------
// Classical deterministic strategies.

namespace {

// Sum over Bob's sites of his best reply to a fixed Alice map; fills bob_map
// (ties prefer outcome 0).
std::int64_t best_reply_total(const std::vector<std::array<std::int64_t, 2>> &column, std::vector<Move> *bob_map) {
    std::int64_t total = 0;
    for (std::size_t j = 0; j < column.size(); ++j) {
        const bool one = column[j][1] > column[j][0];
        total += column[j][one ? 1 : 0];
        if (bob_map) (*bob_map)[j] = one ? Move::One : Move::Zero;
    }
    return total;
}

ClassicalOptimum exhaustive(const DominationTable &table) {
    const int n = table.size();
    // column[j][b] = sum_i table(i, alice_map[i], j, b), kept in step with a
    // Gray-code walk over Alice's maps.
    std::vector<std::array<std::int64_t, 2>> column(n, {0, 0});
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int b = 0; b < 2; ++b) column[j][b] += table.at0(i, 0, j, b);
        }
    }
    std::uint32_t code = 0;
    std::int64_t best_total = best_reply_total(column, nullptr);
    std::uint32_t best_code = 0;
    const std::uint32_t count = 1u << n;
    for (std::uint32_t k = 1; k < count; ++k) {
        const int site = std::countr_zero(k);
        const int old_bit = (code >> site) & 1u;
        code ^= 1u << site;
        for (int j = 0; j < n; ++j) {
            for (int b = 0; b < 2; ++b) {
                column[j][b] += table.at0(site, 1 - old_bit, j, b) - table.at0(site, old_bit, j, b);
            }
        }
        const std::int64_t total = best_reply_total(column, nullptr);
        if (total > best_total || (total == best_total && code < best_code)) {
            best_total = total;
            best_code = code;
        }
    }

    std::vector<Move> alice(n), bob(n);
    for (int i = 0; i < n; ++i) alice[i] = ((best_code >> i) & 1u) ? Move::One : Move::Zero;
    for (auto &c : column) c = {0, 0};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int b = 0; b < 2; ++b) column[j][b] += table.at0(i, bit_of(alice[i]), j, b);
        }
    }
    best_reply_total(column, &bob);
    ClassicalStrategy strategy(std::move(alice), std::move(bob));
    return {strategy, exact_expectation_classical(table, strategy)};
}

ClassicalOptimum local_search(const DominationTable &table, std::uint64_t seed, int restarts) {
    const int n = table.size();
    ClassicalOptimum best{ClassicalStrategy::constant(n, Move::Zero, Move::Zero), Rational(-1)};
    for (int r = 0; r < restarts; ++r) {
        Rng rng(seed, static_cast<std::uint64_t>(r));
        std::vector<Move> alice(n), bob(n);
        for (auto &m : alice) m = rng.below(2) ? Move::One : Move::Zero;
        for (auto &m : bob) m = rng.below(2) ? Move::One : Move::Zero;
        ClassicalStrategy s(alice, bob);
        Rational value = exact_expectation_classical(table, s);
        // Alternating best replies; each pass weakly improves the value.
        for (;;) {
            for (int j = 0; j < n; ++j) {
                std::int64_t sum[2] = {0, 0};
                for (int i = 0; i < n; ++i) {
                    for (int b = 0; b < 2; ++b) sum[b] += table.at0(i, bit_of(s.alice_map[i]), j, b);
                }
                s.bob_map[j] = sum[1] > sum[0] ? Move::One : Move::Zero;
            }
            for (int i = 0; i < n; ++i) {
                std::int64_t sum[2] = {0, 0};
                for (int j = 0; j < n; ++j) {
                    for (int a = 0; a < 2; ++a) sum[a] += table.at0(i, a, j, bit_of(s.bob_map[j]));
                }
                s.alice_map[i] = sum[1] > sum[0] ? Move::One : Move::Zero;
            }
            const Rational next = exact_expectation_classical(table, s);
            if (next <= value) break;
            value = next;
        }
        if (value > best.value) best = {s, value};
    }
    return best;
}

}  // namespace

ClassicalOptimum classical_optimum(const DominationTable &table, ClassicalSearchMode mode, std::uint64_t seed,
                                   int restarts) {
    if (mode == ClassicalSearchMode::Exhaustive) {
        if (table.size() > kExhaustiveLimit) {
            fail(ErrorCode::ModeError, "exhaustive classical search is limited to n <= " +
                                           std::to_string(kExhaustiveLimit) + "; use local_search");
        }
        return exhaustive(table);
    }
    if (restarts < 1) {
        fail(ErrorCode::InvalidArgument, "restarts must be >= 1");
    }
    return local_search(table, seed, restarts);
}

}  // namespace cycledom
