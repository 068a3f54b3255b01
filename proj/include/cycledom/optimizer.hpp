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

#ifndef CYCLEDOM_OPTIMIZER_HPP
#define CYCLEDOM_OPTIMIZER_HPP

#include <cstdint>
#include <ostream>
#include <vector>

#include "cycledom/graph.hpp"
#include "cycledom/strategy.hpp"

namespace cycledom {

struct ThetaSweepResult {
    int n = 0;
    std::vector<double> theta_grid;  // [0, 2pi], grid_size + 1 points
    std::vector<double> values;
    double theta_star = 0.0;  // smallest global maximizer in (0, pi]
    double d_star = 0.0;
    double n_theta_star = 0.0;
    std::vector<double> ties;  // every global maximizer in (0, pi], ascending
};

/// Dense grid over the ansatz increment followed by derivative-based
/// refinement. Requires grid_size >= 4n.
ThetaSweepResult optimize_theta(int n, int grid_size);

/// max(512, 8n), the CLI default.
int default_grid_size(int n);

struct ScanRow {
    int n = 0;
    double theta_star = 0.0;
    double n_theta_star = 0.0;
    double d_star = 0.0;
};

std::vector<ScanRow> theta_step_scan(int n_min, int n_max, int workers = 1);

/// First n of every plateau after the first, i.e. each n where
/// round(n theta* / 2pi) differs from the previous row.
std::vector<int> step_positions(const std::vector<ScanRow> &rows);

/// Header n,theta_star,n_theta_star,d_star.
void write_scan_csv(const std::vector<ScanRow> &rows, std::ostream &os, int precision);

struct FullOptimizationResult {
    AngleStrategy strategy;  // gauge-fixed, theta^A_1 = 0
    double value = 0.0;
    double gradient_norm = 0.0;
    int restarts = 0;
    int best_restart = -1;
    bool converged = false;
    /// n > 13: no known bound, so the value is only a lower bound.
    bool lower_bound_only = false;
};

inline constexpr int kDefaultRestarts = 32;

/// Multi-start BFGS ascent of exact_expectation_quantum over the 2n - 1 free
/// angles (theta^A_1 pinned to 0).
FullOptimizationResult optimize_full(int n, int restarts, std::uint64_t seed, int workers = 1);

enum class ClassicalSearchMode { Exhaustive, LocalSearch };

inline constexpr int kExhaustiveLimit = 12;

struct ClassicalOptimum {
    ClassicalStrategy strategy;
    Rational value;
};

ClassicalOptimum classical_optimum(const DominationTable &table, ClassicalSearchMode mode,
                                   std::uint64_t seed = 0, int restarts = 64);

}  // namespace cycledom

#endif  // CYCLEDOM_OPTIMIZER_HPP
