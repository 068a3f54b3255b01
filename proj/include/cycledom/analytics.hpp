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

#ifndef CYCLEDOM_ANALYTICS_HPP
#define CYCLEDOM_ANALYTICS_HPP

#include <string>
#include <vector>

#include "cycledom/graph.hpp"
#include "cycledom/strategy.hpp"

namespace cycledom {

/// Expected dominated count under shared-Bell-pair play, averaged over
/// uniform starting sites. Summation order is fixed (i outer, j inner).
double exact_expectation_quantum(const DominationTable &table, const AngleStrategy &strategy);

/// Gradient of exact_expectation_quantum; first n entries are d/dtheta^A_i,
/// last n are d/dtheta^B_j.
std::vector<double> quantum_gradient(const DominationTable &table, const AngleStrategy &strategy);

Rational exact_expectation_classical(const DominationTable &table, const ClassicalStrategy &strategy);

Rational exact_expectation_random(const DominationTable &table);

/// Closed-form expectation of the linear ansatz with increment theta.
double closed_form_long(int n, double theta);

/// d/dtheta of closed_form_long.
double closed_form_long_derivative(int n, double theta);

/// Cosine-series form of the ansatz expectation,
///   n^2 D(theta) = lambda + 5n + sum_{l=1}^{n-1} mu_l cos(l theta),
/// with every coefficient a multiple of 1/2.
struct ClosedFormSeries {
    int n = 0;
    Rational lambda;
    std::vector<Rational> mu;  // mu[0] is mu_1

    double evaluate(double theta) const;
    std::string to_json() const;
};

ClosedFormSeries extract_series(int n);

struct AdvantageReport {
    double q = 0.0;
    double c = 0.0;
    double r = 0.0;
    double a = 0.0;

    /// Nearest integer percent.
    int a_percent() const;
    std::string to_json() const;
};

/// A = (q - c) / (c - r); DegenerateBaseline unless c > r.
AdvantageReport advantage(double q, double c, double r);

}  // namespace cycledom

#endif  // CYCLEDOM_ANALYTICS_HPP
