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

#include "cycledom/analytics.hpp"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "cycledom/error.hpp"

namespace cycledom {

namespace {

void require_same_size(const DominationTable &table, int n) {
    if (table.size() != n) {
        fail(ErrorCode::DimensionMismatch, "table is C_" + std::to_string(table.size()) +
                                               " but strategy has n=" + std::to_string(n));
    }
}

double to_double(const Rational &r) { return static_cast<double>(r.numerator()) / r.denominator(); }

}  // namespace

double exact_expectation_quantum(const DominationTable &table, const AngleStrategy &strategy) {
    const int n = strategy.n;
    require_same_size(table, n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const auto p = bell_distribution(strategy.bob[j] - strategy.alice[i]);
            sum += p.p00 * table.at0(i, 0, j, 0) + p.p01 * table.at0(i, 0, j, 1) +
                   p.p10 * table.at0(i, 1, j, 0) + p.p11 * table.at0(i, 1, j, 1);
        }
    }
    return sum / (static_cast<double>(n) * n);
}

std::vector<double> quantum_gradient(const DominationTable &table, const AngleStrategy &strategy) {
    const int n = strategy.n;
    require_same_size(table, n);
    std::vector<double> grad(2 * static_cast<std::size_t>(n), 0.0);
    const double scale = 0.25 / (static_cast<double>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int same = table.at0(i, 0, j, 0) + table.at0(i, 1, j, 1);
            const int cross = table.at0(i, 0, j, 1) + table.at0(i, 1, j, 0);
            const double g = scale * std::sin(strategy.bob[j] - strategy.alice[i]) * (cross - same);
            grad[i] -= g;
            grad[n + j] += g;
        }
    }
    return grad;
}

Rational exact_expectation_classical(const DominationTable &table, const ClassicalStrategy &strategy) {
    const int n = strategy.n;
    require_same_size(table, n);
    std::int64_t sum = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            sum += table.at0(i, bit_of(strategy.alice_map[i]), j, bit_of(strategy.bob_map[j]));
        }
    }
    return Rational(sum, static_cast<std::int64_t>(n) * n);
}

Rational exact_expectation_random(const DominationTable &table) { return table.mean(); }

namespace {

void require_closed_form_size(int n) {
    if (n < 5) fail(ErrorCode::InvalidArgument, "closed form needs n >= 5");
}

}  // namespace

double closed_form_long(int n, double theta) {
    require_closed_form_size(n);
    const double t = theta;
    const double inv = 1.0 / n;
    const double first = -8.0 + std::cos(t) - 0.5 * std::cos(2 * t) - std::cos(3 * t) - 0.5 * std::cos(4 * t);
    const double second = -std::cos(t) + std::cos(2 * t) + 3 * std::cos(3 * t) + 2 * std::cos(4 * t) -
                          2 * std::cos((n - 4) * t) - 3 * std::cos((n - 3) * t) - std::cos((n - 2) * t) +
                          std::cos((n - 1) * t);
    return 6.0 + inv * first + inv * inv * second;
}

double closed_form_long_derivative(int n, double theta) {
    require_closed_form_size(n);
    const double t = theta;
    const double inv = 1.0 / n;
    const double first = -std::sin(t) + std::sin(2 * t) + 3 * std::sin(3 * t) + 2 * std::sin(4 * t);
    const double second = std::sin(t) - 2 * std::sin(2 * t) - 9 * std::sin(3 * t) - 8 * std::sin(4 * t) +
                          2 * (n - 4) * std::sin((n - 4) * t) + 3 * (n - 3) * std::sin((n - 3) * t) +
                          (n - 2) * std::sin((n - 2) * t) - (n - 1) * std::sin((n - 1) * t);
    return inv * first + inv * inv * second;
}

double ClosedFormSeries::evaluate(double theta) const {
    double s = to_double(lambda) + 5.0 * n;
    for (std::size_t l = 0; l < mu.size(); ++l) {
        s += to_double(mu[l]) * std::cos(static_cast<double>(l + 1) * theta);
    }
    return s / (static_cast<double>(n) * n);
}

std::string ClosedFormSeries::to_json() const {
    auto rational = [](const Rational &r) {
        return nlohmann::json{{"num", r.numerator()}, {"den", r.denominator()}, {"value", to_double(r)}};
    };
    nlohmann::json j;
    j["n"] = n;
    j["lambda"] = rational(lambda);
    j["mu"] = nlohmann::json::array();
    for (const auto &m : mu) j["mu"].push_back(rational(m));
    return j.dump();
}

ClosedFormSeries extract_series(int n) {
    if (n < 5) {
        fail(ErrorCode::InvalidArgument, "extract_series needs n >= 5");
    }
    const auto table = DominationTable::build(CycleGame(n));
    const int samples = 2 * n;
    std::vector<double> theta(samples), value(samples);
    for (int k = 0; k < samples; ++k) {
        theta[k] = std::numbers::pi * k / n;
        value[k] = exact_expectation_quantum(table, ansatz_strategy({n, theta[k]}));
    }

    // The 2n equispaced nodes make cos(l theta), l = 0..n-1, mutually
    // orthogonal, so the least-squares system diagonalises.
    std::vector<double> coef(n);
    for (int l = 0; l < n; ++l) {
        double acc = 0.0;
        for (int k = 0; k < samples; ++k) acc += value[k] * std::cos(l * theta[k]);
        coef[l] = acc / (l == 0 ? samples : n);
    }

    const double n2 = static_cast<double>(n) * n;
    auto to_half = [&](double x, const char *what) {
        const double twice = 2.0 * x;
        const double rounded = std::round(twice);
        if (std::abs(twice - rounded) > 2e-6) {
            fail(ErrorCode::NormalizationMismatch,
                 std::string(what) + " coefficient " + std::to_string(x) + " is not a half-integer");
        }
        return Rational(static_cast<std::int64_t>(rounded), 2);
    };

    ClosedFormSeries series;
    series.n = n;
    series.lambda = to_half(n2 * coef[0] - 5.0 * n, "constant");
    for (int l = 1; l < n; ++l) series.mu.push_back(to_half(n2 * coef[l], "cosine"));

    for (int k = 0; k < samples; ++k) {
        if (std::abs(series.evaluate(theta[k]) - value[k]) > 1e-9) {
            fail(ErrorCode::NormalizationMismatch, "rounded series does not reproduce the sampled values");
        }
    }
    return series;
}

int AdvantageReport::a_percent() const { return static_cast<int>(std::lround(100.0 * a)); }

std::string AdvantageReport::to_json() const {
    nlohmann::json j{{"q", q}, {"c", c}, {"r", r}, {"a", a}, {"a_percent", a_percent()}};
    return j.dump();
}

AdvantageReport advantage(double q, double c, double r) {
    if (!(c > r)) {
        fail(ErrorCode::DegenerateBaseline, "advantage needs classical value above the random baseline");
    }
    return {q, c, r, (q - c) / (c - r)};
}

}  // namespace cycledom
