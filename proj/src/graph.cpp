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

#include "cycledom/graph.hpp"

#include <algorithm>
#include <string>

#include "cycledom/error.hpp"

namespace cycledom {

Move move_from_bit(int bit) {
    if (bit != 0 && bit != 1) {
        fail(ErrorCode::InvalidArgument, "move bit must be 0 or 1, got " + std::to_string(bit));
    }
    return static_cast<Move>(bit);
}

CycleGame::CycleGame(int n) : n_(n) {
    if (n < 3) {
        fail(ErrorCode::InvalidArgument, "cycle size must be >= 3, got " + std::to_string(n));
    }
}

void CycleGame::check_site(int site) const {
    if (site < 1 || site > n_) {
        fail(ErrorCode::InvalidArgument,
             "site " + std::to_string(site) + " outside 1.." + std::to_string(n_));
    }
}

int CycleGame::end_position(int site, Move move) const {
    check_site(site);
    const int step = move == Move::Zero ? n_ - 1 : 1;
    return (site - 1 + step) % n_ + 1;
}

int CycleGame::dominated_count(int alice_site, Move alice_move, int bob_site, Move bob_move) const {
    const int a = end_position(alice_site, alice_move) - 1;
    const int b = end_position(bob_site, bob_move) - 1;
    // Closed neighborhoods are arcs of length 3; their union is 3 + the
    // circular gap between centres, capped at 6 and at n.
    const int d = std::min((a - b + n_) % n_, (b - a + n_) % n_);
    return std::min({3 + d, 6, n_});
}

DominationTable DominationTable::build(const CycleGame &game) {
    const int n = game.size();
    DominationTable t(n);
    for (int i = 1; i <= n; ++i) {
        for (int a = 0; a < 2; ++a) {
            for (int j = 1; j <= n; ++j) {
                for (int b = 0; b < 2; ++b) {
                    t.entries_[t.index(i - 1, a, j - 1, b)] = static_cast<std::uint8_t>(
                        game.dominated_count(i, static_cast<Move>(a), j, static_cast<Move>(b)));
                }
            }
        }
    }
    return t;
}

std::int64_t DominationTable::total() const {
    std::int64_t s = 0;
    for (auto e : entries_) s += e;
    return s;
}

Rational DominationTable::mean() const {
    return Rational(total(), static_cast<std::int64_t>(entries_.size()));
}

void DominationTable::write_csv(std::ostream &os) const {
    os << "alice_site,alice_bit,bob_site,bob_bit,count\n";
    for (int i = 1; i <= n_; ++i) {
        for (int a = 0; a < 2; ++a) {
            for (int j = 1; j <= n_; ++j) {
                for (int b = 0; b < 2; ++b) {
                    os << i << ',' << a << ',' << j << ',' << b << ',' << at(i, a, j, b) << '\n';
                }
            }
        }
    }
}

}  // namespace cycledom
