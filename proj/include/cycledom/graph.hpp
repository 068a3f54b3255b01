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

#ifndef CYCLEDOM_GRAPH_HPP
#define CYCLEDOM_GRAPH_HPP

#include <boost/rational.hpp>

#include <cstdint>
#include <ostream>
#include <vector>

namespace cycledom {

using Rational = boost::rational<std::int64_t>;

/// Measurement outcome of one player. Outcome 0 moves to the predecessor
/// vertex (i-1), outcome 1 to the successor (i+1). With this convention the
/// C10 reference table is reproduced cell for cell.
enum class Move : std::uint8_t { Zero = 0, One = 1 };

inline int bit_of(Move m) { return static_cast<int>(m); }
Move move_from_bit(int bit);

/// Cycle graph C_n with vertices labeled 1..n.
class CycleGame {
   public:
    explicit CycleGame(int n);

    int size() const noexcept { return n_; }

    /// Throws InvalidArgument unless 1 <= site <= n.
    void check_site(int site) const;

    /// Vertex reached from `site` after one move; never `site` itself.
    int end_position(int site, Move move) const;

    /// |N[a'] u N[b']| for the players' end positions a', b'.
    int dominated_count(int alice_site, Move alice_move, int bob_site, Move bob_move) const;

   private:
    int n_;
};

/// All 4n^2 dominated counts, indexed by 1-based sites and outcome bits.
class DominationTable {
   public:
    static DominationTable build(const CycleGame &game);

    int size() const noexcept { return n_; }

    int at(int alice_site, int alice_bit, int bob_site, int bob_bit) const {
        return entries_[index(alice_site - 1, alice_bit, bob_site - 1, bob_bit)];
    }

    /// Zero-based access for inner loops.
    int at0(int alice_idx, int alice_bit, int bob_idx, int bob_bit) const {
        return entries_[index(alice_idx, alice_bit, bob_idx, bob_bit)];
    }

    /// Sum over all entries (exact).
    std::int64_t total() const;

    /// Unweighted mean of all 4n^2 entries.
    Rational mean() const;

    /// CSV with header alice_site,alice_bit,bob_site,bob_bit,count; rows in
    /// lexicographic key order.
    void write_csv(std::ostream &os) const;

   private:
    explicit DominationTable(int n) : n_(n), entries_(static_cast<std::size_t>(4 * n * n)) {}

    std::size_t index(int i, int a, int j, int b) const {
        return ((static_cast<std::size_t>(i) * 2 + a) * n_ + j) * 2 + b;
    }

    int n_;
    std::vector<std::uint8_t> entries_;
};

}  // namespace cycledom

#endif  // CYCLEDOM_GRAPH_HPP
