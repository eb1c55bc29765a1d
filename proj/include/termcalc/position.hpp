// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace termcalc {

/// A position addresses a node of a term: the sequence of 1-based child
/// indices walked from the root. The empty sequence addresses the root and
/// renders as "e".
class Position {
public:
    Position() = default;
    explicit Position(std::vector<int> steps);

    static Position root() { return Position{}; }

    /// Accepts "e" (or "") for the root, a run of single digits ("121"), or a
    /// dot-separated list for steps beyond 9 ("1.12.2").
    static Position parse(const std::string& text);

    const std::vector<int>& steps() const { return steps_; }
    bool is_root() const { return steps_.empty(); }
    std::size_t length() const { return steps_.size(); }
    int step(std::size_t i) const { return steps_[i]; }

    /// The position of this node's `i`-th child (1-based).
    Position child(int i) const;
    /// Concatenation: the position q interpreted relative to this one.
    Position then(const Position& q) const;
    Position parent() const;

    /// Prefix order (reflexive): this addresses an ancestor-or-self of q.
    bool is_prefix_of(const Position& q) const;
    bool is_proper_prefix_of(const Position& q) const;
    /// Two positions are comparable when one is a prefix of the other.
    static bool comparable(const Position& p, const Position& q);

    /// "e" for the root; digit concatenation when `single_digit` (valid while
    /// every arity in scope is <= 9), dot-separated otherwise.
    std::string str(bool single_digit = true) const;

    bool operator==(const Position&) const = default;
    /// Shortlex: by length, then pointwise.
    std::strong_ordering operator<=>(const Position& other) const;

private:
    std::vector<int> steps_;
};

/// The <=-minimal elements of `ps` (deduplicated, shortlex order).
std::vector<Position> minimal_positions(const std::vector<Position>& ps);

/// True when the positions are pairwise incomparable (an antichain).
bool is_antichain(const std::vector<Position>& ps);

} // namespace termcalc
