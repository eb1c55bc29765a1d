// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "termcalc/signature.hpp"
#include "termcalc/term.hpp"

namespace termcalc {

/// A finite algebra: carrier {0,...,carrier-1} and one lookup table per
/// symbol. Tables are flattened row-major with the last argument varying
/// fastest.
struct FiniteAlgebra {
    int carrier = 0;
    Signature sig;
    std::map<std::string, std::vector<int>> ops;

    /// Applies `sym` to `args`; all args must lie in the carrier.
    int apply(const std::string& sym, const std::vector<int>& args) const;

    /// Validates carrier bounds, table lengths and entry ranges.
    void validate() const;

    /// {"carrier": n, "ops": {"f": [...]}}; the signature is reconstructed
    /// from table lengths (arity = log_carrier(length)).
    static FiniteAlgebra from_json_text(const std::string& text);
    static FiniteAlgebra load(const std::string& path);
    std::string to_json_text() const;

    bool operator==(const FiniteAlgebra&) const = default;
};

/// An assignment of carrier elements to variable indices.
using Assignment = std::map<int, int>;

/// Evaluates t under `env`; every variable of t must be assigned.
int evaluate(const FiniteAlgebra& algebra, const Term& t, const Assignment& env);

struct SatisfactionResult {
    bool holds = true;
    /// First assignment (mixed-radix order over variables sorted by index,
    /// last variable varying fastest) where the two sides differ.
    std::optional<Assignment> failing;
};

/// Exhaustively checks A |= lhs = rhs over all assignments to the variables
/// of the identity.
SatisfactionResult satisfies(const FiniteAlgebra& algebra, const Identity& id);
bool satisfies_all(const FiniteAlgebra& algebra, const std::vector<Identity>& ids);

/// Variable indices of t that are essential in `algebra`: some pair of
/// assignments differing only there changes the value. Sorted ascending.
std::vector<int> essential_vars_in_algebra(const FiniteAlgebra& algebra, const Term& t);

/// Positions p of t such that the fresh variable is essential for t(p; x_fresh)
/// in `algebra`. Shortlex order.
std::vector<Position> essential_positions_in_algebra(const FiniteAlgebra& algebra, const Term& t);

/// Every algebra of carrier size 1..max_size over `sig` satisfying all of
/// `axioms`, in lexicographic order of the flattened tables (symbols in
/// signature order). Exhaustive and deterministic; intended for small sizes.
std::vector<FiniteAlgebra> enumerate_models(const Signature& sig, const std::vector<Identity>& axioms,
                                            int max_size);

/// Streaming variant of enumerate_models: yields models one at a time so
/// searches can interleave with other work.
class ModelEnumerator {
public:
    ModelEnumerator(Signature sig, std::vector<Identity> axioms, int max_size);

    /// The next model, or nullopt when the range is exhausted.
    std::optional<FiniteAlgebra> next();

private:
    bool advance_tables();
    void reset_tables();

    Signature sig_;
    std::vector<Identity> axioms_;
    int max_size_;
    int size_ = 0;
    bool fresh_size_ = true;
    std::vector<std::pair<std::string, int>> table_shapes_; // symbol, length
    std::vector<std::vector<int>> tables_;
};

} // namespace termcalc
