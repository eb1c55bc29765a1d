// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "termcalc/sigma_compose.hpp"
#include "termcalc/term.hpp"
#include "termcalc/theory.hpp"

namespace termcalc {

/// Outcome of comparing, for every class of equal-in-the-variety subterms,
/// how many essential positions the class occupies in each side of an
/// identity.
struct BalanceReport {
    enum class Status { Balanced, Unbalanced, Unknown } status = Status::Unknown;
    /// First class (by its smallest representative, in term order) whose
    /// essential-position counts differ; set when Unbalanced.
    std::optional<Term> mismatch_class;
    int lhs_count = 0;
    int rhs_count = 0;
    std::string note;
};

/// Checks whether lhs and rhs carry every subterm class at equally many
/// essential positions. Classes range over the subterms of both sides,
/// grouped by the theory's equality.
BalanceReport is_sigma_balanced(const Theory& T, const Identity& id,
                                Strictness strictness = Strictness::Strict,
                                Effort effort = Effort::Full);

} // namespace termcalc
