// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "termcalc/position.hpp"
#include "termcalc/term.hpp"
#include "termcalc/theory.hpp"

namespace termcalc {

/// How to handle Unknown oracle answers while collecting the positions of a
/// subterm class: Strict throws UnknownVerdictError; Permissive treats the
/// pair as not equal and records a note.
enum class Strictness { Strict, Permissive };

/// The position data of r inside t relative to a theory: which subterms of
/// t are equal to r in the variety, where they sit, and the minimal
/// replacement front.
struct PositionSets {
    std::vector<Term> class_subterms;      // subterms of t equal to r (term order)
    std::vector<Position> class_positions; // their occurrences (shortlex)
    std::vector<Position> front;           // minimal class positions under prefix order
    std::vector<Position> essential_front; // essential members of the front
    std::vector<std::string> notes;        // permissive-mode skips
};

PositionSets position_sets(const Theory& T, const Term& t, const Term& r,
                           Strictness strictness = Strictness::Strict,
                           Effort effort = Effort::Full);

/// Replacement up to the theory: replaces the minimal front of the class of
/// r inside t by s, so every occurrence of a subterm equal to r is covered
/// exactly once.
Term sigma_compose(const Theory& T, const Term& t, const Term& r, const Term& s,
                   Strictness strictness = Strictness::Strict, Effort effort = Effort::Full);

} // namespace termcalc
