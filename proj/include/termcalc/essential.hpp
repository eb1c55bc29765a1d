// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "termcalc/position.hpp"
#include "termcalc/term.hpp"
#include "termcalc/theory.hpp"

namespace termcalc {

/// Variables of t split by whether substituting them can change the value
/// of t in some algebra of the variety. `unknown` collects variables the
/// oracle could not classify within budget (generic theories only).
struct VarReport {
    std::vector<int> essential;
    std::vector<int> fictive;
    std::vector<int> unknown;
};

/// Positions of t split the same way: a position matters when replacing the
/// subterm there by fresh variables can change the value of t.
struct PosReport {
    std::vector<Position> essential;
    std::vector<Position> fictive;
    std::vector<Position> unknown;
};

/// Subterms of t split by whether they occur at at least one essential
/// position.
struct SubtermReport {
    std::vector<Term> essential;
    std::vector<Term> fictive;
    std::vector<Term> unknown;
};

/// Verdict of the equality that decides whether x<index> is essential for
/// t: compares t against t with x replaced by a fresh variable. Distinct
/// means essential (the witness exhibits the dependence), Equal means
/// fictive (the proof certifies the invariance).
Verdict var_essential(const Theory& T, const Term& t, int index, Effort effort = Effort::Full);

/// Verdict of the equality that decides whether position p is essential for
/// t: plants two distinct fresh variables at p and compares. Distinct means
/// essential, Equal means fictive.
Verdict position_essential(const Theory& T, const Term& t, const Position& p,
                           Effort effort = Effort::Full);

VarReport essential_vars(const Theory& T, const Term& t, Effort effort = Effort::Full);
PosReport essential_positions(const Theory& T, const Term& t, Effort effort = Effort::Full);
SubtermReport essential_subterms(const Theory& T, const Term& t, Effort effort = Effort::Full);

} // namespace termcalc
