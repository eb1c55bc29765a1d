// SPDX-License-Identifier: Apache-2.0
#include "termcalc/sigma_compose.hpp"

#include <algorithm>

#include "termcalc/compose.hpp"
#include "termcalc/errors.hpp"
#include "termcalc/essential.hpp"

namespace termcalc {

PositionSets position_sets(const Theory& T, const Term& t, const Term& r, Strictness strictness,
                           Effort effort) {
    PositionSets out;
    for (const Term& u : subterms(t)) {
        Verdict v = sigma_equal(T, r, u, effort);
        if (v.is_unknown()) {
            std::string note = "equality of " + r.str() + " and " + u.str() + " undecided: " + v.note;
            if (strictness == Strictness::Strict) throw UnknownVerdictError(note);
            out.notes.push_back(std::move(note));
            continue;
        }
        if (v.is_equal()) out.class_subterms.push_back(u);
    }
    for (const Term& u : out.class_subterms)
        for (const Position& p : occurrences(t, u)) out.class_positions.push_back(p);
    std::sort(out.class_positions.begin(), out.class_positions.end());
    out.front = minimal_positions(out.class_positions);
    for (const Position& p : out.front) {
        Verdict v = position_essential(T, t, p, effort);
        if (v.is_unknown()) {
            std::string note = "essentiality of position " + p.str() + " undecided: " + v.note;
            if (strictness == Strictness::Strict) throw UnknownVerdictError(note);
            out.notes.push_back(std::move(note));
            continue;
        }
        if (v.is_distinct()) out.essential_front.push_back(p);
    }
    return out;
}

Term sigma_compose(const Theory& T, const Term& t, const Term& r, const Term& s,
                   Strictness strictness, Effort effort) {
    PositionSets sets = position_sets(T, t, r, strictness, effort);
    if (sets.front.empty()) return t;
    return positional_compose(t, sets.front, s);
}

} // namespace termcalc
