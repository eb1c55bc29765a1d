// SPDX-License-Identifier: Apache-2.0
#include "termcalc/balanced.hpp"

#include <algorithm>
#include <set>

#include "termcalc/errors.hpp"

namespace termcalc {

BalanceReport is_sigma_balanced(const Theory& T, const Identity& id, Strictness strictness,
                                Effort effort) {
    BalanceReport report;

    // Group the subterms of both sides into classes of the theory's
    // equality; one representative per class is enough, since equal q's
    // have identical position sets.
    std::set<Term> all;
    for (const Term& u : subterms(id.lhs)) all.insert(u);
    for (const Term& u : subterms(id.rhs)) all.insert(u);
    std::vector<Term> subs(all.begin(), all.end()); // term order: reps come first

    std::vector<Term> reps;
    bool any_unknown = false;
    std::string first_unknown_note;
    for (const Term& u : subs) {
        bool in_class = false;
        for (const Term& rep : reps) {
            Verdict v = sigma_equal(T, rep, u, effort);
            if (v.is_unknown()) {
                std::string note =
                    "class of " + u.str() + " vs " + rep.str() + " undecided: " + v.note;
                if (strictness == Strictness::Strict) throw UnknownVerdictError(note);
                if (!any_unknown) first_unknown_note = note;
                any_unknown = true;
                continue;
            }
            if (v.is_equal()) {
                in_class = true;
                break;
            }
        }
        if (!in_class) reps.push_back(u);
    }

    for (const Term& q : reps) {
        PositionSets on_lhs = position_sets(T, id.lhs, q, strictness, effort);
        PositionSets on_rhs = position_sets(T, id.rhs, q, strictness, effort);
        if (!on_lhs.notes.empty() || !on_rhs.notes.empty()) {
            if (!any_unknown) first_unknown_note = on_lhs.notes.empty() ? on_rhs.notes.front()
                                                                        : on_lhs.notes.front();
            any_unknown = true;
            continue;
        }
        int lc = static_cast<int>(on_lhs.essential_front.size());
        int rc = static_cast<int>(on_rhs.essential_front.size());
        if (lc != rc) {
            report.status = BalanceReport::Status::Unbalanced;
            report.mismatch_class = q;
            report.lhs_count = lc;
            report.rhs_count = rc;
            return report;
        }
    }

    if (any_unknown) {
        report.status = BalanceReport::Status::Unknown;
        report.note = first_unknown_note;
        return report;
    }
    report.status = BalanceReport::Status::Balanced;
    return report;
}

} // namespace termcalc
