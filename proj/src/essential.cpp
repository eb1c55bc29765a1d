// SPDX-License-Identifier: Apache-2.0
#include "termcalc/essential.hpp"

#include "termcalc/compose.hpp"

namespace termcalc {

Verdict var_essential(const Theory& T, const Term& t, int index, Effort effort) {
    int fresh = std::max(fresh_var_index(t), index + 1);
    return sigma_equal(T, t, substitute_var(t, index, Term::var(fresh)), effort);
}

Verdict position_essential(const Theory& T, const Term& t, const Position& p, Effort effort) {
    int fresh = fresh_var_index(t);
    return sigma_equal(T, replace_at(t, p, Term::var(fresh)),
                       replace_at(t, p, Term::var(fresh + 1)), effort);
}

VarReport essential_vars(const Theory& T, const Term& t, Effort effort) {
    VarReport report;
    for (int x : var_indices(t)) {
        switch (var_essential(T, t, x, effort).kind) {
            case VerdictKind::Distinct: report.essential.push_back(x); break;
            case VerdictKind::Equal: report.fictive.push_back(x); break;
            case VerdictKind::Unknown: report.unknown.push_back(x); break;
        }
    }
    return report;
}

PosReport essential_positions(const Theory& T, const Term& t, Effort effort) {
    PosReport report;
    for (const Position& p : positions(t)) {
        switch (position_essential(T, t, p, effort).kind) {
            case VerdictKind::Distinct: report.essential.push_back(p); break;
            case VerdictKind::Equal: report.fictive.push_back(p); break;
            case VerdictKind::Unknown: report.unknown.push_back(p); break;
        }
    }
    return report;
}

SubtermReport essential_subterms(const Theory& T, const Term& t, Effort effort) {
    PosReport positions_report = essential_positions(T, t, effort);
    auto contains = [](const std::vector<Position>& ps, const Position& p) {
        for (const Position& q : ps)
            if (q == p) return true;
        return false;
    };
    SubtermReport report;
    for (const Term& u : subterms(t)) {
        bool any_essential = false, any_unknown = false;
        for (const Position& p : occurrences(t, u)) {
            if (contains(positions_report.essential, p)) any_essential = true;
            if (contains(positions_report.unknown, p)) any_unknown = true;
        }
        if (any_essential)
            report.essential.push_back(u);
        else if (any_unknown)
            report.unknown.push_back(u);
        else
            report.fictive.push_back(u);
    }
    return report;
}

} // namespace termcalc
