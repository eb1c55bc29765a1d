// SPDX-License-Identifier: Apache-2.0
#include "termcalc/compose.hpp"

#include <functional>

#include "termcalc/errors.hpp"

namespace termcalc {

Term replace_at(const Term& t, const Position& p, const Term& r) {
    std::function<Term(const Term&, std::size_t)> walk = [&](const Term& u, std::size_t i) -> Term {
        if (i == p.length()) {
            return r;
        }
        const int step = p.step(i);
        if (u.is_var() || step > static_cast<int>(u.children().size())) {
            throw ValidationError("position " + p.str() + " is not a position of " + t.str());
        }
        std::vector<Term> kids = u.children();
        kids[step - 1] = walk(kids[step - 1], i + 1);
        return Term::app(u.symbol(), std::move(kids));
    };
    return walk(t, 0);
}

Term positional_compose(const Term& t, const std::vector<std::pair<Position, Term>>& sites) {
    std::vector<Position> ps;
    ps.reserve(sites.size());
    for (const auto& [p, r] : sites) {
        ps.push_back(p);
    }
    if (!is_antichain(ps)) {
        throw ValidationError("replacement positions must be pairwise incomparable");
    }
    Term out = t;
    // Disjoint subtrees: sequential application realizes the simultaneous
    // substitution in any order.
    for (const auto& [p, r] : sites) {
        out = replace_at(out, p, r);
    }
    return out;
}

Term positional_compose(const Term& t, const std::vector<Position>& ps, const Term& r) {
    std::vector<std::pair<Position, Term>> sites;
    sites.reserve(ps.size());
    for (const Position& p : ps) {
        sites.emplace_back(p, r);
    }
    return positional_compose(t, sites);
}

namespace {

bool is_subterm(const Term& needle, const Term& hay) {
    if (hay == needle) {
        return true;
    }
    if (hay.is_var()) {
        return false;
    }
    for (const Term& kid : hay.children()) {
        if (is_subterm(needle, kid)) {
            return true;
        }
    }
    return false;
}

} // namespace

Term inductive_compose(const Term& t, const std::vector<std::pair<Term, Term>>& rules) {
    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (std::size_t j = 0; j < rules.size(); ++j) {
            if (i != j && is_subterm(rules[i].first, rules[j].first)) {
                throw ValidationError("pattern " + rules[i].first.str() + " is a subterm of pattern " +
                                      rules[j].first.str());
            }
        }
    }
    std::function<Term(const Term&)> walk = [&](const Term& u) -> Term {
        for (const auto& [pattern, replacement] : rules) {
            if (u == pattern) {
                return replacement;
            }
        }
        if (u.is_var()) {
            return u;
        }
        std::vector<Term> kids;
        kids.reserve(u.children().size());
        bool changed = false;
        for (const Term& kid : u.children()) {
            kids.push_back(walk(kid));
            changed = changed || kids.back() != kid;
        }
        return changed ? Term::app(u.symbol(), std::move(kids)) : u;
    };
    return walk(t);
}

Term inductive_compose(const Term& t, const Term& r, const Term& s) {
    return inductive_compose(t, {{r, s}});
}

Term substitute_var(const Term& t, int index, const Term& r) {
    return inductive_compose(t, Term::var(index), r);
}

Term substitute_vars(const Term& t, const std::map<int, Term>& images) {
    if (t.is_var()) {
        auto it = images.find(t.var_index());
        return it == images.end() ? t : it->second;
    }
    bool changed = false;
    std::vector<Term> kids;
    kids.reserve(t.children().size());
    for (const Term& c : t.children()) {
        Term nc = substitute_vars(c, images);
        if (!(nc == c)) changed = true;
        kids.push_back(std::move(nc));
    }
    if (!changed) return t;
    return Term::app(t.symbol(), std::move(kids));
}

} // namespace termcalc
