// SPDX-License-Identifier: Apache-2.0
#include "termcalc/hyper.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "termcalc/compose.hpp"
#include "termcalc/errors.hpp"
#include "termcalc/essential.hpp"
#include "termcalc/probes.hpp"
#include "termcalc/rewrite.hpp"
#include "termcalc/sigma_compose.hpp"

namespace termcalc {

namespace {

void check_image_vars(const std::string& sym, int arity, const Term& image) {
    for (int v : var_indices(image))
        if (v < 1 || v > arity)
            throw ValidationError("image for '" + sym + "' uses x" + std::to_string(v) +
                                  " but the symbol is " + std::to_string(arity) + "-ary");
}

Term identity_image(const std::string& sym, int arity) {
    std::vector<Term> args;
    args.reserve(arity);
    for (int i = 1; i <= arity; ++i) args.push_back(Term::var(i));
    return Term::app(sym, std::move(args));
}

} // namespace

void Hypersubstitution::set(const Signature& sig, const std::string& sym, Term image) {
    int ar = sig.arity(sym);
    check_image_vars(sym, ar, image);
    mapping_.insert_or_assign(sym, std::move(image));
}

Term Hypersubstitution::image(const std::string& sym, int arity) const {
    auto it = mapping_.find(sym);
    if (it != mapping_.end()) return it->second;
    return identity_image(sym, arity);
}

Term Hypersubstitution::apply(const Term& t) const {
    if (t.is_var()) return t;
    std::map<int, Term> args;
    int i = 0;
    for (const Term& c : t.children()) args.emplace(++i, apply(c));
    return substitute_vars(image(t.symbol(), static_cast<int>(t.children().size())), args);
}

Hypersubstitution Hypersubstitution::after(const Signature& sig, const Hypersubstitution& inner) const {
    Hypersubstitution out;
    for (const auto& [sym, ar] : sig.symbols()) out.set(sig, sym, apply(inner.image(sym, ar)));
    return out;
}

Hypersubstitution Hypersubstitution::parse(const std::string& text, const Signature& sig) {
    Hypersubstitution h;
    // Entries separated by ',' or ';'; a comma inside parentheses belongs to
    // a term, so split at depth zero only.
    std::vector<std::string> entries;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if ((c == ',' || c == ';') && depth == 0) {
            entries.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    entries.push_back(cur);
    for (const std::string& entry : entries) {
        std::string e = entry;
        // Accept "sym -> term" and "sym:term".
        std::size_t pos = e.find("->");
        std::size_t skip = 2;
        if (pos == std::string::npos) {
            pos = e.find(':');
            skip = 1;
        }
        if (pos == std::string::npos) {
            // Allow empty entries from trailing separators.
            bool blank = e.find_first_not_of(" \t") == std::string::npos;
            if (blank) continue;
            throw ParseError("hypersubstitution entry needs '->' or ':': " + e);
        }
        std::string name = e.substr(0, pos);
        std::string body = e.substr(pos + skip);
        auto trim = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t");
            std::size_t t = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, t - b + 1);
        };
        name = trim(name);
        if (!sig.has_symbol(name)) throw ParseError("hypersubstitution maps unknown symbol '" + name + "'");
        h.set(sig, name, parse_term(trim(body), sig));
    }
    return h;
}

std::string Hypersubstitution::str() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [sym, image] : mapping_) {
        if (!first) out << ", ";
        first = false;
        out << sym << " -> " << image.str();
    }
    return out.str();
}

std::string Hypersubstitution::compact_str() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [sym, image] : mapping_) {
        if (!first) out << ';';
        first = false;
        out << sym << ':' << image.str();
    }
    return out.str();
}

namespace {

// All terms over x1..nvars of depth <= max_depth, ordered by depth layer
// then term order; deterministic.
std::vector<Term> image_candidates(const Signature& sig, int nvars, int max_depth) {
    std::vector<Term> all;
    for (int i = 1; i <= nvars; ++i) all.push_back(Term::var(i));
    for (const auto& [sym, ar] : sig.symbols())
        if (ar == 0) all.push_back(Term::app(sym, {}));
    for (int d = 1; d <= max_depth; ++d) {
        std::vector<Term> next;
        for (const auto& [sym, ar] : sig.symbols()) {
            if (ar == 0) continue;
            // Every combination of children drawn from `all`, at least one
            // of which has depth d-1 (so the result is new at depth d).
            std::vector<std::size_t> pick(ar, 0);
            for (;;) {
                int tall = 0;
                for (std::size_t ix : pick) tall = std::max(tall, all[ix].depth());
                if (tall == d - 1) {
                    std::vector<Term> kids;
                    kids.reserve(ar);
                    for (std::size_t ix : pick) kids.push_back(all[ix]);
                    next.push_back(Term::app(sym, std::move(kids)));
                }
                int i = ar;
                while (i > 0) {
                    --i;
                    if (++pick[i] < all.size()) break;
                    pick[i] = 0;
                    if (i == 0) goto layer_done;
                }
            }
        layer_done:;
        }
        all.insert(all.end(), next.begin(), next.end());
    }
    std::sort(all.begin(), all.end());
    return all;
}

} // namespace

std::vector<Hypersubstitution> hyper_pool(const Signature& sig, int max_depth, std::size_t max_count) {
    if (max_depth < 0) throw ValidationError("pool depth must be non-negative");
    std::vector<std::pair<std::string, std::vector<Term>>> menus;
    for (const auto& [sym, ar] : sig.symbols())
        menus.emplace_back(sym, image_candidates(sig, ar, max_depth));
    std::vector<Hypersubstitution> pool;
    std::vector<std::size_t> pick(menus.size(), 0);
    for (;;) {
        Hypersubstitution h;
        for (std::size_t i = 0; i < menus.size(); ++i)
            h.set(sig, menus[i].first, menus[i].second[pick[i]]);
        pool.push_back(std::move(h));
        if (pool.size() >= max_count) break;
        std::size_t i = menus.size();
        bool advanced = false;
        while (i > 0) {
            --i;
            if (++pick[i] < menus[i].second.size()) {
                advanced = true;
                break;
            }
            pick[i] = 0;
        }
        if (!advanced) break;
    }
    return pool;
}

// ---------------------------------------------------------------------------
// Probes

SolidityProbeResult solidity_probe(const Theory& T, const std::vector<Identity>& ids,
                                   const std::vector<Hypersubstitution>& pool) {
    SolidityProbeResult out;
    const std::vector<Identity>& targets = ids.empty() ? T.axioms : ids;
    for (const Hypersubstitution& h : pool) {
        ++out.hypers_tried;
        for (const Identity& id : targets) {
            ++out.pairs_checked;
            Identity image{h.apply(id.lhs), h.apply(id.rhs)};
            Verdict v = sigma_equal(T, image);
            if (v.is_distinct()) {
                out.counterexample = SolidityCounterexample{h, id, image, *v.witness};
                out.note = "a hypersubstitution image fails in the variety";
                return out;
            }
            if (v.is_unknown() && out.note.empty())
                out.note = "some images were undecided within the budget";
        }
    }
    if (out.note.empty())
        out.note = "no pool hypersubstitution breaks the given identities";
    return out;
}

namespace {

Term random_term(std::mt19937_64& rng, const Signature& sig, int max_depth, int max_var) {
    if (max_depth == 0 || sig.size() == 0 || rng() % 2 == 0)
        return Term::var(1 + static_cast<int>(rng() % max_var));
    const auto& syms = sig.symbols();
    auto it = syms.begin();
    std::advance(it, static_cast<long>(rng() % syms.size()));
    std::vector<Term> kids;
    for (int i = 0; i < it->second; ++i)
        kids.push_back(random_term(rng, sig, max_depth - 1, max_var));
    return Term::app(it->first, kids);
}

// One random axiom application anywhere in t; unbound variables of a rule
// applied against its orientation get random small variables.
std::optional<Term> random_rewrite(std::mt19937_64& rng, const Term& t,
                                   const std::vector<RewriteRule>& rules, int max_var,
                                   std::size_t size_cap) {
    std::vector<Term> results;
    for (const Position& p : positions(t)) {
        Term sub = subterm_at(t, p);
        for (const RewriteRule& rule : rules) {
            auto m = match_term(rule.lhs, sub);
            if (!m) continue;
            auto subst = *m;
            for (int v : var_indices(rule.rhs))
                if (!subst.count(v))
                    subst.insert({v, Term::var(1 + static_cast<int>(rng() % max_var))});
            Term next = replace_at(t, p, substitute_vars(rule.rhs, subst));
            if (next.size() <= size_cap) results.push_back(std::move(next));
        }
    }
    if (results.empty()) return std::nullopt;
    return results[rng() % results.size()];
}

} // namespace

StabilityProbeResult stability_probe(const Theory& T, const Budget& budget, std::uint64_t seed) {
    StabilityProbeResult out;
    std::mt19937_64 rng(seed);

    std::vector<FiniteAlgebra> models = T.witness_algebras;
    for (FiniteAlgebra& m :
         enumerate_models(T.sig, T.axioms, std::max(budget.max_model_size, 2)))
        models.push_back(std::move(m));
    if (models.empty()) {
        out.note = "no models within the budget size; nothing can refute a composition";
        return out;
    }

    std::vector<RewriteRule> rules;
    for (const Identity& a : T.axioms) {
        rules.push_back({a.lhs, a.rhs});
        if (!(a.lhs == a.rhs)) rules.push_back({a.rhs, a.lhs});
    }
    if (rules.empty()) {
        out.note = "the theory has no axioms; every composition instance holds trivially";
        return out;
    }
    std::size_t size_cap = static_cast<std::size_t>(budget.max_term_size) * 2;

    // A valid identity: a random term rewritten a few times with the axioms.
    auto random_valid = [&](int max_rewrites) -> Identity {
        Term t = random_term(rng, T.sig, 3, 3);
        Term s = t;
        std::size_t k = rng() % (static_cast<std::size_t>(max_rewrites) + 1);
        for (std::size_t i = 0; i < k; ++i) {
            auto next = random_rewrite(rng, s, rules, 3, size_cap);
            if (!next) break;
            s = *next;
        }
        return {t, s};
    };

    // Repeated-subterm bases are where replacing a whole class is most
    // fragile: the two sides of a rewritten square can cover the repeated
    // piece with differently sized minimal fronts. Alternate them with the
    // fully random stream.
    std::vector<std::string> binary_syms;
    for (const auto& [sym, ar] : T.sig.symbols())
        if (ar == 2) binary_syms.push_back(sym);
    auto random_square = [&]() -> std::optional<Identity> {
        if (binary_syms.empty()) return std::nullopt;
        Term c = random_term(rng, T.sig, 2, 2);
        Term t = Term::app(binary_syms[rng() % binary_syms.size()], {c, c});
        Term s = t;
        for (int i = 0; i < 3; ++i) {
            auto next = random_rewrite(rng, s, rules, 3, size_cap);
            if (!next) break;
            s = *next;
        }
        return Identity{t, s};
    };

    int target = std::max(20, budget.max_steps / 50);
    long long round = 0;
    while (out.samples_tried < target) {
        Identity base{Term::var(1), Term::var(1)};
        if (++round % 2 == 0) {
            auto sq = random_square();
            base = sq ? *sq : random_valid(3);
        } else {
            base = random_valid(3);
        }
        SubtermReport left = essential_subterms(T, base.lhs);
        SubtermReport right = essential_subterms(T, base.rhs);

        std::vector<Identity> replacements;
        for (int v = 1; v <= 3; ++v) replacements.push_back({Term::var(v), Term::var(v)});
        int fresh = 1;
        for (const Term& side : {base.lhs, base.rhs})
            for (int v : var_indices(side)) fresh = std::max(fresh, v + 1);
        replacements.push_back({Term::var(fresh), Term::var(fresh)});
        replacements.push_back(random_valid(2));

        int combos = 0;
        for (const Term& r : left.essential) {
            for (const Term& v : right.essential) {
                if (!sigma_equal(T, r, v).is_equal()) continue;
                for (const Identity& repl : replacements) {
                    if (++combos > 12) break;
                    ++out.samples_tried;
                    std::optional<Identity> composed;
                    try {
                        composed = Identity{sigma_compose(T, base.lhs, r, repl.lhs),
                                            sigma_compose(T, base.rhs, v, repl.rhs)};
                    } catch (const UnknownVerdictError&) {
                        continue;
                    }
                    for (const FiniteAlgebra& m : models) {
                        SatisfactionResult sr = satisfies(m, *composed);
                        if (!sr.holds) {
                            out.counterexample = StabilityCounterexample{
                                base, {r, v}, repl, *composed, Witness{m, *sr.failing}};
                            out.note = "a composition of valid premises fails in a model";
                            return out;
                        }
                    }
                }
                if (combos > 12) break;
            }
            if (combos > 12) break;
        }
    }
    out.note = "no failing composition in " + std::to_string(out.samples_tried) + " samples";
    return out;
}

} // namespace termcalc
