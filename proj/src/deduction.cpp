// SPDX-License-Identifier: Apache-2.0
//
// Proof checking, derivation search, and closure sampling.

#include "termcalc/deduction.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "termcalc/compose.hpp"
#include "termcalc/errors.hpp"
#include "termcalc/essential.hpp"
#include "termcalc/hyper.hpp"
#include "termcalc/rewrite.hpp"
#include "termcalc/sigma_compose.hpp"

namespace termcalc {

std::string system_name(System s) {
    switch (s) {
        case System::D: return "d";
        case System::DRefined: return "d-refined";
        case System::SigmaR: return "sigma-r";
        case System::Any: return "any";
    }
    throw ValidationError("unhandled system");
}

std::optional<System> system_from_name(const std::string& name) {
    if (name == "d") return System::D;
    if (name == "d-refined" || name == "drefined") return System::DRefined;
    if (name == "sigma-r" || name == "sigmar") return System::SigmaR;
    if (name == "any") return System::Any;
    return std::nullopt;
}

bool system_allows(System s, Rule r) {
    switch (r) {
        case Rule::Axiom:
        case Rule::D1:
        case Rule::D2:
        case Rule::D3:
            return true;
        case Rule::D4:
            return s == System::D || s == System::SigmaR || s == System::Any;
        case Rule::D5:
            return s == System::D || s == System::Any;
        case Rule::D4e:
        case Rule::D4f:
        case Rule::D5e:
        case Rule::D5f:
            return s == System::DRefined || s == System::Any;
        case Rule::SigmaR1:
            return s == System::SigmaR || s == System::Any;
        case Rule::H1:
            return s == System::Any;
    }
    return false;
}

namespace {

bool term_fits_signature(const Term& t, const Signature& sig) {
    if (t.is_var()) return true;
    if (!sig.has_symbol(t.symbol())) return false;
    if (sig.arity(t.symbol()) != static_cast<int>(t.children().size())) return false;
    for (const Term& c : t.children())
        if (!term_fits_signature(c, sig)) return false;
    return true;
}

bool is_stored_axiom(const Theory& T, const Identity& id) {
    for (const Identity& a : T.axioms)
        if (a == id || a.mirrored() == id) return true;
    return false;
}

bool position_in(const Term& t, const Position& p) {
    const Term* cur = &t;
    for (int i = 0; i < p.length(); ++i) {
        int step = p.step(i);
        if (cur->is_var() || step < 1 || step > static_cast<int>(cur->children().size()))
            return false;
        cur = &cur->children()[step - 1];
    }
    return true;
}

// Tri-state side conditions: 1 holds (essential), 0 fails (fictive),
// -1 the oracle could not decide.
int verdict_state(const Verdict& v) {
    if (v.is_distinct()) return 1;
    if (v.is_equal()) return 0;
    return -1;
}

// Whether r occurs in t at at least one essential position.
int subterm_essential_state(const Theory& T, const Term& t, const Term& r) {
    auto occ = occurrences(t, r);
    if (occ.empty()) return 0;
    bool undecided = false;
    for (const Position& p : occ) {
        int st = verdict_state(position_essential(T, t, p));
        if (st == 1) return 1;
        if (st == -1) undecided = true;
    }
    return undecided ? -1 : 0;
}

} // namespace

CheckResult check_proof(const Theory& T, const Proof& proof, const std::optional<Identity>& goal,
                        System system) {
    if (proof.steps.empty())
        return {CheckResult::Status::Invalid, -1, "proof has no steps"};

    auto invalid = [](int i, const std::string& why) {
        return CheckResult{CheckResult::Status::Invalid, i,
                           "step " + std::to_string(i + 1) + ": " + why};
    };
    auto undecided = [](int i, const std::string& why) {
        return CheckResult{CheckResult::Status::Unknown, i,
                           "step " + std::to_string(i + 1) + ": " + why};
    };

    for (int i = 0; i < static_cast<int>(proof.steps.size()); ++i) {
        const ProofStep& st = proof.steps[i];
        const Identity& c = st.conclusion;

        if (!term_fits_signature(c.lhs, T.sig) || !term_fits_signature(c.rhs, T.sig))
            return invalid(i, "conclusion uses symbols outside the theory's signature");
        if (st.term && !term_fits_signature(*st.term, T.sig))
            return invalid(i, "substituted term uses symbols outside the theory's signature");
        if (!system_allows(system, st.rule))
            return invalid(i, "rule " + rule_name(st.rule) + " is not part of system " +
                                  system_name(system));

        std::vector<Identity> prem;
        for (int q : st.premises) {
            if (q < 0 || q >= i)
                return invalid(i, "premise " + std::to_string(q + 1) + " is not an earlier step");
            prem.push_back(proof.steps[q].conclusion);
        }
        auto premise_count_is = [&prem](std::size_t n) { return prem.size() == n; };

        switch (st.rule) {
            case Rule::Axiom: {
                if (!premise_count_is(0)) return invalid(i, "axiom steps take no premises");
                if (!is_stored_axiom(T, c))
                    return invalid(i, "conclusion is not a stored axiom or its mirror image");
                break;
            }
            case Rule::D1: {
                if (!premise_count_is(0)) return invalid(i, "reflexivity takes no premises");
                if (!(c.lhs == c.rhs)) return invalid(i, "sides of a reflexivity step differ");
                break;
            }
            case Rule::D2: {
                if (!premise_count_is(1)) return invalid(i, "symmetry takes one premise");
                if (!(c == prem[0].mirrored()))
                    return invalid(i, "conclusion is not the premise mirrored");
                break;
            }
            case Rule::D3: {
                if (!premise_count_is(2)) return invalid(i, "transitivity takes two premises");
                if (!(prem[0].rhs == prem[1].lhs))
                    return invalid(i, "premises do not chain through a common middle term");
                if (!(c.lhs == prem[0].lhs && c.rhs == prem[1].rhs))
                    return invalid(i, "conclusion does not join the premises' outer sides");
                break;
            }
            case Rule::D4:
            case Rule::D4e:
            case Rule::D4f: {
                if (!premise_count_is(1)) return invalid(i, "substitution takes one premise");
                if (!st.var || !st.term)
                    return invalid(i, "substitution steps need var= and term=");
                Term lhs = substitute_var(prem[0].lhs, *st.var, *st.term);
                if (st.rule == Rule::D4f) {
                    if (!(c == Identity{lhs, prem[0].rhs}))
                        return invalid(i, "conclusion must substitute the left side only");
                } else {
                    Term rhs = substitute_var(prem[0].rhs, *st.var, *st.term);
                    if (!(c == Identity{lhs, rhs}))
                        return invalid(i, "conclusion is not the premise under the substitution");
                }
                if (st.rule != Rule::D4) {
                    int state = verdict_state(var_essential(T, prem[0].lhs, *st.var));
                    if (state == -1)
                        return undecided(i, "could not decide whether x" +
                                                std::to_string(*st.var) + " is essential");
                    if (st.rule == Rule::D4e && state != 1)
                        return invalid(i, "x" + std::to_string(*st.var) +
                                              " is not essential in the premise's left side");
                    if (st.rule == Rule::D4f && state != 0)
                        return invalid(i, "x" + std::to_string(*st.var) +
                                              " is not fictive in the premise's left side");
                }
                break;
            }
            case Rule::D5:
            case Rule::D5e: {
                if (!premise_count_is(1)) return invalid(i, "replacement takes one premise");
                if (!st.pos) return invalid(i, "replacement steps need pos=");
                const Term& host = c.rhs;
                if (!position_in(host, *st.pos))
                    return invalid(i, "position does not exist in the host term");
                if (!(subterm_at(host, *st.pos) == prem[0].lhs))
                    return invalid(i, "host does not carry the premise's left side at pos");
                if (!(c.lhs == replace_at(host, *st.pos, prem[0].rhs)))
                    return invalid(i, "conclusion's left side is not the host after replacement");
                if (st.rule == Rule::D5e) {
                    int state = verdict_state(position_essential(T, host, *st.pos));
                    if (state == -1)
                        return undecided(i, "could not decide whether position " +
                                                st.pos->str() + " is essential");
                    if (state != 1)
                        return invalid(i, "position " + st.pos->str() +
                                              " is not essential in the host");
                }
                break;
            }
            case Rule::D5f: {
                if (!premise_count_is(0))
                    return invalid(i, "fictive replacement takes no premises");
                if (!st.pos) return invalid(i, "replacement steps need pos=");
                const Term& host = c.rhs;
                if (!position_in(host, *st.pos) || !position_in(c.lhs, *st.pos))
                    return invalid(i, "position does not exist in both sides");
                if (!(c.lhs == replace_at(host, *st.pos, subterm_at(c.lhs, *st.pos))))
                    return invalid(i, "sides differ away from the replaced position");
                int state = verdict_state(position_essential(T, host, *st.pos));
                if (state == -1)
                    return undecided(i, "could not decide whether position " + st.pos->str() +
                                            " is essential");
                if (state != 0)
                    return invalid(i, "position " + st.pos->str() + " is not fictive in the host");
                break;
            }
            case Rule::SigmaR1: {
                if (!premise_count_is(3))
                    return invalid(i, "class replacement takes three premises");
                const Identity& base = prem[0];
                const Identity& cls = prem[1];
                const Identity& repl = prem[2];
                int left = subterm_essential_state(T, base.lhs, cls.lhs);
                if (left == -1)
                    return undecided(i, "could not decide whether the replaced subterm is "
                                        "essential on the left");
                if (left != 1)
                    return invalid(i, "the replaced subterm does not occur essentially in the "
                                      "base's left side");
                int right = subterm_essential_state(T, base.rhs, cls.rhs);
                if (right == -1)
                    return undecided(i, "could not decide whether the replaced subterm is "
                                        "essential on the right");
                if (right != 1)
                    return invalid(i, "the replaced subterm does not occur essentially in the "
                                      "base's right side");
                std::optional<Identity> composed;
                try {
                    composed = Identity{sigma_compose(T, base.lhs, cls.lhs, repl.lhs),
                                        sigma_compose(T, base.rhs, cls.rhs, repl.rhs)};
                } catch (const UnknownVerdictError& e) {
                    return undecided(i, std::string("composition undecided: ") + e.what());
                }
                if (!(c == *composed))
                    return invalid(i, "conclusion is not the composition of the premises");
                break;
            }
            case Rule::H1: {
                if (!premise_count_is(1))
                    return invalid(i, "hypersubstitution takes one premise");
                if (!st.hyper_text) return invalid(i, "hypersubstitution steps need hyper=");
                std::optional<Hypersubstitution> h;
                try {
                    h = Hypersubstitution::parse(*st.hyper_text, T.sig);
                } catch (const std::runtime_error& e) {
                    return invalid(i, std::string("bad hypersubstitution: ") + e.what());
                }
                if (!(c == Identity{h->apply(prem[0].lhs), h->apply(prem[0].rhs)}))
                    return invalid(i, "conclusion is not the premise under the "
                                      "hypersubstitution");
                break;
            }
        }
    }

    if (goal && !(proof.steps.back().conclusion == *goal)) {
        std::string why = "final conclusion " + proof.steps.back().conclusion.str() +
                          " does not match the goal " + goal->str();
        if (proof.steps.back().conclusion == goal->mirrored())
            why += " (it proves the mirror image; finish with a symmetry step)";
        return {CheckResult::Status::Invalid, static_cast<int>(proof.steps.size()) - 1, why};
    }
    return {CheckResult::Status::Valid, -1, ""};
}

// ---------------------------------------------------------------------------
// Derivation search

namespace {

std::shared_ptr<const Proof> reflexivity_proof(const Identity& goal) {
    auto p = std::make_shared<Proof>();
    p->steps.push_back({goal, Rule::D1, {}, {}, {}, {}, {}});
    return p;
}

std::shared_ptr<const Proof> axiom_proof(const Identity& goal) {
    auto p = std::make_shared<Proof>();
    p->steps.push_back({goal, Rule::Axiom, {}, {}, {}, {}, {}});
    return p;
}

// Both orientations of every axiom, minus bare-variable patterns (those
// match every subterm and blow the search up without adding joins the
// exact theories need).
std::vector<RewriteRule> axiom_rules(const Theory& T) {
    std::vector<RewriteRule> rules;
    auto push = [&rules](const Term& l, const Term& r) {
        if (l.is_var()) return;
        RewriteRule rule{l, r};
        if (std::find(rules.begin(), rules.end(), rule) == rules.end()) rules.push_back(rule);
    };
    for (const Identity& a : T.axioms) {
        push(a.lhs, a.rhs);
        push(a.rhs, a.lhs);
    }
    return rules;
}

std::vector<int> pool_vars_for(const Identity& goal) {
    std::set<int> vs{1, 2, 3};
    for (int v : var_indices(goal.lhs)) vs.insert(v);
    for (int v : var_indices(goal.rhs)) vs.insert(v);
    return {vs.begin(), vs.end()};
}

struct Expansion {
    Term next;
    AppliedRewrite rw;
};

// All one-step rewrites of u. Unbound right-side variables (an axiom applied
// against its orientation) range over pool variables.
void expand(const Term& u, const std::vector<RewriteRule>& rules, const std::vector<int>& pool,
            std::size_t size_cap, bool root_only, std::vector<Expansion>& out) {
    std::vector<Position> sites;
    if (root_only)
        sites.push_back(Position::root());
    else
        sites = positions(u);
    for (const Position& p : sites) {
        Term sub = subterm_at(u, p);
        for (const RewriteRule& rule : rules) {
            auto m = match_term(rule.lhs, sub);
            if (!m) continue;
            std::vector<int> unbound;
            for (int v : var_indices(rule.rhs))
                if (!m->count(v)) unbound.push_back(v);
            if (unbound.size() > 2) continue;
            std::vector<std::map<int, Term>> substs{*m};
            for (int v : unbound) {
                std::vector<std::map<int, Term>> grown;
                for (const auto& s : substs)
                    for (int image : pool) {
                        auto s2 = s;
                        s2.insert({v, Term::var(image)});
                        grown.push_back(std::move(s2));
                    }
                substs = std::move(grown);
            }
            for (const auto& s : substs) {
                Term next = replace_at(u, p, substitute_vars(rule.rhs, s));
                if (next.size() > size_cap) continue;
                out.push_back({std::move(next), {p, rule, s}});
            }
        }
    }
}

struct NodeInfo {
    int side = 0;
    std::optional<Term> parent;
    std::optional<AppliedRewrite> via;
};

std::vector<AppliedRewrite> chain_to(const std::map<Term, NodeInfo>& visited, Term node) {
    std::vector<AppliedRewrite> chain;
    while (true) {
        const NodeInfo& info = visited.at(node);
        if (!info.parent) break;
        chain.push_back(*info.via);
        node = *info.parent;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

struct MeetResult {
    std::vector<AppliedRewrite> from_lhs;
    std::vector<AppliedRewrite> from_rhs;
};

// Breadth-first search from both sides at once; a term reached from both
// closes the derivation.
std::optional<MeetResult> bidirectional_join(const Term& lhs, const Term& rhs,
                                             const std::vector<RewriteRule>& rules,
                                             const std::vector<int>& pool, std::size_t size_cap,
                                             int max_expansions, bool root_only) {
    if (lhs == rhs) return MeetResult{};
    constexpr std::size_t kNodeCap = 200000;
    std::map<Term, NodeInfo> visited;
    std::deque<Term> queue;
    visited[lhs] = {0, {}, {}};
    visited[rhs] = {1, {}, {}};
    queue.push_back(lhs);
    queue.push_back(rhs);
    int expanded = 0;
    std::vector<Expansion> buf;
    while (!queue.empty() && expanded < max_expansions && visited.size() < kNodeCap) {
        Term u = queue.front();
        queue.pop_front();
        ++expanded;
        int side = visited.at(u).side;
        buf.clear();
        expand(u, rules, pool, size_cap, root_only, buf);
        for (Expansion& e : buf) {
            auto it = visited.find(e.next);
            if (it == visited.end()) {
                visited[e.next] = {side, u, e.rw};
                queue.push_back(e.next);
                continue;
            }
            if (it->second.side == side) continue;
            auto mine = chain_to(visited, u);
            mine.push_back(e.rw);
            auto theirs = chain_to(visited, e.next);
            if (side == 0) return MeetResult{std::move(mine), std::move(theirs)};
            return MeetResult{std::move(theirs), std::move(mine)};
        }
    }
    return std::nullopt;
}

std::size_t search_size_cap(const Identity& goal, const Budget& budget) {
    return std::max<std::size_t>(static_cast<std::size_t>(budget.max_term_size),
                                 std::max(goal.lhs.size(), goal.rhs.size()) + 4);
}

std::optional<DeriveResult> try_refute(const Theory& T, const Identity& goal,
                                       const Budget& budget, std::string& note) {
    for (const FiniteAlgebra& w : T.witness_algebras) {
        SatisfactionResult sr = satisfies(w, goal);
        if (!sr.holds)
            return DeriveResult{DeriveResult::Status::Refuted, nullptr,
                                Witness{w, *sr.failing}, "refuted by a stored witness algebra"};
    }
    RefutationSearch rs =
        search_refutation(T.sig, T.axioms, goal, std::max(budget.max_model_size, 2));
    if (rs.witness)
        return DeriveResult{DeriveResult::Status::Refuted, nullptr, rs.witness, rs.note};
    note = rs.complete ? "no refuting model up to size " +
                             std::to_string(std::max(budget.max_model_size, 2))
                       : rs.note;
    return std::nullopt;
}

DeriveResult derive_plain(const Theory& T, const Identity& goal, const Budget& budget,
                          const std::string& refute_note) {
    auto rules = axiom_rules(T);
    auto pool = pool_vars_for(goal);
    auto meet = bidirectional_join(goal.lhs, goal.rhs, rules, pool,
                                   search_size_cap(goal, budget), budget.max_steps, false);
    if (meet) {
        auto proof = join_proof(goal.lhs, meet->from_lhs, goal.rhs, meet->from_rhs);
        if (!check_proof(T, *proof, goal, System::D).ok())
            throw ValidationError("internal error: a found derivation failed to replay");
        return {DeriveResult::Status::Proved, proof, {}, ""};
    }
    return {DeriveResult::Status::NotFound, nullptr, {},
            "no derivation within " + std::to_string(budget.max_steps) + " expansions; " +
                refute_note};
}

// Relabel a plain derivation with the essential/fictive rule variants.
std::optional<Proof> refine_labels(const Theory& T, const Proof& in, std::string& why) {
    Proof out;
    for (const ProofStep& step : in.steps) {
        ProofStep copy = step;
        switch (step.rule) {
            case Rule::Axiom:
            case Rule::D1:
            case Rule::D2:
            case Rule::D3:
                break;
            case Rule::D4: {
                const Identity& premise = in.steps[step.premises[0]].conclusion;
                int state = verdict_state(var_essential(T, premise.lhs, *step.var));
                if (state == 1) {
                    copy.rule = Rule::D4e;
                } else if (state == 0) {
                    if (!(substitute_var(premise.rhs, *step.var, *step.term) == premise.rhs)) {
                        why = "a substitution for fictive x" + std::to_string(*step.var) +
                              " also changes the right side";
                        return std::nullopt;
                    }
                    copy.rule = Rule::D4f;
                } else {
                    why = "could not classify x" + std::to_string(*step.var);
                    return std::nullopt;
                }
                break;
            }
            case Rule::D5: {
                int state = verdict_state(position_essential(T, step.conclusion.rhs, *step.pos));
                if (state == 1) {
                    copy.rule = Rule::D5e;
                } else if (state == 0) {
                    copy.rule = Rule::D5f;
                    copy.premises.clear();
                } else {
                    why = "could not classify position " + step.pos->str();
                    return std::nullopt;
                }
                break;
            }
            default:
                why = "rule " + rule_name(step.rule) + " has no refined counterpart";
                return std::nullopt;
        }
        out.steps.push_back(std::move(copy));
    }
    return out;
}

// One candidate side of a closing composition step: planting `cls` at the
// front positions of `base` recovers the goal's side when `repl` is poured
// back in.
struct SideCand {
    Term base;
    Term cls;
    Term repl;
};

std::vector<Term> class_pool(const Theory& T, const Identity& goal) {
    std::set<Term> pool;
    auto take = [&pool](const Term& t) {
        for (const Term& u : subterms(t)) pool.insert(u);
    };
    take(goal.lhs);
    take(goal.rhs);
    for (const Identity& a : T.axioms) {
        take(a.lhs);
        take(a.rhs);
    }
    for (int v = 1; v <= 3; ++v) pool.insert(Term::var(v));
    for (const auto& [sym, arity] : T.sig.symbols()) {
        std::vector<std::vector<Term>> stems{{}};
        for (int k = 0; k < arity; ++k) {
            std::vector<std::vector<Term>> grown;
            for (const auto& stem : stems)
                for (int v = 1; v <= 3; ++v) {
                    auto s2 = stem;
                    s2.push_back(Term::var(v));
                    grown.push_back(std::move(s2));
                }
            stems = std::move(grown);
        }
        for (const auto& kids : stems) pool.insert(Term::app(sym, kids));
    }
    return {pool.begin(), pool.end()};
}

std::vector<SideCand> composition_candidates(const Theory& T, const Term& side,
                                             const std::vector<Term>& cls_pool,
                                             std::size_t size_cap, std::size_t cap) {
    std::vector<SideCand> cands;
    for (const Term& repl : subterms(side)) {
        auto occ = occurrences(side, repl);
        if (occ.empty() || occ.size() > 6) continue;
        for (std::size_t mask = 1; mask < (std::size_t{1} << occ.size()); ++mask) {
            std::vector<Position> sites;
            for (std::size_t b = 0; b < occ.size(); ++b)
                if (mask & (std::size_t{1} << b)) sites.push_back(occ[b]);
            for (const Term& cls : cls_pool) {
                Term base = positional_compose(side, sites, cls);
                if (base.size() > size_cap) continue;
                PositionSets ps;
                try {
                    ps = position_sets(T, base, cls, Strictness::Strict);
                } catch (const UnknownVerdictError&) {
                    continue;
                }
                if (!(ps.front == sites)) continue;
                if (ps.essential_front.empty()) continue;
                cands.push_back({base, cls, repl});
                if (cands.size() >= cap) return cands;
            }
        }
    }
    return cands;
}

// Fast necessary condition before attempting premise proofs.
bool maybe_equal(const Theory& T, const Identity& id) {
    if (T.oracle != OracleKind::Generic) return oracle_equal_exact(T, id.lhs, id.rhs);
    for (const FiniteAlgebra& w : T.witness_algebras)
        if (!satisfies(w, id).holds) return false;
    return true;
}

// Proof using Axiom/D1..D4 only: reflexivity, a stored axiom, or a chain of
// whole-term axiom instances.
std::shared_ptr<const Proof> prove_basic(const Theory& T, const Identity& id,
                                         const std::vector<RewriteRule>& rules,
                                         const std::vector<int>& pool, std::size_t size_cap,
                                         int max_expansions,
                                         std::map<Identity, std::shared_ptr<const Proof>>& cache) {
    auto hit = cache.find(id);
    if (hit != cache.end()) return hit->second;
    std::shared_ptr<const Proof> result;
    if (id.lhs == id.rhs) {
        result = reflexivity_proof(id);
    } else if (is_stored_axiom(T, id)) {
        result = axiom_proof(id);
    } else {
        auto meet =
            bidirectional_join(id.lhs, id.rhs, rules, pool, size_cap, max_expansions, true);
        if (meet) result = join_proof(id.lhs, meet->from_lhs, id.rhs, meet->from_rhs);
    }
    cache[id] = result;
    return result;
}

DeriveResult derive_sigma(const Theory& T, const Identity& goal, const Budget& budget) {
    auto rules = axiom_rules(T);
    auto pool = pool_vars_for(goal);
    std::size_t size_cap = search_size_cap(goal, budget);

    // Whole-term rewriting alone (Axiom + D4 chains) may already close it.
    auto meet =
        bidirectional_join(goal.lhs, goal.rhs, rules, pool, size_cap, budget.max_steps, true);
    if (meet) {
        auto proof = join_proof(goal.lhs, meet->from_lhs, goal.rhs, meet->from_rhs);
        if (!check_proof(T, *proof, goal, System::SigmaR).ok())
            throw ValidationError("internal error: a found derivation failed to replay");
        return {DeriveResult::Status::Proved, proof, {}, ""};
    }

    // Otherwise search for one closing composition step: bases whose fronts
    // recover the goal's sides, with all three premises provable by
    // whole-term rewriting.
    auto cls_pool = class_pool(T, goal);
    auto lefts = composition_candidates(T, goal.lhs, cls_pool, size_cap, 400);
    auto rights = composition_candidates(T, goal.rhs, cls_pool, size_cap, 400);
    std::map<Identity, std::shared_ptr<const Proof>> cache;
    int premise_budget = std::max(200, budget.max_steps / 20);
    long long pairs = 0;
    for (const SideCand& L : lefts) {
        for (const SideCand& R : rights) {
            if (++pairs > 20000) break;
            Identity cls_id{L.cls, R.cls};
            Identity repl_id{L.repl, R.repl};
            Identity base_id{L.base, R.base};
            if (!maybe_equal(T, cls_id) || !maybe_equal(T, repl_id) ||
                !maybe_equal(T, base_id))
                continue;
            auto pr_cls = prove_basic(T, cls_id, rules, pool, size_cap, premise_budget, cache);
            if (!pr_cls) continue;
            auto pr_repl = prove_basic(T, repl_id, rules, pool, size_cap, premise_budget, cache);
            if (!pr_repl) continue;
            auto pr_base = prove_basic(T, base_id, rules, pool, size_cap, premise_budget, cache);
            if (!pr_base) continue;
            Proof whole;
            int ib = append_proof(whole, *pr_base);
            int ic = append_proof(whole, *pr_cls);
            int ir = append_proof(whole, *pr_repl);
            whole.steps.push_back({goal, Rule::SigmaR1, {ib, ic, ir}, {}, {}, {}, {}});
            auto sp = std::make_shared<Proof>(std::move(whole));
            if (check_proof(T, *sp, goal, System::SigmaR).ok())
                return {DeriveResult::Status::Proved, sp, {}, ""};
        }
    }
    return {DeriveResult::Status::NotFound, nullptr, {},
            "no derivation within " + std::to_string(budget.max_steps) +
                " expansions (composition candidates: " + std::to_string(lefts.size()) + "x" +
                std::to_string(rights.size()) + ")"};
}

} // namespace

DeriveResult derive(const Theory& T, const Identity& goal, System system, const Budget& budget) {
    if (!term_fits_signature(goal.lhs, T.sig) || !term_fits_signature(goal.rhs, T.sig))
        throw ValidationError("goal uses symbols outside the theory's signature");
    if (goal.lhs == goal.rhs)
        return {DeriveResult::Status::Proved, reflexivity_proof(goal), {}, ""};

    std::string refute_note;
    if (system != System::SigmaR) {
        // A model of the axioms falsifying the goal settles every system
        // whose rules are sound for the variety. SigmaR conclusions need
        // not hold in the variety, so no model can refute them.
        if (auto refuted = try_refute(T, goal, budget, refute_note)) return *refuted;
    }

    switch (system) {
        case System::D:
            return derive_plain(T, goal, budget, refute_note);
        case System::DRefined: {
            DeriveResult plain = derive_plain(T, goal, budget, refute_note);
            if (plain.status != DeriveResult::Status::Proved) return plain;
            std::string why;
            auto refined = refine_labels(T, *plain.proof, why);
            if (!refined)
                return {DeriveResult::Status::NotFound, nullptr, {},
                        "a plain derivation exists but could not be relabelled with the "
                        "refined rules: " +
                            why};
            auto sp = std::make_shared<Proof>(std::move(*refined));
            if (!check_proof(T, *sp, goal, System::DRefined).ok())
                return {DeriveResult::Status::NotFound, nullptr, {},
                        "a plain derivation exists but its refined relabelling failed to "
                        "replay"};
            return {DeriveResult::Status::Proved, sp, {}, ""};
        }
        case System::SigmaR:
            return derive_sigma(T, goal, budget);
        case System::Any: {
            DeriveResult plain = derive_plain(T, goal, budget, refute_note);
            if (plain.status == DeriveResult::Status::Proved) return plain;
            DeriveResult comp = derive_sigma(T, goal, budget);
            if (comp.status == DeriveResult::Status::Proved) return comp;
            plain.note += "; " + comp.note;
            return plain;
        }
    }
    throw ValidationError("unhandled system");
}

// ---------------------------------------------------------------------------
// Closure sampling

namespace {

// Saturates the rule system over a finite term universe. The universe uses
// one working variable beyond the reported ones so substitution instances
// can permute variables; conclusions outside the universe are dropped.
class ClosureEngine {
  public:
    ClosureEngine(const Theory& T, System sys, const Budget& budget, int report_vars)
        : T_(T), sys_(sys), budget_(budget), report_vars_(report_vars),
          work_vars_(report_vars + 1) {
        std::size_t axiom_side = 0;
        for (const Identity& a : T.axioms) {
            axiom_side = std::max(axiom_side, static_cast<std::size_t>(std::max(a.lhs.size(), a.rhs.size())));
            for (int v : var_indices(a.lhs))
                if (v > work_vars_)
                    throw ValidationError("axiom variables exceed the sampling universe; "
                                          "raise report_vars");
            for (int v : var_indices(a.rhs))
                if (v > work_vars_)
                    throw ValidationError("axiom variables exceed the sampling universe; "
                                          "raise report_vars");
        }
        cap_work_ = std::max<std::size_t>(static_cast<std::size_t>(budget.max_term_size),
                                          axiom_side);
        build_universe();
        build_generators();
    }

    void run() {
        for (const Term& t : universe_) add({t, t});
        for (const Identity& a : T_.axioms) add(a);
        if (system_allows(sys_, Rule::D5f)) fictive_replacement_pass();
        while (!work_.empty() && !exhausted_) {
            Identity id = work_.front();
            work_.pop_front();
            process(id);
        }
    }

    std::vector<Identity> report() const {
        std::vector<Identity> out;
        for (const Identity& id : known_)
            if (reportable(id.lhs) && reportable(id.rhs)) out.push_back(id);
        return out;
    }

  private:
    struct FrontInfo {
        std::vector<Position> front;
        bool unknown = false;
    };

    const Theory& T_;
    System sys_;
    Budget budget_;
    int report_vars_;
    int work_vars_;
    std::size_t cap_work_ = 0;

    std::vector<Term> universe_;
    std::set<Term> universe_set_;
    std::map<Term, std::vector<std::pair<Term, Position>>> sub_index_;
    std::vector<Term> generators_;
    std::vector<Identity> repl_pool_;

    std::set<Identity> known_;
    std::deque<Identity> work_;
    std::map<Term, std::set<Term>> by_lhs_;
    std::map<Term, std::set<Term>> by_rhs_;
    std::map<Term, std::set<Identity>> by_sub_lhs_;

    long long steps_used_ = 0;
    bool exhausted_ = false;

    std::map<std::pair<Term, int>, int> var_state_;
    std::map<std::pair<Term, Position>, int> pos_state_;
    std::map<std::pair<Term, Term>, int> sess_state_;
    std::map<std::pair<Term, Term>, FrontInfo> front_cache_;
    // (base, class keys) already expanded against the replacement pool.
    std::set<std::tuple<Identity, Term, Term>> pool_fired_;

    bool reportable(const Term& t) const {
        if (t.size() > static_cast<std::size_t>(budget_.max_term_size)) return false;
        auto vars = var_indices(t);
        return vars.empty() || *vars.rbegin() <= report_vars_;
    }

    void build_universe() {
        constexpr std::size_t kUniverseCap = 30000;
        std::vector<std::vector<Term>> by_size(cap_work_ + 1);
        std::size_t total = 0;
        for (std::size_t k = 1; k <= cap_work_; ++k) {
            if (k == 1)
                for (int v = 1; v <= work_vars_; ++v) by_size[1].push_back(Term::var(v));
            for (const auto& [sym, arity] : T_.sig.symbols()) {
                if (arity == 0) {
                    if (k == 1) by_size[1].push_back(Term::app(sym, {}));
                    continue;
                }
                if (k < static_cast<std::size_t>(arity) + 1) continue;
                std::vector<Term> kids;
                fill_apps(sym, arity, k - 1, kids, by_size);
            }
            total += by_size[k].size();
            if (total > kUniverseCap)
                throw ValidationError("closure sampling universe is too large; lower the "
                                      "term-size budget");
        }
        for (auto& bucket : by_size)
            for (Term& t : bucket) universe_.push_back(std::move(t));
        std::sort(universe_.begin(), universe_.end());
        universe_set_ = {universe_.begin(), universe_.end()};
        for (const Term& host : universe_)
            for (const Position& p : positions(host))
                sub_index_[subterm_at(host, p)].push_back({host, p});
    }

    // Appends every application of `sym` whose children's sizes sum to
    // `remaining` to the bucket for the full size.
    void fill_apps(const std::string& sym, int arity, std::size_t remaining,
                   std::vector<Term>& kids, std::vector<std::vector<Term>>& by_size) {
        int left = arity - static_cast<int>(kids.size());
        if (left == 0) {
            if (remaining == 0)
                by_size[1 + remaining_total(kids)].push_back(Term::app(sym, kids));
            return;
        }
        if (remaining < static_cast<std::size_t>(left)) return;
        std::size_t lo = 1, hi = remaining - static_cast<std::size_t>(left - 1);
        for (std::size_t k = lo; k <= hi && k < by_size.size(); ++k)
            for (const Term& child : by_size[k]) {
                kids.push_back(child);
                fill_apps(sym, arity, remaining - k, kids, by_size);
                kids.pop_back();
            }
    }

    static std::size_t remaining_total(const std::vector<Term>& kids) {
        std::size_t n = 0;
        for (const Term& t : kids) n += t.size();
        return n;
    }

    void build_generators() {
        std::set<Term> gen;
        for (int v = 1; v <= work_vars_; ++v) gen.insert(Term::var(v));
        for (const auto& [sym, arity] : T_.sig.symbols()) {
            std::vector<std::vector<Term>> stems{{}};
            for (int k = 0; k < arity; ++k) {
                std::vector<std::vector<Term>> grown;
                for (const auto& stem : stems)
                    for (int v = 1; v <= work_vars_; ++v) {
                        auto s2 = stem;
                        s2.push_back(Term::var(v));
                        grown.push_back(std::move(s2));
                    }
                stems = std::move(grown);
            }
            for (const auto& kids : stems) gen.insert(Term::app(sym, kids));
        }
        generators_ = {gen.begin(), gen.end()};

        std::set<Identity> pool;
        for (const Identity& a : T_.axioms) {
            pool.insert(a);
            pool.insert(a.mirrored());
        }
        for (const Term& g : generators_) pool.insert({g, g});
        repl_pool_ = {pool.begin(), pool.end()};
    }

    bool in_universe(const Term& t) const { return universe_set_.count(t) > 0; }

    void add(const Identity& id) {
        if (exhausted_) return;
        if (++steps_used_ > budget_.max_steps) {
            exhausted_ = true;
            return;
        }
        if (!in_universe(id.lhs) || !in_universe(id.rhs)) return;
        if (!known_.insert(id).second) return;
        by_lhs_[id.lhs].insert(id.rhs);
        by_rhs_[id.rhs].insert(id.lhs);
        if (system_allows(sys_, Rule::SigmaR1))
            for (const Term& u : subterms(id.lhs)) by_sub_lhs_[u].insert(id);
        work_.push_back(id);
    }

    // 1 equal, 0 distinct, -1 undecided (generic theories under Quick effort).
    int pair_equal(const Term& a, const Term& b) {
        if (T_.oracle != OracleKind::Generic) return oracle_equal_exact(T_, a, b) ? 1 : 0;
        Verdict v = sigma_equal(T_, a, b, Effort::Quick);
        if (v.is_equal()) return 1;
        if (v.is_distinct()) return 0;
        return -1;
    }

    // 1 essential, 0 fictive, -1 undecided.
    int var_state(const Term& t, int x) {
        auto key = std::make_pair(t, x);
        auto it = var_state_.find(key);
        if (it != var_state_.end()) return it->second;
        int z = std::max(fresh_var_index(t), x + 1);
        int eq = pair_equal(t, substitute_var(t, x, Term::var(z)));
        int state = eq == -1 ? -1 : (eq == 1 ? 0 : 1);
        var_state_[key] = state;
        return state;
    }

    int pos_state(const Term& t, const Position& p) {
        auto key = std::make_pair(t, p);
        auto it = pos_state_.find(key);
        if (it != pos_state_.end()) return it->second;
        int z = fresh_var_index(t);
        int eq = pair_equal(replace_at(t, p, Term::var(z)), replace_at(t, p, Term::var(z + 1)));
        int state = eq == -1 ? -1 : (eq == 1 ? 0 : 1);
        pos_state_[key] = state;
        return state;
    }

    // Whether r sits at an essential position of t.
    int sub_state(const Term& t, const Term& r) {
        auto key = std::make_pair(t, r);
        auto it = sess_state_.find(key);
        if (it != sess_state_.end()) return it->second;
        int state = 0;
        bool undecided = false;
        for (const Position& p : occurrences(t, r)) {
            int ps = pos_state(t, p);
            if (ps == 1) {
                state = 1;
                break;
            }
            if (ps == -1) undecided = true;
        }
        if (state != 1 && undecided) state = -1;
        sess_state_[key] = state;
        return state;
    }

    Term class_key(const Term& r) {
        if (T_.oracle == OracleKind::Generic) return r;
        return *oracle_normal_form(T_, r);
    }

    // Minimal positions of the subterms of `host` equal to `rep` in the
    // variety; cached per equality class.
    const FrontInfo& front_info(const Term& host, const Term& rep) {
        auto key = std::make_pair(host, class_key(rep));
        auto it = front_cache_.find(key);
        if (it != front_cache_.end()) return it->second;
        FrontInfo fi;
        std::vector<Position> members;
        for (const Position& q : positions(host)) {
            int eq = pair_equal(subterm_at(host, q), rep);
            if (eq == -1) fi.unknown = true;
            if (eq == 1) members.push_back(q);
        }
        fi.front = minimal_positions(members);
        return front_cache_.emplace(key, std::move(fi)).first->second;
    }

    // Premise-free replacements below fictive positions; independent of the
    // worklist, so one pass over the universe covers them.
    void fictive_replacement_pass() {
        for (const Term& host : universe_) {
            for (const Position& p : positions(host)) {
                if (p.is_root()) continue;
                if (pos_state(host, p) != 0) continue;
                std::size_t hole = host.size() - subterm_at(host, p).size();
                for (const Term& filler : universe_) {
                    if (hole + filler.size() > cap_work_) continue;
                    add({replace_at(host, p, filler), host});
                    if (exhausted_) return;
                }
            }
        }
    }

    void fire_composition(const Identity& base, const Term& cls_l, const Term& cls_r,
                          const Identity& repl) {
        if (sub_state(base.lhs, cls_l) != 1 || sub_state(base.rhs, cls_r) != 1) return;
        const FrontInfo& fl = front_info(base.lhs, cls_l);
        const FrontInfo& fr = front_info(base.rhs, cls_r);
        if (fl.unknown || fr.unknown) return;
        add({positional_compose(base.lhs, fl.front, repl.lhs),
             positional_compose(base.rhs, fr.front, repl.rhs)});
    }

    // Runs the whole replacement pool against one base/class-pair choice.
    // Conclusions depend on the class pair only through its equality
    // classes, so each (base, classes) combination fires once.
    void fire_with_pool(const Identity& base, const Term& cls_l, const Term& cls_r) {
        if (sub_state(base.lhs, cls_l) != 1 || sub_state(base.rhs, cls_r) != 1) return;
        if (!pool_fired_.insert({base, class_key(cls_l), class_key(cls_r)}).second) return;
        for (const Identity& repl : repl_pool_) {
            fire_composition(base, cls_l, cls_r, repl);
            if (exhausted_) return;
        }
    }

    void process(const Identity& id) {
        const Term& a = id.lhs;
        const Term& b = id.rhs;

        add({b, a});

        {
            std::vector<Term> rhss(by_lhs_[b].begin(), by_lhs_[b].end());
            for (const Term& c : rhss) add({a, c});
            std::vector<Term> lhss(by_rhs_[a].begin(), by_rhs_[a].end());
            for (const Term& c : lhss) add({c, b});
        }

        std::set<int> var_set;
        for (int v : var_indices(a)) var_set.insert(v);
        for (int v : var_indices(b)) var_set.insert(v);
        std::vector<int> vars(var_set.begin(), var_set.end());

        if (system_allows(sys_, Rule::D4)) {
            for (int x : vars)
                for (const Term& g : generators_) {
                    if (g.is_var() && g.var_index() == x) continue;
                    add({substitute_var(a, x, g), substitute_var(b, x, g)});
                    if (exhausted_) return;
                }
        }
        if (system_allows(sys_, Rule::D4e)) {
            for (int x : vars) {
                int state = var_state(a, x);
                for (const Term& g : generators_) {
                    if (g.is_var() && g.var_index() == x) continue;
                    if (state == 1) add({substitute_var(a, x, g), substitute_var(b, x, g)});
                    if (state == 0) add({substitute_var(a, x, g), b});
                    if (exhausted_) return;
                }
            }
        }

        if (system_allows(sys_, Rule::D5)) {
            auto it = sub_index_.find(a);
            if (it != sub_index_.end())
                for (const auto& [host, p] : it->second) {
                    add({replace_at(host, p, b), host});
                    if (exhausted_) return;
                }
        }
        if (system_allows(sys_, Rule::D5e)) {
            auto it = sub_index_.find(a);
            if (it != sub_index_.end())
                for (const auto& [host, p] : it->second) {
                    if (pos_state(host, p) != 1) continue;
                    add({replace_at(host, p, b), host});
                    if (exhausted_) return;
                }
        }

        if (system_allows(sys_, Rule::SigmaR1)) {
            // As the base: class pairs come from identities stored so far.
            for (const Term& r : subterms(a)) {
                std::vector<Term> mates(by_lhs_[r].begin(), by_lhs_[r].end());
                for (const Term& v : mates) {
                    fire_with_pool(id, r, v);
                    if (exhausted_) return;
                }
            }
            // As the class pair: bases come from identities stored so far.
            {
                std::vector<Identity> bases(by_sub_lhs_[a].begin(), by_sub_lhs_[a].end());
                for (const Identity& base : bases) {
                    fire_with_pool(base, a, b);
                    if (exhausted_) return;
                }
            }
            // As the replacement: reflexive bases over every host carrying
            // the left side.
            if (!(a == b)) {
                auto it = sub_index_.find(a);
                if (it != sub_index_.end()) {
                    std::set<Term> hosts;
                    for (const auto& [host, p] : it->second) hosts.insert(host);
                    for (const Term& host : hosts) {
                        fire_composition({host, host}, a, a, id);
                        if (exhausted_) return;
                    }
                }
            }
        }
    }
};

} // namespace

std::vector<Identity> closure_sample(const Theory& T, System system, const Budget& budget,
                                     int report_vars) {
    if (report_vars < 1 || report_vars > 8)
        throw ValidationError("report_vars must be between 1 and 8");
    ClosureEngine engine(T, system, budget, report_vars);
    engine.run();
    return engine.report();
}

} // namespace termcalc
