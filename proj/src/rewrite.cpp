// SPDX-License-Identifier: Apache-2.0
#include "termcalc/rewrite.hpp"

#include <algorithm>

#include "termcalc/compose.hpp"
#include "termcalc/errors.hpp"

namespace termcalc {

namespace {

bool match_into(const Term& pattern, const Term& subject, std::map<int, Term>& bind) {
    if (pattern.is_var()) {
        auto [it, inserted] = bind.emplace(pattern.var_index(), subject);
        return inserted || it->second == subject;
    }
    if (subject.is_var() || pattern.symbol() != subject.symbol() ||
        pattern.children().size() != subject.children().size())
        return false;
    for (std::size_t i = 0; i < pattern.children().size(); ++i)
        if (!match_into(pattern.children()[i], subject.children()[i], bind)) return false;
    return true;
}

/// Leftmost-innermost redex: children first, then the node itself.
std::optional<AppliedRewrite> find_redex(const Term& t, const std::vector<RewriteRule>& rules,
                                         std::vector<int>& path) {
    if (t.is_app()) {
        int i = 0;
        for (const Term& c : t.children()) {
            ++i;
            path.push_back(i);
            if (auto hit = find_redex(c, rules, path)) return hit;
            path.pop_back();
        }
    }
    for (const RewriteRule& rule : rules) {
        std::map<int, Term> bind;
        if (match_into(rule.lhs, t, bind))
            return AppliedRewrite{path.empty() ? Position::root() : Position(path), rule,
                                  std::move(bind)};
    }
    return std::nullopt;
}

} // namespace

std::optional<std::map<int, Term>> match_term(const Term& pattern, const Term& subject) {
    std::map<int, Term> bind;
    if (!match_into(pattern, subject, bind)) return std::nullopt;
    return bind;
}

NormalizeOutcome normalize(const Term& t, const std::vector<RewriteRule>& rules, int max_steps,
                           int max_size) {
    NormalizeOutcome out{t, {}, true};
    for (int step = 0; step < max_steps; ++step) {
        std::vector<int> path;
        auto hit = find_redex(out.normal_form, rules, path);
        if (!hit) return out;
        Term replacement = substitute_vars(hit->rule.rhs, hit->subst);
        Term next = replace_at(out.normal_form, hit->pos, replacement);
        if (next.size() > max_size) {
            out.complete = false;
            return out;
        }
        out.steps.push_back(std::move(*hit));
        out.normal_form = std::move(next);
    }
    // One more probe: if a redex still exists, the budget cut us short.
    std::vector<int> path;
    out.complete = !find_redex(out.normal_form, rules, path).has_value();
    return out;
}

int append_proof(Proof& into, const Proof& sub) {
    if (sub.steps.empty()) throw ValidationError("cannot append an empty proof");
    int offset = static_cast<int>(into.steps.size());
    for (const ProofStep& step : sub.steps) {
        ProofStep copy = step;
        for (int& p : copy.premises) p += offset;
        into.steps.push_back(std::move(copy));
    }
    return static_cast<int>(into.steps.size()) - 1;
}

int append_axiom_instance(Proof& into, const Term& axiom_lhs, const Term& axiom_rhs,
                          const std::map<int, Term>& subst) {
    into.steps.push_back({Identity{axiom_lhs, axiom_rhs}, Rule::Axiom, {}, {}, {}, {}, {}});
    int last = static_cast<int>(into.steps.size()) - 1;

    // Variables actually needing substitution.
    std::vector<int> vars;
    for (const auto& [v, image] : subst)
        if (!(image.is_var() && image.var_index() == v)) vars.push_back(v);
    if (vars.empty()) return last;

    // Rename every substituted variable to a fresh scratch variable first so
    // that images mentioning the original names cannot be captured.
    std::vector<Term> around = {axiom_lhs, axiom_rhs};
    for (const auto& [v, image] : subst) around.push_back(image);
    int scratch = fresh_var_index(around);

    Identity current{axiom_lhs, axiom_rhs};
    for (std::size_t i = 0; i < vars.size(); ++i) {
        Term z = Term::var(scratch + static_cast<int>(i));
        current = Identity{substitute_var(current.lhs, vars[i], z),
                           substitute_var(current.rhs, vars[i], z)};
        into.steps.push_back({current, Rule::D4, {last}, vars[i], z, {}, {}});
        last = static_cast<int>(into.steps.size()) - 1;
    }
    for (std::size_t i = 0; i < vars.size(); ++i) {
        int zi = scratch + static_cast<int>(i);
        const Term& image = subst.at(vars[i]);
        current = Identity{substitute_var(current.lhs, zi, image),
                           substitute_var(current.rhs, zi, image)};
        into.steps.push_back({current, Rule::D4, {last}, zi, image, {}, {}});
        last = static_cast<int>(into.steps.size()) - 1;
    }
    return last;
}

int append_replacement(Proof& into, int premise_index, const Term& host, const Position& pos) {
    const Identity premise = into.steps.at(premise_index).conclusion;
    if (!(subterm_at(host, pos) == premise.lhs))
        throw ValidationError("replacement host does not carry the premise's left side");
    if (pos.is_root()) return premise_index;
    Term rebuilt = replace_at(host, pos, premise.rhs);
    into.steps.push_back({Identity{rebuilt, host}, Rule::D5, {premise_index}, {}, {}, pos, {}});
    int d5 = static_cast<int>(into.steps.size()) - 1;
    into.steps.push_back({Identity{host, rebuilt}, Rule::D2, {d5}, {}, {}, {}, {}});
    return static_cast<int>(into.steps.size()) - 1;
}

int append_rewrite_chain(Proof& into, const Term& start, const std::vector<AppliedRewrite>& steps) {
    if (steps.empty()) {
        into.steps.push_back({Identity{start, start}, Rule::D1, {}, {}, {}, {}, {}});
        return static_cast<int>(into.steps.size()) - 1;
    }
    Term current = start;
    int whole = -1; // concludes start = current
    for (const AppliedRewrite& ar : steps) {
        int inst = append_axiom_instance(into, ar.rule.lhs, ar.rule.rhs, ar.subst);
        int edge = append_replacement(into, inst, current, ar.pos);
        Term next = into.steps[edge].conclusion.rhs;
        if (whole < 0) {
            whole = edge;
        } else {
            into.steps.push_back(
                {Identity{start, next}, Rule::D3, {whole, edge}, {}, {}, {}, {}});
            whole = static_cast<int>(into.steps.size()) - 1;
        }
        current = next;
    }
    return whole;
}

std::shared_ptr<const Proof> join_proof(const Term& t, const std::vector<AppliedRewrite>& t_steps,
                                        const Term& s, const std::vector<AppliedRewrite>& s_steps) {
    auto proof = std::make_shared<Proof>();
    if (t == s && t_steps.empty() && s_steps.empty()) {
        proof->steps.push_back({Identity{t, s}, Rule::D1, {}, {}, {}, {}, {}});
        return proof;
    }
    int left = append_rewrite_chain(*proof, t, t_steps);  // t = m
    if (s_steps.empty()) {
        // m is s already; the left chain alone concludes t = s.
        if (!(proof->steps[left].conclusion.rhs == s))
            throw ValidationError("rewrite chains do not join in a common term");
        return proof;
    }
    if (t_steps.empty()) {
        // t is m already; flipping the right chain concludes t = s.
        proof->steps.pop_back(); // drop the placeholder t = t reflexivity
        int right = append_rewrite_chain(*proof, s, s_steps); // s = m
        if (!(proof->steps[right].conclusion.rhs == t))
            throw ValidationError("rewrite chains do not join in a common term");
        proof->steps.push_back({Identity{t, s}, Rule::D2, {right}, {}, {}, {}, {}});
        return proof;
    }
    int right = append_rewrite_chain(*proof, s, s_steps);  // s = m
    const Term& mt = proof->steps[left].conclusion.rhs;
    const Term& ms = proof->steps[right].conclusion.rhs;
    if (!(mt == ms)) throw ValidationError("rewrite chains do not join in a common term");
    proof->steps.push_back({Identity{ms, s}, Rule::D2, {right}, {}, {}, {}, {}});
    int flipped = static_cast<int>(proof->steps.size()) - 1;
    proof->steps.push_back({Identity{t, s}, Rule::D3, {left, flipped}, {}, {}, {}, {}});
    return proof;
}

} // namespace termcalc
