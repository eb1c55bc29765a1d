// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "termcalc/position.hpp"
#include "termcalc/proof.hpp"
#include "termcalc/term.hpp"

namespace termcalc {

/// A directed rewrite rule; both orientations of a theory axiom make valid
/// rules for equality reasoning.
struct RewriteRule {
    Term lhs;
    Term rhs;
    bool operator==(const RewriteRule&) const = default;
};

/// Binds the pattern's variables so that the pattern becomes the subject;
/// repeated variables must bind consistently.
std::optional<std::map<int, Term>> match_term(const Term& pattern, const Term& subject);

/// One recorded application: at `pos`, the matched instance of `rule` under
/// `subst` was replaced by the instantiated right side.
struct AppliedRewrite {
    Position pos;
    RewriteRule rule;
    std::map<int, Term> subst;
};

struct NormalizeOutcome {
    Term normal_form;
    std::vector<AppliedRewrite> steps;
    bool complete = true; // false when a budget stopped the rewriting
};

/// Leftmost-innermost rewriting until no rule applies or a budget runs out.
/// Rules are tried in order at each redex.
NormalizeOutcome normalize(const Term& t, const std::vector<RewriteRule>& rules, int max_steps,
                           int max_size);

/// Appends a copy of `sub` to `into`, shifting premise indices; returns the
/// index of the copied final step.
int append_proof(Proof& into, const Proof& sub);

/// Appends steps concluding lhs*subst = rhs*subst from the axiom lhs = rhs:
/// one Axiom step plus a variable-renaming substitution chain that avoids
/// capture. Returns the index of the concluding step.
int append_axiom_instance(Proof& into, const Term& axiom_lhs, const Term& axiom_rhs,
                          const std::map<int, Term>& subst);

/// Given step `premise_index` concluding a = b and a host with the subterm
/// a at `pos`, appends steps concluding host = host[pos <- b]. Returns the
/// index of the concluding step.
int append_replacement(Proof& into, int premise_index, const Term& host, const Position& pos);

/// Appends steps concluding start = end of the rewrite chain; returns the
/// concluding index. The chain must really start at `start`.
int append_rewrite_chain(Proof& into, const Term& start, const std::vector<AppliedRewrite>& steps);

/// Proof of t = s from rewrite chains t ->* m and s ->* m ending in the
/// same term. Throws ValidationError when the chains do not join.
std::shared_ptr<const Proof> join_proof(const Term& t, const std::vector<AppliedRewrite>& t_steps,
                                        const Term& s, const std::vector<AppliedRewrite>& s_steps);

} // namespace termcalc
