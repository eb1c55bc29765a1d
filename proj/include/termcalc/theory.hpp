// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "termcalc/algebra.hpp"
#include "termcalc/proof.hpp"
#include "termcalc/signature.hpp"
#include "termcalc/term.hpp"

namespace termcalc {

/// Decision procedure backing a theory's equality-in-the-variety queries.
/// The first five have complete, terminating procedures; `Generic` answers
/// from bounded proof search and model refutation and may return Unknown.
enum class OracleKind {
    RB,      // rectangular bands: leftmost and rightmost variables agree
    SG,      // semigroups: flattened variable words agree
    LZ,      // left-zero bands: leftmost variables agree
    RZ,      // right-zero bands: rightmost variables agree
    Trivial, // the one-element variety: everything is equal
    Empty,   // no axioms: only syntactically equal terms are equal
    Generic, // bounded search over the stored axioms
};

std::string oracle_name(OracleKind k);
std::optional<OracleKind> oracle_from_name(const std::string& name);

/// Resource limits for search-based answers.
struct Budget {
    int max_term_size = 12;  // node-count cap on terms handled in searches
    int max_steps = 5000;    // proof-search expansion cap
    int max_model_size = 3;  // largest carrier tried for refutation

    bool operator==(const Budget&) const = default;
};

/// A refuting interpretation: an algebra satisfying the theory's axioms plus
/// an assignment where the two sides of the queried identity differ.
struct Witness {
    FiniteAlgebra algebra;
    Assignment env;
};

enum class VerdictKind { Equal, Distinct, Unknown };

/// Answer to "does the identity hold in the variety?". Equal carries a
/// derivation from the axioms; Distinct carries a witness.
struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    std::shared_ptr<const Proof> proof; // set when kind == Equal
    std::optional<Witness> witness;     // set when kind == Distinct
    std::string note;

    bool is_equal() const { return kind == VerdictKind::Equal; }
    bool is_distinct() const { return kind == VerdictKind::Distinct; }
    bool is_unknown() const { return kind == VerdictKind::Unknown; }

    static Verdict equal(std::shared_ptr<const Proof> proof, std::string note = "");
    static Verdict distinct(Witness w, std::string note = "");
    static Verdict unknown(std::string note);
};

/// How much work a query may do. Quick skips forward proof search and model
/// enumeration, so it can be used inside inner loops; it is still sound,
/// just more often Unknown on generic theories.
enum class Effort { Quick, Full };

/// A named equational theory: signature, axioms, and the oracle that
/// decides (or approximates) its equational consequences, plus optional
/// refutation witnesses and rewrite hints for the generic oracle.
struct Theory {
    std::string name;
    Signature sig;
    OracleKind oracle = OracleKind::Generic;
    std::vector<Identity> axioms;
    std::vector<FiniteAlgebra> witness_algebras; // generic only; satisfy all axioms
    std::vector<Identity> hints;                 // generic only; oriented axioms
    Budget budget;
};

/// Text format, one directive per line ('#' comments):
///
///     signature: f/2 g/1
///     oracle: generic
///     axiom: f(x1,x2) = f(x2,x1)
///     hint: f(x1,x1) -> x1            (generic; must orient an axiom)
///     witness: algebras/two.json      (generic; relative to the file)
///     budget: term_size=12 steps=5000 model_size=3
///
/// The signature line must come before axioms and hints.
Theory theory_from_text(const std::string& text, const std::string& base_dir = ".",
                        const std::string& default_name = "theory");
Theory load_theory(const std::string& path);

/// Does `lhs = rhs` hold in every algebra of the theory's variety? Exact
/// oracles always answer Equal or Distinct; the generic oracle may answer
/// Unknown once its budget is spent.
Verdict sigma_equal(const Theory& T, const Term& lhs, const Term& rhs, Effort effort = Effort::Full);
Verdict sigma_equal(const Theory& T, const Identity& id, Effort effort = Effort::Full);

/// Leftmost / rightmost variable of t in leaf order; throws ValidationError
/// on terms without variables.
int leftmost_var_index(const Term& t);
int rightmost_var_index(const Term& t);
/// All leaf variables of t, left to right.
std::vector<int> leaf_var_word(const Term& t);

/// Complete equality decision for the five exact oracles; throws
/// ValidationError for the generic oracle.
bool oracle_equal_exact(const Theory& T, const Term& lhs, const Term& rhs);

/// Canonical representative of t's equality class for the exact oracles
/// (two terms are equal in the variety exactly when their representatives
/// coincide); nullopt for the generic oracle.
std::optional<Term> oracle_normal_form(const Theory& T, const Term& t);

/// Exhaustive search for a model of `axioms` (carrier 1..max_size) that
/// falsifies `goal`. Sizes whose candidate-table count would exceed
/// table_cap are skipped and reported in the note; `complete` is true only
/// when every size was fully searched.
struct RefutationSearch {
    std::optional<Witness> witness;
    bool complete = false;
    std::string note;
};
RefutationSearch search_refutation(const Signature& sig, const std::vector<Identity>& axioms,
                                   const Identity& goal, int max_size,
                                   long long table_cap = 500000);

} // namespace termcalc
