// SPDX-License-Identifier: Apache-2.0
#include <string>
#include <vector>

#include "doctest.h"
#include "termcalc/deduction.hpp"
#include "termcalc/errors.hpp"
#include "termcalc/term.hpp"
#include "termcalc/theory.hpp"

using namespace termcalc;

namespace {

const std::string kFixtures = TERMCALC_FIXTURE_DIR;

Theory fixture(const std::string& name) {
    return load_theory(kFixtures + "/" + name);
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("leaf variable helpers") {
    Term t = parse_term("f(f(x2,x1),f(x1,x3))");
    CHECK(leftmost_var_index(t) == 2);
    CHECK(rightmost_var_index(t) == 3);
    CHECK(leaf_var_word(t) == std::vector<int>{2, 1, 1, 3});
    CHECK(leftmost_var_index(Term::var(5)) == 5);
    CHECK_THROWS_AS(leftmost_var_index(parse_term("c()")), ValidationError);
}

TEST_CASE("oracle names round trip") {
    for (OracleKind k : {OracleKind::RB, OracleKind::SG, OracleKind::LZ, OracleKind::RZ,
                         OracleKind::Trivial, OracleKind::Empty, OracleKind::Generic}) {
        CHECK(oracle_from_name(oracle_name(k)) == k);
    }
    CHECK(!oracle_from_name("nonsense").has_value());
}

TEST_CASE("rectangular band equality is the leftmost/rightmost pair") {
    Theory rb = fixture("rb.eq");
    CHECK(rb.oracle == OracleKind::RB);

    // First and last variables agree.
    CHECK(sigma_equal(rb, parse_identity("f(f(x1,x2),x3) = f(x1,x3)")).is_equal());
    CHECK(sigma_equal(rb, parse_identity("f(x1,f(x2,x1)) = x1")).is_equal());
    CHECK(sigma_equal(rb, parse_identity("f(f(x1,x2),f(x3,x4)) = f(x1,x4)")).is_equal());
    // Last variables differ.
    CHECK(sigma_equal(rb, parse_identity("f(x1,x2) = x1")).is_distinct());
    // First variables differ.
    CHECK(sigma_equal(rb, parse_identity("f(x1,x2) = f(x2,x2)")).is_distinct());

    // Equal verdicts carry a derivation that replays; distinct ones carry a
    // model of the axioms that falsifies the identity.
    Verdict eq = sigma_equal(rb, parse_identity("f(f(x1,x2),x3) = f(x1,x3)"));
    REQUIRE(eq.proof != nullptr);
    CHECK(check_proof(rb, *eq.proof).ok());

    Verdict ne = sigma_equal(rb, parse_identity("f(x1,x2) = x1"));
    REQUIRE(ne.witness.has_value());
    CHECK(satisfies_all(ne.witness->algebra, rb.axioms));
    Identity goal = parse_identity("f(x1,x2) = x1");
    CHECK(evaluate(ne.witness->algebra, goal.lhs, ne.witness->env) !=
          evaluate(ne.witness->algebra, goal.rhs, ne.witness->env));
}

TEST_CASE("semigroup equality is the leaf word") {
    Theory sg = fixture("sg.eq");
    CHECK(sigma_equal(sg, parse_identity("f(f(x1,x2),x3) = f(x1,f(x2,x3))")).is_equal());
    CHECK(sigma_equal(sg, parse_identity("f(f(f(x1,x2),x1),x2) = f(f(x1,x2),f(x1,x2))")).is_equal());
    // Same multiset, different order: not semigroup-equal.
    CHECK(sigma_equal(sg, parse_identity("f(x1,x2) = f(x2,x1)")).is_distinct());
    // Different lengths with equal ends: not semigroup-equal.
    CHECK(sigma_equal(sg, parse_identity("f(f(x1,x1),x2) = f(x1,x2)")).is_distinct());
}

TEST_CASE("projection varieties") {
    Theory lz = fixture("lz.eq");
    CHECK(sigma_equal(lz, parse_identity("f(x1,x2) = x1")).is_equal());
    CHECK(sigma_equal(lz, parse_identity("f(f(x1,x2),x3) = f(x1,x4)")).is_equal());
    CHECK(sigma_equal(lz, parse_identity("f(x1,x2) = x2")).is_distinct());

    Theory rz = fixture("rz.eq");
    CHECK(sigma_equal(rz, parse_identity("f(x1,x2) = x2")).is_equal());
    CHECK(sigma_equal(rz, parse_identity("f(x1,f(x2,x3)) = f(x4,x3)")).is_equal());
    CHECK(sigma_equal(rz, parse_identity("f(x1,x2) = x1")).is_distinct());
}

TEST_CASE("trivial and empty theories") {
    Theory trivial = fixture("trivial.eq");
    CHECK(sigma_equal(trivial, parse_identity("f(x1,x2) = x3")).is_equal());
    CHECK(sigma_equal(trivial, parse_identity("x1 = x2")).is_equal());

    Theory empty = fixture("empty.eq");
    CHECK(sigma_equal(empty, parse_identity("f(x1,x2) = f(x1,x2)")).is_equal());
    CHECK(sigma_equal(empty, parse_identity("f(x1,x2) = f(x2,x1)")).is_distinct());
    CHECK(sigma_equal(empty, parse_identity("f(x1,x1) = x1")).is_distinct());
}

TEST_CASE("exact decision and normal forms agree with the verdicts") {
    Theory rb = fixture("rb.eq");
    Theory sg = fixture("sg.eq");

    CHECK(oracle_equal_exact(rb, parse_term("f(f(x1,x2),x3)"), parse_term("f(x1,x3)")));
    CHECK(!oracle_equal_exact(rb, parse_term("f(x1,x2)"), parse_term("f(x2,x1)")));

    // Normal forms coincide exactly for equal terms.
    Term a = parse_term("f(f(x1,x2),f(x2,x3))");
    Term b = parse_term("f(x1,x3)");
    auto na = oracle_normal_form(rb, a);
    auto nb = oracle_normal_form(rb, b);
    REQUIRE(na.has_value());
    REQUIRE(nb.has_value());
    CHECK(*na == *nb);

    auto sa = oracle_normal_form(sg, parse_term("f(f(x1,x2),x3)"));
    auto sb = oracle_normal_form(sg, parse_term("f(x1,f(x2,x3))"));
    REQUIRE(sa.has_value());
    CHECK(*sa == *sb);
    CHECK(*sa != *oracle_normal_form(sg, parse_term("f(x1,x2)")));

    // The generic oracle has no canonical form and no exact decision.
    Theory la = fixture("la.eq");
    CHECK(!oracle_normal_form(la, a).has_value());
    CHECK_THROWS_AS(oracle_equal_exact(la, a, b), ValidationError);
}

TEST_CASE("generic oracle proves by hint rewriting") {
    Theory la = fixture("la.eq");
    Verdict v = sigma_equal(la, parse_identity("f(f(x1,x2),x1) = f(x1,x1)"));
    CHECK(v.is_equal());
    REQUIRE(v.proof != nullptr);
    CHECK(check_proof(la, *v.proof).ok());

    // An instance of the axiom under substitution.
    CHECK(sigma_equal(la, parse_identity("f(f(x3,f(x1,x1)),x3) = f(x3,x3)")).is_equal());
    // Reflexivity always holds.
    CHECK(sigma_equal(la, parse_identity("x2 = x2")).is_equal());
}

TEST_CASE("generic oracle refutes with stored witnesses") {
    Theory la = fixture("la.eq");
    Verdict v = sigma_equal(la, parse_identity("f(x1,f(x2,x1)) = f(x1,x1)"));
    CHECK(v.is_distinct());
    REQUIRE(v.witness.has_value());
    CHECK(satisfies_all(v.witness->algebra, la.axioms));

    Theory boolean = fixture("boolean.eq");
    CHECK(sigma_equal(boolean, parse_identity("and(x1,x2) = or(x1,x2)")).is_distinct());
    CHECK(sigma_equal(boolean, parse_identity("and(x1,or(x2,not(x2))) = x1")).is_equal());
}

TEST_CASE("generic oracle reports unknown once its budget is spent") {
    Theory la = fixture("la.eq");
    // Both sides rewrite from f(f(f(x1,x2),x1),f(x1,x2)) but are distinct
    // normal forms of the hint system, so the identity holds in the variety
    // yet joining fails; with the step budget crushed, the forward search
    // cannot find it either, and no model refutes a valid identity.
    la.budget.max_model_size = 1;
    la.budget.max_steps = 1;
    Verdict v = sigma_equal(la, parse_identity("f(f(x1,x2),f(x1,x2)) = f(f(x1,x1),f(x1,x2))"));
    CHECK(v.is_unknown());
    CHECK(!v.note.empty());

    // With the default budget the forward search does derive it.
    Theory fresh = fixture("la.eq");
    CHECK(sigma_equal(fresh, parse_identity("f(f(x1,x2),f(x1,x2)) = f(f(x1,x1),f(x1,x2))"))
              .is_equal());
}

TEST_CASE("quick effort skips the expensive phases but stays sound") {
    Theory la = fixture("la.eq");
    // Hint rewriting still answers at quick effort.
    CHECK(sigma_equal(la, parse_identity("f(f(x1,x2),x1) = f(x1,x1)"), Effort::Quick).is_equal());
    // Stored witnesses still refute at quick effort.
    CHECK(sigma_equal(la, parse_identity("f(x1,f(x2,x1)) = f(x1,x1)"), Effort::Quick).is_distinct());
    // Exact oracles answer fully regardless of effort.
    Theory rb = fixture("rb.eq");
    CHECK(sigma_equal(rb, parse_identity("f(x1,f(x2,x1)) = x1"), Effort::Quick).is_equal());
}

TEST_CASE("theory text format") {
    Theory t = theory_from_text("signature: f/2\n"
                                "oracle: rb\n"
                                "# a comment line\n"
                                "axiom: f(x1,x1) = x1\n"
                                "axiom: f(f(x1,x2),x3) = f(x1,x3)\n"
                                "axiom: f(x1,f(x2,x3)) = f(x1,x3)\n"
                                "budget: term_size=9 steps=400 model_size=2\n",
                                ".", "bands");
    CHECK(t.name == "bands");
    CHECK(t.oracle == OracleKind::RB);
    CHECK(t.axioms.size() == 3);
    CHECK(t.budget.max_term_size == 9);
    CHECK(t.budget.max_steps == 400);
    CHECK(t.budget.max_model_size == 2);
}

TEST_CASE("theory validation rejects inconsistent declarations") {
    // The axioms must come after the signature.
    CHECK_THROWS_AS(theory_from_text("axiom: f(x1,x1) = x1\nsignature: f/2\n"), ParseError);
    // Unknown oracle name.
    CHECK_THROWS_AS(theory_from_text("signature: f/2\noracle: frobnicate\n"), ParseError);
    // The rb oracle requires its defining axioms.
    CHECK_THROWS_AS(theory_from_text("signature: f/2\noracle: rb\naxiom: f(x1,x1) = x1\n"),
                    ValidationError);
    // Exact oracles forbid hints.
    CHECK_THROWS_AS(theory_from_text("signature: f/2\noracle: lz\n"
                                     "axiom: f(x1,x2) = x1\nhint: f(x1,x2) -> x1\n"),
                    ValidationError);
    // A hint must orient a stored axiom.
    CHECK_THROWS_AS(theory_from_text("signature: f/2\noracle: generic\n"
                                     "axiom: f(x1,x1) = x1\nhint: f(x1,x2) -> x1\n"),
                    ValidationError);
    // Hint right sides may not introduce variables.
    CHECK_THROWS_AS(theory_from_text("signature: f/2\noracle: generic\n"
                                     "axiom: x1 = f(x1,x2)\nhint: x1 -> f(x1,x2)\n"),
                    ValidationError);
    // The trivial oracle needs a collapsing axiom.
    CHECK_THROWS_AS(theory_from_text("signature: f/2\noracle: trivial\n"), ValidationError);
    // The empty oracle forbids axioms.
    CHECK_THROWS_AS(theory_from_text("signature: f/2\noracle: empty\naxiom: f(x1,x1) = x1\n"),
                    ValidationError);
}

TEST_CASE("fixture theories load with their stated shapes") {
    Theory rb = fixture("rb.eq");
    CHECK(rb.axioms.size() == 3);
    Theory sg = fixture("sg.eq");
    CHECK(sg.axioms.size() == 1);
    Theory la = fixture("la.eq");
    CHECK(la.oracle == OracleKind::Generic);
    CHECK(la.hints.size() == 1);
    CHECK(la.witness_algebras.size() == 1);
    Theory boolean = fixture("boolean.eq");
    CHECK(boolean.sig.size() == 3);
    CHECK(boolean.axioms.size() == 6);
    CHECK(boolean.hints.size() == 4);
    Theory rbg = fixture("rb_generic.eq");
    CHECK(rbg.oracle == OracleKind::Generic);
    CHECK(rbg.axioms.size() == 3);
    CHECK(rbg.witness_algebras.size() == 2);
    Theory trivial = fixture("trivial.eq");
    CHECK(trivial.oracle == OracleKind::Trivial);
    Theory empty = fixture("empty.eq");
    CHECK(empty.axioms.empty());
}

TEST_CASE("refutation search finds the smallest countermodel") {
    Signature sig = Signature::parse("f/2");
    std::vector<Identity> assoc = {parse_identity("f(f(x1,x2),x3) = f(x1,f(x2,x3))")};

    RefutationSearch r = search_refutation(sig, assoc, parse_identity("f(x1,x2) = f(x2,x1)"), 2);
    CHECK(r.complete);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->algebra.carrier == 2);
    CHECK(satisfies_all(r.witness->algebra, assoc));

    // A consequence of the axioms has no countermodel at any size.
    RefutationSearch ok = search_refutation(sig, assoc,
                                            parse_identity("f(f(x1,x2),x3) = f(x1,f(x2,x3))"), 2);
    CHECK(ok.complete);
    CHECK(!ok.witness.has_value());

    // A tiny table cap skips sizes and reports incompleteness.
    RefutationSearch capped = search_refutation(sig, assoc,
                                                parse_identity("f(x1,x2) = f(x2,x1)"), 3, 4);
    CHECK(!capped.complete);
    CHECK(!capped.note.empty());
}

} // TEST_SUITE
