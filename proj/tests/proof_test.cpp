// SPDX-License-Identifier: Apache-2.0
#include <string>

#include "doctest.h"
#include "termcalc/deduction.hpp"
#include "termcalc/errors.hpp"
#include "termcalc/proof.hpp"
#include "termcalc/term.hpp"
#include "termcalc/theory.hpp"

using namespace termcalc;

namespace {

const std::string kFixtures = TERMCALC_FIXTURE_DIR;

Theory fixture(const std::string& name) {
    return load_theory(kFixtures + "/" + name);
}

} // namespace

TEST_SUITE("proof") {

TEST_CASE("step text round trips through parse and str") {
    const std::string text = "1: f(f(x1,x2),x3) = f(x1,x3) ; Axiom\n"
                             "2: f(f(x1,x2),x2) = f(x1,x2) ; D4 premises=1 var=x3 term=x2\n"
                             "3: f(x1,x2) = f(f(x1,x2),x2) ; D2 premises=2\n"
                             "4: f(f(x1,x2),x3) = f(f(f(x1,x2),x2),x3) ; D5 premises=2 pos=1\n"
                             "5: x1 = x1 ; D1\n"
                             "6: f(x3,f(x2,x1)) = f(x3,x1) ; H1 premises=1 hyper=f:f(x2,x1)\n";
    Proof p = Proof::parse(text);
    REQUIRE(p.steps.size() == 6);
    CHECK(p.steps[0].rule == Rule::Axiom);
    CHECK(p.steps[1].premises == std::vector<int>{0}); // premises are 0-based in memory
    CHECK(p.steps[1].var == 3);
    CHECK(p.steps[1].term == Term::var(2));
    CHECK(p.steps[3].pos == Position::parse("1"));
    CHECK(p.steps[5].hyper_text == "f:f(x2,x1)");
    CHECK(p.conclusion() == parse_identity("f(x3,f(x2,x1)) = f(x3,x1)"));

    // Rendering and reparsing reproduces the proof exactly.
    CHECK(Proof::parse(p.str()) == p);
}

TEST_CASE("comments and blank lines are skipped") {
    Proof p = Proof::parse("# a header comment\n"
                           "\n"
                           "1: x1 = x1 ; D1\n"
                           "   # indented comment\n"
                           "2: x1 = x1 ; D3 premises=1,1\n");
    CHECK(p.steps.size() == 2);
    CHECK(p.steps[1].premises == std::vector<int>{0, 0});
}

TEST_CASE("parse rejects malformed scripts") {
    // Steps must be numbered 1..n in order.
    CHECK_THROWS_AS(Proof::parse("2: x1 = x1 ; D1\n"), ParseError);
    CHECK_THROWS_AS(Proof::parse("1: x1 = x1 ; D1\n3: x2 = x2 ; D1\n"), ParseError);
    // Unknown rule names.
    CHECK_THROWS_AS(Proof::parse("1: x1 = x1 ; D9\n"), ParseError);
    // Missing rule separator.
    CHECK_THROWS_AS(Proof::parse("1: x1 = x1\n"), ParseError);
    // Unparsable conclusion.
    CHECK_THROWS_AS(Proof::parse("1: x1 = ; D1\n"), ParseError);
    // Unknown key=value token.
    CHECK_THROWS_AS(Proof::parse("1: x1 = x1 ; D1 frob=3\n"), ParseError);
    // Premises must refer to earlier steps already at parse time.
    CHECK_THROWS_AS(Proof::parse("1: x1 = x1 ; D3 premises=2,2\n"), ParseError);
    CHECK_THROWS_AS(Proof::parse("1: x1 = x1 ; D2 premises=1\n"), ParseError);
    CHECK_THROWS_AS(Proof::parse("1: x1 = x1 ; D2 premises=0\n"), ParseError);
}

TEST_CASE("rule names round trip") {
    for (Rule r : {Rule::Axiom, Rule::D1, Rule::D2, Rule::D3, Rule::D4, Rule::D4e, Rule::D4f,
                   Rule::D5, Rule::D5e, Rule::D5f, Rule::SigmaR1, Rule::H1}) {
        CHECK(rule_from_name(rule_name(r)) == r);
    }
    CHECK(!rule_from_name("D6").has_value());
}

TEST_CASE("a valid band derivation replays step by step") {
    Theory rb = fixture("rb.eq");
    Proof p = Proof::parse(
        "1: f(f(x1,x2),x3) = f(x1,x3) ; Axiom\n"
        "2: f(f(x1,x2),x2) = f(x1,x2) ; D4 premises=1 var=x3 term=x2\n"
        "3: f(x1,x2) = f(f(x1,x2),x2) ; D2 premises=2\n"
        "4: f(f(x1,x2),x3) = f(f(f(x1,x2),x2),x3) ; D5 premises=2 pos=1\n"
        "5: f(x1,x2) = f(x1,x2) ; D1\n"
        "6: f(x1,x2) = f(f(f(x1,x2),x2),x2) ; D3 premises=3,4\n");
    // Step 6 needs premise 4 to start where premise 3 ends; adjust: step 4's
    // conclusion starts at f(f(x1,x2),x3), not at step 3's right side, so the
    // check must flag exactly that step.
    CheckResult bad = check_proof(rb, p);
    CHECK(bad.status == CheckResult::Status::Invalid);
    CHECK(bad.failed_step == 5);

    Proof good = Proof::parse(
        "1: f(f(x1,x2),x3) = f(x1,x3) ; Axiom\n"
        "2: f(f(x1,x2),x2) = f(x1,x2) ; D4 premises=1 var=x3 term=x2\n"
        "3: f(x1,x2) = f(f(x1,x2),x2) ; D2 premises=2\n"
        "4: f(f(x1,x2),x2) = f(f(x1,x2),x2) ; D1\n"
        "5: f(x1,x2) = f(f(x1,x2),x2) ; D3 premises=3,4\n");
    CheckResult ok = check_proof(rb, good);
    CHECK(ok.status == CheckResult::Status::Valid);
    CHECK(ok.failed_step == -1);
    CHECK(ok.ok());

    // Goal pinning accepts the final conclusion and nothing else.
    CHECK(check_proof(rb, good, parse_identity("f(x1,x2) = f(f(x1,x2),x2)")).ok());
    CheckResult wrong = check_proof(rb, good, parse_identity("f(x1,x2) = x1"));
    CHECK(wrong.status == CheckResult::Status::Invalid);
    // A mirrored goal earns the symmetry hint.
    CheckResult mirrored = check_proof(rb, good, parse_identity("f(f(x1,x2),x2) = f(x1,x2)"));
    CHECK(mirrored.status == CheckResult::Status::Invalid);
    CHECK(mirrored.reason.find("mirror") != std::string::npos);
}

TEST_CASE("structural defects are reported with their step") {
    Theory rb = fixture("rb.eq");

    auto expect_invalid_at = [&rb](const std::string& text, int step) {
        CheckResult r = check_proof(rb, Proof::parse(text));
        CHECK(r.status == CheckResult::Status::Invalid);
        CHECK(r.failed_step == step);
        CHECK(!r.reason.empty());
    };

    // Not a stored axiom.
    expect_invalid_at("1: f(x1,x2) = x1 ; Axiom\n", 0);
    // Reflexivity with different sides.
    expect_invalid_at("1: x1 = x2 ; D1\n", 0);
    // Symmetry that does not mirror.
    expect_invalid_at("1: f(x1,x1) = x1 ; Axiom\n2: f(x1,x1) = x1 ; D2 premises=1\n", 1);
    // Transitivity without a common middle term.
    expect_invalid_at("1: f(x1,x1) = x1 ; Axiom\n2: f(x2,x2) = x2 ; D4 premises=1 var=x1 term=x2\n"
                      "3: f(x1,x1) = x2 ; D3 premises=1,2\n",
                      2);
    // Substitution missing its parameters.
    expect_invalid_at("1: f(x1,x1) = x1 ; Axiom\n2: f(x2,x2) = x2 ; D4 premises=1\n", 1);
    // Replacement at a position the host does not have.
    expect_invalid_at("1: f(x1,x1) = x1 ; Axiom\n"
                      "2: f(x1,x1) = f(f(x1,x1),x2) ; D5 premises=1 pos=3\n",
                      1);
    // The host must carry the premise's left side at the position.
    expect_invalid_at("1: f(x1,x1) = x1 ; Axiom\n"
                      "2: f(x1,x2) = f(f(x2,x1),x2) ; D5 premises=1 pos=1\n",
                      1);

    // An empty proof is rejected outright.
    CheckResult r = check_proof(rb, Proof{});
    CHECK(r.status == CheckResult::Status::Invalid);

    // A hand-built step with an out-of-range premise index is caught when
    // replayed, even though the text form could never produce it.
    Proof forward;
    forward.steps.push_back(
        {parse_identity("x1 = x1"), Rule::D2, {4}, {}, {}, {}, {}});
    CheckResult fwd = check_proof(rb, forward);
    CHECK(fwd.status == CheckResult::Status::Invalid);
    CHECK(fwd.failed_step == 0);
}

TEST_CASE("refined substitution rules check their side conditions") {
    Theory rb = fixture("rb.eq");

    // x2 is fictive in f(f(x1,x2),x3), so the left side may move alone.
    Proof fic = Proof::parse("1: f(f(x1,x2),x3) = f(x1,x3) ; Axiom\n"
                             "2: f(f(x1,x4),x3) = f(x1,x3) ; D4f premises=1 var=x2 term=x4\n");
    CHECK(check_proof(rb, fic).ok());

    // The same step on the essential variable x1 must be rejected.
    Proof ess_as_fic =
        Proof::parse("1: f(f(x1,x2),x3) = f(x1,x3) ; Axiom\n"
                     "2: f(f(x4,x2),x3) = f(x1,x3) ; D4f premises=1 var=x1 term=x4\n");
    CheckResult r = check_proof(rb, ess_as_fic);
    CHECK(r.status == CheckResult::Status::Invalid);
    CHECK(r.failed_step == 1);

    // D4e substitutes on both sides and insists the variable is essential.
    Proof ess = Proof::parse("1: f(f(x1,x2),x3) = f(x1,x3) ; Axiom\n"
                             "2: f(f(x4,x2),x3) = f(x4,x3) ; D4e premises=1 var=x1 term=x4\n");
    CHECK(check_proof(rb, ess).ok());

    Proof fic_as_ess =
        Proof::parse("1: f(f(x1,x2),x3) = f(x1,x3) ; Axiom\n"
                     "2: f(f(x1,x4),x3) = f(x1,x3) ; D4e premises=1 var=x2 term=x4\n");
    CHECK(check_proof(rb, fic_as_ess).status == CheckResult::Status::Invalid);
}

TEST_CASE("refined replacement rules check their side conditions") {
    Theory rb = fixture("rb.eq");

    // Position 12 of the host f(f(x1,x2),x3) is fictive: any subterm may sit
    // there without a premise.
    Proof fic = Proof::parse("1: f(f(x1,f(x3,x3)),x3) = f(f(x1,x2),x3) ; D5f pos=12\n");
    CHECK(check_proof(rb, fic).ok());

    // The sides must agree away from the replaced position.
    Proof drift = Proof::parse("1: f(f(x2,f(x3,x3)),x3) = f(f(x1,x2),x3) ; D5f pos=12\n");
    CHECK(check_proof(rb, drift).status == CheckResult::Status::Invalid);

    // An essential position cannot be rewritten without a premise.
    Proof ess = Proof::parse("1: f(f(x4,x2),x3) = f(f(x1,x2),x3) ; D5f pos=11\n");
    CHECK(check_proof(rb, ess).status == CheckResult::Status::Invalid);

    // D5e demands an essential position and a real premise.
    Proof d5e = Proof::parse("1: f(x1,x1) = x1 ; Axiom\n"
                             "2: f(x1,x2) = f(f(x1,x1),x2) ; D5e premises=1 pos=1\n");
    CHECK(check_proof(rb, d5e).ok());

    Proof d5e_fictive =
        Proof::parse("1: f(x1,x1) = x1 ; Axiom\n"
                     "2: f(f(x1,x1),x2) = f(f(x1,f(x1,x1)),x2) ; D5e premises=1 pos=12\n");
    CHECK(check_proof(rb, d5e_fictive).status == CheckResult::Status::Invalid);
}

TEST_CASE("hypersubstitution steps rewrite both sides") {
    Theory rb = fixture("rb.eq");
    Proof p = Proof::parse("1: f(f(x1,x2),x3) = f(x1,x3) ; Axiom\n"
                           "2: f(x3,f(x2,x1)) = f(x3,x1) ; H1 premises=1 hyper=f:f(x2,x1)\n");
    CHECK(check_proof(rb, p).ok());

    Proof wrong = Proof::parse("1: f(f(x1,x2),x3) = f(x1,x3) ; Axiom\n"
                               "2: f(x3,f(x1,x2)) = f(x3,x1) ; H1 premises=1 hyper=f:f(x2,x1)\n");
    CHECK(check_proof(rb, wrong).status == CheckResult::Status::Invalid);

    Proof bad_hyper = Proof::parse("1: f(f(x1,x2),x3) = f(x1,x3) ; Axiom\n"
                                   "2: f(x3,x1) = f(x3,x1) ; H1 premises=1 hyper=g:x1\n");
    CHECK(check_proof(rb, bad_hyper).status == CheckResult::Status::Invalid);
}

TEST_CASE("systems restrict which rules may appear") {
    CHECK(system_allows(System::D, Rule::D5));
    CHECK(!system_allows(System::D, Rule::D4e));
    CHECK(!system_allows(System::D, Rule::SigmaR1));
    CHECK(!system_allows(System::D, Rule::H1));

    CHECK(system_allows(System::DRefined, Rule::D4e));
    CHECK(system_allows(System::DRefined, Rule::D5f));
    CHECK(!system_allows(System::DRefined, Rule::D4));
    CHECK(!system_allows(System::DRefined, Rule::D5));

    CHECK(system_allows(System::SigmaR, Rule::D4));
    CHECK(system_allows(System::SigmaR, Rule::SigmaR1));
    CHECK(!system_allows(System::SigmaR, Rule::D5));
    CHECK(!system_allows(System::SigmaR, Rule::H1));

    CHECK(system_allows(System::Any, Rule::H1));
    CHECK(system_allows(System::Any, Rule::SigmaR1));

    for (System s : {System::D, System::DRefined, System::SigmaR, System::Any}) {
        CHECK(system_allows(s, Rule::Axiom));
        CHECK(system_allows(s, Rule::D1));
        CHECK(system_allows(s, Rule::D2));
        CHECK(system_allows(s, Rule::D3));
        CHECK(system_from_name(system_name(s)) == s);
    }

    // A structurally fine D5 step is rejected when the system forbids it.
    Theory rb = fixture("rb.eq");
    Proof p = Proof::parse("1: f(x1,x1) = x1 ; Axiom\n"
                           "2: f(x1,x2) = f(f(x1,x1),x2) ; D5 premises=1 pos=1\n");
    CHECK(check_proof(rb, p, std::nullopt, System::Any).ok());
    CheckResult r = check_proof(rb, p, std::nullopt, System::SigmaR);
    CHECK(r.status == CheckResult::Status::Invalid);
    CHECK(r.failed_step == 1);
}

TEST_CASE("class replacement steps recompute the composition") {
    Theory rb = fixture("rb.eq");
    // Step 4 replaces the class of x1 in a reflexive base by f(x1,x1)/x1;
    // step 6 then replaces the class of f(x1,x1) on the left and of x1 on
    // the right by the renamed copies f(x3,x3)/x3.  Everything stays inside
    // the class-replacement rule set (no subterm-replacement steps).
    Proof good = Proof::parse(
        "1: f(x1,x1) = x1 ; Axiom\n"
        "2: f(x1,x2) = f(x1,x2) ; D1\n"
        "3: x1 = x1 ; D1\n"
        "4: f(f(x1,x1),x2) = f(x1,x2) ; SigmaR1 premises=2,3,1\n"
        "5: f(x3,x3) = x3 ; D4 premises=1 var=x1 term=x3\n"
        "6: f(f(x3,x3),x2) = f(x3,x2) ; SigmaR1 premises=4,1,5\n");
    CHECK(check_proof(rb, good, std::nullopt, System::SigmaR).ok());

    // A conclusion that is not the recomputed composition is invalid.
    Proof off = Proof::parse(
        "1: f(x1,x1) = x1 ; Axiom\n"
        "2: f(x1,x2) = f(x1,x2) ; D1\n"
        "3: x1 = x1 ; D1\n"
        "4: f(f(x1,x1),x2) = f(x1,x2) ; SigmaR1 premises=2,3,1\n"
        "5: f(x3,x3) = x3 ; D4 premises=1 var=x1 term=x3\n"
        "6: f(f(x3,x3),x2) = f(x3,x3) ; SigmaR1 premises=4,1,5\n");
    CheckResult r = check_proof(rb, off);
    CHECK(r.status == CheckResult::Status::Invalid);
    CHECK(r.failed_step == 5);
}

TEST_CASE("undecidable side conditions fail closed") {
    // No hints, no witnesses, and a crushed budget: the oracle cannot decide
    // whether f(f(x1,x2),f(x1,x2)) equals f(f(x1,x1),f(x1,x2)) (both rewrite
    // from f(f(f(x1,x2),x1),f(x1,x2)), so no model refutes the pair, but the
    // one-step search cannot derive it either). The base term carries the
    // pattern literally at position 1 and the undecidable partner at 2, so
    // the class collection inside the replacement step stays open and the
    // checker must answer Unknown, never Valid.
    Theory la = theory_from_text("signature: f/2\n"
                                 "oracle: generic\n"
                                 "axiom: f(f(x1,x2),x1) = f(x1,x1)\n"
                                 "budget: term_size=12 steps=1 model_size=1\n");
    Proof p = Proof::parse(
        "1: f(f(f(x1,x1),f(x1,x2)),f(f(x1,x2),f(x1,x2))) = "
        "f(f(f(x1,x1),f(x1,x2)),f(f(x1,x2),f(x1,x2))) ; D1\n"
        "2: f(f(x1,x1),f(x1,x2)) = f(f(x1,x1),f(x1,x2)) ; D1\n"
        "3: x9 = x9 ; D1\n"
        "4: x9 = x9 ; SigmaR1 premises=1,2,3\n");
    CheckResult r = check_proof(la, p);
    CHECK(r.status == CheckResult::Status::Unknown);
    CHECK(r.failed_step == 3);
    CHECK(!r.reason.empty());
}

TEST_CASE("the shipped separation certificate is valid") {
    Theory sg = fixture("sg.eq");
    Proof p = Proof::load(kFixtures + "/proofs/sg_flagship.proof");
    CHECK(p.steps.size() == 8);

    Identity goal = parse_identity("f(f(x1,x1),x2) = f(x1,x1)");
    CheckResult r = check_proof(sg, p, goal, System::SigmaR);
    CHECK(r.ok());

    // The certificate's conclusion does not hold in the word oracle: the
    // class replacement rule steps outside the variety's own identities.
    CHECK(sigma_equal(sg, goal).is_distinct());
}

TEST_CASE("step rendering uses one based numbering") {
    ProofStep step{parse_identity("f(x2,x2) = x2"), Rule::D4, {0}, 1, Term::var(2), {}, {}};
    CHECK(step_str(step, 2) == "2: f(x2,x2) = x2 ; D4 premises=1 var=x1 term=x2");
}

} // TEST_SUITE
