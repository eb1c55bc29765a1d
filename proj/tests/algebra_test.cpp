// SPDX-License-Identifier: Apache-2.0
#include <string>
#include <vector>

#include "doctest.h"
#include "termcalc/algebra.hpp"
#include "termcalc/errors.hpp"
#include "termcalc/term.hpp"

using namespace termcalc;

namespace {

const std::string kFixtures = TERMCALC_FIXTURE_DIR;

FiniteAlgebra xor_algebra() {
    return FiniteAlgebra::load(kFixtures + "/algebras/z2.json");
}

} // namespace

TEST_SUITE("algebra") {

TEST_CASE("json round trip and table indexing") {
    FiniteAlgebra a = xor_algebra();
    CHECK(a.carrier == 2);
    CHECK(a.sig.arity("f") == 2);

    // Tables are row-major with the last argument varying fastest:
    // f(0,0)=0, f(0,1)=1, f(1,0)=1, f(1,1)=0.
    CHECK(a.apply("f", {0, 0}) == 0);
    CHECK(a.apply("f", {0, 1}) == 1);
    CHECK(a.apply("f", {1, 0}) == 1);
    CHECK(a.apply("f", {1, 1}) == 0);

    FiniteAlgebra b = FiniteAlgebra::from_json_text(a.to_json_text());
    CHECK(b == a);
}

TEST_CASE("validation rejects malformed tables") {
    CHECK_THROWS_AS(FiniteAlgebra::from_json_text(R"({"carrier":2,"ops":{"f":[0,1,1]}})"),
                    ParseError); // length not a power of the carrier
    CHECK_THROWS_AS(FiniteAlgebra::from_json_text(R"({"carrier":2,"ops":{"f":[0,1,1,2]}})"),
                    ValidationError); // entry outside the carrier
    CHECK_THROWS_AS(FiniteAlgebra::from_json_text(R"({"carrier":0,"ops":{}})"),
                    ParseError); // empty carrier
    CHECK_THROWS_AS(FiniteAlgebra::from_json_text("not json"), ParseError);
}

TEST_CASE("evaluation walks the term bottom up") {
    FiniteAlgebra a = xor_algebra();
    Term t = parse_term("f(x1,f(x2,x3))");
    CHECK(evaluate(a, t, {{1, 1}, {2, 1}, {3, 0}}) == 0);
    CHECK(evaluate(a, t, {{1, 1}, {2, 0}, {3, 0}}) == 1);
    CHECK(evaluate(a, Term::var(2), {{2, 1}}) == 1);

    // Every variable of the term must be assigned.
    CHECK_THROWS_AS(evaluate(a, t, {{1, 0}, {2, 0}}), ValidationError);
    // Values must lie in the carrier.
    CHECK_THROWS_AS(evaluate(a, t, {{1, 0}, {2, 0}, {3, 5}}), ValidationError);
}

TEST_CASE("satisfaction reports the first failing assignment") {
    FiniteAlgebra a = xor_algebra();

    // xor is associative and commutative.
    CHECK(satisfies(a, parse_identity("f(f(x1,x2),x3) = f(x1,f(x2,x3))")).holds);
    CHECK(satisfies(a, parse_identity("f(x1,x2) = f(x2,x1)")).holds);

    // xor is not idempotent: f(1,1) = 0 != 1.
    SatisfactionResult r = satisfies(a, parse_identity("f(x1,x1) = x1"));
    CHECK(!r.holds);
    REQUIRE(r.failing.has_value());
    // Assignments are scanned in mixed-radix order, so x1=0 comes first and
    // the first failure is x1=1.
    CHECK(*r.failing == Assignment{{1, 1}});

    CHECK(satisfies_all(a, {parse_identity("f(x1,x2) = f(x2,x1)"),
                            parse_identity("f(x1,f(x2,x3)) = f(f(x1,x2),x3)")}));
    CHECK(!satisfies_all(a, {parse_identity("f(x1,x2) = f(x2,x1)"),
                             parse_identity("f(x1,x1) = x1")}));

    // An identity with no variables is a single evaluation.
    FiniteAlgebra c = FiniteAlgebra::from_json_text(R"({"carrier":2,"ops":{"k":[1]}})");
    CHECK(satisfies(c, parse_identity("k = k")).holds);
}

TEST_CASE("essential variables in a fixed algebra") {
    FiniteAlgebra left = FiniteAlgebra::load(kFixtures + "/algebras/proj_left.json");
    FiniteAlgebra right = FiniteAlgebra::load(kFixtures + "/algebras/proj_right.json");
    FiniteAlgebra both = xor_algebra();
    Term t = parse_term("f(x1,f(x2,x3))");

    CHECK(essential_vars_in_algebra(left, t) == std::vector<int>{1});
    CHECK(essential_vars_in_algebra(right, t) == std::vector<int>{3});
    CHECK(essential_vars_in_algebra(both, t) == std::vector<int>{1, 2, 3});
    CHECK(essential_vars_in_algebra(left, Term::var(2)) == std::vector<int>{2});
}

TEST_CASE("essential positions in a fixed algebra") {
    FiniteAlgebra left = FiniteAlgebra::load(kFixtures + "/algebras/proj_left.json");
    Term t = parse_term("f(x1,f(x2,x3))");

    // Left projection: only the root and the leftmost path matter.
    std::vector<Position> got = essential_positions_in_algebra(left, t);
    REQUIRE(got.size() == 2);
    CHECK(got[0] == Position::root());
    CHECK(got[1] == Position::parse("1"));

    // xor: every position matters.
    CHECK(essential_positions_in_algebra(xor_algebra(), t).size() == 5);
}

TEST_CASE("model enumeration is exhaustive and deterministic") {
    Signature sig = Signature::parse("f/2");
    std::vector<Identity> assoc = {parse_identity("f(f(x1,x2),x3) = f(x1,f(x2,x3))")};

    // Carrier 1 admits one table; carrier 2 has 16 binary tables of which
    // 8 are associative.
    std::vector<FiniteAlgebra> models = enumerate_models(sig, assoc, 2);
    CHECK(models.size() == 9);
    for (const auto& m : models) {
        CHECK(satisfies_all(m, assoc));
    }

    // Unconstrained enumeration sees every table.
    CHECK(enumerate_models(sig, {}, 2).size() == 17);

    // Determinism: a second run yields the identical list.
    CHECK(enumerate_models(sig, assoc, 2) == models);
}

TEST_CASE("streaming enumeration matches the batch variant") {
    Signature sig = Signature::parse("f/2");
    std::vector<Identity> axioms = {parse_identity("f(x1,x1) = x1"),
                                    parse_identity("f(f(x1,x2),x3) = f(x1,x3)")};
    std::vector<FiniteAlgebra> batch = enumerate_models(sig, axioms, 2);

    ModelEnumerator stream(sig, axioms, 2);
    std::vector<FiniteAlgebra> collected;
    while (auto m = stream.next()) {
        collected.push_back(*m);
    }
    CHECK(collected == batch);
    CHECK(!stream.next().has_value()); // stays exhausted
}

TEST_CASE("fixture witnesses satisfy their intended laws") {
    FiniteAlgebra la = FiniteAlgebra::load(kFixtures + "/algebras/la_not.json");
    CHECK(satisfies(la, parse_identity("f(f(x1,x2),x1) = f(x1,x1)")).holds);

    FiniteAlgebra boolean = FiniteAlgebra::load(kFixtures + "/algebras/bool2.json");
    CHECK(satisfies(boolean, parse_identity("and(x1,or(x2,not(x2))) = x1")).holds);
    CHECK(satisfies(boolean, parse_identity("not(not(x1)) = x1")).holds);
    CHECK(!satisfies(boolean, parse_identity("and(x1,x2) = or(x1,x2)")).holds);
}

} // TEST_SUITE
