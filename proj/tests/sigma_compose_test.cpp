// SPDX-License-Identifier: Apache-2.0
#include <string>
#include <vector>

#include "doctest.h"
#include "termcalc/compose.hpp"
#include "termcalc/errors.hpp"
#include "termcalc/sigma_compose.hpp"
#include "termcalc/term.hpp"
#include "termcalc/theory.hpp"

using namespace termcalc;

namespace {

const std::string kFixtures = TERMCALC_FIXTURE_DIR;

Theory fixture(const std::string& name) {
    return load_theory(kFixtures + "/" + name);
}

std::vector<std::string> strs(const std::vector<Position>& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(p.str());
    return out;
}

std::vector<std::string> strs(const std::vector<Term>& ts) {
    std::vector<std::string> out;
    for (const auto& t : ts) out.push_back(t.str());
    return out;
}

} // namespace

TEST_SUITE("sigma-compose") {

TEST_CASE("the band tree walkthrough: class, occurrences, front, replacement") {
    // Inside t = f(f(x1,f(f(f(x1,x2),x2),x3)),x4) the subterms equal to
    // f(x1,x2) in the rectangular-band variety are f(x1,x2) itself (at 1211)
    // and f(f(x1,x2),x2) (at 121); the front keeps only the outer one.
    Theory rb = fixture("rb.eq");
    Term t = parse_term("f(f(x1,f(f(f(x1,x2),x2),x3)),x4)");
    Term r = parse_term("f(x1,x2)");
    Term u = parse_term("f(x4,x1)");

    PositionSets ps = position_sets(rb, t, r);
    CHECK(strs(ps.class_subterms) == std::vector<std::string>{"f(x1,x2)", "f(f(x1,x2),x2)"});
    CHECK(strs(ps.class_positions) == std::vector<std::string>{"121", "1211"});
    CHECK(strs(ps.front) == std::vector<std::string>{"121"});
    CHECK(ps.notes.empty());
    // The front sits below the product's left spine, so it is not essential.
    CHECK(ps.essential_front.empty());

    CHECK(sigma_compose(rb, t, r, u) == parse_term("f(f(x1,f(f(x4,x1),x3)),x4)"));
    // Replacing the front coincides with plain positional replacement there.
    CHECK(sigma_compose(rb, t, r, u) == replace_at(t, Position::parse("121"), u));
}

TEST_CASE("replacement up to the theory covers every class member once") {
    Theory rb = fixture("rb.eq");

    SUBCASE("no subterm in the class leaves the term unchanged") {
        Term t = parse_term("f(x1,x2)");
        CHECK(sigma_compose(rb, t, parse_term("f(x2,x1)"), Term::var(9)) == t);
        CHECK(position_sets(rb, t, parse_term("f(x2,x1)")).class_positions.empty());
    }
    SUBCASE("a term equal to the pattern is replaced wholesale") {
        // t = f(f(x1,x2),x2) is band-equal to f(x1,x2): the front is the root.
        Term t = parse_term("f(f(x1,x2),x2)");
        CHECK(sigma_compose(rb, t, parse_term("f(x1,x2)"), Term::var(9)) == Term::var(9));
        CHECK(strs(position_sets(rb, t, parse_term("f(x1,x2)")).front) ==
              std::vector<std::string>{"e"});
    }
    SUBCASE("incomparable class members are replaced simultaneously") {
        // The root pairs x1 with x3, so it stays outside the class of
        // f(x1,x2) while the copies at 1 and 21 are both replaced.
        Term t = parse_term("f(f(x1,x2),f(f(x1,x2),x3))");
        Term got = sigma_compose(rb, t, parse_term("f(x1,x2)"), parse_term("f(x2,x1)"));
        CHECK(got == parse_term("f(f(x2,x1),f(f(x2,x1),x3))"));
    }
    SUBCASE("a host equal to the pattern swallows everything") {
        // f(f(x1,x2),f(x1,x2)) itself pairs x1 with x2, so the front is the
        // root and the composition is the bare replacement.
        Term t = parse_term("f(f(x1,x2),f(x1,x2))");
        CHECK(sigma_compose(rb, t, parse_term("f(x1,x2)"), parse_term("f(x2,x1)")) ==
              parse_term("f(x2,x1)"));
    }
}

TEST_CASE("the semigroup collapse that separates the deduction systems") {
    // t = f(f(f(x1,x2),x1),x2) and s = f(f(x1,x2),f(x1,x2)) have the same
    // leaf word x1 x2 x1 x2, but replacing the class of f(x1,x2) by x1 on
    // each side lands on different fronts: {11} in t, {1,2} in s.
    Theory sg = fixture("sg.eq");
    Term t = parse_term("f(f(f(x1,x2),x1),x2)");
    Term s = parse_term("f(f(x1,x2),f(x1,x2))");
    Term r = parse_term("f(x1,x2)");

    CHECK(sigma_equal(sg, Identity{t, s}).is_equal());

    CHECK(strs(position_sets(sg, t, r).front) == std::vector<std::string>{"11"});
    CHECK(strs(position_sets(sg, s, r).front) == std::vector<std::string>{"1", "2"});

    Term left = sigma_compose(sg, t, r, Term::var(1));
    Term right = sigma_compose(sg, s, r, Term::var(1));
    CHECK(left == parse_term("f(f(x1,x1),x2)"));
    CHECK(right == parse_term("f(x1,x1)"));

    // The two replaced sides are no longer semigroup-equal.
    CHECK(sigma_equal(sg, Identity{left, right}).is_distinct());
}

TEST_CASE("class data under the word oracle") {
    Theory sg = fixture("sg.eq");
    // Both bracketings of x1 x2 x3 occur inside t.
    Term t = parse_term("f(f(f(x1,x2),x3),f(x1,f(x2,x3)))");
    Term r = parse_term("f(x1,f(x2,x3))");

    PositionSets ps = position_sets(sg, t, r);
    // Canonical term order puts the variable-headed left child first.
    CHECK(strs(ps.class_subterms) ==
          std::vector<std::string>{"f(x1,f(x2,x3))", "f(f(x1,x2),x3)"});
    CHECK(strs(ps.class_positions) == std::vector<std::string>{"1", "2"});
    CHECK(strs(ps.front) == std::vector<std::string>{"1", "2"});
    // Both occurrences carry the ends of the word, so both are essential.
    CHECK(strs(ps.essential_front) == std::vector<std::string>{"1", "2"});
}

TEST_CASE("strict mode surfaces undecided pairs, permissive mode skips them") {
    Theory la = fixture("la.eq");
    la.budget.max_steps = 1;
    la.budget.max_model_size = 1;
    // Comparing the subterm f(f(x1,x2),f(x1,x2)) of t against the pattern
    // f(f(x1,x1),f(x1,x2)) needs search the crushed budget does not allow.
    Term t = parse_term("f(f(f(x1,x2),f(x1,x2)),x3)");
    Term r = parse_term("f(f(x1,x1),f(x1,x2))");

    CHECK_THROWS_AS(position_sets(la, t, r, Strictness::Strict), UnknownVerdictError);

    PositionSets ps = position_sets(la, t, r, Strictness::Permissive);
    CHECK(!ps.notes.empty());

    CHECK_THROWS_AS(sigma_compose(la, t, r, Term::var(9), Strictness::Strict),
                    UnknownVerdictError);
    // Permissive composition treats undecided pairs as unequal and proceeds.
    Term composed = sigma_compose(la, t, r, Term::var(9), Strictness::Permissive);
    CHECK(composed == t);
}

TEST_CASE("replacing a class by itself collapses nested duplicates") {
    Theory rb = fixture("rb.eq");
    // Inside t the class of f(x1,x2) nests: f(f(x1,x2),x2) at 1 contains the
    // copy at 11. Replacing the class by its own pattern keeps only the
    // outer occurrence, and afterwards the class occupies exactly its
    // syntactic occurrences.
    Term t = parse_term("f(f(f(x1,x2),x2),f(x3,x4))");
    Term u = parse_term("f(x1,x2)");

    Term collapsed = sigma_compose(rb, t, u, u);
    CHECK(collapsed == parse_term("f(f(x1,x2),f(x3,x4))"));

    PositionSets after = position_sets(rb, collapsed, u);
    CHECK(after.class_positions == after.front);
    CHECK(strs(after.front) == std::vector<std::string>{"1"});
}

} // TEST_SUITE
