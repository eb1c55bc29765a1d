// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "termcalc/position.hpp"
#include "termcalc/signature.hpp"

namespace termcalc {

/// An immutable first-order term: a variable x<i> or an application
/// f(t1,...,tn). Copies share structure; size, depth and hash are cached on
/// the node.
class Term {
public:
    /// The variable x<index>; index is 1-based.
    static Term var(int index);
    static Term app(const std::string& symbol, std::vector<Term> children);

    bool is_var() const { return node_->var != 0; }
    bool is_app() const { return node_->var == 0; }
    int var_index() const;                      // throws unless is_var()
    const std::string& symbol() const;          // throws unless is_app()
    const std::vector<Term>& children() const;  // throws unless is_app()

    /// Number of nodes, i.e. |Pos(t)|.
    int size() const { return node_->size; }
    /// Edge depth: 0 for variables and constants.
    int depth() const { return node_->depth; }
    std::size_t hash() const { return node_->hash; }

    bool operator==(const Term& other) const;
    bool operator!=(const Term& other) const { return !(*this == other); }

    /// Canonical order: variables before applications; variables by index;
    /// applications by symbol name, then childwise.
    std::strong_ordering operator<=>(const Term& other) const;

    std::string str() const;

private:
    struct Node {
        int var = 0; // 0 = application
        std::string sym;
        std::vector<Term> kids;
        int size = 1;
        int depth = 0;
        std::size_t hash = 0;
    };
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// An equation between two terms over the same signature.
struct Identity {
    Term lhs;
    Term rhs;

    std::string str() const { return lhs.str() + " = " + rhs.str(); }
    Identity mirrored() const { return Identity{rhs, lhs}; }

    bool operator==(const Identity&) const = default;
    std::strong_ordering operator<=>(const Identity& other) const {
        if (auto c = lhs <=> other.lhs; c != 0) {
            return c;
        }
        return rhs <=> other.rhs;
    }
};

struct IdentityHash {
    std::size_t operator()(const Identity& e) const {
        return e.lhs.hash() * 1000003u ^ e.rhs.hash();
    }
};

/// Parses a term, validating symbols and arities against `sig`.
/// Reports the character offset of the first offending token on failure.
Term parse_term(const std::string& text, const Signature& sig);

/// Parses a term and infers the signature from usage; inconsistent arities
/// for the same symbol are a ParseError.
Term parse_term(const std::string& text);

/// Parses "lhs = rhs".
Identity parse_identity(const std::string& text, const Signature& sig);
Identity parse_identity(const std::string& text);

/// Infers the minimal signature covering every application in `t`.
Signature inferred_signature(const Term& t);

/// All positions of t, shortlex order; the root comes first.
std::vector<Position> positions(const Term& t);

/// The subterm rooted at p. Throws ValidationError if p is not a position
/// of t.
Term subterm_at(const Term& t, const Position& p);

/// Sub(t): the distinct subterms of t in canonical term order.
std::vector<Term> subterms(const Term& t);

/// Positions of t whose subterm equals `s`, shortlex order.
std::vector<Position> occurrences(const Term& t, const Term& s);

/// The set of variable indices occurring in t.
std::set<int> var_indices(const Term& t);

/// 1 + the largest variable index in t (1 when t has no variables); the
/// smallest index whose variable is guaranteed not to occur in t.
int fresh_var_index(const Term& t);
int fresh_var_index(const std::vector<Term>& ts);

} // namespace termcalc
