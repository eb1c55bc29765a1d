// SPDX-License-Identifier: Apache-2.0
#include "termcalc/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "termcalc/errors.hpp"

namespace termcalc {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

} // namespace

Term Term::var(int index) {
    if (index < 1) {
        throw ValidationError("variable indices are 1-based");
    }
    auto node = std::make_shared<Node>();
    node->var = index;
    node->size = 1;
    node->depth = 0;
    node->hash = mix(0x517cc1b727220a95ull, static_cast<std::size_t>(index));
    return Term(std::move(node));
}

Term Term::app(const std::string& symbol, std::vector<Term> children) {
    auto node = std::make_shared<Node>();
    node->sym = symbol;
    node->kids = std::move(children);
    node->size = 1;
    node->depth = 0;
    std::size_t h = mix(0x2545f4914f6cdd1dull, std::hash<std::string>{}(symbol));
    for (const Term& kid : node->kids) {
        node->size += kid.size();
        node->depth = std::max(node->depth, kid.depth() + 1);
        h = mix(h, kid.hash());
    }
    node->hash = h;
    return Term(std::move(node));
}

int Term::var_index() const {
    if (!is_var()) {
        throw ValidationError("not a variable: " + str());
    }
    return node_->var;
}

const std::string& Term::symbol() const {
    if (!is_app()) {
        throw ValidationError("not an application: " + str());
    }
    return node_->sym;
}

const std::vector<Term>& Term::children() const {
    if (!is_app()) {
        throw ValidationError("not an application: " + str());
    }
    return node_->kids;
}

bool Term::operator==(const Term& other) const {
    if (node_ == other.node_) {
        return true;
    }
    if (node_->hash != other.node_->hash || node_->var != other.node_->var ||
        node_->size != other.node_->size) {
        return false;
    }
    if (node_->var != 0) {
        return true;
    }
    if (node_->sym != other.node_->sym) {
        return false;
    }
    return node_->kids == other.node_->kids;
}

std::strong_ordering Term::operator<=>(const Term& other) const {
    if (is_var() != other.is_var()) {
        return is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (is_var()) {
        return node_->var <=> other.node_->var;
    }
    if (auto c = node_->sym.compare(other.node_->sym) <=> 0; c != 0) {
        return c;
    }
    if (auto c = node_->kids.size() <=> other.node_->kids.size(); c != 0) {
        return c;
    }
    for (std::size_t i = 0; i < node_->kids.size(); ++i) {
        if (auto c = node_->kids[i] <=> other.node_->kids[i]; c != 0) {
            return c;
        }
    }
    return std::strong_ordering::equal;
}

std::string Term::str() const {
    if (is_var()) {
        return "x" + std::to_string(node_->var);
    }
    if (node_->kids.empty()) {
        return node_->sym;
    }
    std::string out = node_->sym + "(";
    for (std::size_t i = 0; i < node_->kids.size(); ++i) {
        if (i > 0) {
            out += ",";
        }
        out += node_->kids[i].str();
    }
    out += ")";
    return out;
}

namespace {

/// Recursive-descent term reader shared by the validating and the inferring
/// entry points. With a null signature it collects arities from usage.
class TermReader {
public:
    TermReader(const std::string& text, const Signature* sig)
        : text_(text), sig_(sig) {}

    Term read_all() {
        Term t = read_term();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ParseError("unexpected trailing input at offset " + std::to_string(pos_), pos_);
        }
        return t;
    }

    const Signature& inferred() const { return inferred_; }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg + " at offset " + std::to_string(pos_), pos_);
    }

    std::string read_name() {
        skip_ws();
        const std::size_t begin = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        if (begin == pos_) {
            fail(pos_ < text_.size()
                     ? std::string("unexpected character '") + text_[pos_] + "'"
                     : "unexpected end of input");
        }
        if (std::isdigit(static_cast<unsigned char>(text_[begin]))) {
            pos_ = begin;
            fail("names may not start with a digit");
        }
        return text_.substr(begin, pos_ - begin);
    }

    Term read_term() {
        const std::size_t name_at = pos_;
        const std::string name = read_name();
        if (is_variable_lexeme(name)) {
            return Term::var(std::stoi(name.substr(1)));
        }
        std::vector<Term> kids;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == ')') {
                ++pos_;
            } else {
                while (true) {
                    kids.push_back(read_term());
                    skip_ws();
                    if (pos_ < text_.size() && text_[pos_] == ',') {
                        ++pos_;
                        continue;
                    }
                    if (pos_ < text_.size() && text_[pos_] == ')') {
                        ++pos_;
                        break;
                    }
                    fail("expected ',' or ')'");
                }
            }
        }
        const int arity = static_cast<int>(kids.size());
        if (sig_ != nullptr) {
            if (!sig_->has_symbol(name)) {
                throw ParseError("unknown symbol '" + name + "' at offset " + std::to_string(name_at), name_at);
            }
            if (sig_->arity(name) != arity) {
                throw ParseError("symbol '" + name + "' expects " + std::to_string(sig_->arity(name)) +
                                     " arguments, got " + std::to_string(arity) + " at offset " +
                                     std::to_string(name_at),
                                 name_at);
            }
        } else {
            if (inferred_.has_symbol(name) && inferred_.arity(name) != arity) {
                throw ParseError("symbol '" + name + "' used with inconsistent arities at offset " +
                                     std::to_string(name_at),
                                 name_at);
            }
            if (!inferred_.has_symbol(name)) {
                inferred_.add_symbol(name, arity);
            }
        }
        return Term::app(name, std::move(kids));
    }

    const std::string& text_;
    const Signature* sig_;
    Signature inferred_;
    std::size_t pos_ = 0;
};

} // namespace

Term parse_term(const std::string& text, const Signature& sig) {
    return TermReader(text, &sig).read_all();
}

Term parse_term(const std::string& text) {
    return TermReader(text, nullptr).read_all();
}

namespace {

Identity parse_identity_impl(const std::string& text, const Signature* sig) {
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos) {
        throw ParseError("expected '=' between two terms in '" + text + "'");
    }
    const std::string left = text.substr(0, eq);
    const std::string right = text.substr(eq + 1);
    if (sig != nullptr) {
        return Identity{parse_term(left, *sig), parse_term(right, *sig)};
    }
    // Infer jointly so both sides agree on arities.
    Term lhs = parse_term(left);
    Term rhs = parse_term(right);
    Signature joint = inferred_signature(lhs);
    Signature rsig = inferred_signature(rhs);
    for (const auto& [name, arity] : rsig.symbols()) {
        joint.add_symbol(name, arity); // throws on conflict
    }
    return Identity{lhs, rhs};
}

} // namespace

Identity parse_identity(const std::string& text, const Signature& sig) {
    return parse_identity_impl(text, &sig);
}

Identity parse_identity(const std::string& text) {
    return parse_identity_impl(text, nullptr);
}

Signature inferred_signature(const Term& t) {
    Signature sig;
    std::function<void(const Term&)> walk = [&](const Term& u) {
        if (u.is_app()) {
            if (!sig.has_symbol(u.symbol())) {
                sig.add_symbol(u.symbol(), static_cast<int>(u.children().size()));
            }
            for (const Term& kid : u.children()) {
                walk(kid);
            }
        }
    };
    walk(t);
    return sig;
}

std::vector<Position> positions(const Term& t) {
    std::vector<Position> out;
    std::function<void(const Term&, const Position&)> walk = [&](const Term& u, const Position& at) {
        out.push_back(at);
        if (u.is_app()) {
            const auto& kids = u.children();
            for (std::size_t i = 0; i < kids.size(); ++i) {
                walk(kids[i], at.child(static_cast<int>(i) + 1));
            }
        }
    };
    walk(t, Position::root());
    std::sort(out.begin(), out.end());
    return out;
}

Term subterm_at(const Term& t, const Position& p) {
    Term cur = t;
    for (std::size_t i = 0; i < p.length(); ++i) {
        const int step = p.step(i);
        if (cur.is_var() || step > static_cast<int>(cur.children().size())) {
            throw ValidationError("position " + p.str() + " is not a position of " + t.str());
        }
        cur = cur.children()[step - 1];
    }
    return cur;
}

std::vector<Term> subterms(const Term& t) {
    std::set<Term> seen;
    std::function<void(const Term&)> walk = [&](const Term& u) {
        seen.insert(u);
        if (u.is_app()) {
            for (const Term& kid : u.children()) {
                walk(kid);
            }
        }
    };
    walk(t);
    return std::vector<Term>(seen.begin(), seen.end());
}

std::vector<Position> occurrences(const Term& t, const Term& s) {
    std::vector<Position> out;
    std::function<void(const Term&, const Position&)> walk = [&](const Term& u, const Position& at) {
        if (u == s) {
            out.push_back(at);
        }
        if (u.is_app()) {
            const auto& kids = u.children();
            for (std::size_t i = 0; i < kids.size(); ++i) {
                walk(kids[i], at.child(static_cast<int>(i) + 1));
            }
        }
    };
    walk(t, Position::root());
    std::sort(out.begin(), out.end());
    return out;
}

std::set<int> var_indices(const Term& t) {
    std::set<int> out;
    std::function<void(const Term&)> walk = [&](const Term& u) {
        if (u.is_var()) {
            out.insert(u.var_index());
        } else {
            for (const Term& kid : u.children()) {
                walk(kid);
            }
        }
    };
    walk(t);
    return out;
}

int fresh_var_index(const Term& t) {
    const std::set<int> vars = var_indices(t);
    return vars.empty() ? 1 : *vars.rbegin() + 1;
}

int fresh_var_index(const std::vector<Term>& ts) {
    int fresh = 1;
    for (const Term& t : ts) {
        fresh = std::max(fresh, fresh_var_index(t));
    }
    return fresh;
}

} // namespace termcalc
