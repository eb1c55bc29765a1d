// SPDX-License-Identifier: Apache-2.0
#include "termcalc/theory.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "termcalc/compose.hpp"
#include "termcalc/deduction.hpp"
#include "termcalc/errors.hpp"
#include "termcalc/rewrite.hpp"

namespace termcalc {

std::string oracle_name(OracleKind k) {
    switch (k) {
        case OracleKind::RB: return "rb";
        case OracleKind::SG: return "sg";
        case OracleKind::LZ: return "lz";
        case OracleKind::RZ: return "rz";
        case OracleKind::Trivial: return "trivial";
        case OracleKind::Empty: return "empty";
        case OracleKind::Generic: return "generic";
    }
    return "?";
}

std::optional<OracleKind> oracle_from_name(const std::string& name) {
    if (name == "rb") return OracleKind::RB;
    if (name == "sg") return OracleKind::SG;
    if (name == "lz") return OracleKind::LZ;
    if (name == "rz") return OracleKind::RZ;
    if (name == "trivial") return OracleKind::Trivial;
    if (name == "empty") return OracleKind::Empty;
    if (name == "generic") return OracleKind::Generic;
    return std::nullopt;
}

Verdict Verdict::equal(std::shared_ptr<const Proof> proof, std::string note) {
    Verdict v;
    v.kind = VerdictKind::Equal;
    v.proof = std::move(proof);
    v.note = std::move(note);
    return v;
}

Verdict Verdict::distinct(Witness w, std::string note) {
    Verdict v;
    v.kind = VerdictKind::Distinct;
    v.witness = std::move(w);
    v.note = std::move(note);
    return v;
}

Verdict Verdict::unknown(std::string note) {
    Verdict v;
    v.kind = VerdictKind::Unknown;
    v.note = std::move(note);
    return v;
}

std::vector<int> leaf_var_word(const Term& t) {
    std::vector<int> word;
    auto walk = [&](auto&& self, const Term& u) -> void {
        if (u.is_var()) {
            word.push_back(u.var_index());
            return;
        }
        for (const Term& c : u.children()) self(self, c);
    };
    walk(walk, t);
    return word;
}

int leftmost_var_index(const Term& t) {
    auto word = leaf_var_word(t);
    if (word.empty()) throw ValidationError("term has no variables: " + t.str());
    return word.front();
}

int rightmost_var_index(const Term& t) {
    auto word = leaf_var_word(t);
    if (word.empty()) throw ValidationError("term has no variables: " + t.str());
    return word.back();
}

// ---------------------------------------------------------------------------
// Theory files

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Budget parse_budget(const std::string& text, int lineno) {
    Budget b;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        std::size_t eq = tok.find('=');
        if (eq == std::string::npos)
            throw ParseError("budget entries look like steps=5000; got '" + tok + "'", lineno);
        std::string key = tok.substr(0, eq);
        int value = 0;
        try {
            value = std::stoi(tok.substr(eq + 1));
        } catch (const std::exception&) {
            throw ParseError("budget value for '" + key + "' is not a number", lineno);
        }
        if (value < 1) throw ParseError("budget value for '" + key + "' must be positive", lineno);
        if (key == "term_size")
            b.max_term_size = value;
        else if (key == "steps")
            b.max_steps = value;
        else if (key == "model_size")
            b.max_model_size = value;
        else
            throw ParseError("unknown budget key '" + key + "'", lineno);
    }
    return b;
}

bool stores_axiom(const std::vector<Identity>& axioms, const Identity& id) {
    for (const Identity& a : axioms)
        if (a == id || a.mirrored() == id) return true;
    return false;
}

/// The one binary symbol required by the band/semigroup oracles.
std::string single_binary_symbol(const Theory& T) {
    const auto& syms = T.sig.symbols();
    if (syms.size() != 1 || syms.begin()->second != 2)
        throw ValidationError("oracle '" + oracle_name(T.oracle) +
                              "' needs a signature with exactly one binary symbol");
    return syms.begin()->first;
}

Term f2(const std::string& f, const Term& a, const Term& b) { return Term::app(f, {a, b}); }


void validate_theory(Theory& T) {
    if (T.sig.size() == 0) throw ValidationError("theory has no signature line");
    switch (T.oracle) {
        case OracleKind::RB: {
            std::string f = single_binary_symbol(T);
            Term x1 = Term::var(1), x2 = Term::var(2), x3 = Term::var(3);
            std::vector<Identity> required = {
                {f2(f, x1, x1), x1},
                {f2(f, f2(f, x1, x2), x3), f2(f, x1, x3)},
                {f2(f, x1, f2(f, x2, x3)), f2(f, x1, x3)},
            };
            for (const Identity& id : required)
                if (!stores_axiom(T.axioms, id))
                    throw ValidationError("rb theory must store the axiom " + id.str());
            break;
        }
        case OracleKind::SG: {
            std::string f = single_binary_symbol(T);
            Term x1 = Term::var(1), x2 = Term::var(2), x3 = Term::var(3);
            Identity assoc{f2(f, f2(f, x1, x2), x3), f2(f, x1, f2(f, x2, x3))};
            if (!stores_axiom(T.axioms, assoc))
                throw ValidationError("sg theory must store the associativity axiom " + assoc.str());
            break;
        }
        case OracleKind::LZ: {
            std::string f = single_binary_symbol(T);
            Identity law{f2(f, Term::var(1), Term::var(2)), Term::var(1)};
            if (!stores_axiom(T.axioms, law))
                throw ValidationError("lz theory must store the axiom " + law.str());
            break;
        }
        case OracleKind::RZ: {
            std::string f = single_binary_symbol(T);
            Identity law{f2(f, Term::var(1), Term::var(2)), Term::var(2)};
            if (!stores_axiom(T.axioms, law))
                throw ValidationError("rz theory must store the axiom " + law.str());
            break;
        }
        case OracleKind::Trivial: {
            bool collapse = false;
            for (const Identity& a : T.axioms)
                if (a.lhs.is_var() && a.rhs.is_var() && a.lhs.var_index() != a.rhs.var_index())
                    collapse = true;
            if (!collapse)
                throw ValidationError(
                    "trivial theory must store an axiom equating two distinct variables");
            break;
        }
        case OracleKind::Empty:
            if (!T.axioms.empty())
                throw ValidationError("empty theory cannot have axioms");
            break;
        case OracleKind::Generic:
            break;
    }

    // Every stored axiom must itself hold under an exact oracle; otherwise
    // the oracle's answers would disagree with the variety the axioms span.
    if (T.oracle != OracleKind::Generic && T.oracle != OracleKind::Trivial &&
        T.oracle != OracleKind::Empty) {
        for (const Identity& a : T.axioms)
            if (!oracle_equal_exact(T, a.lhs, a.rhs))
                throw ValidationError("axiom " + a.str() + " does not hold in the " +
                                      oracle_name(T.oracle) + " variety");
    }

    if (T.oracle != OracleKind::Generic) {
        if (!T.hints.empty())
            throw ValidationError("hint lines are only meaningful for the generic oracle");
        if (!T.witness_algebras.empty())
            throw ValidationError("witness lines are only meaningful for the generic oracle");
    }

    for (const Identity& h : T.hints) {
        if (h.lhs.is_var())
            throw ValidationError("hint left side cannot be a bare variable: " + h.lhs.str());
        if (!stores_axiom(T.axioms, h))
            throw ValidationError("hint must orient a stored axiom: " + h.lhs.str() + " -> " +
                                  h.rhs.str());
        auto lv = var_indices(h.lhs);
        for (int v : var_indices(h.rhs))
            if (!std::binary_search(lv.begin(), lv.end(), v))
                throw ValidationError("hint right side introduces x" + std::to_string(v) + ": " +
                                      h.lhs.str() + " -> " + h.rhs.str());
    }

    for (auto& w : T.witness_algebras) {
        // Re-key the tables to the theory signature: the JSON form cannot
        // distinguish arities on a one-element carrier.
        for (const auto& [sym, ar] : T.sig.symbols())
            if (!w.ops.contains(sym))
                throw ValidationError("witness algebra is missing a table for '" + sym + "'");
        for (const auto& [sym, table] : w.ops)
            if (!T.sig.has_symbol(sym))
                throw ValidationError("witness algebra has a table for unknown symbol '" + sym + "'");
        w.sig = T.sig;
        w.validate();
        for (const Identity& a : T.axioms) {
            auto sat = satisfies(w, a);
            if (!sat.holds)
                throw ValidationError("witness algebra violates the axiom " + a.str());
        }
    }
}

} // namespace

Theory theory_from_text(const std::string& text, const std::string& base_dir,
                        const std::string& default_name) {
    Theory T;
    T.name = default_name;
    bool have_sig = false, have_oracle = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t colon = s.find(':');
        if (colon == std::string::npos)
            throw ParseError("expected 'key: value' in theory file", lineno);
        std::string key = trim(s.substr(0, colon));
        std::string value = trim(s.substr(colon + 1));
        try {
            if (key == "name") {
                T.name = value;
            } else if (key == "signature") {
                if (have_sig) throw ParseError("duplicate signature line");
                T.sig = Signature::parse(value);
                have_sig = true;
            } else if (key == "oracle") {
                auto k = oracle_from_name(value);
                if (!k) throw ParseError("unknown oracle '" + value + "'");
                T.oracle = *k;
                have_oracle = true;
            } else if (key == "axiom") {
                if (!have_sig) throw ParseError("signature line must come before axioms");
                T.axioms.push_back(parse_identity(value, T.sig));
            } else if (key == "hint") {
                if (!have_sig) throw ParseError("signature line must come before hints");
                std::size_t arrow = value.find("->");
                if (arrow == std::string::npos) throw ParseError("hint lines look like 'lhs -> rhs'");
                T.hints.push_back(Identity{parse_term(trim(value.substr(0, arrow)), T.sig),
                                           parse_term(trim(value.substr(arrow + 2)), T.sig)});
            } else if (key == "witness") {
                std::filesystem::path p(value);
                if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
                T.witness_algebras.push_back(FiniteAlgebra::load(p.string()));
            } else if (key == "budget") {
                T.budget = parse_budget(value, lineno);
            } else {
                throw ParseError("unknown theory key '" + key + "'");
            }
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()), lineno);
        }
    }
    if (!have_sig) throw ParseError("theory file has no signature line");
    if (!have_oracle) throw ParseError("theory file has no oracle line");
    validate_theory(T);
    return T;
}

Theory load_theory(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open theory file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::filesystem::path p(path);
    return theory_from_text(buf.str(), p.parent_path().string(),
                            p.stem().string());
}

// ---------------------------------------------------------------------------
// Refutation search

RefutationSearch search_refutation(const Signature& sig, const std::vector<Identity>& axioms,
                                   const Identity& goal, int max_size, long long table_cap) {
    RefutationSearch out;
    out.complete = true;
    std::ostringstream note;
    for (int size = 1; size <= max_size; ++size) {
        // Number of candidate tables at this size: prod size^(size^arity).
        long double log_count = 0;
        for (const auto& [sym, ar] : sig.symbols())
            log_count += std::pow(static_cast<long double>(size), ar) * std::log10(static_cast<long double>(size));
        if (log_count > std::log10(static_cast<long double>(table_cap))) {
            out.complete = false;
            note << "carrier " << size << " skipped (too many tables); ";
            continue;
        }
        ModelEnumerator e(sig, axioms, size);
        while (auto m = e.next()) {
            if (m->carrier != size) continue; // avoid re-reporting smaller carriers
            auto sat = satisfies(*m, goal);
            if (!sat.holds) {
                out.witness = Witness{std::move(*m), *sat.failing};
                return out;
            }
        }
    }
    note << "no model up to carrier " << max_size << " falsifies the identity";
    out.note = note.str();
    return out;
}

// ---------------------------------------------------------------------------
// Constructed witnesses

namespace {

/// Semigroup of variable words of length <= cap under concatenate-then-
/// truncate; separates any two distinct words of length <= cap.
Witness word_truncation_witness(const Theory& T, const Term& lhs, const Term& rhs) {
    std::string f = single_binary_symbol(T);
    auto wl = leaf_var_word(lhs), wr = leaf_var_word(rhs);
    int cap = static_cast<int>(std::max(wl.size(), wr.size()));
    std::vector<int> letters;
    for (int v : wl) letters.push_back(v);
    for (int v : wr) letters.push_back(v);
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());

    // Carrier: all nonempty words over `letters` of length <= cap.
    std::vector<std::vector<int>> words;
    std::vector<std::vector<int>> layer;
    for (int v : letters) layer.push_back({v});
    for (int len = 1; len <= cap; ++len) {
        words.insert(words.end(), layer.begin(), layer.end());
        if (len == cap) break;
        std::vector<std::vector<int>> next;
        for (const auto& w : layer)
            for (int v : letters) {
                auto ext = w;
                ext.push_back(v);
                next.push_back(std::move(ext));
            }
        layer = std::move(next);
    }
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = static_cast<int>(i);

    FiniteAlgebra a;
    a.carrier = static_cast<int>(words.size());
    a.sig = T.sig;
    std::vector<int>& table = a.ops[f];
    table.assign(static_cast<std::size_t>(a.carrier) * a.carrier, 0);
    for (int i = 0; i < a.carrier; ++i)
        for (int j = 0; j < a.carrier; ++j) {
            std::vector<int> prod = words[i];
            prod.insert(prod.end(), words[j].begin(), words[j].end());
            if (static_cast<int>(prod.size()) > cap) prod.resize(cap);
            table[static_cast<std::size_t>(i) * a.carrier + j] = index.at(prod);
        }

    Witness w;
    w.env = {};
    for (int v : letters) w.env[v] = index.at({v});
    w.algebra = std::move(a);
    return w;
}

/// Algebra of the distinct subterms of the two sides plus a sink element;
/// operations build bigger stored subterms and fall to the sink otherwise.
/// With variables reading as themselves, each side evaluates to itself, so
/// syntactically distinct sides get distinct values.
Witness subterm_algebra_witness(const Theory& T, const Term& lhs, const Term& rhs) {
    std::set<Term> subs;
    for (const Term& u : subterms(lhs)) subs.insert(u);
    for (const Term& u : subterms(rhs)) subs.insert(u);
    std::vector<Term> elems(subs.begin(), subs.end());
    std::map<Term, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
    int sink = static_cast<int>(elems.size());

    FiniteAlgebra a;
    a.carrier = sink + 1;
    a.sig = T.sig;
    for (const auto& [sym, ar] : T.sig.symbols()) {
        std::size_t len = 1;
        for (int k = 0; k < ar; ++k) len *= static_cast<std::size_t>(a.carrier);
        std::vector<int>& table = a.ops[sym];
        table.assign(len, sink);
        std::vector<int> args(ar, 0);
        for (std::size_t flat = 0; flat < len; ++flat) {
            std::size_t rest = flat;
            for (int k = ar - 1; k >= 0; --k) {
                args[k] = static_cast<int>(rest % a.carrier);
                rest /= a.carrier;
            }
            bool in_range = true;
            std::vector<Term> kids;
            for (int v : args) {
                if (v >= sink) {
                    in_range = false;
                    break;
                }
                kids.push_back(elems[v]);
            }
            if (!in_range) continue;
            Term built = Term::app(sym, std::move(kids));
            auto it = index.find(built);
            if (it != index.end()) table[flat] = it->second;
        }
    }

    Witness w;
    for (int v : var_indices(lhs)) w.env[v] = index.at(Term::var(v));
    for (int v : var_indices(rhs)) w.env[v] = index.at(Term::var(v));
    w.algebra = std::move(a);
    return w;
}

/// The left- or right-projection table on {0,1}; satisfies every band
/// axiom used by the exact oracles.
Witness projection_witness(const Theory& T, bool left, const Term& lhs, const Term& rhs) {
    std::string f = single_binary_symbol(T);
    FiniteAlgebra a;
    a.carrier = 2;
    a.sig = T.sig;
    a.ops[f] = left ? std::vector<int>{0, 0, 1, 1} : std::vector<int>{0, 1, 0, 1};
    Witness w;
    w.algebra = std::move(a);
    int vl = left ? leftmost_var_index(lhs) : rightmost_var_index(lhs);
    int vr = left ? leftmost_var_index(rhs) : rightmost_var_index(rhs);
    for (int v : var_indices(lhs)) w.env[v] = 0;
    for (int v : var_indices(rhs)) w.env[v] = 0;
    w.env[vl] = 0;
    w.env[vr] = 1;
    return w;
}

// ---------------------------------------------------------------------------
// Exact oracles

} // namespace

bool oracle_equal_exact(const Theory& T, const Term& lhs, const Term& rhs) {
    switch (T.oracle) {
        case OracleKind::RB:
            return leftmost_var_index(lhs) == leftmost_var_index(rhs) &&
                   rightmost_var_index(lhs) == rightmost_var_index(rhs);
        case OracleKind::SG:
            return leaf_var_word(lhs) == leaf_var_word(rhs);
        case OracleKind::LZ:
            return leftmost_var_index(lhs) == leftmost_var_index(rhs);
        case OracleKind::RZ:
            return rightmost_var_index(lhs) == rightmost_var_index(rhs);
        case OracleKind::Trivial:
            return true;
        case OracleKind::Empty:
            return lhs == rhs;
        case OracleKind::Generic:
            throw ValidationError("generic oracle has no exact decision");
    }
    return false;
}

namespace {

/// Oriented rules joining any two equal terms of the oracle's variety.
std::vector<RewriteRule> exact_rules(const Theory& T) {
    std::string f = single_binary_symbol(T);
    Term x1 = Term::var(1), x2 = Term::var(2), x3 = Term::var(3);
    switch (T.oracle) {
        case OracleKind::RB:
            return {{f2(f, x1, x1), x1},
                    {f2(f, f2(f, x1, x2), x3), f2(f, x1, x3)},
                    {f2(f, x1, f2(f, x2, x3)), f2(f, x1, x3)}};
        case OracleKind::SG:
            return {{f2(f, f2(f, x1, x2), x3), f2(f, x1, f2(f, x2, x3))}};
        case OracleKind::LZ:
            return {{f2(f, x1, x2), x1}};
        case OracleKind::RZ:
            return {{f2(f, x1, x2), x2}};
        default:
            throw ValidationError("no rewrite system for oracle " + oracle_name(T.oracle));
    }
}

} // namespace

std::optional<Term> oracle_normal_form(const Theory& T, const Term& t) {
    switch (T.oracle) {
        case OracleKind::Trivial:
            return Term::var(1);
        case OracleKind::Empty:
            return t;
        case OracleKind::Generic:
            return std::nullopt;
        default: {
            auto out = normalize(t, exact_rules(T), 100000,
                                 static_cast<int>(t.size()) * 4 + 16);
            if (!out.complete)
                throw ValidationError("internal rewriting failed to normalize term");
            return out.normal_form;
        }
    }
}

namespace {

std::shared_ptr<const Proof> exact_equal_proof(const Theory& T, const Term& lhs, const Term& rhs) {
    auto rules = exact_rules(T);
    int size_cap = static_cast<int>(std::max(lhs.size(), rhs.size())) * 4 + 16;
    auto nl = normalize(lhs, rules, 100000, size_cap);
    auto nr = normalize(rhs, rules, 100000, size_cap);
    if (!nl.complete || !nr.complete || !(nl.normal_form == nr.normal_form))
        throw ValidationError("internal rewriting failed to join equal terms");
    return join_proof(lhs, nl.steps, rhs, nr.steps);
}

std::shared_ptr<const Proof> trivial_equal_proof(const Theory& T, const Term& lhs, const Term& rhs) {
    // Stored collapse axiom xi = xj lifts to any identity in four
    // substitutions: rename xj out of the way, then pour in both sides.
    const Identity* collapse = nullptr;
    for (const Identity& a : T.axioms)
        if (a.lhs.is_var() && a.rhs.is_var() && a.lhs.var_index() != a.rhs.var_index()) {
            collapse = &a;
            break;
        }
    if (!collapse) throw ValidationError("trivial theory lost its collapse axiom");
    int i = collapse->lhs.var_index(), j = collapse->rhs.var_index();
    int z = std::max({fresh_var_index({lhs, rhs}), i + 1, j + 1});

    auto proof = std::make_shared<Proof>();
    auto& st = proof->steps;
    st.push_back({*collapse, Rule::Axiom, {}, {}, {}, {}, {}});
    st.push_back({Identity{collapse->lhs, Term::var(z)}, Rule::D4, {0}, j, Term::var(z), {}, {}});
    st.push_back({Identity{lhs, Term::var(z)}, Rule::D4, {1}, i, lhs, {}, {}});
    st.push_back({Identity{rhs, Term::var(z)}, Rule::D4, {1}, i, rhs, {}, {}});
    st.push_back({Identity{Term::var(z), rhs}, Rule::D2, {3}, {}, {}, {}, {}});
    st.push_back({Identity{lhs, rhs}, Rule::D3, {2, 4}, {}, {}, {}, {}});
    return proof;
}

Verdict exact_distinct(const Theory& T, const Term& lhs, const Term& rhs) {
    Identity goal{lhs, rhs};
    auto found = search_refutation(T.sig, T.axioms, goal, std::max(T.budget.max_model_size, 2));
    if (found.witness)
        return Verdict::distinct(std::move(*found.witness), "separated by an enumerated model");
    switch (T.oracle) {
        case OracleKind::SG:
            return Verdict::distinct(word_truncation_witness(T, lhs, rhs),
                                     "separated by the word semigroup with truncation");
        case OracleKind::RB: {
            bool left = leftmost_var_index(lhs) != leftmost_var_index(rhs);
            return Verdict::distinct(projection_witness(T, left, lhs, rhs),
                                     "separated by a projection");
        }
        case OracleKind::LZ:
            return Verdict::distinct(projection_witness(T, true, lhs, rhs),
                                     "separated by the left projection");
        case OracleKind::RZ:
            return Verdict::distinct(projection_witness(T, false, lhs, rhs),
                                     "separated by the right projection");
        case OracleKind::Empty:
            return Verdict::distinct(subterm_algebra_witness(T, lhs, rhs),
                                     "separated by the algebra of stored subterms");
        default:
            throw ValidationError("no distinct witness construction for " + oracle_name(T.oracle));
    }
}

// ---------------------------------------------------------------------------
// Generic oracle

Verdict generic_verdict(const Theory& T, const Term& lhs, const Term& rhs, Effort effort) {
    Identity goal{lhs, rhs};

    for (const FiniteAlgebra& w : T.witness_algebras) {
        auto sat = satisfies(w, goal);
        if (!sat.holds)
            return Verdict::distinct(Witness{w, *sat.failing}, "refuted by a stored witness algebra");
    }

    if (!T.hints.empty()) {
        std::vector<RewriteRule> rules;
        for (const Identity& h : T.hints) rules.push_back({h.lhs, h.rhs});
        int size_cap = std::max({static_cast<int>(lhs.size()), static_cast<int>(rhs.size()),
                                 T.budget.max_term_size}) *
                       4;
        auto nl = normalize(lhs, rules, T.budget.max_steps, size_cap);
        auto nr = normalize(rhs, rules, T.budget.max_steps, size_cap);
        if (nl.complete && nr.complete && nl.normal_form == nr.normal_form)
            return Verdict::equal(join_proof(lhs, nl.steps, rhs, nr.steps),
                                  "joined by hint rewriting");
    }

    if (effort == Effort::Quick)
        return Verdict::unknown("undecided at quick effort (no search attempted)");

    DeriveResult found = derive(T, goal, System::D, T.budget);
    switch (found.status) {
        case DeriveResult::Status::Proved:
            return Verdict::equal(found.proof, found.note);
        case DeriveResult::Status::Refuted:
            return Verdict::distinct(std::move(*found.witness), found.note);
        case DeriveResult::Status::NotFound:
            break;
    }
    return Verdict::unknown(found.note.empty() ? "search and refutation budgets exhausted"
                                               : found.note);
}

} // namespace

Verdict sigma_equal(const Theory& T, const Term& lhs, const Term& rhs, Effort effort) {
    if (lhs == rhs) {
        auto proof = std::make_shared<Proof>();
        proof->steps.push_back({Identity{lhs, rhs}, Rule::D1, {}, {}, {}, {}, {}});
        return Verdict::equal(std::move(proof), "syntactically identical");
    }
    if (T.oracle == OracleKind::Generic) return generic_verdict(T, lhs, rhs, effort);
    if (T.oracle == OracleKind::Trivial)
        return Verdict::equal(trivial_equal_proof(T, lhs, rhs), "all terms are equal here");
    if (oracle_equal_exact(T, lhs, rhs))
        return Verdict::equal(exact_equal_proof(T, lhs, rhs), "joined by the variety's rewriting");
    return exact_distinct(T, lhs, rhs);
}

Verdict sigma_equal(const Theory& T, const Identity& id, Effort effort) {
    return sigma_equal(T, id.lhs, id.rhs, effort);
}

} // namespace termcalc
