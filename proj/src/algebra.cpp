// SPDX-License-Identifier: Apache-2.0
#include "termcalc/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "termcalc/compose.hpp"
#include "termcalc/errors.hpp"

namespace termcalc {

namespace {

// carrier^arity, with overflow-free iteration (sizes here are tiny).
std::size_t table_length(int carrier, int arity) {
    std::size_t len = 1;
    for (int i = 0; i < arity; ++i) len *= static_cast<std::size_t>(carrier);
    return len;
}

std::size_t flat_index(int carrier, const std::vector<int>& args) {
    std::size_t idx = 0;
    for (int a : args) idx = idx * static_cast<std::size_t>(carrier) + static_cast<std::size_t>(a);
    return idx;
}

} // namespace

int FiniteAlgebra::apply(const std::string& sym, const std::vector<int>& args) const {
    auto it = ops.find(sym);
    if (it == ops.end()) throw ValidationError("algebra has no operation '" + sym + "'");
    int ar = sig.arity(sym);
    if (static_cast<int>(args.size()) != ar)
        throw ValidationError("operation '" + sym + "' expects " + std::to_string(ar) + " arguments, got " +
                              std::to_string(args.size()));
    for (int a : args)
        if (a < 0 || a >= carrier) throw ValidationError("argument out of carrier range");
    return it->second[flat_index(carrier, args)];
}

void FiniteAlgebra::validate() const {
    if (carrier < 1) throw ValidationError("carrier size must be at least 1");
    for (const auto& [sym, ar] : sig.symbols()) {
        auto it = ops.find(sym);
        if (it == ops.end()) throw ValidationError("missing table for operation '" + sym + "'");
        std::size_t want = table_length(carrier, ar);
        if (it->second.size() != want)
            throw ValidationError("table for '" + sym + "' has " + std::to_string(it->second.size()) +
                                  " entries, expected " + std::to_string(want));
        for (int v : it->second)
            if (v < 0 || v >= carrier) throw ValidationError("table entry out of carrier range in '" + sym + "'");
    }
    for (const auto& [sym, table] : ops)
        if (!sig.has_symbol(sym)) throw ValidationError("table for unknown operation '" + sym + "'");
}

FiniteAlgebra FiniteAlgebra::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("carrier") || !j.contains("ops"))
        throw ParseError("algebra JSON must be an object with 'carrier' and 'ops'");
    FiniteAlgebra a;
    if (!j["carrier"].is_number_integer()) throw ParseError("'carrier' must be an integer");
    a.carrier = j["carrier"].get<int>();
    if (a.carrier < 1) throw ParseError("'carrier' must be at least 1");
    if (!j["ops"].is_object()) throw ParseError("'ops' must be an object");
    for (auto& [sym, table] : j["ops"].items()) {
        if (!table.is_array()) throw ParseError("table for '" + sym + "' must be an array");
        std::vector<int> entries;
        entries.reserve(table.size());
        for (auto& v : table) {
            if (!v.is_number_integer()) throw ParseError("table entries must be integers in '" + sym + "'");
            entries.push_back(v.get<int>());
        }
        // Recover the arity from the table length: carrier^arity entries.
        int arity = 0;
        std::size_t len = 1;
        while (len < entries.size()) {
            len *= static_cast<std::size_t>(a.carrier);
            ++arity;
            if (arity > 16) break;
        }
        if (a.carrier == 1) {
            // All tables have length 1; arity is ambiguous, default to the
            // smallest that fits (0 for length 1).
            if (entries.size() != 1) throw ParseError("table for '" + sym + "' has impossible length");
            arity = 0;
        } else if (len != entries.size()) {
            throw ParseError("table for '" + sym + "' has length " + std::to_string(entries.size()) +
                             ", not a power of the carrier size");
        }
        a.sig.add_symbol(sym, arity);
        a.ops[sym] = std::move(entries);
    }
    a.validate();
    return a;
}

FiniteAlgebra FiniteAlgebra::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open algebra file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string FiniteAlgebra::to_json_text() const {
    nlohmann::json j;
    j["carrier"] = carrier;
    j["ops"] = nlohmann::json::object();
    for (const auto& [sym, table] : ops) j["ops"][sym] = table;
    return j.dump(2);
}

int evaluate(const FiniteAlgebra& algebra, const Term& t, const Assignment& env) {
    if (t.is_var()) {
        auto it = env.find(t.var_index());
        if (it == env.end())
            throw ValidationError("unassigned variable x" + std::to_string(t.var_index()));
        if (it->second < 0 || it->second >= algebra.carrier)
            throw ValidationError("assignment out of carrier range");
        return it->second;
    }
    std::vector<int> args;
    args.reserve(t.children().size());
    for (const Term& c : t.children()) args.push_back(evaluate(algebra, c, env));
    return algebra.apply(t.symbol(), args);
}

namespace {

// Iterates all assignments over `vars` (sorted ascending), last variable
// varying fastest, calling fn until it returns false.
template <typename Fn>
void for_each_assignment(const std::vector<int>& vars, int carrier, Fn&& fn) {
    std::vector<int> values(vars.size(), 0);
    for (;;) {
        Assignment env;
        for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = values[i];
        if (!fn(env)) return;
        std::size_t i = values.size();
        while (i > 0) {
            --i;
            if (++values[i] < carrier) break;
            values[i] = 0;
            if (i == 0) return;
        }
        if (vars.empty()) return;
    }
}

} // namespace

SatisfactionResult satisfies(const FiniteAlgebra& algebra, const Identity& id) {
    std::vector<int> vars;
    {
        auto l = var_indices(id.lhs);
        auto r = var_indices(id.rhs);
        vars.assign(l.begin(), l.end());
        for (int v : r)
            if (!std::binary_search(l.begin(), l.end(), v)) vars.push_back(v);
        std::sort(vars.begin(), vars.end());
    }
    SatisfactionResult result;
    for_each_assignment(vars, algebra.carrier, [&](const Assignment& env) {
        if (evaluate(algebra, id.lhs, env) != evaluate(algebra, id.rhs, env)) {
            result.holds = false;
            result.failing = env;
            return false;
        }
        return true;
    });
    return result;
}

bool satisfies_all(const FiniteAlgebra& algebra, const std::vector<Identity>& ids) {
    for (const Identity& id : ids)
        if (!satisfies(algebra, id).holds) return false;
    return true;
}

std::vector<int> essential_vars_in_algebra(const FiniteAlgebra& algebra, const Term& t) {
    auto var_set = var_indices(t);
    std::vector<int> vars(var_set.begin(), var_set.end());
    std::vector<int> essential;
    for (int x : vars) {
        bool found = false;
        for_each_assignment(vars, algebra.carrier, [&](const Assignment& env) {
            int base = evaluate(algebra, t, env);
            Assignment changed = env;
            for (int v = 0; v < algebra.carrier; ++v) {
                changed[x] = v;
                if (evaluate(algebra, t, changed) != base) {
                    found = true;
                    return false;
                }
            }
            return true;
        });
        if (found) essential.push_back(x);
    }
    return essential;
}

std::vector<Position> essential_positions_in_algebra(const FiniteAlgebra& algebra, const Term& t) {
    std::vector<Position> result;
    int fresh = fresh_var_index(t);
    for (const Position& p : positions(t)) {
        Term replaced = replace_at(t, p, Term::var(fresh));
        auto ess = essential_vars_in_algebra(algebra, replaced);
        if (std::binary_search(ess.begin(), ess.end(), fresh)) result.push_back(p);
    }
    return result;
}

ModelEnumerator::ModelEnumerator(Signature sig, std::vector<Identity> axioms, int max_size)
    : sig_(std::move(sig)), axioms_(std::move(axioms)), max_size_(max_size) {
    if (max_size_ < 1) throw ValidationError("model size bound must be at least 1");
    size_ = 1;
    fresh_size_ = true;
}

void ModelEnumerator::reset_tables() {
    table_shapes_.clear();
    tables_.clear();
    for (const auto& [sym, ar] : sig_.symbols()) {
        std::size_t len = table_length(size_, ar);
        table_shapes_.emplace_back(sym, static_cast<int>(len));
        tables_.emplace_back(len, 0);
    }
}

bool ModelEnumerator::advance_tables() {
    // Odometer over the concatenation of all tables, last entry fastest.
    for (std::size_t ti = tables_.size(); ti > 0;) {
        --ti;
        auto& table = tables_[ti];
        for (std::size_t i = table.size(); i > 0;) {
            --i;
            if (++table[i] < size_) return true;
            table[i] = 0;
        }
    }
    return false;
}

std::optional<FiniteAlgebra> ModelEnumerator::next() {
    while (size_ <= max_size_) {
        if (fresh_size_) {
            reset_tables();
            fresh_size_ = false;
        } else if (!advance_tables()) {
            ++size_;
            fresh_size_ = true;
            continue;
        }
        FiniteAlgebra a;
        a.carrier = size_;
        a.sig = sig_;
        for (std::size_t i = 0; i < table_shapes_.size(); ++i) a.ops[table_shapes_[i].first] = tables_[i];
        if (satisfies_all(a, axioms_)) return a;
    }
    return std::nullopt;
}

std::vector<FiniteAlgebra> enumerate_models(const Signature& sig, const std::vector<Identity>& axioms,
                                            int max_size) {
    std::vector<FiniteAlgebra> models;
    ModelEnumerator e(sig, axioms, max_size);
    while (auto m = e.next()) models.push_back(std::move(*m));
    return models;
}

} // namespace termcalc
