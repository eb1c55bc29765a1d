// SPDX-License-Identifier: Apache-2.0
#include "termcalc/signature.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "termcalc/errors.hpp"

namespace termcalc {

namespace {

bool is_identifier(const std::string& name) {
    if (name.empty()) {
        return false;
    }
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') {
        return false;
    }
    return std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

} // namespace

bool is_variable_lexeme(const std::string& name) {
    if (name.size() < 2 || name[0] != 'x' || name[1] == '0') {
        return false;
    }
    return std::all_of(name.begin() + 1, name.end(), [](unsigned char c) {
        return std::isdigit(c);
    });
}

void Signature::add_symbol(const std::string& name, int arity) {
    if (!is_identifier(name)) {
        throw ValidationError("invalid symbol name '" + name + "'");
    }
    if (is_variable_lexeme(name)) {
        throw ValidationError("'" + name + "' is reserved for variables");
    }
    if (arity < 0) {
        throw ValidationError("negative arity for symbol '" + name + "'");
    }
    auto [it, inserted] = symbols_.emplace(name, arity);
    if (!inserted && it->second != arity) {
        throw ValidationError("conflicting arities for symbol '" + name + "'");
    }
}

bool Signature::has_symbol(const std::string& name) const {
    return symbols_.count(name) != 0;
}

int Signature::arity(const std::string& name) const {
    auto it = symbols_.find(name);
    if (it == symbols_.end()) {
        throw ValidationError("unknown symbol '" + name + "'");
    }
    return it->second;
}

int Signature::max_arity() const {
    int m = 0;
    for (const auto& [name, arity] : symbols_) {
        m = std::max(m, arity);
    }
    return m;
}

Signature Signature::parse(const std::string& text) {
    Signature sig;
    std::istringstream in(text);
    std::string item;
    while (in >> item) {
        const std::size_t slash = item.find('/');
        if (slash == std::string::npos || slash + 1 == item.size()) {
            throw ParseError("expected '<symbol>/<arity>', got '" + item + "'");
        }
        const std::string name = item.substr(0, slash);
        const std::string digits = item.substr(slash + 1);
        if (digits.find_first_not_of("0123456789") != std::string::npos) {
            throw ParseError("invalid arity in '" + item + "'");
        }
        sig.add_symbol(name, std::stoi(digits));
    }
    if (sig.size() == 0) {
        throw ParseError("empty signature");
    }
    return sig;
}

std::string Signature::str() const {
    std::string out;
    for (const auto& [name, arity] : symbols_) {
        if (!out.empty()) {
            out += ' ';
        }
        out += name + "/" + std::to_string(arity);
    }
    return out;
}

} // namespace termcalc
