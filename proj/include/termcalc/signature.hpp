// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

namespace termcalc {

/// A finite set of operation symbols with fixed arities. Symbols are
/// identifiers; the lexemes x1, x2, ... are reserved for variables.
class Signature {
public:
    Signature() = default;

    /// Throws ValidationError on duplicate or reserved names and negative
    /// arities.
    void add_symbol(const std::string& name, int arity);

    bool has_symbol(const std::string& name) const;
    int arity(const std::string& name) const; // throws if unknown

    /// Symbols sorted by name (the canonical enumeration order).
    const std::map<std::string, int>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    int max_arity() const;

    /// True while every arity is at most 9, i.e. positions may be rendered as
    /// digit runs.
    bool single_digit_positions() const { return max_arity() <= 9; }

    /// Parses "f/2" or "and/2 or/2 not/1".
    static Signature parse(const std::string& text);
    std::string str() const;

    bool operator==(const Signature&) const = default;

private:
    std::map<std::string, int> symbols_;
};

/// True for the reserved variable lexemes: 'x' followed by a positive
/// integer with no leading zero.
bool is_variable_lexeme(const std::string& name);

} // namespace termcalc
