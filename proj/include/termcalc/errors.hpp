// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace termcalc {

/// Textual input (a term, identity, position, theory or proof file) could not
/// be parsed. `where()` is a 0-based character offset for inline strings, or a
/// 1-based line number for line-oriented files (see the message).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t where = 0)
        : std::runtime_error(what), where_(where) {}

    std::size_t where() const noexcept { return where_; }

private:
    std::size_t where_;
};

/// Structurally valid input violates a precondition: unknown symbol, arity
/// mismatch, position outside the term, replacement sites that are not an
/// antichain, patterns that are subterms of one another, and so on.
class ValidationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Strict-mode failure: a classification needed a definite oracle verdict and
/// got Unknown back.
class UnknownVerdictError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace termcalc
