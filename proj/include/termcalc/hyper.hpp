// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "termcalc/signature.hpp"
#include "termcalc/term.hpp"

namespace termcalc {

/// Maps each operation symbol to a term over x1..arity; symbols without an
/// entry map to themselves. Extends to whole terms via apply().
class Hypersubstitution {
public:
    Hypersubstitution() = default;

    /// Sets sigma(sym) = image. The image must only use variables
    /// x1..arity(sym); storing the identity image is allowed and kept.
    void set(const Signature& sig, const std::string& sym, Term image);

    const std::map<std::string, Term>& mapping() const { return mapping_; }

    /// sigma(sym), defaulting to sym(x1,...,xk) when unset.
    Term image(const std::string& sym, int arity) const;

    /// The extension to terms: variables stay fixed; an application
    /// f(t1,...,tk) becomes sigma(f) with xi replaced by the rewritten ti,
    /// simultaneously.
    Term apply(const Term& t) const;

    /// Composition: (this after inner)(f) = this.apply(inner(f)).
    Hypersubstitution after(const Signature& sig, const Hypersubstitution& inner) const;

    /// "f -> f(x2,x1), g -> g(x1)" — also accepts the compact form
    /// "f:f(x2,x1);g:g(x1)" used inside proof lines.
    static Hypersubstitution parse(const std::string& text, const Signature& sig);

    std::string str() const;
    /// Whitespace-free rendering for embedding in key=value tokens.
    std::string compact_str() const;

    bool operator==(const Hypersubstitution&) const = default;

private:
    std::map<std::string, Term> mapping_;
};

/// Every hypersubstitution whose images have depth at most max_depth, in
/// lexicographic order of the per-symbol images (symbols in signature
/// order). Generation stops once max_count entries exist; the count of
/// images per symbol grows doubly exponentially with depth, so callers
/// should keep max_depth small.
std::vector<Hypersubstitution> hyper_pool(const Signature& sig, int max_depth,
                                          std::size_t max_count = 100000);

} // namespace termcalc
