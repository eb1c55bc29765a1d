// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "termcalc/term.hpp"

namespace termcalc {

/// t with the subterm at p replaced by r. Throws ValidationError if p is not
/// a position of t.
Term replace_at(const Term& t, const Position& p, const Term& r);

/// Simultaneous replacement at several positions. The positions must be
/// pairwise incomparable (an antichain) and valid in t.
Term positional_compose(const Term& t, const std::vector<std::pair<Position, Term>>& sites);

/// Convenience: every position gets the same replacement.
Term positional_compose(const Term& t, const std::vector<Position>& ps, const Term& r);

/// Simultaneous replacement of every occurrence of each pattern by its
/// replacement. Patterns must be distinct and no pattern may be a subterm of
/// another. Occurrences inside the replacements are left alone.
Term inductive_compose(const Term& t, const std::vector<std::pair<Term, Term>>& rules);

/// Single-pattern form of inductive composition: t(r <- s).
Term inductive_compose(const Term& t, const Term& r, const Term& s);

/// t(x<index> <- r): substitution of one variable.
Term substitute_var(const Term& t, int index, const Term& r);

/// Simultaneous substitution: every variable with an entry in `images` is
/// replaced by its image in one pass, so images may mention the substituted
/// variables without being rewritten further.
Term substitute_vars(const Term& t, const std::map<int, Term>& images);

} // namespace termcalc
