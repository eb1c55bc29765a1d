// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "termcalc/position.hpp"
#include "termcalc/term.hpp"

namespace termcalc {

/// Derivation rules. The e/f variants carry essential/fictive side
/// conditions checked against the ambient theory.
enum class Rule {
    Axiom,   // conclusion is a theory axiom or its mirror image
    D1,      // reflexivity: t = t
    D2,      // symmetry
    D3,      // transitivity
    D4,      // substitute one variable by a term, on both sides
    D4e,     // D4, variable essential in the premise's left side
    D4f,     // substitute a fictive variable on the left side only
    D5,      // replace the subterm at one position of a host term
    D5e,     // D5 at an essential position of the host
    D5f,     // replacement at a fictive position, no premise needed
    SigmaR1, // replace a class of equivalent subterms on each side
    H1,      // apply a hypersubstitution to both sides
};

std::string rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);

struct ProofStep {
    Identity conclusion;
    Rule rule = Rule::D1;
    std::vector<int> premises; // indices of earlier steps, 0-based

    std::optional<int> var;          // D4/D4e/D4f: substituted variable
    std::optional<Term> term;        // D4/D4e/D4f: replacement term
    std::optional<Position> pos;     // D5/D5e/D5f: replacement position
    // H1: compact hypersubstitution text ("f:f(x2,x1);g:x1"); parsed against
    // the theory signature when the proof is checked.
    std::optional<std::string> hyper_text;

    bool operator==(const ProofStep&) const = default;
};

/// A numbered sequence of steps; the last step's conclusion is the proved
/// identity. Text form, one step per line:
///
///     1: f(x1,x1) = x1 ; Axiom
///     2: x1 = f(x1,x1) ; D2 premises=1
///     3: f(x2,x2) = x2 ; D4 premises=1 var=x1 term=x2
///
/// '#' starts a comment line. Premises are 1-based in text.
struct Proof {
    std::vector<ProofStep> steps;

    const Identity& conclusion() const;
    std::string str() const;
    static Proof parse(const std::string& text);
    static Proof load(const std::string& path);

    bool operator==(const Proof&) const = default;
};

std::string step_str(const ProofStep& step, int index);

} // namespace termcalc
