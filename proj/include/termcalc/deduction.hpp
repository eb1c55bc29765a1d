// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "termcalc/proof.hpp"
#include "termcalc/term.hpp"
#include "termcalc/theory.hpp"

namespace termcalc {

/// Which derivation rules a proof or search may use.
enum class System {
    D,        // Axiom, D1..D5
    DRefined, // Axiom, D1..D3, D4e, D4f, D5e, D5f (side conditions vs the theory)
    SigmaR,   // Axiom, D1..D4, SigmaR1
    Any,      // all rules, including H1
};

std::string system_name(System s);
std::optional<System> system_from_name(const std::string& name);

/// Whether a rule may appear in proofs of the given system.
bool system_allows(System s, Rule r);

struct CheckResult {
    enum class Status { Valid, Invalid, Unknown } status = Status::Invalid;
    int failed_step = -1; // 0-based index of the offending step, -1 if none
    std::string reason;

    bool ok() const { return status == Status::Valid; }
};

/// Replays a proof step by step against the theory's axioms. Side
/// conditions of D4e/D4f/D5e/D5f/SigmaR1 are decided with the theory's
/// oracle; when the oracle cannot decide one, the result is Unknown rather
/// than Valid (checking fails closed). An optional goal pins the final
/// conclusion; an optional system restricts the rules allowed.
CheckResult check_proof(const Theory& T, const Proof& proof,
                        const std::optional<Identity>& goal = std::nullopt,
                        System system = System::Any);

struct DeriveResult {
    enum class Status { Proved, Refuted, NotFound } status = Status::NotFound;
    std::shared_ptr<const Proof> proof; // Proved
    std::optional<Witness> witness;     // Refuted
    std::string note;
};

/// Searches for a derivation of `goal` from the theory's axioms using only
/// the rules of `system`, within `budget`. Every returned proof replays
/// through check_proof. Refuted means a model of the axioms falsifies the
/// goal; NotFound means the budget ran out first.
DeriveResult derive(const Theory& T, const Identity& goal, System system, const Budget& budget);

/// Closure sample: all identities over terms of size at most
/// budget.max_term_size with variables x1..report_vars that the system's
/// rules reach from the axioms within budget.max_steps conclusion
/// attempts. Deterministic and sorted. Internal work uses one extra
/// variable and terms as large as the biggest axiom side so that axioms
/// still participate. Hypersubstitution steps are never sampled (their
/// image space is unbounded), and class-replacement premises are drawn
/// from the axioms, the generator pool, and derived pairs in the roles
/// the sampler tracks, so the sample is a sound lower bound of the full
/// closure.
std::vector<Identity> closure_sample(const Theory& T, System system, const Budget& budget,
                                     int report_vars = 3);

} // namespace termcalc
