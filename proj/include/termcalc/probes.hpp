// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "termcalc/hyper.hpp"
#include "termcalc/term.hpp"
#include "termcalc/theory.hpp"

namespace termcalc {

/// A hypersubstitution that maps some theory identity to one that fails in
/// the variety, together with the refuting interpretation.
struct SolidityCounterexample {
    Hypersubstitution hyper;
    Identity original;
    Identity transformed;
    Witness witness;
};

struct SolidityProbeResult {
    std::optional<SolidityCounterexample> counterexample;
    int hypers_tried = 0;
    int pairs_checked = 0;
    std::string note;
};

/// Applies every pool hypersubstitution to every given identity and asks the
/// oracle whether the image still holds; stops at the first refuted image.
/// Empty `ids` defaults to the theory's axioms. No counterexample within the
/// pool is evidence, not proof, of solidity.
SolidityProbeResult solidity_probe(const Theory& T, const std::vector<Identity>& ids,
                                   const std::vector<Hypersubstitution>& pool);

/// A replacement instance that breaks: valid premises whose composed
/// conclusion fails in the variety.
struct StabilityCounterexample {
    Identity base;        // t = s, holds in the variety
    Identity class_pair;  // r = v, holds
    Identity replacement; // u = w, holds
    Identity composed;    // the conclusion that fails
    Witness witness;
};

struct StabilityProbeResult {
    std::optional<StabilityCounterexample> counterexample;
    int samples_tried = 0;
    std::string note;
};

/// Samples replacement-rule instances with seeded randomness: builds valid
/// identities by rewriting with the axioms, picks equal subterm pairs on
/// both sides, composes, and tries to refute the result with enumerated
/// models of the theory. NoneFound within the sample budget is evidence,
/// not proof, of stability.
StabilityProbeResult stability_probe(const Theory& T, const Budget& budget, std::uint64_t seed);

} // namespace termcalc
