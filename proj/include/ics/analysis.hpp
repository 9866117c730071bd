#pragma once

#include "ics/protocol.hpp"

namespace ics {

enum class UpdateClass : std::uint8_t { Good, Neutral, Bad };
const char* class_name(UpdateClass c);

// Compares one case-specific ⊗ against the counterfactual
// before ⊗ op_target(truth, t(before)): Good if it lands on the same
// (transcript, weight), Neutral if nothing changed, Bad otherwise.
UpdateClass classify_update(const Guess& before, const Guess& after, const BitString& truth,
                            const PartyOracle& party);

// The potential bound tying the good-minus-bad count to the guess:
//   psi >= n0/2  =>  t = truth and w >= psi - n0/2
//   psi <  n0/2  =>  t != truth and w <= n0/2 - psi
bool potential_bound_holds(int psi, const Guess& g, const BitString& truth, int n0);

}  // namespace ics
