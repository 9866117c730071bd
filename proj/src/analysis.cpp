#include "ics/analysis.hpp"

namespace ics {

const char* class_name(UpdateClass c) {
  switch (c) {
    case UpdateClass::Good: return "good";
    case UpdateClass::Neutral: return "neutral";
    case UpdateClass::Bad: return "bad";
  }
  return "?";
}

UpdateClass classify_update(const Guess& before, const Guess& after, const BitString& truth, const PartyOracle& party) {
  const Guess counterfactual = otimes_guess(before, op_target(truth, before.transcript), party);
  if (after == counterfactual) return UpdateClass::Good;
  if (after == before) return UpdateClass::Neutral;
  return UpdateClass::Bad;
}

bool potential_bound_holds(int psi, const Guess& g, const BitString& truth, int n0) {
  const int half = n0 / 2;
  if (psi >= half) return g.transcript == truth && g.weight >= psi - half;
  return g.transcript != truth && g.weight <= half - psi;
}

}  // namespace ics
