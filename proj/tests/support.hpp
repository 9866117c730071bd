#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "ics/layered_code.hpp"
#include "ics/noiseless.hpp"
#include "ics/protocol.hpp"
#include "ics/rng.hpp"

namespace ics::testkit {

// Random valid edge path from the root; appends that would exceed n0 are redrawn.
inline std::vector<EdgeLabel> random_path(Rng& rng, const GraphParams& g, int length) {
  std::vector<EdgeLabel> path;
  Vertex v = root_vertex();
  while (static_cast<int>(path.size()) < length) {
    const EdgeLabel e = kAllEdges[uniform_below(rng, 4)];
    Vertex next;
    if (!try_apply_edge(v, e, g, next)) continue;
    path.push_back(e);
    v = next;
  }
  return path;
}

inline std::vector<Symbol> random_word(Rng& rng, std::uint32_t alphabet, int length) {
  std::vector<Symbol> w(length);
  for (auto& s : w) s = static_cast<Symbol>(uniform_below(rng, alphabet));
  return w;
}

// Plain definition: max over suffix lengths of mismatches / length.
inline Fraction brute_suffix_distance(const std::vector<Symbol>& x, const std::vector<Symbol>& y) {
  Fraction best(0, 1);
  int mism = 0;
  const int n = static_cast<int>(x.size());
  for (int j = 1; j <= n; ++j) {
    if (x[n - j] != y[n - j]) ++mism;
    const Fraction f(mism, j);
    if (f > best) best = f;
  }
  return best;
}

// All vertices of layer i reached by a root path p with suffix distance of
// C(p) to w[0..i) below 1 - eps, by enumerating every path of length i.
inline std::set<Vertex> brute_list(const LayeredCode& code, const std::vector<Symbol>& w, Fraction eps, int i) {
  std::set<Vertex> out;
  const Fraction limit = Fraction(1, 1) - eps;
  const std::vector<Symbol> target(w.begin(), w.begin() + i);
  std::vector<EdgeLabel> path(i);
  std::uint64_t total = std::uint64_t{1} << (2 * i);
  for (std::uint64_t code_word = 0; code_word < total; ++code_word) {
    for (int k = 0; k < i; ++k) path[k] = static_cast<EdgeLabel>((code_word >> (2 * k)) & 3u);
    Vertex v = root_vertex();
    std::vector<Symbol> labels;
    bool ok = true;
    for (EdgeLabel e : path) {
      Vertex next;
      if (!try_apply_edge(v, e, code.params(), next)) {
        ok = false;
        break;
      }
      labels.push_back(code.label(v, e));
      v = next;
    }
    if (ok && brute_suffix_distance(labels, target) < limit) out.insert(v);
  }
  return out;
}

struct PartyPair {
  TableParty alice;
  TableParty bob;
  BitString truth;
};

inline PartyPair random_parties(Rng& rng, int n0) {
  const std::uint64_t seed = rng();
  TableParty a = random_tree_party(Role::Alice, n0, seed, rng());
  TableParty b = random_tree_party(Role::Bob, n0, seed, rng());
  BitString t = run_noiseless(a, b);
  return {std::move(a), std::move(b), t};
}

// A state reachable from the party's starting guess by good updates only
// ("1" for Alice after her opening move, empty for Bob).
inline Guess corridor_state(Rng& rng, const PartyOracle& party, const BitString& truth) {
  Guess g{party.role() == Role::Alice ? BitString::parse("1") : BitString(), 0};
  const int steps = static_cast<int>(uniform_below(rng, party.n0() / 2 + 4));
  for (int s = 0; s < steps; ++s) g = otimes_guess(g, op_target(truth, g.transcript), party);
  return g;
}

// Any transcript consistent with the party's own bits, with a random weight when complete.
inline Guess consistent_state(Rng& rng, const PartyOracle& party) {
  const int len = static_cast<int>(uniform_below(rng, party.n0() + 1));
  BitString t;
  while (t.size() < len) t.push_back(speaker_after(t.size()) == party.role() ? party.next_bit(t) : (rng() & 1));
  return {t, t.size() == party.n0() ? static_cast<int>(uniform_below(rng, 4)) : 0};
}

}  // namespace ics::testkit
