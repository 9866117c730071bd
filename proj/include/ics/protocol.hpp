#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ics/ecc.hpp"
#include "ics/layered_code.hpp"
#include "ics/noiseless.hpp"
#include "ics/rng.hpp"

namespace ics {

// ---- update algebra ---------------------------------------------------------

// Lengths on which a party's next-bit function is defined: even lengths < n0
// for Alice, odd lengths < n0 for Bob. -1 counts as odd.
bool in_turn_set(Role role, int length, int n0);

// The instruction a party gives to extend T: Back if T contradicts its input,
// its next bit if it is to speak, 1 otherwise.
EdgeLabel op_party(const PartyOracle& party, const BitString& t);

// The instruction that moves T one step towards the complete transcript target.
EdgeLabel op_target(const BitString& target, const BitString& t);

// Transcript guess and weight, the observable part of (U, w).
struct Guess {
  BitString transcript;
  int weight = 0;
  friend bool operator==(const Guess&, const Guess&) = default;
};

// The two edges (U, w) ⊗ δ̂ appends and the resulting weight.
struct OtimesStep {
  EdgeLabel first;
  EdgeLabel second;
  int weight;
};

OtimesStep otimes_step(const Guess& g, EdgeLabel delta_hat, const PartyOracle& party);

// Apply ⊗ on the observable state only.
Guess otimes_guess(const Guess& g, EdgeLabel delta_hat, const PartyOracle& party);

// Full update sequence U with the vertex trail v(U[1..i]) and weight w.
class UpdateState {
 public:
  explicit UpdateState(GraphParams graph);

  const std::vector<EdgeLabel>& edges() const { return edges_; }
  const Vertex& head() const { return trail_.back(); }
  const Vertex& vertex_after(std::size_t n_edges) const { return trail_[n_edges]; }
  const BitString& transcript() const { return head().transcript; }
  int weight() const { return weight_; }
  std::size_t pairs() const { return edges_.size() / 2; }
  Guess guess() const { return {transcript(), weight_}; }
  const GraphParams& graph() const { return graph_; }

  void append(EdgeLabel e);
  void set_weight(int w) { weight_ = w; }

  // Labels of the last appended pair, C(U)[|U|].
  SymbolPair last_pair_labels(const LayeredCode& code) const;

 private:
  GraphParams graph_;
  std::vector<EdgeLabel> edges_;
  std::vector<Vertex> trail_;
  int weight_ = 0;
};

void otimes(UpdateState& state, EdgeLabel delta_hat, const PartyOracle& party);

// ---- party state machine -----------------------------------------------------

struct SessionContext {
  const LayeredCode* code = nullptr;
  const EccCode* ecc = nullptr;
  Fraction code_epsilon{2, 5};  // decoder epsilon for the layered code
  int n0 = 2;
  int K = 2;
};

// Graph sized for a session of K messages: U reaches 2K + 2 base edges.
GraphParams session_graph(int n0, int K);

enum class CaseTaken : std::uint8_t { Opening, Case1, Case2Unknown, Case2Vote, Case2Answer, Case3 };
const char* case_name(CaseTaken c);

struct RoundResult {
  CaseTaken taken = CaseTaken::Case3;
  int distance = 0;               // bit distance behind the case decision (M if none)
  bool coin = false;              // whether the probabilistic branch fired
  EdgeLabel applied = EdgeLabel::Stay;  // instruction fed to the case-specific ⊗
  Guess before;
  Guess after;
  SymbolPair reply_pair;
  Instruction reply_instruction = Instruction::Ask;
  BitVec reply;
};

struct PartyOutput {
  BitString transcript;
  Fraction confidence{0, 1};
};

class Party {
 public:
  Party(Role role, const PartyOracle& oracle, const SessionContext& ctx, std::uint64_t coin_seed);

  // Alice's opening move: U = •1, P = C(•1), sends ECC(C(•1), ?).
  RoundResult first_message();

  // Receive one (possibly corrupted) payload and produce the reply.
  RoundResult receive(const BitVec& m);

  PartyOutput output() const;

  Role role() const { return role_; }
  const UpdateState& state() const { return state_; }
  const std::vector<SymbolPair>& received_log() const { return log_; }  // P
  bool asked() const { return asked_; }
  int rounds() const { return rounds_; }
  const PartyOracle& oracle() const { return *oracle_; }

 private:
  void log_pair(SymbolPair z);
  BitVec send(SymbolPair z, Instruction d, RoundResult& r);
  void check_invariants() const;
  bool coin(std::int64_t numerator, std::uint64_t denominator);

  Role role_;
  const PartyOracle* oracle_;
  SessionContext ctx_;
  Rng rng_;
  UpdateState state_;
  std::vector<SymbolPair> log_;
  ListDecoder decoder_;
  bool asked_ = false;
  int rounds_ = 0;
};

}  // namespace ics
