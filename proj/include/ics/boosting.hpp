#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ics/channel.hpp"
#include "ics/noiseless.hpp"

namespace ics {

// Rooted subtree of the protocol tree, stored as the set of non-root nodes
// (each node names the edge into it). Every add refreshes a recency stamp.
class EdgeSet {
 public:
  bool contains(const BitString& node) const { return node.empty() || nodes_.count(node) > 0; }
  // Adds the edge parent -> parent.b; the parent must already be in the set.
  bool add_edge(const BitString& parent, bool bit);
  // Adds the edges along `bits` starting below `from` and refreshes the root path to `from`.
  int add_path(const BitString& from, const std::vector<bool>& bits);

  std::size_t size() const { return nodes_.size(); }
  const std::map<BitString, std::uint64_t>& nodes() const { return nodes_; }

  // From the root, repeatedly step to the most recently touched child.
  BitString canonical_path() const;
  // Longest rooted path contained in both sets (walks while the common child is unique).
  BitString common_rooted_path(const EdgeSet& other) const;
  bool is_rooted_subtree() const;

 private:
  std::map<BitString, std::uint64_t> nodes_;
  std::uint64_t clock_ = 0;
};

// Fixed-length noiseless subprotocol that agrees on the longest common prefix
// of both parties' canonical paths: interleaved path lengths, then a
// fingerprint binary search over the common prefix length.
struct IntersectionLayout {
  int n0 = 2;
  int length_bits = 2;  // per party
  int fp_bits = 0;      // per party per search step
  int steps = 0;
  std::uint64_t seed = 0;

  int length() const { return 2 * length_bits + 2 * fp_bits * steps; }
};

IntersectionLayout intersection_layout(int n0, int fp_bits, int steps, std::uint64_t seed);
// Layout that spends a round budget: as many search steps as fit.
IntersectionLayout intersection_layout_for_budget(int n0, int rounds_budget, int fp_bits, std::uint64_t seed);

// Segment bits alternate Bob, Alice, Bob, ... starting at segment position 0.
bool intersection_bit(const IntersectionLayout& layout, Role role, const BitString& own_path,
                      const std::vector<bool>& segment_prefix);
// Agreed common length from a full segment transcript.
int intersection_length(const IntersectionLayout& layout, const std::vector<bool>& segment);

struct IntersectionResult {
  BitString path;  // Alice's view; equals Bob's when the lengths agree
  int length = 0;
  std::vector<bool> transcript;
};

IntersectionResult tree_intersection(const EdgeSet& ea, const EdgeSet& eb, int rounds_budget, int fp_bits,
                                     int n0, std::uint64_t seed);

// ---- inner protocol of one boosting iteration ------------------------------

struct ChunkLayout {
  IntersectionLayout search;
  int chunk = 1;
  int n_inner = 2;
  int header() const { return 1 + search.length(); }  // leading bit + search segment
};

ChunkLayout chunk_layout(int n0, int chunk, int fp_bits, int steps, std::uint64_t seed);

// One party's side of the iteration protocol: a leading 1, the search
// segment, then the next `chunk` bits of the outer protocol after the agreed
// prefix (one padding slot if the speaking order needs realigning; zeros past n0).
class ChunkParty : public PartyOracle {
 public:
  ChunkParty(const ChunkLayout& layout, const PartyOracle& outer, BitString own_path);
  Role role() const override { return outer_->role(); }
  int n0() const override { return layout_.n_inner; }
  bool next_bit(const BitString& prefix) const override;

 private:
  ChunkLayout layout_;
  const PartyOracle* outer_;
  BitString path_;
};

struct ChunkReading {
  int agreed_length = 0;
  BitString prefix;            // own canonical path cut to the agreed length
  std::vector<bool> chunk;     // outer-protocol bits after the prefix (within n0)
};

ChunkReading read_chunk(const ChunkLayout& layout, const BitString& own_path, const BitString& inner_transcript);

// ---- inner schemes ----------------------------------------------------------

struct InnerRun {
  PartyOutput alice;
  PartyOutput bob;
  std::int64_t flips = 0;
  std::int64_t bits = 0;
  int bound_violations = 0;
};

class InnerScheme {
 public:
  virtual ~InnerScheme() = default;
  virtual InnerRun simulate(const PartyOracle& alice, const PartyOracle& bob, int iteration) = 0;
};

struct Protocol16InnerConfig {
  Fraction epsilon{1, 4};  // inner session epsilon, K = n_inner / epsilon
  std::uint32_t alphabet_size = 64;
  Fraction code_epsilon{2, 5};
  std::uint64_t code_seed = 1;  // iteration i uses a code seed derived from this and i
  std::uint64_t ecc_seed = 1;
  int ecc_M = 0;
  Fraction ecc_epsilon{1, 20};
  AdversarySpec adversary;  // applied to every iteration with a derived seed
  std::uint64_t seed = 1;   // coin seeds
  bool keep_records = false;
};

// Runs each iteration through the full interactive coding scheme.
class Protocol16Inner : public InnerScheme {
 public:
  explicit Protocol16Inner(Protocol16InnerConfig cfg, std::shared_ptr<const EccCode> ecc = nullptr);
  InnerRun simulate(const PartyOracle& alice, const PartyOracle& bob, int iteration) override;
  const std::vector<RunRecord>& records() const { return records_; }

 private:
  Protocol16InnerConfig cfg_;
  std::shared_ptr<const EccCode> ecc_;
  std::vector<RunRecord> records_;
};

// Scripted outcomes per iteration and party.
struct MockOutcome {
  enum class Kind { Truth, TamperOther, Incomplete };
  Kind kind = Kind::Truth;
  double confidence = 1.0;
};

struct MockStep {
  MockOutcome alice;
  MockOutcome bob;
};

class MockInner : public InnerScheme {
 public:
  // TamperOther flips the other party's bits from inner position `tamper_from`
  // on (normally the chunk layout header). Iterations past the script are Incomplete.
  MockInner(std::vector<MockStep> script, int tamper_from) : script_(std::move(script)), tamper_from_(tamper_from) {}
  InnerRun simulate(const PartyOracle& alice, const PartyOracle& bob, int iteration) override;

 private:
  std::vector<MockStep> script_;
  int tamper_from_;
};

// ---- driver -------------------------------------------------------------------

using LeafWeights = std::map<BitString, double>;

struct BoostParams {
  int n0 = 8;
  int chunk_size = 2;
  int beta = 8;
  int fp_bits = 0;
  int search_steps = 0;
  std::uint64_t seed = 1;
};

int default_chunk_size(int n0);

struct BoostPartyState {
  EdgeSet edges;
  LeafWeights weights;
};

struct BoostPartyStep {
  bool used = false;  // inner output was complete
  int agreed_length = 0;
  int edges_added = 0;
  std::optional<BitString> vote;
  double confidence = 0;
};

struct IterationSummary {
  int iteration = 0;
  double corruption = 0;
  int bound_violations = 0;
  BoostPartyStep alice;
  BoostPartyStep bob;
};

IterationSummary boost_iteration(BoostPartyState& alice, BoostPartyState& bob, const PartyOracle& outer_alice,
                                 const PartyOracle& outer_bob, InnerScheme& inner, const BoostParams& params,
                                 int iteration);

struct BoostOutput {
  BitString transcript;
  double confidence = 0;
};

// Heaviest leaf (ties: lexicographically smallest); confidence is its weight
// minus all other weight, over beta, clamped at 0. Empty weights or beta < 1
// give an empty transcript with confidence 0.
BoostOutput boost_finalize(const LeafWeights& weights, int beta);

struct BoostResult {
  BitString truth;
  int n_inner = 0;
  std::vector<IterationSummary> iterations;
  BoostPartyState alice;
  BoostPartyState bob;
  BoostOutput alice_out;
  BoostOutput bob_out;
  int bound_violations = 0;

  bool success() const { return alice_out.transcript == truth && bob_out.transcript == truth; }
};

BoostResult run_boost(const PartyOracle& outer_alice, const PartyOracle& outer_bob, InnerScheme& inner,
                      const BoostParams& params);

}  // namespace ics
