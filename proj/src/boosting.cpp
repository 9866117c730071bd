#include "ics/boosting.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "ics/errors.hpp"
#include "ics/rng.hpp"

namespace ics {

// ---- EdgeSet ------------------------------------------------------------------

bool EdgeSet::add_edge(const BitString& parent, bool bit) {
  if (!contains(parent)) throw InvariantViolation("edge added below a node outside the subtree: " + parent.str());
  auto [it, inserted] = nodes_.try_emplace(parent.appended(bit), 0);
  it->second = ++clock_;
  return inserted;
}

int EdgeSet::add_path(const BitString& from, const std::vector<bool>& bits) {
  if (!contains(from)) throw InvariantViolation("path added below a node outside the subtree: " + from.str());
  // The whole root path is refreshed so that it becomes the canonical one.
  for (int k = 1; k <= from.size(); ++k) nodes_[from.prefix(k)] = ++clock_;
  int added = 0;
  BitString cur = from;
  for (bool b : bits) {
    if (add_edge(cur, b)) ++added;
    cur.push_back(b);
  }
  return added;
}

BitString EdgeSet::canonical_path() const {
  BitString cur;
  while (true) {
    const auto c0 = nodes_.find(cur.appended(false));
    const auto c1 = nodes_.find(cur.appended(true));
    if (c0 == nodes_.end() && c1 == nodes_.end()) return cur;
    if (c1 == nodes_.end() || (c0 != nodes_.end() && c0->second > c1->second))
      cur.push_back(false);
    else
      cur.push_back(true);
  }
}

BitString EdgeSet::common_rooted_path(const EdgeSet& other) const {
  BitString cur;
  while (true) {
    const BitString n0 = cur.appended(false), n1 = cur.appended(true);
    const bool has0 = contains(n0) && other.contains(n0);
    const bool has1 = contains(n1) && other.contains(n1);
    if (has0 == has1) return cur;  // dead end, or the intersection is not a path here
    cur = has0 ? n0 : n1;
  }
}

bool EdgeSet::is_rooted_subtree() const {
  for (const auto& [node, stamp] : nodes_) {
    BitString parent = node;
    parent.pop_back();
    if (!contains(parent)) return false;
  }
  return true;
}

// ---- intersection subprotocol --------------------------------------------------

IntersectionLayout intersection_layout(int n0, int fp_bits, int steps, std::uint64_t seed) {
  if (n0 < 1) throw ConfigError("n0 must be positive");
  if (fp_bits < 0 || steps < 0) throw ConfigError("fingerprint parameters must be nonnegative");
  IntersectionLayout l;
  l.n0 = n0;
  l.length_bits = std::bit_width(static_cast<unsigned>(n0));
  l.fp_bits = fp_bits;
  l.steps = fp_bits > 0 ? steps : 0;
  l.seed = seed;
  return l;
}

IntersectionLayout intersection_layout_for_budget(int n0, int rounds_budget, int fp_bits, std::uint64_t seed) {
  IntersectionLayout l = intersection_layout(n0, fp_bits, 0, seed);
  if (rounds_budget < 2 * l.length_bits)
    throw BudgetTooSmall("intersection needs at least " + std::to_string(2 * l.length_bits) + " rounds");
  if (fp_bits > 0) l.steps = (rounds_budget - 2 * l.length_bits) / (2 * fp_bits);
  return l;
}

namespace {

struct SearchState {
  bool lengths_known = false;
  int len_alice = 0;
  int len_bob = 0;
  int lo = 0;
  int hi = 0;
};

int search_mid(int step, const SearchState& s) { return step == 0 ? s.hi : (s.lo + s.hi + 1) / 2; }

// Replays the length exchange and every completed search step of `seg`.
SearchState replay_search(const IntersectionLayout& l, const std::vector<bool>& seg) {
  SearchState s;
  const int n = static_cast<int>(seg.size());
  if (n < 2 * l.length_bits) return s;
  for (int i = 0; i < l.length_bits; ++i) {
    s.len_bob = (s.len_bob << 1) | (seg[2 * i] ? 1 : 0);
    s.len_alice = (s.len_alice << 1) | (seg[2 * i + 1] ? 1 : 0);
  }
  s.lengths_known = true;
  s.hi = std::min(s.len_alice, s.len_bob);
  for (int step = 0; step < l.steps; ++step) {
    const int base = 2 * l.length_bits + step * 2 * l.fp_bits;
    if (n < base + 2 * l.fp_bits) break;
    if (s.lo == s.hi) continue;
    const int mid = search_mid(step, s);
    bool equal = true;
    for (int j = 0; j < l.fp_bits; ++j) equal = equal && seg[base + 2 * j] == seg[base + 2 * j + 1];
    if (equal)
      s.lo = mid;
    else
      s.hi = mid - 1;
  }
  return s;
}

}  // namespace

bool intersection_bit(const IntersectionLayout& l, Role role, const BitString& own_path,
                      const std::vector<bool>& seg) {
  const int j = static_cast<int>(seg.size());
  if (j >= l.length()) throw std::out_of_range("intersection segment already complete");
  if ((j % 2 == 0) != (role == Role::Bob)) throw InvariantViolation("intersection bit requested from the wrong party");
  if (j < 2 * l.length_bits) {
    const int i = j / 2;
    return (own_path.size() >> (l.length_bits - 1 - i)) & 1;
  }
  const int step = (j - 2 * l.length_bits) / (2 * l.fp_bits);
  const int bit = ((j - 2 * l.length_bits) % (2 * l.fp_bits)) / 2;
  const SearchState s = replay_search(l, seg);
  if (s.lo == s.hi) return false;
  const int mid = search_mid(step, s);
  const std::uint64_t fp = hash_words({l.seed, static_cast<std::uint64_t>(step), static_cast<std::uint64_t>(mid),
                                       own_path.prefix(mid).value()});
  return (fp >> bit) & 1u;
}

int intersection_length(const IntersectionLayout& l, const std::vector<bool>& seg) {
  if (static_cast<int>(seg.size()) != l.length()) throw LengthMismatch("intersection segment has wrong length");
  const SearchState s = replay_search(l, seg);
  return l.steps == 0 ? s.hi : s.lo;
}

IntersectionResult tree_intersection(const EdgeSet& ea, const EdgeSet& eb, int rounds_budget, int fp_bits, int n0,
                                     std::uint64_t seed) {
  const IntersectionLayout l = intersection_layout_for_budget(n0, rounds_budget, fp_bits, seed);
  const BitString pa = ea.canonical_path(), pb = eb.canonical_path();
  IntersectionResult r;
  for (int j = 0; j < l.length(); ++j) {
    const Role role = j % 2 == 0 ? Role::Bob : Role::Alice;
    r.transcript.push_back(intersection_bit(l, role, role == Role::Alice ? pa : pb, r.transcript));
  }
  r.length = intersection_length(l, r.transcript);
  r.path = pa.prefix(r.length);
  return r;
}

// ---- chunk protocol -----------------------------------------------------------

ChunkLayout chunk_layout(int n0, int chunk, int fp_bits, int steps, std::uint64_t seed) {
  if (chunk < 1) throw ConfigError("chunk size must be >= 1");
  ChunkLayout c;
  c.search = intersection_layout(n0, fp_bits, steps, seed);
  c.chunk = chunk;
  c.n_inner = c.header() + 1 + chunk;
  if (c.n_inner % 2) ++c.n_inner;
  return c;
}

namespace {

std::vector<bool> bits_of(const BitString& t, int from, int to) {
  std::vector<bool> out;
  for (int i = from; i < to; ++i) out.push_back(t.bit(i));
  return out;
}

int chunk_start(const ChunkLayout& l, int agreed) {
  const int h = l.header();
  return h + (speaker_after(agreed) == speaker_after(h) ? 0 : 1);
}

}  // namespace

ChunkParty::ChunkParty(const ChunkLayout& layout, const PartyOracle& outer, BitString own_path)
    : layout_(layout), outer_(&outer), path_(std::move(own_path)) {
  if (outer.n0() != layout.search.n0) throw ConfigError("chunk layout built for a different n0");
}

bool ChunkParty::next_bit(const BitString& prefix) const {
  const int pos = prefix.size();
  if (pos >= layout_.n_inner) throw std::out_of_range("next_bit on complete transcript");
  if (pos == 0) return true;
  const int h = layout_.header();
  if (pos < h) return intersection_bit(layout_.search, role(), path_, bits_of(prefix, 1, pos));
  const int agreed = intersection_length(layout_.search, bits_of(prefix, 1, h));
  const int start = chunk_start(layout_, agreed);
  const int t = pos - start;
  if (t < 0 || t >= layout_.chunk || agreed + t >= outer_->n0()) return false;
  BitString outer_prefix = path_.prefix(agreed);
  for (int i = start; i < pos; ++i) outer_prefix.push_back(prefix.bit(i));
  return outer_->next_bit(outer_prefix);
}

ChunkReading read_chunk(const ChunkLayout& layout, const BitString& own_path, const BitString& t) {
  if (t.size() != layout.n_inner) throw LengthMismatch("inner transcript is incomplete");
  ChunkReading r;
  r.agreed_length = intersection_length(layout.search, bits_of(t, 1, layout.header()));
  if (r.agreed_length > own_path.size()) throw InvariantViolation("agreed length exceeds own canonical path");
  r.prefix = own_path.prefix(r.agreed_length);
  const int start = chunk_start(layout, r.agreed_length);
  for (int i = 0; i < layout.chunk && r.agreed_length + i < layout.search.n0; ++i) r.chunk.push_back(t.bit(start + i));
  return r;
}

// ---- inner schemes --------------------------------------------------------------

Protocol16Inner::Protocol16Inner(Protocol16InnerConfig cfg, std::shared_ptr<const EccCode> ecc)
    : cfg_(std::move(cfg)), ecc_(std::move(ecc)) {
  if (!ecc_) {
    EccBuildOptions opt;
    opt.M = cfg_.ecc_M;
    ecc_ = std::make_shared<const EccCode>(build_ecc(cfg_.alphabet_size, cfg_.ecc_epsilon, cfg_.ecc_seed, opt));
  }
}

InnerRun Protocol16Inner::simulate(const PartyOracle& alice, const PartyOracle& bob, int iteration) {
  SessionConfig c;
  c.n0 = alice.n0();
  c.epsilon = cfg_.epsilon;
  c.alphabet_size = cfg_.alphabet_size;
  const auto it = static_cast<std::uint64_t>(iteration);
  // Fresh code per iteration, so a decoding failure is not replayed forever
  // when the edge sets (and hence the inner protocol) stop changing.
  c.code_seed = derive_seed(cfg_.code_seed, it);
  c.code_epsilon = cfg_.code_epsilon;
  c.ecc_seed = ecc_->seed();
  c.ecc_M = ecc_->M();
  c.ecc_epsilon = ecc_->params().epsilon;
  c.alice_seed = derive_seed(cfg_.seed, 2 * it);
  c.bob_seed = derive_seed(cfg_.seed, 2 * it + 1);
  c.adversary = cfg_.adversary;
  c.adversary.seed = derive_seed(cfg_.adversary.seed, it);

  SessionSetup s;
  s.config = c;
  s.K = resolved_K(c);
  s.code = std::make_shared<const LayeredCode>(spawn_code(c.code_seed, c.alphabet_size, session_graph(c.n0, s.K)));
  s.ecc = ecc_;
  // Non-owning handles: the oracles outlive the session.
  s.alice = std::shared_ptr<const PartyOracle>(std::shared_ptr<const PartyOracle>(), &alice);
  s.bob = std::shared_ptr<const PartyOracle>(std::shared_ptr<const PartyOracle>(), &bob);
  s.truth = run_noiseless(alice, bob);

  RunRecord rec = run_session(s);
  InnerRun out;
  out.alice = rec.alice.output;
  out.bob = rec.bob.output;
  out.flips = rec.total_flips;
  out.bits = std::int64_t{rec.K} * rec.M;
  out.bound_violations = rec.bound_violations;
  if (cfg_.keep_records) records_.push_back(std::move(rec));
  return out;
}

namespace {

// Flips every bit the wrapped party sends from `from` onwards.
class TamperedParty : public PartyOracle {
 public:
  TamperedParty(const PartyOracle& inner, int from) : inner_(&inner), from_(from) {}
  Role role() const override { return inner_->role(); }
  int n0() const override { return inner_->n0(); }
  bool next_bit(const BitString& prefix) const override {
    return inner_->next_bit(prefix) != (prefix.size() >= from_);
  }

 private:
  const PartyOracle* inner_;
  int from_;
};

}  // namespace

InnerRun MockInner::simulate(const PartyOracle& alice, const PartyOracle& bob, int iteration) {
  const MockStep step = iteration - 1 < static_cast<int>(script_.size())
                            ? script_[iteration - 1]
                            : MockStep{{MockOutcome::Kind::Incomplete, 0}, {MockOutcome::Kind::Incomplete, 0}};
  auto outcome = [&](const MockOutcome& o, Role self) {
    PartyOutput out;
    out.confidence = Fraction::from_double(o.confidence);
    switch (o.kind) {
      case MockOutcome::Kind::Truth: out.transcript = run_noiseless(alice, bob); break;
      case MockOutcome::Kind::TamperOther:
        if (self == Role::Alice)
          out.transcript = run_noiseless(alice, TamperedParty(bob, tamper_from_));
        else
          out.transcript = run_noiseless(TamperedParty(alice, tamper_from_), bob);
        break;
      case MockOutcome::Kind::Incomplete: break;
    }
    return out;
  };
  InnerRun r;
  r.alice = outcome(step.alice, Role::Alice);
  r.bob = outcome(step.bob, Role::Bob);
  return r;
}

// ---- driver ---------------------------------------------------------------------

int default_chunk_size(int n0) {
  const double l = std::log2(static_cast<double>(std::max(n0, 2)));
  const int c = static_cast<int>(std::ceil(l * l * l * l));
  return std::min(n0, std::max(4, c));
}

IterationSummary boost_iteration(BoostPartyState& alice, BoostPartyState& bob, const PartyOracle& outer_alice,
                                 const PartyOracle& outer_bob, InnerScheme& inner, const BoostParams& params,
                                 int iteration) {
  const ChunkLayout layout = chunk_layout(params.n0, params.chunk_size, params.fp_bits, params.search_steps,
                                          derive_seed(params.seed, static_cast<std::uint64_t>(iteration)));
  const BitString path_a = alice.edges.canonical_path();
  const BitString path_b = bob.edges.canonical_path();
  const ChunkParty ca(layout, outer_alice, path_a);
  const ChunkParty cb(layout, outer_bob, path_b);
  const InnerRun run = inner.simulate(ca, cb, iteration);

  IterationSummary s;
  s.iteration = iteration;
  s.bound_violations = run.bound_violations;
  s.corruption = run.bits ? static_cast<double>(run.flips) / static_cast<double>(run.bits) : 0.0;
  auto absorb = [&](BoostPartyState& st, const PartyOracle& outer, const BitString& path, const PartyOutput& out,
                    BoostPartyStep& step) {
    if (out.transcript.size() != layout.n_inner) return;
    const ChunkReading reading = read_chunk(layout, path, out.transcript);
    step.used = true;
    step.agreed_length = reading.agreed_length;
    step.edges_added = st.edges.add_path(reading.prefix, reading.chunk);
    BitString extended = reading.prefix;
    for (bool b : reading.chunk) extended.push_back(b);
    if (!consistent(outer, extended)) throw InvariantViolation("chunk edges contradict the party's own input");
    if (reading.prefix.size() == params.n0) {
      step.confidence = out.confidence.to_double();
      st.weights[reading.prefix] += step.confidence;
      step.vote = reading.prefix;
    }
  };
  absorb(alice, outer_alice, path_a, run.alice, s.alice);
  absorb(bob, outer_bob, path_b, run.bob, s.bob);
  return s;
}

BoostOutput boost_finalize(const LeafWeights& weights, int beta) {
  BoostOutput out;
  if (beta < 1 || weights.empty()) return out;
  double total = 0;
  auto best = weights.begin();
  for (auto it = weights.begin(); it != weights.end(); ++it) {
    total += it->second;
    if (it->second > best->second) best = it;
  }
  out.transcript = best->first;
  const double rest = total - best->second;
  out.confidence = std::max(0.0, (best->second - rest) / beta);
  return out;
}

BoostResult run_boost(const PartyOracle& outer_alice, const PartyOracle& outer_bob, InnerScheme& inner,
                      const BoostParams& params) {
  if (params.chunk_size < 1) throw ConfigError("chunk size must be >= 1");
  BoostResult r;
  r.truth = run_noiseless(outer_alice, outer_bob);
  r.n_inner = chunk_layout(params.n0, params.chunk_size, params.fp_bits, params.search_steps, 0).n_inner;
  for (int i = 1; i <= params.beta; ++i) {
    r.iterations.push_back(boost_iteration(r.alice, r.bob, outer_alice, outer_bob, inner, params, i));
    r.bound_violations += r.iterations.back().bound_violations;
  }
  r.alice_out = boost_finalize(r.alice.weights, params.beta);
  r.bob_out = boost_finalize(r.bob.weights, params.beta);
  return r;
}

}  // namespace ics
