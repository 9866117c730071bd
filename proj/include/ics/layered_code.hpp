#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ics/fraction.hpp"
#include "ics/layered_graph.hpp"

namespace ics {

using Symbol = std::uint32_t;

// Edge labelling of the transcript graph. Labels are a keyed hash of
// (seed, transcript, layer, edge), so any two holders of the seed agree.
class LayeredCode {
 public:
  LayeredCode(std::uint64_t seed, std::uint32_t alphabet_size, GraphParams params);

  // Degenerate code that labels every edge with `symbol`; used to exercise failure paths.
  static LayeredCode constant(Symbol symbol, std::uint32_t alphabet_size, GraphParams params);

  Symbol label(const Vertex& v, EdgeLabel e) const;

  std::uint64_t seed() const { return seed_; }
  std::uint32_t alphabet_size() const { return alphabet_size_; }
  const GraphParams& params() const { return params_; }
  bool is_constant() const { return constant_.has_value(); }

 private:
  std::uint64_t seed_;
  std::uint32_t alphabet_size_;
  GraphParams params_;
  std::optional<Symbol> constant_;
};

LayeredCode spawn_code(std::uint64_t seed, std::uint32_t alphabet_size, GraphParams params);

std::vector<Symbol> encode(const LayeredCode& code, const Vertex& start, std::span<const EdgeLabel> path);

Fraction suffix_distance(std::span<const Symbol> x, std::span<const Symbol> y);

struct DecodeResult {
  enum class Kind { Unique, Ambiguous, Empty };
  Kind kind = Kind::Empty;
  Vertex vertex;       // meaningful only for Unique
  std::size_t candidates = 0;

  bool unique() const { return kind == Kind::Unique; }
};

// Incremental list decoder. After pushing w[1..i] it holds, for every vertex
// of layer i, the smallest running deficit over paths reaching it; the vertex
// is in L_i iff that deficit is negative.
//
// Deficits are scaled by the denominator b of epsilon = a/b, so a matched
// symbol contributes -(b - a) and a mismatch contributes +a.
class ListDecoder {
 public:
  ListDecoder(const LayeredCode& code, Fraction epsilon);

  void push(Symbol s);
  int length() const { return layer_; }

  std::vector<Vertex> candidates() const;
  DecodeResult result() const;

 private:
  static constexpr std::int64_t kUnreachable = INT64_MAX / 4;

  const LayeredCode* code_;
  std::int64_t match_step_;
  std::int64_t mismatch_step_;
  int layer_ = 0;
  std::vector<std::int64_t> deficit_;
};

std::vector<Vertex> list_layer(const LayeredCode& code, std::span<const Symbol> w, Fraction epsilon, int i);
DecodeResult decode(const LayeredCode& code, std::span<const Symbol> w, Fraction epsilon);

struct DecodeQuality {
  int agreements = 0;  // |J|
  int bad = 0;         // indices in J where decoding misses v(x[1:i])
};

DecodeQuality decode_quality(const LayeredCode& code, std::span<const EdgeLabel> x, std::span<const Symbol> w,
                             Fraction epsilon);

// ---- exhaustive sensitivity check -----------------------------------------

struct SensitivityOptions {
  std::uint64_t word_budget = 1u << 20;  // max |alphabet|^depth
  int max_subset_bits = 12;              // subsets of L enumerated only when |L| <= this
  std::size_t max_witnesses = 8;
  bool stop_at_first = false;
};

struct PrefixTreeWitness {
  std::vector<Symbol> word;
  std::vector<std::vector<EdgeLabel>> paths;  // one root path per selected vertex
  int agreement = 0;
};

struct SensitivityReport {
  Fraction epsilon;
  int depth = 0;
  std::uint64_t checked_words = 0;
  std::uint64_t violation_count = 0;
  std::vector<PrefixTreeWitness> violations;  // first max_witnesses of violation_count

  bool passed() const { return violation_count == 0; }
};

SensitivityReport check_sensitivity_exhaustive(const LayeredCode& code, int depth, Fraction epsilon,
                                               const SensitivityOptions& options = {});

}  // namespace ics
