#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ics/bits.hpp"
#include "ics/fraction.hpp"
#include "ics/layered_code.hpp"

namespace ics {

// Second field of a wire message: an instruction bit, a back-step, or a question.
enum class Instruction : std::uint8_t { Zero = 0, One = 1, Back = 2, Ask = 3 };

inline constexpr std::array<Instruction, 4> kAllInstructions = {Instruction::Zero, Instruction::One,
                                                                 Instruction::Back, Instruction::Ask};
char instruction_char(Instruction d);  // '0', '1', '<', '?'

struct SymbolPair {
  Symbol first = 0;
  Symbol second = 0;
  friend bool operator==(const SymbolPair&, const SymbolPair&) = default;
};

struct EccParams {
  std::uint32_t alphabet_size = 2;
  Fraction epsilon{1, 20};
  int M = 48;
};

void validate(const EccParams& params);

// Integer thresholds derived from (M, epsilon).
int same_pair_threshold(const EccParams& p);   // ceil(2M/3)
int cross_pair_threshold(const EccParams& p);  // ceil((1/2 - eps) M)
// Distance test for Case 1: dist/M < 1/3.
inline bool within_third(int dist, int M) { return 3 * dist < M; }
// Distance test for Case 2: dist/M <= 1/6 - eps.
bool within_sixth_minus_eps(int dist, const EccParams& p);

// Codeword table ECC(z, d) = E(z) xor R(d). Rows are ordered by
// (pair index, instruction), pair index = first * |alphabet| + second.
class EccCode {
 public:
  EccCode(EccParams params, std::uint64_t seed, std::vector<BitVec> table);

  const EccParams& params() const { return params_; }
  std::uint64_t seed() const { return seed_; }
  int M() const { return params_.M; }
  std::size_t num_pairs() const { return static_cast<std::size_t>(params_.alphabet_size) * params_.alphabet_size; }

  std::size_t pair_index(SymbolPair z) const { return static_cast<std::size_t>(z.first) * params_.alphabet_size + z.second; }
  SymbolPair pair_at(std::size_t index) const {
    return {static_cast<Symbol>(index / params_.alphabet_size), static_cast<Symbol>(index % params_.alphabet_size)};
  }
  const BitVec& encode(SymbolPair z, Instruction d) const { return table_[pair_index(z) * 4 + static_cast<int>(d)]; }
  const std::vector<BitVec>& table() const { return table_; }
  std::uint64_t table_hash() const;

 private:
  EccParams params_;
  std::uint64_t seed_;
  std::vector<BitVec> table_;
};

// Repeated 3-bit instruction mask R(d).
BitVec instruction_mask(Instruction d, int M);

// Smallest M (multiple of 6) for which a random linear E passes with
// probability at least 1/2 by a union bound.
int recommended_length(std::uint32_t alphabet_size, Fraction epsilon);

struct EccBuildOptions {
  int M = 0;                // 0: start from recommended_length and escalate
  int attempts = 64;        // random generators tried per length
  int max_escalations = 8;  // only when M == 0
  bool exhaustive_check = true;  // also run the pairwise oracle when the table is small
};

EccCode build_ecc(std::uint32_t alphabet_size, Fraction epsilon, std::uint64_t seed, const EccBuildOptions& options = {});

struct DistanceReport {
  int M = 0;
  int min_same = -1;   // -1 when there is no pair of that kind
  int min_cross = -1;
  int same_threshold = 0;
  int cross_threshold = 0;
  std::uint64_t pairs_checked = 0;
  bool same_ok = true;
  bool cross_ok = true;
  bool passed() const { return same_ok && cross_ok; }
};

// Exact minima over every pair of rows; rows_per_pair rows share a pair index.
DistanceReport verify_distances(std::span<const BitVec> table, int rows_per_pair, const EccParams& params);
DistanceReport verify_distances(const EccCode& code);

struct DistanceProfile {
  int M = 0;
  std::vector<int> distances;  // same row order as the code table

  int at(std::size_t pair_index, Instruction d) const { return distances[pair_index * 4 + static_cast<int>(d)]; }
  Fraction normalized(std::size_t pair_index, Instruction d) const { return Fraction(at(pair_index, d), M); }
};

DistanceProfile distance_profile(const EccCode& code, const BitVec& received);

}  // namespace ics
