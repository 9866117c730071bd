#include "ics/ecc.hpp"

#include <cmath>

#include "ics/errors.hpp"
#include "ics/rng.hpp"

namespace ics {

char instruction_char(Instruction d) {
  switch (d) {
    case Instruction::Zero: return '0';
    case Instruction::One: return '1';
    case Instruction::Back: return '<';
    case Instruction::Ask: return '?';
  }
  return '!';
}

void validate(const EccParams& p) {
  if (p.alphabet_size < 2) throw ConfigError("ecc alphabet_size must be >= 2");
  if (p.M < 6 || p.M % 6 != 0) throw ConfigError("ecc length M must be a positive multiple of 6");
  if (!(Fraction(0, 1) < p.epsilon && p.epsilon < Fraction(1, 6))) throw ConfigError("ecc epsilon must lie in (0, 1/6)");
}

int same_pair_threshold(const EccParams& p) { return (2 * p.M + 2) / 3; }

int cross_pair_threshold(const EccParams& p) {
  // (1/2 - a/b) M = (b - 2a) M / (2b)
  const std::int64_t num = (p.epsilon.den - 2 * p.epsilon.num) * std::int64_t{p.M};
  const std::int64_t den = 2 * p.epsilon.den;
  return static_cast<int>((num + den - 1) / den);
}

bool within_sixth_minus_eps(int dist, const EccParams& p) {
  // dist / M <= 1/6 - a/b  <=>  6 b dist <= (b - 6a) M
  return 6 * p.epsilon.den * std::int64_t{dist} <= (p.epsilon.den - 6 * p.epsilon.num) * std::int64_t{p.M};
}

EccCode::EccCode(EccParams params, std::uint64_t seed, std::vector<BitVec> table)
    : params_(params), seed_(seed), table_(std::move(table)) {
  for (const auto& row : table_)
    if (row.size() != params_.M) throw LengthMismatch("ecc row length differs from M");
}

std::uint64_t EccCode::table_hash() const {
  std::uint64_t h = hash_words({static_cast<std::uint64_t>(params_.M), table_.size()});
  for (const auto& row : table_)
    for (auto w : row.words()) h = mix64(h ^ w);
  return h;
}

BitVec instruction_mask(Instruction d, int M) {
  static constexpr int kPattern[4] = {0b000, 0b011, 0b101, 0b110};
  const int pat = kPattern[static_cast<int>(d)];
  BitVec v(M);
  for (int i = 0; i < M; ++i) v.set(i, (pat >> (2 - i % 3)) & 1);
  return v;
}

namespace {

int index_bits(std::uint32_t alphabet_size) {
  const std::uint64_t n = std::uint64_t{alphabet_size} * alphabet_size;
  return n <= 1 ? 1 : std::bit_width(n - 1);
}

// log P[Bin(M, 1/2) < t]
double log_lower_tail(int M, int t) {
  double acc = -INFINITY;
  for (int k = 0; k < t; ++k) {
    const double lt = std::lgamma(M + 1.0) - std::lgamma(k + 1.0) - std::lgamma(M - k + 1.0) - M * std::log(2.0);
    acc = acc == -INFINITY ? lt : std::max(acc, lt) + std::log1p(std::exp(-std::fabs(acc - lt)));
  }
  return acc;
}

// Minimum weight of E(u) xor R(r) over all nonzero u in the span and all masks.
int linear_min_cross(const std::vector<BitVec>& gen, const std::array<BitVec, 4>& masks) {
  const int b = static_cast<int>(gen.size());
  BitVec cur(masks[0].size());
  int best = masks[0].size() + 1;
  for (std::uint64_t g = 1; g < (std::uint64_t{1} << b); ++g) {
    cur ^= gen[std::countr_zero(g)];  // Gray code walk through the span
    for (const auto& m : masks) best = std::min(best, hamming(cur, m));
  }
  return best;
}

}  // namespace

int recommended_length(std::uint32_t alphabet_size, Fraction epsilon) {
  const double events = 4.0 * (std::ldexp(1.0, index_bits(alphabet_size)) - 1.0);
  for (int M = 6;; M += 6) {
    EccParams p{alphabet_size, epsilon, M};
    if (std::log(events) + log_lower_tail(M, cross_pair_threshold(p)) <= std::log(0.5)) return M;
    if (M > 1 << 20) throw ConstructionFailed("no feasible ECC length");
  }
}

EccCode build_ecc(std::uint32_t alphabet_size, Fraction epsilon, std::uint64_t seed, const EccBuildOptions& options) {
  int M = options.M ? options.M : recommended_length(alphabet_size, epsilon);
  const int escalations = options.M ? 0 : options.max_escalations;
  const int b = index_bits(alphabet_size);
  for (int level = 0; level <= escalations; ++level) {
    EccParams params{alphabet_size, epsilon, M};
    validate(params);
    const std::array<BitVec, 4> masks = {instruction_mask(Instruction::Zero, M), instruction_mask(Instruction::One, M),
                                         instruction_mask(Instruction::Back, M), instruction_mask(Instruction::Ask, M)};
    const int need = cross_pair_threshold(params);
    for (int attempt = 0; attempt < options.attempts; ++attempt) {
      Rng rng(derive_seed(seed, (static_cast<std::uint64_t>(M) << 20) | static_cast<std::uint64_t>(attempt)));
      std::vector<BitVec> gen(b, BitVec(M));
      for (auto& row : gen)
        for (auto& w : row.words()) w = rng();
      for (auto& row : gen)  // clear padding bits past M
        if (M % 64) row.words().back() &= (std::uint64_t{1} << (M % 64)) - 1;
      if (linear_min_cross(gen, masks) < need) continue;

      std::vector<BitVec> table;
      table.reserve(std::size_t{alphabet_size} * alphabet_size * 4);
      for (std::uint64_t z = 0; z < std::uint64_t{alphabet_size} * alphabet_size; ++z) {
        BitVec e(M);
        for (int j = 0; j < b; ++j)
          if (z >> j & 1u) e ^= gen[j];
        for (const auto& m : masks) table.push_back(e ^ m);
      }
      EccCode code(params, seed, std::move(table));
      if (options.exhaustive_check && code.table().size() <= 4096 && !verify_distances(code).passed())
        throw InvariantViolation("linear distance check disagrees with exhaustive verification");
      return code;
    }
    M += 6 * std::max(1, (M / 10 + 5) / 6);
  }
  throw ConstructionFailed("no ECC passed verification within the retry budget");
}

DistanceReport verify_distances(std::span<const BitVec> table, int rows_per_pair, const EccParams& params) {
  DistanceReport r;
  r.M = params.M;
  r.same_threshold = same_pair_threshold(params);
  r.cross_threshold = cross_pair_threshold(params);
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = i + 1; j < table.size(); ++j) {
      const int d = hamming(table[i], table[j]);
      ++r.pairs_checked;
      if (i / rows_per_pair == j / rows_per_pair) {
        if (r.min_same < 0 || d < r.min_same) r.min_same = d;
      } else {
        if (r.min_cross < 0 || d < r.min_cross) r.min_cross = d;
      }
    }
  }
  r.same_ok = r.min_same < 0 || r.min_same >= r.same_threshold;
  r.cross_ok = r.min_cross < 0 || r.min_cross >= r.cross_threshold;
  return r;
}

DistanceReport verify_distances(const EccCode& code) { return verify_distances(code.table(), 4, code.params()); }

DistanceProfile distance_profile(const EccCode& code, const BitVec& received) {
  if (received.size() != code.M()) throw LengthMismatch("received payload length differs from M");
  DistanceProfile p;
  p.M = code.M();
  p.distances.reserve(code.table().size());
  for (const auto& row : code.table()) p.distances.push_back(hamming(received, row));
  return p;
}

}  // namespace ics
