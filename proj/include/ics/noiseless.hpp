#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ics/bits.hpp"

namespace ics {

enum class Role : std::uint8_t { Alice = 0, Bob = 1 };

const char* role_name(Role r);
inline Role other(Role r) { return r == Role::Alice ? Role::Bob : Role::Alice; }

// Speaker of the bit that follows a prefix of the given length: Alice sends
// the odd positions (1-based), Bob the even ones.
inline Role speaker_after(int prefix_length) { return prefix_length % 2 == 0 ? Role::Alice : Role::Bob; }

// One party's side of a fixed-order noiseless protocol of even length n0.
class PartyOracle {
 public:
  virtual ~PartyOracle() = default;
  virtual Role role() const = 0;
  virtual int n0() const = 0;
  // The bit this party sends after `prefix`. Only meaningful when
  // speaker_after(prefix.size()) == role() and prefix.size() < n0.
  virtual bool next_bit(const BitString& prefix) const = 0;
};

// True iff every bit of t sent by this party matches its next-bit function.
bool consistent(const PartyOracle& party, const BitString& t);

// Direct noiseless execution; the reference transcript for a pair of inputs.
BitString run_noiseless(const PartyOracle& alice, const PartyOracle& bob);

// Next-bit function stored as a table over all own-turn prefixes.
class TableParty : public PartyOracle {
 public:
  TableParty(Role role, int n0, std::vector<std::uint8_t> table);

  Role role() const override { return role_; }
  int n0() const override { return n0_; }
  bool next_bit(const BitString& prefix) const override;

 private:
  Role role_;
  int n0_;
  std::vector<std::uint8_t> table_;  // by heap index of the prefix
};

enum class ProtocolKind : std::uint8_t { RandomTree, Exchange };

const char* protocol_kind_name(ProtocolKind k);
ProtocolKind protocol_kind_from_name(const std::string& name);

// Random protocol tree: each own-turn bit is a keyed hash of
// (protocol seed, role, input, prefix). Alice's first bit is forced to 1.
TableParty random_tree_party(Role role, int n0, std::uint64_t protocol_seed, std::uint64_t input);

// Interleaved exchange: transcript = 1, y1, x1, y2, x2, ... where x_i / y_i
// are the bits of the party's input, least significant first.
TableParty exchange_party(Role role, int n0, std::uint64_t input);

TableParty make_party(ProtocolKind kind, Role role, int n0, std::uint64_t protocol_seed, std::uint64_t input);

}  // namespace ics
