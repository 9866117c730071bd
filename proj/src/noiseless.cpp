#include "ics/noiseless.hpp"

#include <stdexcept>

#include "ics/errors.hpp"
#include "ics/rng.hpp"

namespace ics {

const char* role_name(Role r) { return r == Role::Alice ? "alice" : "bob"; }

bool consistent(const PartyOracle& party, const BitString& t) {
  for (int i = 0; i < t.size() && i < party.n0(); ++i)
    if (speaker_after(i) == party.role() && party.next_bit(t.prefix(i)) != t.bit(i)) return false;
  return true;
}

BitString run_noiseless(const PartyOracle& alice, const PartyOracle& bob) {
  if (alice.n0() != bob.n0()) throw ConfigError("parties disagree on n0");
  BitString t;
  while (t.size() < alice.n0()) {
    const PartyOracle& speaker = speaker_after(t.size()) == Role::Alice ? alice : bob;
    t.push_back(speaker.next_bit(t));
  }
  return t;
}

TableParty::TableParty(Role role, int n0, std::vector<std::uint8_t> table)
    : role_(role), n0_(n0), table_(std::move(table)) {
  if (n0_ < 2 || n0_ % 2 != 0) throw ConfigError("noiseless protocol length must be even and >= 2");
  if (table_.size() != (std::size_t{1} << n0_) - 1) throw ConfigError("next-bit table has wrong size");
}

bool TableParty::next_bit(const BitString& prefix) const {
  if (prefix.size() >= n0_) throw std::out_of_range("next_bit on complete transcript");
  return table_[heap_index(prefix)] != 0;
}

const char* protocol_kind_name(ProtocolKind k) { return k == ProtocolKind::RandomTree ? "random_tree" : "exchange"; }

ProtocolKind protocol_kind_from_name(const std::string& name) {
  if (name == "random_tree") return ProtocolKind::RandomTree;
  if (name == "exchange") return ProtocolKind::Exchange;
  throw ConfigError("unknown protocol kind: " + name);
}

namespace {

constexpr int kMaxTableN0 = 24;

template <typename F>
std::vector<std::uint8_t> tabulate(Role role, int n0, F&& bit_of) {
  if (n0 < 2 || n0 > kMaxTableN0 || n0 % 2 != 0) throw ConfigError("n0 must be even and in [2, 24]");
  std::vector<std::uint8_t> table((std::size_t{1} << n0) - 1, 0);
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    const BitString prefix = from_heap_index(idx);
    if (speaker_after(prefix.size()) == role) table[idx] = bit_of(prefix) ? 1 : 0;
  }
  return table;
}

}  // namespace

TableParty random_tree_party(Role role, int n0, std::uint64_t protocol_seed, std::uint64_t input) {
  return TableParty(role, n0, tabulate(role, n0, [&](const BitString& p) {
                      if (p.empty()) return true;
                      return (hash_words({protocol_seed, static_cast<std::uint64_t>(role), input, p.value(),
                                          static_cast<std::uint64_t>(p.size())}) &
                              1u) != 0;
                    }));
}

TableParty exchange_party(Role role, int n0, std::uint64_t input) {
  return TableParty(role, n0, tabulate(role, n0, [&](const BitString& p) {
                      if (p.empty()) return true;
                      // Alice's k-th own bit (k >= 1) sits at prefix length 2k; Bob's at 2k-1.
                      const int k = role == Role::Alice ? p.size() / 2 - 1 : (p.size() - 1) / 2;
                      return ((input >> k) & 1u) != 0;
                    }));
}

TableParty make_party(ProtocolKind kind, Role role, int n0, std::uint64_t protocol_seed, std::uint64_t input) {
  return kind == ProtocolKind::RandomTree ? random_tree_party(role, n0, protocol_seed, input)
                                          : exchange_party(role, n0, input);
}

}  // namespace ics
