#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace ics {

// Short bitstring (up to 62 bits) used for noiseless transcripts.
// Bit 0 is the first bit sent; stored MSB-first in `value`.
class BitString {
 public:
  static constexpr int kMaxLength = 62;

  BitString() = default;
  BitString(std::uint64_t value, int length);

  static BitString parse(const std::string& text);

  int size() const { return length_; }
  bool empty() const { return length_ == 0; }
  std::uint64_t value() const { return value_; }

  bool bit(int i) const { return (value_ >> (length_ - 1 - i)) & 1u; }
  BitString prefix(int n) const;
  bool is_prefix_of(const BitString& other) const;

  void push_back(bool b);
  void pop_back();
  BitString appended(bool b) const;

  std::string str() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  // Lexicographic order; a proper prefix sorts first.
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b);

 private:
  std::uint64_t value_ = 0;
  int length_ = 0;
};

// Position of a transcript in the heap layout used for layer arrays:
// all strings of length < len come first, then strings of length len by value.
inline std::size_t heap_index(const BitString& t) {
  return (std::size_t{1} << t.size()) - 1 + t.value();
}
inline BitString from_heap_index(std::size_t idx) {
  int len = std::bit_width(idx + 1) - 1;
  return BitString((idx + 1) - (std::size_t{1} << len), len);
}

// Fixed-length bit vector for wire payloads.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(int nbits);

  int size() const { return nbits_; }
  bool get(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i, bool b);
  void flip(int i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

  int weight() const;
  BitVec& operator^=(const BitVec& o);
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend bool operator==(const BitVec&, const BitVec&) = default;

  std::string to_hex() const;
  static BitVec from_hex(const std::string& hex, int nbits);

 private:
  std::vector<std::uint64_t> words_;
  int nbits_ = 0;
};

int hamming(const BitVec& a, const BitVec& b);

}  // namespace ics
