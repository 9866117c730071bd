#include "ics/bits.hpp"

#include <algorithm>

#include "ics/errors.hpp"

namespace ics {

BitString::BitString(std::uint64_t value, int length) : value_(value), length_(length) {
  if (length < 0 || length > kMaxLength) throw std::invalid_argument("BitString length out of range");
  if (length < 64 && (value >> length) != 0) throw std::invalid_argument("BitString value wider than length");
}

BitString BitString::parse(const std::string& text) {
  BitString out;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring may contain only 0/1: " + text);
    out.push_back(c == '1');
  }
  return out;
}

BitString BitString::prefix(int n) const {
  if (n < 0 || n > length_) throw std::out_of_range("prefix length");
  return BitString(value_ >> (length_ - n), n);
}

bool BitString::is_prefix_of(const BitString& other) const {
  return length_ <= other.length_ && other.prefix(length_).value_ == value_;
}

void BitString::push_back(bool b) {
  if (length_ == kMaxLength) throw std::length_error("BitString full");
  value_ = (value_ << 1) | (b ? 1u : 0u);
  ++length_;
}

void BitString::pop_back() {
  if (length_ == 0) throw std::out_of_range("pop_back on empty BitString");
  value_ >>= 1;
  --length_;
}

BitString BitString::appended(bool b) const {
  BitString out = *this;
  out.push_back(b);
  return out;
}

std::string BitString::str() const {
  std::string s;
  s.reserve(length_);
  for (int i = 0; i < length_; ++i) s.push_back(bit(i) ? '1' : '0');
  return s;
}

std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
  const int common = std::min(a.length_, b.length_);
  const auto pa = a.prefix(common).value_;
  const auto pb = b.prefix(common).value_;
  if (pa != pb) return pa <=> pb;
  return a.length_ <=> b.length_;
}

BitVec::BitVec(int nbits) : words_((nbits + 63) / 64, 0), nbits_(nbits) {}

void BitVec::set(int i, bool b) {
  const std::uint64_t m = std::uint64_t{1} << (i & 63);
  if (b)
    words_[i >> 6] |= m;
  else
    words_[i >> 6] &= ~m;
}

int BitVec::weight() const {
  int w = 0;
  for (auto x : words_) w += std::popcount(x);
  return w;
}

BitVec& BitVec::operator^=(const BitVec& o) {
  if (o.nbits_ != nbits_) throw LengthMismatch("BitVec xor of different lengths");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

int hamming(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size()) throw LengthMismatch("hamming distance of different lengths");
  int d = 0;
  const auto& wa = a.words();
  const auto& wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) d += std::popcount(wa[i] ^ wb[i]);
  return d;
}

// Hex digits cover bits in order: digit k holds bits 4k..4k+3, bit 4k as the high nibble bit.
std::string BitVec::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (int i = 0; i < nbits_; i += 4) {
    int nib = 0;
    for (int j = 0; j < 4; ++j) nib = (nib << 1) | ((i + j < nbits_ && get(i + j)) ? 1 : 0);
    s.push_back(digits[nib]);
  }
  return s;
}

BitVec BitVec::from_hex(const std::string& hex, int nbits) {
  if (static_cast<int>(hex.size()) != (nbits + 3) / 4) throw LengthMismatch("hex payload has wrong length");
  BitVec v(nbits);
  for (std::size_t k = 0; k < hex.size(); ++k) {
    int nib;
    char c = hex[k];
    if (c >= '0' && c <= '9')
      nib = c - '0';
    else if (c >= 'a' && c <= 'f')
      nib = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      nib = c - 'A' + 10;
    else
      throw std::invalid_argument("bad hex digit");
    for (int j = 0; j < 4; ++j) {
      const int bit = static_cast<int>(4 * k) + j;
      const bool b = (nib >> (3 - j)) & 1;
      if (bit < nbits)
        v.set(bit, b);
      else if (b)
        throw std::invalid_argument("hex payload sets bits past the end");
    }
  }
  return v;
}

}  // namespace ics
