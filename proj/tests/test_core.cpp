#include <gtest/gtest.h>

#include "ics/bits.hpp"
#include "ics/errors.hpp"
#include "ics/fraction.hpp"
#include "ics/rng.hpp"

using namespace ics;

TEST(BitString, ParseAndPrint) {
  const BitString t = BitString::parse("0110");
  EXPECT_EQ(t.size(), 4);
  EXPECT_EQ(t.str(), "0110");
  EXPECT_FALSE(t.bit(0));
  EXPECT_TRUE(t.bit(1));
  EXPECT_EQ(BitString::parse("").size(), 0);
}

TEST(BitString, PrefixRelations) {
  const BitString t = BitString::parse("0110");
  EXPECT_EQ(t.prefix(2).str(), "01");
  EXPECT_TRUE(BitString::parse("01").is_prefix_of(t));
  EXPECT_TRUE(BitString().is_prefix_of(t));
  EXPECT_FALSE(BitString::parse("00").is_prefix_of(t));
  BitString u = t;
  u.pop_back();
  EXPECT_EQ(u.str(), "011");
  EXPECT_EQ(u.appended(true).str(), "0111");
}

TEST(BitString, LexicographicOrderPutsPrefixFirst) {
  EXPECT_LT(BitString::parse("01"), BitString::parse("010"));
  EXPECT_LT(BitString::parse("0011"), BitString::parse("01"));
  EXPECT_LT(BitString(), BitString::parse("0"));
}

TEST(BitString, HeapIndexRoundTrip) {
  for (std::size_t idx = 0; idx < 1024; ++idx) EXPECT_EQ(heap_index(from_heap_index(idx)), idx);
  EXPECT_EQ(heap_index(BitString()), 0u);
  EXPECT_EQ(heap_index(BitString::parse("0")), 1u);
  EXPECT_EQ(heap_index(BitString::parse("1")), 2u);
  EXPECT_EQ(heap_index(BitString::parse("00")), 3u);
}

TEST(BitVec, HexRoundTripAndHamming) {
  Rng rng(3);
  for (int nbits : {1, 6, 63, 64, 65, 130}) {
    BitVec v(nbits);
    for (int i = 0; i < nbits; ++i) v.set(i, rng() & 1);
    EXPECT_EQ(BitVec::from_hex(v.to_hex(), nbits), v);
    BitVec w = v;
    w.flip(0);
    w.flip(nbits - 1);
    EXPECT_EQ(hamming(v, w), nbits == 1 ? 0 : 2);
  }
  EXPECT_EQ(BitVec::from_hex("a", 4).to_hex(), "a");
  EXPECT_TRUE(BitVec::from_hex("8", 4).get(0));
  EXPECT_THROW(BitVec::from_hex("abc", 4), LengthMismatch);
}

TEST(Fraction, ParsesAllForms) {
  EXPECT_EQ(Fraction::parse("2/4"), Fraction(1, 2));
  EXPECT_EQ(Fraction::parse("0.05"), Fraction(1, 20));
  EXPECT_EQ(Fraction::parse("3"), Fraction(3, 1));
  EXPECT_EQ(Fraction::parse("0.25").str(), "1/4");
  EXPECT_THROW(Fraction::parse("x"), std::invalid_argument);
  EXPECT_THROW(Fraction(1, 0), std::invalid_argument);
}

TEST(Fraction, ArithmeticAndOrder) {
  EXPECT_EQ(Fraction(1, 6) - Fraction(1, 20), Fraction(7, 60));
  EXPECT_EQ(Fraction(1, 3) + Fraction(1, 6), Fraction(1, 2));
  EXPECT_EQ(Fraction(2, 3) * Fraction(3, 4), Fraction(1, 2));
  EXPECT_LT(Fraction(1, 3), Fraction(34, 100));
  EXPECT_EQ(Fraction::from_double(0.4), Fraction(2, 5));
}

TEST(Rng, UniformBelowStaysInRange) {
  Rng rng(11);
  std::array<int, 7> counts{};
  for (int i = 0; i < 7000; ++i) ++counts[uniform_below(rng, 7)];
  for (int c : counts) EXPECT_GT(c, 800);
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_EQ(derive_seed(5, 9), derive_seed(5, 9));
}
