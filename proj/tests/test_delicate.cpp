#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "wdd/arith.hpp"
#include "wdd/construction.hpp"
#include "wdd/delicate.hpp"
#include "wdd/errors.hpp"

using namespace wdd;
using namespace wdd::delicate;

TEST(Digits, Basics) {
  EXPECT_EQ(decimal_length(294001), 6u);
  EXPECT_EQ(decimal_length(0), 1u);
  EXPECT_EQ(digit_at(294001, 0), 1u);
  EXPECT_EQ(digit_at(294001, 5), 2u);
  EXPECT_EQ(digit_at(294001, 9), 0u);
  EXPECT_EQ(substitutions(294001).size(), 54u);
  EXPECT_EQ(substitutions(294001, 3).size(), 81u);
}

TEST(Apply, ArithmeticAndTextAgree) {
  EXPECT_EQ(apply(294001, {5, 2, 0}), 94001);
  EXPECT_EQ(apply_text("294001", {5, 2, 0}), "94001");
  EXPECT_EQ(apply(294001, {7, 0, 1}), 10294001);
  EXPECT_EQ(apply_text("294001", {7, 0, 1}), "10294001");
  EXPECT_THROW(apply(294001, {0, 3, 4}), DomainError);
  EXPECT_THROW(apply(294001, {0, 1, 10}), DomainError);
}

TEST(ApplyProperty, InvolutionAndRepresentations) {
  std::mt19937_64 rng(1111);
  for (int c = 0; c < 10000; ++c) {
    const std::uint64_t raw = rng() >> (rng() % 60);
    const Natural n = Natural(std::to_string(raw));
    const auto pos = static_cast<std::uint32_t>(rng() % (decimal_length(n) + 3));
    const auto o = static_cast<std::uint8_t>(digit_at(n, pos));
    auto r = static_cast<std::uint8_t>(rng() % 9);
    if (r >= o) ++r;
    const Substitution s{pos, o, r};
    const Natural m = apply(n, s);
    ASSERT_EQ(apply(m, s.inverse()), n);
    ASSERT_EQ(to_decimal(m), apply_text(to_decimal(n), s));
    Natural ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, pos);
    ASSERT_EQ(m, n + s.shift() * ten);
  }
}

TEST(Delicate, Examples) {
  EXPECT_TRUE(is_digitally_delicate(294001));
  EXPECT_FALSE(is_digitally_delicate(2));
  EXPECT_THROW(is_digitally_delicate(294000), DomainError);
}

TEST(Delicate, ReportForTheFirstExample) {
  const auto report = substitution_report(294001);
  ASSERT_EQ(report.size(), 54u);
  for (const auto& o : report) {
    const auto v = std::stoull(to_decimal(o.value));
    EXPECT_FALSE(oracle::is_prime(v)) << v;
    EXPECT_FALSE(o.prime);
  }
  // d94001 with d = 0 reads as 94001.
  EXPECT_EQ(report.back().value, 994001);
  EXPECT_EQ(report[45].value, 94001);
}

TEST(Window, Examples) {
  // 1294001, ..., 9294001 are all composite; the first leading zero is not enough.
  EXPECT_TRUE(is_widely_digitally_delicate_window(294001, 1).passes);
  const auto fail = is_widely_digitally_delicate_window(294001, 2);
  EXPECT_FALSE(fail.passes);
  ASSERT_TRUE(fail.prime);
  EXPECT_EQ(*fail.prime, 10294001);
  EXPECT_EQ(fail.substitution->position, 7u);
  EXPECT_EQ(fail.substitution->replacement, 1u);
  const auto empty = is_widely_digitally_delicate_window(294001, 0);
  EXPECT_TRUE(empty.passes);
  EXPECT_FALSE(is_widely_digitally_delicate_window(2, 0).passes);
  EXPECT_THROW(is_widely_digitally_delicate_window(294000, 1), DomainError);
}

TEST(Window, LeadingPositionValuesByOracle) {
  for (std::uint64_t d = 1; d <= 9; ++d) {
    EXPECT_FALSE(oracle::is_prime(d * 1000000 + 294001)) << d;
  }
  EXPECT_TRUE(oracle::is_prime(10294001));
}

TEST(Scan, Examples) {
  EXPECT_EQ(find_first_digitally_delicate(300000), 294001u);
  EXPECT_EQ(find_first_digitally_delicate(294001), 294001u);
  EXPECT_FALSE(find_first_digitally_delicate(294000));
  EXPECT_FALSE(find_first_digitally_delicate(10));
  EXPECT_EQ(find_first_digitally_delicate(500000), 294001u);
}

TEST(Scan, AgreesWithBruteForceOnPrefix) {
  // Nothing below 294001 passes a direct check either; spot every 97th prime.
  std::size_t checked = 0;
  for (std::uint64_t p = 2; p < 294001; ++p) {
    if (!oracle::is_prime(p) || p % 97 != 1) continue;
    ++checked;
    bool all_composite = true;
    const std::string text = std::to_string(p);
    for (std::size_t i = 0; i < text.size() && all_composite; ++i) {
      for (char c = '0'; c <= '9'; ++c) {
        if (c == text[i]) continue;
        std::string t = text;
        t[i] = c;
        if (oracle::is_prime(std::stoull(t))) { all_composite = false; break; }
      }
    }
    EXPECT_FALSE(all_composite) << p;
  }
  EXPECT_GT(checked, 100u);
}

TEST(Stable, Examples) {
  EXPECT_TRUE(is_composite_digit_stable(212159));
  EXPECT_FALSE(is_composite_digit_stable(9));
  EXPECT_THROW(is_composite_digit_stable(7), DomainError);
  EXPECT_THROW(is_composite_digit_stable(212150), DomainError);
  for (const auto& o : substitution_report(212159)) {
    EXPECT_FALSE(oracle::is_prime(std::stoull(to_decimal(o.value))));
  }
}

TEST(CrossModule, ProgressionPrimesAgreeWithCertificates) {
  using namespace wdd::construction;
  std::vector<DigitCovering> digits;
  for (int d : {-7, -4, -1, 2, 5, 8}) digits.push_back(mod3_covering(d));
  DigitCovering nine;
  nine.digit = 9;
  nine.entries = {{covering::Congruence(0, 2), 11, 1},
                  {covering::Congruence(3, 4), 101, 1},
                  {covering::Congruence(1, 8), 73, 1},
                  {covering::Congruence(5, 8), 137, 2}};
  digits.push_back(nine);
  const auto c = assemble(digits);

  std::size_t primes = 0;
  for (unsigned long t = 0; primes < 5; ++t) {
    const Natural n = c.B + c.A * t;
    if (!arith::is_prime(n).is_prime()) continue;
    ++primes;
    for (const auto& s : substitutions(n, 200)) {
      const int d = s.shift();
      if (!c.find_digit(d)) continue;
      const Natural v = apply(n, s);
      const auto cert = substitution_divisor(c, n, d, s.position);
      ASSERT_EQ(cert.value, v);
      ASSERT_TRUE(mpz_divisible_p(v.get_mpz_t(), cert.prime.get_mpz_t()));
      ASSERT_FALSE(arith::is_prime(v).is_prime());
    }
  }
}
