#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "wdd/covering.hpp"
#include "wdd/errors.hpp"

using namespace wdd;
using namespace wdd::covering;

namespace {

CoveringSystem make(std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> cs) {
  CoveringSystem s;
  for (const auto& [a, m] : cs) s.add(Congruence(a, m));
  return s;
}

CoveringSystem appendix(int digit) {
  return load_covering(std::string(WDD_DATA_DIR) + "/cover_" + std::to_string(digit) + ".txt").system();
}

bool witness_uncovered(const CoveringSystem& s, std::uint64_t r) {
  for (const auto& c : s.congruences()) {
    if (r % c.modulus() == c.residue()) return false;
  }
  return true;
}

// Random system with lcm small enough for the scan oracle. Half the draws use
// divisors of 24 or 36 so that a fair share of systems actually cover.
CoveringSystem random_system(std::mt19937_64& rng, std::uint64_t& lcm) {
  static const std::vector<std::uint64_t> friendly{1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36};
  for (;;) {
    const std::size_t n = 1 + rng() % 12;
    CoveringSystem s;
    lcm = 1;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t m = rng() % 2 ? friendly[rng() % friendly.size()] : 1 + rng() % 36;
      s.add(Congruence(rng() % m, m));
      lcm = std::lcm(lcm, m);
    }
    if (lcm <= 200000) return s;
  }
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> raw(const CoveringSystem& s) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& c : s.congruences()) out.emplace_back(c.residue(), c.modulus());
  return out;
}

}  // namespace

TEST(Congruence, Invariants) {
  EXPECT_THROW(Congruence(4, 4), std::invalid_argument);
  EXPECT_THROW(Congruence(0, 0), std::invalid_argument);
  EXPECT_EQ(Congruence::normalized(-1, 4), Congruence(3, 4));
  EXPECT_EQ(Congruence::normalized(9, 4), Congruence(1, 4));
  EXPECT_TRUE(Congruence(3, 4).matches(std::int64_t{-1}));
  EXPECT_FALSE(Congruence(3, 4).matches(std::int64_t{-2}));
}

TEST(LcmAnalysis, Examples) {
  const auto t = lcm_analysis(make({{0, 2}, {1, 2}}));
  EXPECT_EQ(t.lcm, 2u);
  EXPECT_EQ(t.max_prime, 2u);
  EXPECT_EQ(t.count, 2u);
  const auto m9 = lcm_analysis(appendix(-9));
  EXPECT_EQ(m9.lcm, 14433138720u);
  EXPECT_EQ(m9.max_prime, 31u);
  EXPECT_EQ(m9.count, 232u);
  const auto m3 = lcm_analysis(appendix(-3));
  EXPECT_EQ(m3.lcm, 1486147703040u);
  EXPECT_EQ(m3.max_prime, 19u);
  EXPECT_EQ(m3.count, 739u);
  EXPECT_THROW(lcm_analysis(CoveringSystem{}), std::invalid_argument);
}

TEST(Naive, Examples) {
  EXPECT_TRUE(is_covering_naive(make({{0, 2}, {3, 4}, {1, 8}, {5, 8}})).covered);
  const auto r = is_covering_naive(make({{0, 2}}));
  EXPECT_FALSE(r.covered);
  EXPECT_EQ(r.witness, 1u);
  EXPECT_TRUE(is_covering_naive(make({{0, 1}})).covered);
  EXPECT_THROW(is_covering_naive(appendix(-3)), BudgetExceeded);
}

TEST(Fast, Examples) {
  EXPECT_TRUE(is_covering_fast(make({{0, 2}, {1, 2}}), {.w = 2}).covered);
  EXPECT_TRUE(is_covering_fast(make({{0, 2}, {3, 4}, {1, 8}, {5, 8}})).covered);
  const auto r = is_covering_fast(make({{0, 2}, {3, 4}, {1, 8}}), {.w = 2});
  EXPECT_FALSE(r.covered);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness, 5u);
  EXPECT_THROW(is_covering_fast(make({{0, 2}, {1, 2}}), {.w = 3}), std::invalid_argument);
}

TEST(Fast, EmptyClassGivesClassWitness) {
  // Nothing is 1 mod 2, so the class u = 1 has an empty C'.
  const auto s = make({{0, 2}, {0, 4}});
  const auto red = reduce_class(s, 2, 1);
  EXPECT_TRUE(red.filtered.empty());
  EXPECT_EQ(red.span, 0u);
  const auto r = is_covering_fast(s, {.w = 2});
  EXPECT_FALSE(r.covered);
  EXPECT_EQ(r.witness, 1u);
}

TEST(DefaultSplit, Choices) {
  EXPECT_EQ(default_split(1486147703040u), 1140u);
  EXPECT_EQ(default_split(8), 8u);  // 60 * 2 does not divide 8
  EXPECT_EQ(default_split(1), 1u);
  EXPECT_EQ(default_split(5040), 420u);
}

TEST(Profile, WorkedReductionForMinusThree) {
  const auto s = appendix(-3);
  const auto u0 = reduce_class(s, 1140, 0);
  EXPECT_EQ(u0.filtered.size(), 19u);
  EXPECT_EQ(u0.lcm_prime, 12640320u);
  EXPECT_EQ(u0.delta, 1140u);
  EXPECT_EQ(u0.span, 11088u);
  EXPECT_FALSE(first_uncovered(u0));

  const auto profile = reduction_profile(s, 1140);
  ASSERT_EQ(profile.size(), 1140u);
  std::uint64_t best = 0;
  for (const auto& r : profile) best = std::max(best, r.span);
  EXPECT_EQ(best, 14325696u);
  std::vector<std::uint64_t> at;
  for (const auto& r : profile) {
    if (r.span == best) at.push_back(r.u);
  }
  EXPECT_EQ(at, (std::vector<std::uint64_t>{75, 303, 531, 759, 987}));
  EXPECT_EQ(profile[75].filtered.size(), 47u);
}

TEST(Profile, SmallCases) {
  const auto s = make({{0, 2}, {3, 4}, {1, 8}, {5, 8}});
  const auto one = reduction_profile(s, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].filtered.size(), s.size());
  const auto nine = reduction_profile(appendix(9), 2);
  ASSERT_EQ(nine.size(), 2u);
  for (const auto& r : nine) EXPECT_LE(r.span, 4u);
  EXPECT_THROW(reduction_profile(s, 3), std::invalid_argument);
}

TEST(Profile, FilteredCongruencesAreCompatible) {
  const auto s = appendix(-5);
  const std::uint64_t l = lcm_analysis(s).lcm;
  const std::uint64_t w = default_split(l);
  for (const auto& r : reduction_profile(s, w)) {
    for (const auto& c : r.filtered) ASSERT_EQ(c.residue() % std::gcd(c.modulus(), w), r.u % std::gcd(c.modulus(), w));
    ASSERT_EQ(r.delta, std::gcd(w, r.lcm_prime));
    ASSERT_EQ(l % (w * r.span), 0u);
    for (std::size_t i = 1; i < r.filtered.size(); ++i) {
      ASSERT_LE(r.filtered[i - 1].modulus(), r.filtered[i].modulus());
    }
  }
}

TEST(FastProperty, AgreesWithNaiveOnRandomSystems) {
  std::mt19937_64 rng(505);
  std::size_t covering = 0, disagreements = 0, runs = 0;
  for (int c = 0; c < 10000; ++c) {
    std::uint64_t l = 0;
    const auto s = random_system(rng, l);
    const auto naive = is_covering_naive(s);
    const auto scan = oracle::uncovered(raw(s), l);
    ASSERT_EQ(naive.covered, !scan.has_value());
    if (!naive.covered) {
      ASSERT_EQ(*naive.witness, *scan);
    }
    covering += naive.covered;
    for (std::uint64_t w : {std::uint64_t{1}, std::uint64_t{2}, std::uint64_t{6}, std::uint64_t{12}, l}) {
      if (l % w != 0) continue;
      ++runs;
      const auto fast = is_covering_fast(s, {.w = w});
      if (fast.covered != naive.covered) ++disagreements;
      if (!fast.covered) {
        ASSERT_TRUE(fast.witness);
        ASSERT_TRUE(witness_uncovered(s, *fast.witness));
      }
    }
  }
  EXPECT_EQ(disagreements, 0u);
  EXPECT_GT(covering, 500u);
  EXPECT_GT(runs, 20000u);
}

TEST(FastProperty, WitnessIsIndependentOfThreadCount) {
  std::mt19937_64 rng(606);
  for (int c = 0; c < 300; ++c) {
    std::uint64_t l = 0;
    const auto s = random_system(rng, l);
    const auto a = is_covering_fast(s, {.w = l, .threads = 1});
    const auto b = is_covering_fast(s, {.w = l, .threads = 3});
    ASSERT_EQ(a.covered, b.covered);
    ASSERT_EQ(a.witness, b.witness);
  }
}

TEST(CoverProperty, ShiftedIntegersStayCovered) {
  const auto s = appendix(7);
  ASSERT_TRUE(is_covering_fast(s).covered);
  std::mt19937_64 rng(707);
  for (int c = 0; c < 1000; ++c) {
    const auto k = static_cast<std::int64_t>(rng());
    ASSERT_TRUE(s.find_match(k).has_value()) << k;
  }
}

TEST(CoverProperty, RemovingACongruenceNeverHelps) {
  std::mt19937_64 rng(808);
  for (int c = 0; c < 10000; ++c) {
    std::uint64_t l = 0;
    const auto s = random_system(rng, l);
    if (s.size() < 2 || is_covering_naive(s).covered) continue;
    auto cs = s.congruences();
    cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(rng() % cs.size()));
    ASSERT_FALSE(is_covering_naive(CoveringSystem(cs)).covered);
  }
}

TEST(CoveringFile, ParseNormalizesAndWarns) {
  std::istringstream in("# digit 9\n5 4 1\n0 2\n");
  const auto f = parse_covering(in);
  ASSERT_EQ(f.digit, 9);
  ASSERT_EQ(f.rows.size(), 2u);
  EXPECT_EQ(f.rows[0].congruence, Congruence(1, 4));
  EXPECT_EQ(f.rows[0].rho, 1u);
  EXPECT_FALSE(f.rows[1].rho);
  EXPECT_EQ(f.warnings.size(), 1u);

  std::ostringstream out;
  write_covering(out, f);
  std::istringstream back(out.str());
  const auto g = parse_covering(back);
  EXPECT_EQ(g.rows.size(), 2u);
  EXPECT_TRUE(g.warnings.empty());
}

TEST(CoveringFile, ParseErrorsCarryLine) {
  std::istringstream bad("# digit 9\n0 2\n1 zero\n");
  try {
    parse_covering(bad, "bad.txt");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.source(), "bad.txt");
  }
  std::istringstream zero("0 0\n");
  EXPECT_THROW(parse_covering(zero), ParseError);
}
