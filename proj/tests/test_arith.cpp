#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "wdd/arith.hpp"
#include "wdd/errors.hpp"

using namespace wdd;
using namespace wdd::arith;

namespace {

Natural nat(std::uint64_t v) {
  Natural n;
  mpz_import(n.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return n;
}

std::uint64_t u64(const Natural& n) {
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, -1, sizeof v, 0, 0, n.get_mpz_t());
  return v;
}

// Strong probable-prime test written out with 128-bit products.
bool strong_probable_prime(std::uint64_t n, std::uint64_t a) {
  __extension__ using wide = unsigned __int128;
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) { d /= 2; ++s; }
  auto mul = [n](std::uint64_t x, std::uint64_t y) { return static_cast<std::uint64_t>(wide(x) * y % n); };
  std::uint64_t x = 1, b = a % n;
  for (std::uint64_t e = d; e; e >>= 1, b = mul(b, b)) {
    if (e & 1) x = mul(x, b);
  }
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mul(x, x);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

TEST(Order, PublishedSmallPrimes) {
  EXPECT_EQ(multiplicative_order(10, 3), 1);
  EXPECT_EQ(multiplicative_order(10, 11), 2);
  EXPECT_EQ(multiplicative_order(10, 101), 4);
  EXPECT_EQ(multiplicative_order(10, 73), 8);
  EXPECT_EQ(multiplicative_order(10, 137), 8);
  EXPECT_EQ(multiplicative_order(10, 7), 6);
}

TEST(Order, UndefinedWhenNotCoprime) {
  EXPECT_THROW(multiplicative_order(10, 4), DomainError);
  EXPECT_THROW(multiplicative_order(10, 1), DomainError);
  EXPECT_THROW(multiplicative_order(6, 9), DomainError);
}

TEST(Order, LargePrimeModulus) {
  EXPECT_EQ(multiplicative_order(10, parse_natural("5964848081")), 40);
  EXPECT_EQ(multiplicative_order(10, parse_natural("39526741")), 60);
  EXPECT_EQ(multiplicative_order(10, parse_natural("1111111111111111111")), 19);
}

TEST(Order, CompositeModulusViaCarmichael) {
  // ord_{91}(10) = lcm(ord_7, ord_13) = 6; ord_{9999}(10) = 4.
  EXPECT_EQ(multiplicative_order(10, 91), 6);
  EXPECT_EQ(multiplicative_order(10, 9999), 4);
  EXPECT_EQ(multiplicative_order(3, 1024), 256);
}

TEST(Order, HasOrderNeedsOnlyTheOrder) {
  EXPECT_TRUE(has_order(10, 73, 8));
  EXPECT_FALSE(has_order(10, 73, 4));
  EXPECT_FALSE(has_order(10, 73, 16));
  EXPECT_TRUE(has_order(10, parse_natural("4185502830133110721"), 45));
}

TEST(OrderProperty, MatchesBruteForceAndDividesCarmichael) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::uint64_t> pick(3, 200000);
  int cases = 0;
  while (cases < 10000) {
    const std::uint64_t n = pick(rng);
    if (std::gcd(n, std::uint64_t{10}) != 1) continue;
    ++cases;
    const std::uint64_t m = u64(multiplicative_order(10, nat(n)));
    ASSERT_EQ(m, oracle::order(10, n)) << "n=" << n;
    // 10^m = 1 and no proper divisor of m works.
    Natural x;
    mpz_powm_ui(x.get_mpz_t(), Natural(10).get_mpz_t(), m, nat(n).get_mpz_t());
    ASSERT_EQ(x, 1);
    for (std::uint64_t d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      mpz_powm_ui(x.get_mpz_t(), Natural(10).get_mpz_t(), d, nat(n).get_mpz_t());
      ASSERT_NE(x, 1) << "n=" << n << " d=" << d;
    }
    if (oracle::is_prime(n)) {
      ASSERT_EQ((n - 1) % m, 0u);
    }
  }
}

TEST(Crt, Examples) {
  const std::vector<Residue> two{{1, 3}, {2, 11}};
  EXPECT_EQ(crt_combine(two), (Residue{13, 33}));
  const std::vector<Residue> trivial{{0, 1}};
  EXPECT_EQ(crt_combine(trivial), (Residue{0, 1}));
  EXPECT_EQ(crt_combine({}), (Residue{0, 1}));

  const std::vector<Residue> mini{{1, 3}, {2, 11}, {90, 101}, {56, 73}, {90, 137}};
  const auto r = crt_combine(mini);
  EXPECT_EQ(r.modulus, 3 * 11 * 101 * 73 * 137);
  const auto scan = oracle::crt_scan({{1, 3}, {2, 11}, {90, 101}, {56, 73}, {90, 137}}, 3 * 11 * 101 * 73 * 137);
  ASSERT_TRUE(scan);
  EXPECT_EQ(r.residue, nat(*scan));
}

TEST(Crt, NonCoprimeMergesOrThrows) {
  const std::vector<Residue> ok{{1, 4}, {3, 6}};
  EXPECT_EQ(crt_combine(ok), (Residue{9, 12}));
  const std::vector<Residue> bad{{0, 4}, {1, 6}};
  EXPECT_THROW(crt_combine(bad), InconsistentConstraints);
}

TEST(CrtProperty, RoundTripAgainstScan) {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<std::uint64_t> mod(1, 40), count(1, 4);
  for (int c = 0; c < 10000; ++c) {
    const std::size_t k = count(rng);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
    std::vector<Residue> rs;
    std::uint64_t l = 1;
    const std::uint64_t x = rng() % 100000;
    const bool consistent = rng() % 4 != 0;
    for (std::size_t i = 0; i < k; ++i) {
      const std::uint64_t m = mod(rng);
      const std::uint64_t r = consistent ? x % m : rng() % m;
      raw.emplace_back(r, m);
      rs.push_back({nat(r), nat(m)});
      l = std::lcm(l, m);
    }
    const auto expected = oracle::crt_scan(raw, l);
    if (!expected) {
      ASSERT_THROW(crt_combine(rs), InconsistentConstraints);
      continue;
    }
    const auto got = crt_combine(rs);
    ASSERT_EQ(got.modulus, nat(l));
    ASSERT_EQ(got.residue, nat(*expected));
    for (const auto& [r, m] : raw) ASSERT_EQ(u64(got.residue) % m, r);
  }
}

TEST(Primality, Examples) {
  EXPECT_EQ(is_prime(294001).verdict, Verdict::ProvenPrime);
  EXPECT_EQ(is_prime(10294001).verdict, Verdict::ProvenPrime);
  const auto one = is_prime(1);
  EXPECT_EQ(one.verdict, Verdict::Composite);
  ASSERT_TRUE(one.witness);
  EXPECT_TRUE(std::holds_alternative<UnitWitness>(*one.witness));
  EXPECT_FALSE(is_prime(0).is_prime());
}

TEST(Primality, PseudoprimesAreCaught) {
  for (std::uint64_t n : {561ull, 1105ull, 2047ull, 3215031751ull, 3825123056546413051ull}) {
    const auto v = is_prime(nat(n));
    EXPECT_EQ(v.verdict, Verdict::Composite) << n;
    ASSERT_TRUE(v.witness);
    EXPECT_TRUE(check_witness(nat(n), *v.witness)) << n;
  }
  // Strong pseudoprime to the first 12 prime bases.
  const auto big = parse_natural("318665857834031151167461");
  EXPECT_EQ(is_prime(big).verdict, Verdict::Composite);
}

TEST(Primality, ProbableAboveDeterministicBound) {
  const Natural m89 = (Natural(1) << 89) - 1;
  ASSERT_GT(m89, deterministic_primality_bound());
  const auto v = is_prime(m89);
  EXPECT_EQ(v.verdict, Verdict::ProbablePrime);
  EXPECT_EQ(v.rounds, 64u);
  const Natural semi = parse_natural("1000000000000000000000007") * parse_natural("1000000000000000000000049");
  const auto c = is_prime(semi);
  EXPECT_EQ(c.verdict, Verdict::Composite);
  ASSERT_TRUE(c.witness);
  EXPECT_TRUE(check_witness(semi, *c.witness));
  EXPECT_FALSE(check_witness(m89, MillerRabinWitness{2}));
}

TEST(PrimalityProperty, AgreesWithTrialDivisionBelowMillion) {
  for (std::uint64_t n = 0; n < 1000000; ++n) {
    const auto v = is_prime(nat(n));
    ASSERT_EQ(v.is_prime(), oracle::is_prime(n)) << n;
    if (v.is_prime()) {
      ASSERT_TRUE(v.proven()) << n;
    }
  }
}

TEST(PrimalityProperty, WitnessesAreSound) {
  std::mt19937_64 rng(303);
  int composites = 0;
  while (composites < 10000) {
    const std::uint64_t n = (rng() >> 1) | 1;
    const auto v = is_prime(nat(n));
    if (v.is_prime()) continue;
    ++composites;
    ASSERT_TRUE(v.witness);
    ASSERT_TRUE(check_witness(nat(n), *v.witness));
    if (const auto* d = std::get_if<DivisorWitness>(&*v.witness)) {
      const std::uint64_t p = u64(d->divisor);
      ASSERT_TRUE(p > 1 && p < n && n % p == 0);
    } else if (const auto* mr = std::get_if<MillerRabinWitness>(&*v.witness)) {
      ASSERT_FALSE(strong_probable_prime(n, u64(mr->base))) << n;
    }
  }
}

TEST(Factor, Examples) {
  auto primes_of = [](const Factorization& f) {
    std::vector<std::uint64_t> out;
    for (const auto& pp : f.primes) out.push_back(u64(pp.prime));
    return out;
  };
  EXPECT_EQ(primes_of(factor(91)), (std::vector<std::uint64_t>{7, 13}));
  EXPECT_EQ(primes_of(factor(10001)), (std::vector<std::uint64_t>{73, 137}));
  EXPECT_EQ(primes_of(factor(97)), (std::vector<std::uint64_t>{97}));
  EXPECT_TRUE(factor(1).primes.empty());
  EXPECT_TRUE(factor(1).complete());
}

TEST(Factor, BudgetLeavesUnresolvedRemainder) {
  const Natural semi = parse_natural("1000000000000000000000007") * parse_natural("1000000000000000000000049");
  FactorBudget tight;
  tight.rho_iterations = 1000;
  const auto f = factor(semi * 12, tight);
  EXPECT_FALSE(f.complete());
  EXPECT_EQ(f.remainder->status, RemainderStatus::Composite);
  EXPECT_EQ(f.remainder->value, semi);
  EXPECT_EQ(f.product(), semi * 12);

  // A deadline that has already passed leaves the cofactor unresolved.
  FactorBudget instant;
  instant.seconds = 1e-9;
  const auto g = factor(semi * semi + 2, instant);
  EXPECT_EQ(g.product(), semi * semi + 2);
  ASSERT_FALSE(g.complete());
  EXPECT_EQ(g.remainder->status, RemainderStatus::Unresolved);
}

TEST(FactorProperty, ProductIsExactFor64BitInputs) {
  std::mt19937_64 rng(404);
  for (int c = 0; c < 10000; ++c) {
    const std::uint64_t n = rng() | 1;
    const auto f = factor(nat(n));
    ASSERT_EQ(f.product(), nat(n)) << n;
    ASSERT_TRUE(f.complete()) << n;
    Natural prev = 0;
    for (const auto& pp : f.primes) {
      ASSERT_GT(pp.prime, prev);
      prev = pp.prime;
      ASSERT_TRUE(is_prime(pp.prime).proven());
      ASSERT_TRUE(strong_probable_prime(u64(pp.prime), 2) || pp.prime == 2);
    }
  }
}

TEST(PerfectPower, Examples) {
  auto pp = is_perfect_power(1024);
  ASSERT_TRUE(pp);
  EXPECT_EQ(pp->base, 2);
  EXPECT_EQ(pp->exponent, 10u);
  pp = is_perfect_power(36);
  ASSERT_TRUE(pp);
  EXPECT_EQ(pp->base, 6);
  EXPECT_EQ(pp->exponent, 2u);
  EXPECT_FALSE(is_perfect_power(91));
  pp = is_perfect_power(parse_natural("1000000000000000000000000000000"));
  ASSERT_TRUE(pp);
  EXPECT_EQ(pp->base, 10);
  EXPECT_EQ(pp->exponent, 30u);
}

TEST(PerfectPowerProperty, AgreesWithIntegerRootOracle) {
  for (std::uint64_t n = 1; n < 100000; ++n) {
    const auto got = is_perfect_power(nat(n));
    const auto want = oracle::perfect_power(n);
    ASSERT_EQ(got.has_value(), want.has_value()) << n;
    if (got) {
      ASSERT_EQ(u64(got->base), want->first) << n;
      ASSERT_EQ(got->exponent, want->second) << n;
    }
  }
}

TEST(Helpers, SixtyFourBit) {
  EXPECT_EQ(moebius(1), 1);
  EXPECT_EQ(moebius(6), 1);
  EXPECT_EQ(moebius(30), -1);
  EXPECT_EQ(moebius(12), 0);
  EXPECT_EQ(divisors_u64(12), (std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12}));
  EXPECT_THROW(lcm_u64(1ull << 63, 3), std::overflow_error);
  EXPECT_EQ(primes_below(20), (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19}));
  EXPECT_EQ(multiplicative_order_u64(10, 5964848081ull), 40u);
}

TEST(Natural, DecimalRoundTrip) {
  const std::string big(20000, '7');
  EXPECT_EQ(to_decimal(parse_natural(big)), big);
  EXPECT_THROW(parse_natural("12x"), DomainError);
  EXPECT_THROW(parse_natural(""), DomainError);
  EXPECT_THROW(parse_natural("-5"), DomainError);
}
