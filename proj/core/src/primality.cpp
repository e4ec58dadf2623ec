#include <array>
#include <random>

#include "wdd/arith.hpp"

namespace wdd::arith {

namespace {

constexpr std::array<unsigned long, 13> kDeterministicBases = {2,  3,  5,  7,  11, 13, 17,
                                                               19, 23, 29, 31, 37, 41};
constexpr unsigned long kTrialLimit = 1000;

const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> primes = primes_below(kTrialLimit);
  return primes;
}

// n odd, n > 3, 2 <= a <= n - 2.
bool strong_probable_prime(const Natural& n, const Natural& a) {
  Natural d = n - 1;
  const auto s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Natural x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const Natural minus_one = n - 1;
  if (x == 1 || x == minus_one) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == minus_one) return true;
    if (x == 1) return false;
  }
  return false;
}

Natural half_mod(Natural v, const Natural& n) {
  if (mpz_odd_p(v.get_mpz_t())) v += n;
  return (v / 2) % n;
}

// Strong Lucas probable-prime test with P = 1, Q = (1 - D) / 4.
// Requires n odd, not a perfect square, gcd(n, D Q) = 1, jacobi(D, n) = -1.
bool strong_lucas(const Natural& n, long discriminant, long q) {
  Natural d = n + 1;
  const auto s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  Natural D = discriminant;
  D %= n;
  if (D < 0) D += n;
  Natural Q = q;
  Q %= n;
  if (Q < 0) Q += n;

  Natural U = 1, V = 1, Qk = Q;
  const auto bits = mpz_sizeinbase(d.get_mpz_t(), 2);
  for (auto i = static_cast<long>(bits) - 2; i >= 0; --i) {
    U = U * V % n;
    V = (V * V - 2 * Qk) % n;
    if (V < 0) V += n;
    Qk = Qk * Qk % n;
    if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      Natural u2 = half_mod(U + V, n);
      Natural v2 = half_mod(D * U + V, n);
      U = std::move(u2);
      V = std::move(v2);
      Qk = Qk * Q % n;
    }
  }
  if (U == 0 || V == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    V = (V * V - 2 * Qk) % n;
    if (V < 0) V += n;
    Qk = Qk * Qk % n;
    if (V == 0) return true;
  }
  return false;
}

struct LucasParams {
  long discriminant;
  long q;
};

// Selfridge method A. nullopt when n shares a factor with a candidate D.
std::optional<LucasParams> selfridge(const Natural& n, Natural& divisor) {
  long D = 5;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Natural dz = D;
    const int j = mpz_jacobi(dz.get_mpz_t(), n.get_mpz_t());
    if (j == -1) return LucasParams{D, (1 - D) / 4};
    if (j == 0) {
      Natural g = gcd(abs(dz), n);
      if (g != 1 && g != n) {
        divisor = g;
        return std::nullopt;
      }
    }
    D = D > 0 ? -(D + 2) : -D + 2;
  }
  return std::nullopt;
}

}  // namespace

const Natural& deterministic_primality_bound() {
  static const Natural bound("3317044064679887385961981", 10);
  return bound;
}

PrimalityVerdict is_prime(const Natural& n, const PrimalityPolicy& policy) {
  auto composite = [](CompositeWitness w) {
    return PrimalityVerdict{Verdict::Composite, std::move(w), 0};
  };
  if (n < 2) return composite(UnitWitness{});

  for (std::uint64_t p : small_primes()) {
    if (n == p) return {Verdict::ProvenPrime, std::nullopt, 0};
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return composite(DivisorWitness{Natural(p)});
  }
  if (n < kTrialLimit * kTrialLimit) return {Verdict::ProvenPrime, std::nullopt, 0};

  if (n < deterministic_primality_bound()) {
    for (unsigned long a : kDeterministicBases) {
      if (!strong_probable_prime(n, a)) return composite(MillerRabinWitness{Natural(a)});
    }
    return {Verdict::ProvenPrime, std::nullopt, 0};
  }

  if (!strong_probable_prime(n, 2)) return composite(MillerRabinWitness{Natural(2)});

  if (policy.lucas) {
    if (mpz_perfect_square_p(n.get_mpz_t())) {
      Natural root = sqrt(n);
      return composite(DivisorWitness{root});
    }
    Natural divisor;
    if (auto params = selfridge(n, divisor)) {
      if (!strong_lucas(n, params->discriminant, params->q)) {
        return composite(LucasWitness{params->discriminant, params->q});
      }
    } else if (divisor != 0) {
      return composite(DivisorWitness{divisor});
    }
  }

  std::mt19937_64 rng(policy.seed);
  gmp_randclass gmp_rng(gmp_randinit_mt);
  gmp_rng.seed(static_cast<unsigned long>(rng()));
  const Natural span = n - 3;  // bases in [2, n - 2]
  for (unsigned i = 0; i < policy.rounds; ++i) {
    Natural a = gmp_rng.get_z_range(span) + 2;
    if (!strong_probable_prime(n, a)) return composite(MillerRabinWitness{a});
  }
  return {Verdict::ProbablePrime, std::nullopt, policy.rounds};
}

bool check_witness(const Natural& n, const CompositeWitness& witness) {
  struct Visitor {
    const Natural& n;
    bool operator()(const UnitWitness&) const { return n < 2; }
    bool operator()(const DivisorWitness& w) const {
      return w.divisor > 1 && w.divisor < n && n % w.divisor == 0;
    }
    bool operator()(const MillerRabinWitness& w) const {
      if (n < 5 || mpz_even_p(n.get_mpz_t())) return false;
      if (w.base < 2 || w.base > n - 2) return false;
      return !strong_probable_prime(n, w.base);
    }
    bool operator()(const LucasWitness& w) const {
      if (n < 5 || mpz_even_p(n.get_mpz_t()) || mpz_perfect_square_p(n.get_mpz_t())) return false;
      Natural dz = w.discriminant;
      if (mpz_jacobi(dz.get_mpz_t(), n.get_mpz_t()) != -1) return false;
      if (4 * w.q != 1 - w.discriminant) return false;
      if (gcd(n, Natural(2 * w.q)) != 1) return false;
      return !strong_lucas(n, w.discriminant, w.q);
    }
  };
  return std::visit(Visitor{n}, witness);
}

}  // namespace wdd::arith
