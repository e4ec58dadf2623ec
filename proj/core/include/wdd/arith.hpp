#pragma once

// Arbitrary-precision integers and the number-theoretic primitives used by
// the rest of the library. Big values are GMP integers; the hot loops in the
// covering and digit-substitution code use the 64-bit helpers at the bottom.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wdd {

/// Exact nonnegative integer. Serialized as a decimal string everywhere.
using Natural = mpz_class;

Natural parse_natural(std::string_view decimal);
std::string to_decimal(const Natural& n);

}  // namespace wdd

namespace wdd::arith {

// ---------------------------------------------------------------------------
// Primality

enum class Verdict { Composite, ProbablePrime, ProvenPrime };

/// n < 2: neither prime nor composite, reported under Composite.
struct UnitWitness {};
/// A nontrivial divisor 1 < divisor < n.
struct DivisorWitness {
  Natural divisor;
};
/// Base a for which n fails the strong probable-prime test.
struct MillerRabinWitness {
  Natural base;
};
/// Parameters of the strong Lucas test n failed (Selfridge choice P = 1).
struct LucasWitness {
  long discriminant;
  long q;
};
using CompositeWitness =
    std::variant<UnitWitness, DivisorWitness, MillerRabinWitness, LucasWitness>;

struct PrimalityVerdict {
  Verdict verdict = Verdict::Composite;
  std::optional<CompositeWitness> witness;  // set iff verdict == Composite
  unsigned rounds = 0;                      // random MR rounds for ProbablePrime

  bool is_prime() const noexcept { return verdict != Verdict::Composite; }
  bool proven() const noexcept { return verdict == Verdict::ProvenPrime; }
};

struct PrimalityPolicy {
  unsigned rounds = 64;         // random-base rounds above the deterministic range
  std::uint64_t seed = 0x5eed;  // base selection is reproducible
  bool lucas = true;            // strong Lucas check above the deterministic range
};

/// Values below this bound are decided exactly (first 13 prime bases).
const Natural& deterministic_primality_bound();

PrimalityVerdict is_prime(const Natural& n, const PrimalityPolicy& policy = {});

/// True iff the witness demonstrates that n is composite.
bool check_witness(const Natural& n, const CompositeWitness& witness);

// ---------------------------------------------------------------------------
// Factorization

struct FactorBudget {
  std::uint64_t trial_bound = 100000;   // trial-divide by primes below this
  std::uint64_t rho_iterations = 1000000;  // per cofactor
  double seconds = 0;                   // wall-clock cap; 0 = none
  PrimalityPolicy primality{};
};

struct PrimePower {
  Natural prime;
  unsigned exponent = 1;
  bool proven = true;  // false when the prime is only a probable prime

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

enum class RemainderStatus { Composite, Unresolved };

struct Remainder {
  Natural value;
  RemainderStatus status = RemainderStatus::Composite;
};

struct Factorization {
  std::vector<PrimePower> primes;  // increasing, distinct
  std::optional<Remainder> remainder;

  bool complete() const noexcept { return !remainder.has_value(); }
  /// Product of all parts; equals the factored input.
  Natural product() const;
};

Factorization factor(const Natural& n, const FactorBudget& budget = {});

/// One nontrivial factor of composite n via Brent's variant of Pollard rho,
/// or nullopt when the iteration budget runs out.
std::optional<Natural> pollard_rho(const Natural& n, std::uint64_t iterations,
                                   std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Perfect powers

struct PerfectPower {
  Natural base;
  unsigned long exponent;
};

/// (N, k) with N^k = n and k >= 2 maximal, if any.
std::optional<PerfectPower> is_perfect_power(const Natural& n);

// ---------------------------------------------------------------------------
// Orders and congruences

/// Least m >= 1 with base^m = 1 (mod modulus). Throws DomainError when
/// gcd(base, modulus) != 1 or modulus < 2, BudgetExceeded when the modulus
/// (or p - 1 for a prime modulus) cannot be factored within budget.
Natural multiplicative_order(const Natural& base, const Natural& modulus,
                             const FactorBudget& budget = {});

/// True iff base has order exactly `order` modulo n. Needs only the prime
/// factors of `order`, never a factorization of n or n - 1.
bool has_order(const Natural& base, const Natural& n, std::uint64_t order);

/// Carmichael function of a fully factored modulus.
Natural carmichael(std::span<const PrimePower> factors);

struct Residue {
  Natural residue;
  Natural modulus;

  friend bool operator==(const Residue&, const Residue&) = default;
};

/// Solve the simultaneous congruences. Non-coprime moduli are merged when
/// consistent; inconsistent systems throw InconsistentConstraints. An empty
/// input yields (0, 1).
Residue crt_combine(std::span<const Residue> constraints);

// ---------------------------------------------------------------------------
// 64-bit helpers

__extension__ using u128 = unsigned __int128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic for every 64-bit n.
bool is_prime_u64(std::uint64_t n);

/// Prime factors with multiplicity, increasing (trial division + rho).
std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n);

std::vector<std::uint64_t> divisors_u64(std::uint64_t n);

std::uint64_t multiplicative_order_u64(std::uint64_t base, std::uint64_t modulus);

/// Moebius function.
int moebius(std::uint64_t n);

/// Checked lcm; throws std::overflow_error when the result exceeds 2^64 - 1.
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

/// Primes below `limit` (simple sieve of Eratosthenes).
std::vector<std::uint64_t> primes_below(std::uint64_t limit);

}  // namespace wdd::arith
