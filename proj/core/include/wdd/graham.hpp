#pragma once

// Fibonacci-like sequences u0 = a, u1 = b, u(n+1) = u(n) + u(n-1) whose every
// term is divisible by a prime from a fixed finite set.

#include <cstdint>
#include <optional>
#include <vector>

#include "wdd/arith.hpp"

namespace wdd::graham {

struct GrahamInstance {
  Natural a;
  Natural b;
  std::vector<std::uint64_t> primes;

  Natural modulus() const;  // N, the product of the primes
};

/// Seeds and prime set with the smallest known (a, b).
GrahamInstance vsemirnov_instance();

struct RecurrencePeriod {
  std::uint64_t prime = 0;
  std::uint64_t period = 0;                 // least T >= 1 returning to (u0, u1) mod p
  std::vector<std::uint64_t> zero_indices;  // j in [0, T) with p | u_j, ascending
};

/// The map (x, y) -> (y, x + y) is invertible mod p, so the orbit of
/// (a, b) is a pure cycle and its length is found by stepping from index 0.
RecurrencePeriod recurrence_period(std::uint64_t p, const Natural& a, const Natural& b);

struct PrimeCoverage {
  std::uint64_t prime;
  std::uint64_t period;
  std::size_t zeros;    // residues mod period
  std::uint64_t hits;   // indices in [0, L) this prime divides
};

struct CoverReport {
  bool covered = false;
  std::uint64_t lcm = 0;                // L, the lcm of the periods
  std::vector<PrimeCoverage> primes;
  std::optional<std::uint64_t> uncovered;  // least j in [0, L) with no prime
  bool terms_exceed_primes = false;     // u_j > max prime for j >= 2
  std::size_t spot_checked = 0;         // leading terms checked with big integers
  bool spot_check_passed = false;
};

/// Throws DomainError when the prime set is empty or has a non-prime.
CoverReport verify_cover(const GrahamInstance& instance, std::size_t spot_terms = 50);

struct SeedReduction {
  Natural gcd_a;      // gcd(a, N)
  Natural gcd_b;      // gcd(b, N)
  arith::Residue a_reduced;  // a' = a / gcd_a (mod N / gcd_a)
  arith::Residue b_reduced;  // b' = b / gcd_b (mod N / gcd_b)
};

/// Throws DomainError when a or b is zero.
SeedReduction reduce_seeds(const GrahamInstance& instance);

}  // namespace wdd::graham
