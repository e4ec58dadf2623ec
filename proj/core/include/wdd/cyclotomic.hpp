#pragma once

// Cyclotomic values at 10 and the tables of primes with a given order of 10.
//
// A prime p not dividing m has ord_p(10) = m exactly when p | Phi_m(10), so the
// order-m primes are read off a (possibly partial) factorization of Phi_m(10).

#include <cstdint>
#include <vector>

#include "wdd/arith.hpp"

namespace wdd::cyclotomic {

/// Phi_m(x) via the Moebius product over the divisors of m, with exact division.
Natural cyclotomic_value(std::uint64_t m, const Natural& x);

inline Natural cyclotomic_value(std::uint64_t m) { return cyclotomic_value(m, Natural(10)); }

struct OrderPrime {
  Natural prime;
  bool proven = true;  // false: probable prime only
};

struct OrderPrimes {
  std::uint64_t modulus = 0;
  std::vector<OrderPrime> primes;  // strictly increasing
  bool complete = false;           // no unresolved cofactor remained
  Natural cofactor = 1;            // unfactored part of Phi_m(10), 1 if none
};

/// Default policy: no factoring attempt above this modulus (divisibility of
/// supplied values is still checked exactly).
inline constexpr std::uint64_t kFactorModulusLimit = 4000;

/// Primes dividing Phi_m(10) but not m, each re-verified to have order m.
/// When m > kFactorModulusLimit and `force` is false, nothing is factored and
/// the result is flagged incomplete.
OrderPrimes primes_of_order(std::uint64_t m, const arith::FactorBudget& budget = {},
                            bool force = false);

}  // namespace wdd::cyclotomic
