#pragma once

// Single-digit substitutions in base 10.
//
// Changing the digit at position k (weight 10^k) from o to r adds (r - o) 10^k,
// so each substitution is one of the shifts d 10^k with d in -9..-1, 1..9.
// Positions at or beyond the length of n hold leading zeros.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wdd/arith.hpp"

namespace wdd::delicate {

struct Substitution {
  std::uint32_t position = 0;  // power of 10
  std::uint8_t original = 0;
  std::uint8_t replacement = 0;

  int shift() const noexcept { return int{replacement} - int{original}; }
  Substitution inverse() const noexcept { return {position, replacement, original}; }

  friend bool operator==(const Substitution&, const Substitution&) = default;
};

/// Decimal digit of n at `position` (0 beyond the leading digit).
unsigned digit_at(const Natural& n, std::uint32_t position);

std::size_t decimal_length(const Natural& n);

/// n + (replacement - original) 10^position. Throws DomainError when the
/// digit of n at that position is not `original` or digits are out of range.
Natural apply(const Natural& n, const Substitution& s);

/// Same substitution by editing the decimal string; leading zeros are dropped.
std::string apply_text(const std::string& decimal, const Substitution& s);

/// All 9 (len(n) + leading) substitutions, positions ascending.
std::vector<Substitution> substitutions(const Natural& n, std::uint32_t leading = 0);

struct SubstitutionOutcome {
  Substitution substitution;
  Natural value;
  bool prime = false;
};

/// Every in-length substitution of n with the resulting value and primality.
std::vector<SubstitutionOutcome> substitution_report(const Natural& n);

/// True iff no in-length substitution of prime p yields a prime. Throws
/// DomainError when p is not prime.
bool is_digitally_delicate(const Natural& p);

struct WindowVerdict {
  bool passes = false;
  std::optional<Substitution> substitution;  // set on failure
  std::optional<Natural> prime;              // the prime produced

  /// A pass is only evidence: no finite window proves wide delicacy.
};

inline constexpr std::uint32_t kDefaultWindow = 64;

/// Digital delicacy plus the first `window` leading-zero positions.
/// Throws DomainError when p is not prime.
WindowVerdict is_widely_digitally_delicate_window(const Natural& p,
                                                  std::uint32_t window = kDefaultWindow);

/// Least digitally delicate prime <= bound.
std::optional<std::uint64_t> find_first_digitally_delicate(std::uint64_t bound);

/// True iff every in-length substitution of n yields a composite. Throws
/// DomainError when n is not composite or gcd(n, 10) != 1.
bool is_composite_digit_stable(const Natural& n);

}  // namespace wdd::delicate
