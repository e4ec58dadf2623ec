#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wdd/tables.hpp"

namespace wdd::report {

/// Published congruence counts and, for the twelve tabulated coverings,
/// (lcm, largest prime of lcm) per digit.
struct PublishedRow {
  int digit;
  std::size_t count;
  std::optional<std::uint64_t> lcm;
  std::optional<std::uint64_t> max_prime;
};

const std::vector<PublishedRow>& published_values();
const PublishedRow* published(int digit);

struct DigitReport {
  int digit = 0;
  bool mod3 = false;
  std::size_t count = 0;
  std::uint64_t lcm = 1;
  std::uint64_t max_prime = 1;
  std::uint64_t w = 1;
  bool covered = false;
  std::optional<std::uint64_t> witness;
  double seconds = 0;

  bool count_matches = false;
  bool lcm_matches = false;
  bool max_prime_matches = false;

  std::size_t rho_within_counts = 0;  // rows whose rho <= L(m)
  std::size_t primes_resolved = 0;    // rows resolved to a prime of order m
  bool assignment_verified = false;   // every row resolved, primes distinct

  bool matches() const noexcept { return count_matches && lcm_matches && max_prime_matches; }
};

struct Report {
  std::vector<DigitReport> digits;  // ordered by digit
  double seconds = 0;

  bool all_covered() const;
  bool all_match() const;
};

struct ReportOptions {
  unsigned threads = 1;
  std::vector<int> digits;  // empty: all 18
};

Report reproduce_report(const tables::TableBundle& bundle, const ReportOptions& options = {});

}  // namespace wdd::report
