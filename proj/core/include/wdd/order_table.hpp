#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wdd/arith.hpp"

namespace wdd::cyclotomic {

enum class Provenance { VerifiedPrime, PlaceholderComposite, Unclassified };

struct OrderTableElement {
  Natural value;
  Provenance provenance = Provenance::Unclassified;

  friend bool operator==(const OrderTableElement&, const OrderTableElement&) = default;
};

/// Ordered list of elements for one modulus; position j (1-based) is rho.
/// A placeholder composite Q occupies one slot per prime factor it stands for.
struct OrderTableEntry {
  std::uint64_t modulus = 0;
  std::vector<OrderTableElement> elements;

  /// L(m): list length, placeholder multiplicity included.
  std::size_t count() const noexcept { return elements.size(); }

  /// Element with 1-based index rho, or nullptr when out of range.
  const OrderTableElement* at_rho(std::size_t rho) const noexcept {
    return rho >= 1 && rho <= elements.size() ? &elements[rho - 1] : nullptr;
  }

  friend bool operator==(const OrderTableEntry&, const OrderTableEntry&) = default;
};

using OrderTable = std::map<std::uint64_t, OrderTableEntry>;

/// `m: e1, e2, ..., eL` per line; `Q*2` lists Q twice; `#` starts a comment.
OrderTable parse_order_table(std::istream& in, const std::string& source = "<order table>");
OrderTable load_order_table(const std::string& path);
void write_order_table(std::ostream& out, const OrderTable& table);

/// Appendix L(m) counts: `m L` per line.
std::map<std::uint64_t, std::size_t> parse_lcounts(std::istream& in,
                                                   const std::string& source = "<lcounts>");

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  int check = 0;  // 1..5 for the five list checks, 6 = completeness cross-check
  std::string element;  // decimal, empty for list-level findings
  std::string message;
};

struct EntryReport {
  std::uint64_t modulus = 0;
  std::size_t count = 0;
  std::vector<Violation> violations;
  std::vector<Provenance> provenance;  // parallel to the entry's elements
  bool cross_checked = false;  // a complete factorization was available

  bool valid() const noexcept { return violations.empty(); }
  bool failed(int check) const;
};

struct ValidationReport {
  std::vector<EntryReport> entries;  // ordered by modulus

  bool valid() const;
};

struct ValidationOptions {
  arith::FactorBudget budget{};
  /// Cross-check against a full factorization of Phi_m(10) when m is at most
  /// this value (and factoring completes).
  std::uint64_t cross_check_limit = 0;
  /// Expected L(m) per modulus, when known.
  const std::map<std::uint64_t, std::size_t>* expected_counts = nullptr;
  unsigned threads = 1;
};

/// Runs the five list checks per modulus and classifies every element's
/// provenance. Never throws on bad data; findings go into the report.
ValidationReport validate_order_table(const OrderTable& table,
                                      const ValidationOptions& options = {});

/// Copy of `table` with each element's provenance taken from `report`.
OrderTable classified(const OrderTable& table, const ValidationReport& report);

/// Build a table from primes_of_order for the given moduli, in increasing
/// order (the default rho ordering). Incomplete factorizations contribute the
/// primes found so far.
OrderTable build_order_table(const std::vector<std::uint64_t>& moduli,
                             const arith::FactorBudget& budget = {});

}  // namespace wdd::cyclotomic
