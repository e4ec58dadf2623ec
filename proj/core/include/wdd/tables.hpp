#pragma once

// The shipped appendix data: one covering file per digit (or a marker for the
// digits handled by the prime 3), the L(m) counts, and an optional order table.
// A MANIFEST in the directory records row counts and SHA-256 checksums.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wdd/covering.hpp"
#include "wdd/order_table.hpp"

namespace wdd::tables {

/// The 18 digits d in -9..-1, 1..9.
const std::vector<int>& all_digits();

struct DigitSource {
  int digit = 0;
  bool mod3 = false;                         // covered by k = 0 (mod 1) with p = 3
  std::string file;                          // relative to the bundle directory
  std::optional<covering::CoveringFile> covering;
  std::vector<std::size_t> parts;            // rows per printed table part
  std::string sha256;
};

struct TableBundle {
  std::string directory;
  std::map<int, DigitSource> digits;
  std::map<std::uint64_t, std::size_t> lcounts;
  std::optional<cyclotomic::OrderTable> orders;
  std::string orders_file;
  std::vector<std::string> warnings;

  /// k = 0 (mod 1) for mod3 digits.
  covering::CoveringSystem system(int digit) const;
};

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

/// Throws ParseError (with file and line) on malformed data, on checksum or
/// row-count mismatches, and when some digit has neither a covering nor a
/// mod3 marker.
TableBundle ingest_tables(const std::string& directory);

/// Writes the bundle (covering files, lcounts, orders, MANIFEST) into a
/// directory; ingesting the result reproduces the normalized bundle.
void write_bundle(const TableBundle& bundle, const std::string& directory);

}  // namespace wdd::tables
