#pragma once

// Covering systems of congruences and their verification.
//
// The naive verifier scans [0, lcm) directly. The fast verifier splits the
// integers by residue u mod w: only congruences compatible with u matter, and
// with l' their lcm and delta = gcd(w, l'), checking w*t + u for
// 0 <= t < l'/delta settles the whole class.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wdd::covering {

/// k = residue (mod modulus), with 0 <= residue < modulus.
class Congruence {
 public:
  Congruence(std::uint64_t residue, std::uint64_t modulus);

  /// Reduces any integer residue into [0, modulus).
  static Congruence normalized(std::int64_t residue, std::uint64_t modulus);

  std::uint64_t residue() const noexcept { return residue_; }
  std::uint64_t modulus() const noexcept { return modulus_; }

  bool matches(std::uint64_t k) const noexcept { return k % modulus_ == residue_; }
  bool matches(std::int64_t k) const noexcept;

  friend bool operator==(const Congruence&, const Congruence&) = default;

 private:
  std::uint64_t residue_;
  std::uint64_t modulus_;
};

class CoveringSystem {
 public:
  CoveringSystem() = default;
  explicit CoveringSystem(std::vector<Congruence> congruences)
      : congruences_(std::move(congruences)) {}

  const std::vector<Congruence>& congruences() const noexcept { return congruences_; }
  std::size_t size() const noexcept { return congruences_.size(); }
  bool empty() const noexcept { return congruences_.empty(); }
  void add(Congruence c) { congruences_.push_back(c); }

  /// Index of the first congruence matching k, if any.
  std::optional<std::size_t> find_match(std::int64_t k) const noexcept;

 private:
  std::vector<Congruence> congruences_;
};

struct LcmAnalysis {
  std::uint64_t lcm = 1;
  std::uint64_t max_prime = 1;  // 1 when lcm == 1
  std::size_t count = 0;
};

/// Throws std::invalid_argument on an empty system and std::overflow_error
/// when the lcm does not fit in 64 bits.
LcmAnalysis lcm_analysis(const CoveringSystem& system);

struct CoverResult {
  bool covered = false;
  std::optional<std::uint64_t> witness;  // an integer no congruence matches
};

inline constexpr std::uint64_t kNaiveScanLimit = 100'000'000;

/// Scans [0, lcm). Throws BudgetExceeded when lcm > limit. The witness is the
/// least uncovered integer.
CoverResult is_covering_naive(const CoveringSystem& system,
                              std::uint64_t limit = kNaiveScanLimit);

struct ResidueClassReduction {
  std::uint64_t u = 0;
  std::uint64_t w = 1;
  std::vector<Congruence> filtered;  // C', sorted by modulus ascending
  std::uint64_t lcm_prime = 1;       // l'
  std::uint64_t delta = 1;           // gcd(w, l')
  std::uint64_t span = 0;            // l' / delta; 0 when C' is empty
};

/// w = 60 q (q the largest prime factor of lcm) when it divides lcm, else the
/// largest divisor of lcm of the form 2^a 3^b 5^c q not exceeding 10^4 q.
std::uint64_t default_split(std::uint64_t lcm);

/// Throws std::invalid_argument when w does not divide lcm.
ResidueClassReduction reduce_class(const CoveringSystem& system, std::uint64_t w, std::uint64_t u);

/// All w reductions, without scanning.
std::vector<ResidueClassReduction> reduction_profile(const CoveringSystem& system, std::uint64_t w);

/// Scans w*t + u for 0 <= t < span; returns the least uncovered t.
std::optional<std::uint64_t> first_uncovered(const ResidueClassReduction& reduction);

struct FastOptions {
  std::optional<std::uint64_t> w;  // default_split(lcm) when unset
  unsigned threads = 1;
};

/// Verdict and witness are independent of the thread count: on failure the
/// witness is w*t + u for the smallest failing u and, within it, smallest t.
CoverResult is_covering_fast(const CoveringSystem& system, const FastOptions& options = {});

// ---------------------------------------------------------------------------
// Covering files: optional `# digit <d>` header, then `a m [rho]` per line.

struct CoveringRow {
  Congruence congruence;
  std::optional<std::uint32_t> rho;
};

struct CoveringFile {
  std::optional<int> digit;
  std::vector<CoveringRow> rows;
  std::vector<std::string> warnings;  // e.g. residues normalized into [0, m)

  CoveringSystem system() const;
};

CoveringFile parse_covering(std::istream& in, const std::string& source = "<covering>");
CoveringFile load_covering(const std::string& path);
void write_covering(std::ostream& out, const CoveringFile& file);

}  // namespace wdd::covering
