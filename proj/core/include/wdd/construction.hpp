#pragma once

// Binds digit coverings to primes and assembles the progression A n + B.
//
// For digit d, a congruence k = a (mod m) assigned to a prime p with
// ord_p(10) = m forces p | A n + B + d 10^k whenever k = a (mod m), provided
// B = -d 10^a (mod p) and p | A. A prime shared by several digits needs the
// values d 10^a(d) to agree mod p.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wdd/arith.hpp"
#include "wdd/covering.hpp"
#include "wdd/order_table.hpp"

namespace wdd::construction {

/// d in {-9..-1, 1..9}.
bool valid_digit(int d) noexcept;

/// (-d 10^a) mod p, in [0, p).
Natural derive_b_residue(int d, std::uint64_t a, const Natural& p);

struct DigitUse {
  int digit;
  std::uint64_t residue;  // a(d)
};

/// True iff every d 10^a(d) is congruent mod p.
bool cross_digit_consistency(const Natural& p, std::span<const DigitUse> uses);

struct Assignment {
  covering::Congruence congruence;
  Natural prime;
  std::optional<std::uint32_t> rho;
};

struct DigitCovering {
  int digit = 0;
  std::vector<Assignment> entries;

  covering::CoveringSystem system() const;
};

/// Resolves each row's (m, rho) against the order table. Throws DomainError
/// when a reference is missing, out of range, or lands on a placeholder.
DigitCovering resolve(int digit, const covering::CoveringFile& file,
                      const cyclotomic::OrderTable& table);

/// The single-congruence cover k = 0 (mod 1) with p = 3, valid for d = 2 (mod 3).
DigitCovering mod3_covering(int digit);

/// Throws DomainError on the first violated invariant: bad digit, wrong
/// order, repeated prime within the digit, or not a covering system.
void check_digit_covering(const DigitCovering& dc, unsigned threads = 1);

struct Constraint {
  Natural prime;
  Natural b_residue;
  covering::Congruence congruence;
  int digit;
  std::optional<std::uint32_t> rho;
  bool proven_prime;
};

struct Construction {
  std::vector<DigitCovering> digits;  // sorted by digit
  Natural A;
  Natural B;
  std::vector<Constraint> constraints;  // one per (digit, congruence)
  std::vector<std::string> notes;

  /// True when some assigned prime is only a probable prime.
  bool rests_on_probable_primes() const;
  const DigitCovering* find_digit(int d) const;
};

struct AssembleOptions {
  bool check_invariants = true;
  unsigned threads = 1;
};

/// A = product of the distinct assigned primes; B = least CRT solution
/// exceeding the largest assigned prime. Throws DomainError on an empty digit
/// set or a failed invariant, InconsistentConstraints when a shared prime
/// needs two different residues.
Construction assemble(std::vector<DigitCovering> digits, const AssembleOptions& options = {});

struct Certificate {
  Natural prime;
  covering::Congruence congruence;
  Natural value;  // n + d 10^k
  /// |value| > p, so p | value proves |value| composite.
  bool proves_composite = false;
};

/// Throws DomainError when n is not B mod A or d is not covered; throws
/// std::logic_error if no congruence matches k (impossible for a cover).
Certificate substitution_divisor(const Construction& c, const Natural& n, int d, std::uint64_t k);

struct StarFailure {
  Natural n;
  int digit;
  std::uint64_t k;
  std::string reason;
};

struct StarReport {
  std::size_t samples = 0;
  std::uint64_t k_max = 0;
  std::size_t checked = 0;
  std::optional<StarFailure> first_failure;

  bool passed() const noexcept { return !first_failure.has_value(); }
};

/// For random n = B (mod A) and every covered d and 0 <= k <= k_max, checks
/// the certificate prime divides n + d 10^k and that |n + d 10^k| is composite.
StarReport verify_property_star_sample(const Construction& c, std::size_t samples,
                                       std::uint64_t k_max, std::uint64_t seed = 1);

// `A=<dec>`, `B=<dec>`, then `p a m d rho` per constraint (rho `-` if unknown).
void write_construction(std::ostream& out, const Construction& c);
Construction read_construction(std::istream& in, const std::string& source = "<construction>");

}  // namespace wdd::construction
