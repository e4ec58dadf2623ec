#include "wdd/delicate.hpp"

#include <algorithm>

#include "wdd/errors.hpp"

namespace wdd::delicate {

namespace {

Natural pow10(std::uint32_t k) {
  Natural out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, k);
  return out;
}

bool fits_u64(const Natural& n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

std::uint64_t to_u64(const Natural& n) {
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

bool prime(const Natural& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return arith::is_prime_u64(to_u64(n));
  return arith::is_prime(n).is_prime();
}

// 0 and 1 are neither prime nor composite.
bool composite(const Natural& n) { return n > 3 && !prime(n); }

void require_prime(const Natural& p) {
  if (!prime(p)) throw DomainError(to_decimal(p) + " is not prime");
}

// Digits least significant first.
std::vector<std::uint8_t> digits_of(std::uint64_t n) {
  std::vector<std::uint8_t> out;
  do {
    out.push_back(static_cast<std::uint8_t>(n % 10));
    n /= 10;
  } while (n != 0);
  return out;
}

std::uint64_t pow10_u64(std::size_t k) {
  std::uint64_t out = 1;
  while (k-- > 0) out *= 10;
  return out;
}

bool delicate_u64(std::uint64_t p) {
  const auto ds = digits_of(p);
  for (std::size_t k = 0; k < ds.size(); ++k) {
    const std::uint64_t base = p - ds[k] * pow10_u64(k);
    const std::uint64_t step = pow10_u64(k);
    for (std::uint64_t r = 0; r <= 9; ++r) {
      if (r == ds[k]) continue;
      if (arith::is_prime_u64(base + r * step)) return false;
    }
  }
  return true;
}

}  // namespace

std::size_t decimal_length(const Natural& n) {
  if (n == 0) return 1;
  return n.get_str(10).size();
}

unsigned digit_at(const Natural& n, std::uint32_t position) {
  Natural q;
  mpz_tdiv_q(q.get_mpz_t(), n.get_mpz_t(), pow10(position).get_mpz_t());
  return static_cast<unsigned>(mpz_fdiv_ui(q.get_mpz_t(), 10));
}

Natural apply(const Natural& n, const Substitution& s) {
  if (s.original > 9 || s.replacement > 9) throw DomainError("digits must be 0..9");
  if (digit_at(n, s.position) != s.original) {
    throw DomainError("digit at position " + std::to_string(s.position) + " of " + to_decimal(n) +
                      " is not " + std::to_string(s.original));
  }
  return n + pow10(s.position) * s.shift();
}

std::string apply_text(const std::string& decimal, const Substitution& s) {
  std::string text = decimal;
  if (text.size() <= s.position) text.insert(0, s.position + 1 - text.size(), '0');
  const std::size_t index = text.size() - 1 - s.position;
  if (text[index] - '0' != s.original) throw DomainError("digit mismatch in text substitution");
  text[index] = static_cast<char>('0' + s.replacement);
  const auto first = text.find_first_not_of('0');
  return first == std::string::npos ? "0" : text.substr(first);
}

std::vector<Substitution> substitutions(const Natural& n, std::uint32_t leading) {
  const auto len = static_cast<std::uint32_t>(decimal_length(n));
  const std::string text = n.get_str(10);
  std::vector<Substitution> out;
  out.reserve(9 * (len + leading));
  for (std::uint32_t k = 0; k < len + leading; ++k) {
    const auto o = static_cast<std::uint8_t>(k < len ? text[len - 1 - k] - '0' : 0);
    for (std::uint8_t r = 0; r <= 9; ++r) {
      if (r != o) out.push_back({k, o, r});
    }
  }
  return out;
}

std::vector<SubstitutionOutcome> substitution_report(const Natural& n) {
  std::vector<SubstitutionOutcome> out;
  for (const auto& s : substitutions(n)) {
    Natural v = apply(n, s);
    const bool is_p = prime(v);
    out.push_back({s, std::move(v), is_p});
  }
  return out;
}

bool is_digitally_delicate(const Natural& p) {
  require_prime(p);
  if (fits_u64(p * 10)) return delicate_u64(to_u64(p));
  for (const auto& s : substitutions(p)) {
    if (prime(apply(p, s))) return false;
  }
  return true;
}

WindowVerdict is_widely_digitally_delicate_window(const Natural& p, std::uint32_t window) {
  require_prime(p);
  for (const auto& s : substitutions(p, window)) {
    Natural v = apply(p, s);
    if (prime(v)) return {false, s, std::move(v)};
  }
  return {true, std::nullopt, std::nullopt};
}

std::optional<std::uint64_t> find_first_digitally_delicate(std::uint64_t bound) {
  if (bound < 2) return std::nullopt;
  for (std::uint64_t p : arith::primes_below(bound + 1)) {
    if (delicate_u64(p)) return p;
  }
  return std::nullopt;
}

bool is_composite_digit_stable(const Natural& n) {
  if (!composite(n)) throw DomainError(to_decimal(n) + " is not composite");
  if (gcd(n, Natural(10)) != 1) throw DomainError(to_decimal(n) + " is not coprime to 10");
  for (const auto& s : substitutions(n)) {
    if (!composite(apply(n, s))) return false;
  }
  return true;
}

}  // namespace wdd::delicate
