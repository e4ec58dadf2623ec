#include "wdd/arith.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include "wdd/errors.hpp"

namespace wdd {

Natural parse_natural(std::string_view decimal) {
  std::string_view digits = decimal;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
      })) {
    throw DomainError("not a decimal natural number: '" + std::string(decimal) + "'");
  }
  return Natural(std::string(digits), 10);
}

std::string to_decimal(const Natural& n) { return n.get_str(10); }

}  // namespace wdd

namespace wdd::arith {

namespace {

bool fits_u64(const Natural& n) { return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

std::uint64_t to_u64(const Natural& n) {
  // mpz_get_ui is only 64-bit on LP64 targets; assemble explicitly.
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

Natural from_u64(std::uint64_t v) {
  Natural out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

Natural powm(const Natural& base, const Natural& exp, const Natural& mod) {
  Natural out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::optional<PerfectPower> is_perfect_power(const Natural& n) {
  if (n < 4) return std::nullopt;
  const auto bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  // k > log2(n) forces 1 < n^(1/k) < 2.
  for (std::uint64_t k : primes_below(bits + 1)) {
    Natural root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) == 0) continue;
    if (auto inner = is_perfect_power(root)) {
      return PerfectPower{inner->base, inner->exponent * k};
    }
    return PerfectPower{root, k};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Natural carmichael(std::span<const PrimePower> factors) {
  Natural lambda = 1;
  for (const auto& pp : factors) {
    Natural part;
    if (pp.prime == 2) {
      if (pp.exponent <= 2) {
        part = pp.exponent;
      } else {
        mpz_ui_pow_ui(part.get_mpz_t(), 2, pp.exponent - 2);
      }
    } else {
      Natural pk;
      mpz_pow_ui(pk.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent - 1);
      part = pk * (pp.prime - 1);
    }
    lambda = lcm(lambda, part);
  }
  return lambda;
}

Natural multiplicative_order(const Natural& base, const Natural& modulus,
                             const FactorBudget& budget) {
  if (modulus < 2) throw DomainError("multiplicative order needs modulus >= 2");
  if (gcd(base, modulus) != 1) {
    throw DomainError("order of " + to_decimal(base) + " modulo " + to_decimal(modulus) +
                      " is undefined (not coprime)");
  }
  if (fits_u64(modulus)) {
    Natural reduced = base % modulus;
    return from_u64(multiplicative_order_u64(to_u64(reduced), to_u64(modulus)));
  }

  const Factorization fm = factor(modulus, budget);
  if (!fm.complete()) {
    throw BudgetExceeded("cannot factor modulus " + to_decimal(modulus) + " within budget");
  }
  const Natural lambda = carmichael(fm.primes);
  const Factorization fl = factor(lambda, budget);
  if (!fl.complete()) {
    throw BudgetExceeded("cannot factor Carmichael value of " + to_decimal(modulus));
  }

  const Natural b = base % modulus;
  Natural order = lambda;
  for (const auto& q : fl.primes) {
    for (unsigned i = 0; i < q.exponent; ++i) {
      const Natural candidate = order / q.prime;
      if (powm(b, candidate, modulus) != 1) break;
      order = candidate;
    }
  }
  return order;
}

bool has_order(const Natural& base, const Natural& n, std::uint64_t order) {
  if (order == 0 || n < 2) return false;
  const Natural b = base % n;
  if (powm(b, from_u64(order), n) != 1) return false;
  for (const auto& [q, e] : factor_u64(order)) {
    (void)e;
    if (powm(b, from_u64(order / q), n) == 1) return false;
  }
  return true;
}

Residue crt_combine(std::span<const Residue> constraints) {
  Natural r = 0;
  Natural m = 1;
  for (const auto& c : constraints) {
    if (c.modulus <= 0) throw DomainError("CRT modulus must be positive");
    Natural r2 = c.residue % c.modulus;
    if (r2 < 0) r2 += c.modulus;
    const Natural g = gcd(m, c.modulus);
    Natural diff = r2 - r;
    if (diff % g != 0) {
      throw InconsistentConstraints("residue " + to_decimal(r2) + " mod " +
                                    to_decimal(c.modulus) +
                                    " contradicts earlier constraints");
    }
    const Natural m_g = m / g;
    const Natural n_g = c.modulus / g;
    Natural inv;
    if (n_g == 1) {
      inv = 0;
    } else {
      mpz_invert(inv.get_mpz_t(), m_g.get_mpz_t(), n_g.get_mpz_t());
    }
    Natural t = (diff / g) * inv % n_g;
    if (t < 0) t += n_g;
    r += m * t;
    m *= n_g;
    r %= m;
  }
  return {r, m};
}

// ---------------------------------------------------------------------------

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime_u64(std::uint64_t n) {
  static constexpr std::uint64_t kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (std::uint64_t p : kSmall) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kSmall) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

std::uint64_t rho_u64(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t kBatch = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += kBatch;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_u64_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = rho_u64(n);
  factor_u64_into(d, out);
  factor_u64_into(n / d, out);
}

}  // namespace

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factor_u64_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

std::vector<std::uint64_t> divisors_u64(std::uint64_t n) {
  std::vector<std::uint64_t> divs{1};
  for (const auto& [p, e] : factor_u64(n)) {
    const std::size_t count = divs.size();
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < count; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::uint64_t multiplicative_order_u64(std::uint64_t base, std::uint64_t modulus) {
  if (modulus < 2) throw DomainError("multiplicative order needs modulus >= 2");
  base %= modulus;
  if (std::gcd(base, modulus) != 1) {
    throw DomainError("order of " + std::to_string(base) + " modulo " +
                      std::to_string(modulus) + " is undefined (not coprime)");
  }
  std::uint64_t lambda = 1;
  for (const auto& [p, e] : factor_u64(modulus)) {
    std::uint64_t part;
    if (p == 2) {
      part = e == 1 ? 1 : e == 2 ? 2 : std::uint64_t{1} << (e - 2);
    } else {
      part = p - 1;
      for (unsigned i = 1; i < e; ++i) part *= p;
    }
    lambda = std::lcm(lambda, part);
  }
  std::uint64_t order = lambda;
  for (const auto& [q, e] : factor_u64(lambda)) {
    for (unsigned i = 0; i < e; ++i) {
      if (powmod(base, order / q, modulus) != 1) break;
      order /= q;
    }
  }
  return order;
}

int moebius(std::uint64_t n) {
  if (n == 0) throw DomainError("moebius(0) is undefined");
  int sign = 1;
  for (const auto& [p, e] : factor_u64(n)) {
    (void)p;
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  const std::uint64_t g = std::gcd(a, b);
  std::uint64_t out;
  if (__builtin_mul_overflow(a / g, b, &out)) {
    throw std::overflow_error("lcm exceeds 64 bits");
  }
  return out;
}

std::vector<std::uint64_t> primes_below(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit <= 2) return primes;
  std::vector<bool> composite(limit, false);
  for (std::uint64_t i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j < limit; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace wdd::arith
