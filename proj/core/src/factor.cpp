#include <algorithm>
#include <chrono>
#include <map>

#include "wdd/arith.hpp"

namespace wdd::arith {

Natural Factorization::product() const {
  Natural out = 1;
  for (const auto& pp : primes) {
    Natural pk;
    mpz_pow_ui(pk.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    out *= pk;
  }
  if (remainder) out *= remainder->value;
  return out;
}

std::optional<Natural> pollard_rho(const Natural& n, std::uint64_t iterations,
                                   std::uint64_t seed) {
  if (n < 4) return std::nullopt;
  if (mpz_even_p(n.get_mpz_t())) return Natural(2);

  std::uint64_t spent = 0;
  for (unsigned long c = seed; spent < iterations; ++c) {
    auto f = [&](const Natural& x) { return Natural((x * x + c) % n); };
    Natural y = 2, x = 2, ys = 2, q = 1, g = 1;
    std::uint64_t r = 1;
    constexpr std::uint64_t kBatch = 128;
    while (g == 1 && spent < iterations) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      spent += r;
      for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const std::uint64_t batch = std::min(kBatch, r - k);
        for (std::uint64_t i = 0; i < batch; ++i) {
          y = f(y);
          q = q * abs(x - y) % n;
        }
        spent += batch;
        g = gcd(q, n);
      }
      r <<= 1;
    }
    if (g == n) {
      // The batched product overshot; replay one step at a time.
      do {
        ys = f(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return std::nullopt;
}

Factorization factor(const Natural& n, const FactorBudget& budget) {
  if (n < 1) throw std::invalid_argument("factor needs n >= 1");

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto out_of_time = [&] {
    return budget.seconds > 0 &&
           std::chrono::duration<double>(Clock::now() - start).count() > budget.seconds;
  };

  std::map<Natural, std::pair<unsigned, bool>> found;  // prime -> (exponent, proven)
  auto record = [&](const Natural& p, unsigned e, bool proven) {
    auto& slot = found[p];
    slot.first += e;
    slot.second = slot.first == e ? proven : (slot.second && proven);
  };

  Natural rest = n;
  for (std::uint64_t p = 2; p < budget.trial_bound; p += (p == 2 ? 1 : 2)) {
    if (Natural(p) * p > rest) break;
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    record(Natural(p), e, true);
  }

  Natural composite_rest = 1;
  bool unresolved = false;
  std::vector<std::pair<Natural, unsigned>> work;
  if (rest > 1) work.emplace_back(rest, 1);
  const Natural trial_square = Natural(budget.trial_bound) * budget.trial_bound;

  while (!work.empty()) {
    auto [c, mult] = work.back();
    work.pop_back();
    if (c == 1) continue;
    if (out_of_time()) {
      Natural ck;
      mpz_pow_ui(ck.get_mpz_t(), c.get_mpz_t(), mult);
      composite_rest *= ck;
      unresolved = true;
      continue;
    }
    if (c < trial_square) {
      record(c, mult, true);
      continue;
    }
    if (auto pp = is_perfect_power(c)) {
      work.emplace_back(pp->base, mult * static_cast<unsigned>(pp->exponent));
      continue;
    }
    const auto verdict = is_prime(c, budget.primality);
    if (verdict.is_prime()) {
      record(c, mult, verdict.proven());
      continue;
    }
    if (auto d = pollard_rho(c, budget.rho_iterations)) {
      Natural other = c / *d;
      const Natural g = gcd(*d, other);
      if (g > 1) {
        // Peel the shared part so both halves are split at a coprime boundary.
        work.emplace_back(g, mult * 2);
        work.emplace_back(*d / g, mult);
        work.emplace_back(other / g, mult);
      } else {
        work.emplace_back(*d, mult);
        work.emplace_back(other, mult);
      }
      continue;
    }
    Natural ck;
    mpz_pow_ui(ck.get_mpz_t(), c.get_mpz_t(), mult);
    composite_rest *= ck;
  }

  Factorization result;
  for (const auto& [p, info] : found) result.primes.push_back({p, info.first, info.second});
  if (composite_rest > 1) {
    result.remainder =
        Remainder{composite_rest, unresolved ? RemainderStatus::Unresolved : RemainderStatus::Composite};
  }
  return result;
}

}  // namespace wdd::arith
