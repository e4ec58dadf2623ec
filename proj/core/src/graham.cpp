#include "wdd/graham.hpp"

#include <algorithm>

#include "wdd/errors.hpp"

namespace wdd::graham {

Natural GrahamInstance::modulus() const {
  Natural n = 1;
  for (std::uint64_t p : primes) n *= Natural(std::to_string(p), 10);
  return n;
}

GrahamInstance vsemirnov_instance() {
  return {Natural("106276436867", 10), Natural("35256392432", 10),
          {2, 3, 5, 7, 11, 17, 19, 23, 31, 41, 47, 61, 107, 181, 541, 1103, 2521}};
}

RecurrencePeriod recurrence_period(std::uint64_t p, const Natural& a, const Natural& b) {
  if (!arith::is_prime_u64(p)) throw DomainError(std::to_string(p) + " is not prime");
  const std::uint64_t x0 = mpz_fdiv_ui(a.get_mpz_t(), p);
  const std::uint64_t y0 = mpz_fdiv_ui(b.get_mpz_t(), p);
  RecurrencePeriod out{p, 0, {}};
  std::uint64_t x = x0, y = y0;
  std::uint64_t j = 0;
  do {
    if (x == 0) out.zero_indices.push_back(j);
    const std::uint64_t next = (x + y) % p;
    x = y;
    y = next;
    ++j;
  } while (x != x0 || y != y0);
  out.period = j;
  return out;
}

CoverReport verify_cover(const GrahamInstance& instance, std::size_t spot_terms) {
  if (instance.primes.empty()) throw DomainError("prime set is empty");
  CoverReport report;
  std::vector<RecurrencePeriod> periods;
  report.lcm = 1;
  for (std::uint64_t p : instance.primes) {
    periods.push_back(recurrence_period(p, instance.a, instance.b));
    report.lcm = arith::lcm_u64(report.lcm, periods.back().period);
  }

  const std::uint64_t L = report.lcm;
  std::vector<bool> hit(L, false);
  for (const auto& rp : periods) {
    std::uint64_t count = 0;
    for (std::uint64_t z : rp.zero_indices) {
      for (std::uint64_t j = z; j < L; j += rp.period) {
        hit[j] = true;
        ++count;
      }
    }
    report.primes.push_back({rp.prime, rp.period, rp.zero_indices.size(), count});
  }
  const auto gap = std::find(hit.begin(), hit.end(), false);
  if (gap != hit.end()) report.uncovered = static_cast<std::uint64_t>(gap - hit.begin());
  report.covered = !report.uncovered.has_value();

  const std::uint64_t max_prime = *std::max_element(instance.primes.begin(), instance.primes.end());
  report.terms_exceed_primes = instance.a + instance.b > max_prime && instance.b > 0;

  report.spot_check_passed = true;
  Natural u = instance.a, v = instance.b;
  for (std::size_t j = 0; j < spot_terms; ++j) {
    const bool divisible = std::any_of(instance.primes.begin(), instance.primes.end(),
                                       [&](std::uint64_t p) { return mpz_fdiv_ui(u.get_mpz_t(), p) == 0; });
    if (!divisible) report.spot_check_passed = false;
    ++report.spot_checked;
    Natural next = u + v;
    u = std::move(v);
    v = std::move(next);
  }
  return report;
}

SeedReduction reduce_seeds(const GrahamInstance& instance) {
  if (instance.a == 0 || instance.b == 0) throw DomainError("seeds must be nonzero");
  const Natural N = instance.modulus();
  SeedReduction out;
  out.gcd_a = gcd(instance.a, N);
  out.gcd_b = gcd(instance.b, N);
  const Natural mod_a = N / out.gcd_a;
  const Natural mod_b = N / out.gcd_b;
  out.a_reduced = {Natural(instance.a / out.gcd_a) % mod_a, mod_a};
  out.b_reduced = {Natural(instance.b / out.gcd_b) % mod_b, mod_b};
  return out;
}

}  // namespace wdd::graham
