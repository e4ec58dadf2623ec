#include "wdd/cyclotomic.hpp"

#include <stdexcept>

namespace wdd::cyclotomic {

Natural cyclotomic_value(std::uint64_t m, const Natural& x) {
  if (m == 0) throw std::invalid_argument("cyclotomic index must be positive");
  Natural numerator = 1;
  Natural denominator = 1;
  for (std::uint64_t d : arith::divisors_u64(m)) {
    const int mu = arith::moebius(m / d);
    if (mu == 0) continue;
    Natural term;
    mpz_pow_ui(term.get_mpz_t(), x.get_mpz_t(), d);
    term -= 1;
    (mu > 0 ? numerator : denominator) *= term;
  }
  Natural out;
  mpz_divexact(out.get_mpz_t(), numerator.get_mpz_t(), denominator.get_mpz_t());
  return out;
}

OrderPrimes primes_of_order(std::uint64_t m, const arith::FactorBudget& budget, bool force) {
  OrderPrimes out;
  out.modulus = m;
  Natural value = cyclotomic_value(m);
  if (m > kFactorModulusLimit && !force) {
    out.cofactor = std::move(value);
    return out;
  }

  const auto fact = arith::factor(value, budget);
  const Natural ten = 10;
  for (const auto& pp : fact.primes) {
    if (Natural(m) % pp.prime == 0) continue;
    if (!arith::has_order(ten, pp.prime, m)) {
      throw std::logic_error("prime " + to_decimal(pp.prime) + " divides Phi_" +
                             std::to_string(m) + "(10) but 10 does not have order " +
                             std::to_string(m));
    }
    out.primes.push_back({pp.prime, pp.proven});
  }
  out.complete = fact.complete();
  if (fact.remainder) out.cofactor = fact.remainder->value;
  return out;
}

}  // namespace wdd::cyclotomic
