#include "wdd/construction.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "wdd/errors.hpp"

namespace wdd::construction {

namespace {

Natural pow10(std::uint64_t k) {
  Natural out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, k);
  return out;
}

Natural mod_nonneg(const Natural& x, const Natural& m) {
  Natural r = x % m;
  if (r < 0) r += m;
  return r;
}

// d 10^a mod p, computed without forming 10^a.
Natural shift_residue(int d, std::uint64_t a, const Natural& p) {
  Natural t;
  const Natural ten = 10;
  const Natural exp = static_cast<unsigned long>(a);
  mpz_powm(t.get_mpz_t(), ten.get_mpz_t(), exp.get_mpz_t(), p.get_mpz_t());
  return mod_nonneg(t * d, p);
}

}  // namespace

bool valid_digit(int d) noexcept { return d != 0 && d >= -9 && d <= 9; }

Natural derive_b_residue(int d, std::uint64_t a, const Natural& p) {
  if (p < 2) throw DomainError("derive_b_residue needs a prime modulus");
  return mod_nonneg(-shift_residue(d, a, p), p);
}

bool cross_digit_consistency(const Natural& p, std::span<const DigitUse> uses) {
  if (uses.empty()) return true;
  const Natural first = shift_residue(uses.front().digit, uses.front().residue, p);
  return std::all_of(uses.begin() + 1, uses.end(), [&](const DigitUse& u) {
    return shift_residue(u.digit, u.residue, p) == first;
  });
}

covering::CoveringSystem DigitCovering::system() const {
  std::vector<covering::Congruence> cs;
  cs.reserve(entries.size());
  for (const auto& e : entries) cs.push_back(e.congruence);
  return covering::CoveringSystem(std::move(cs));
}

DigitCovering resolve(int digit, const covering::CoveringFile& file,
                      const cyclotomic::OrderTable& table) {
  DigitCovering dc{digit, {}};
  for (const auto& row : file.rows) {
    const auto m = row.congruence.modulus();
    if (!row.rho) {
      throw DomainError("digit " + std::to_string(digit) + ": congruence mod " + std::to_string(m) +
                        " has no prime index");
    }
    const auto it = table.find(m);
    const auto* el = it == table.end() ? nullptr : it->second.at_rho(*row.rho);
    if (el == nullptr) {
      throw DomainError("digit " + std::to_string(digit) + ": no order-table element rho=" +
                        std::to_string(*row.rho) + " for modulus " + std::to_string(m));
    }
    if (el->provenance == cyclotomic::Provenance::PlaceholderComposite ||
        !arith::is_prime(el->value).is_prime()) {
      throw DomainError("digit " + std::to_string(digit) + ": modulus " + std::to_string(m) +
                        " rho=" + std::to_string(*row.rho) + " refers to an unfactored placeholder");
    }
    dc.entries.push_back({row.congruence, el->value, row.rho});
  }
  return dc;
}

DigitCovering mod3_covering(int digit) {
  if (!valid_digit(digit) || ((digit % 3) + 3) % 3 != 2) {
    throw DomainError("the mod 3 cover needs d = 2 (mod 3), got " + std::to_string(digit));
  }
  return DigitCovering{digit, {{covering::Congruence(0, 1), Natural(3), 1}}};
}

void check_digit_covering(const DigitCovering& dc, unsigned threads) {
  const std::string who = "digit " + std::to_string(dc.digit);
  if (!valid_digit(dc.digit)) throw DomainError(who + " is not in -9..-1, 1..9");
  if (dc.entries.empty()) throw DomainError(who + ": no congruences");
  std::set<Natural> seen;
  const Natural ten = 10;
  for (const auto& e : dc.entries) {
    if (!arith::has_order(ten, e.prime, e.congruence.modulus())) {
      throw DomainError(who + ": 10 does not have order " + std::to_string(e.congruence.modulus()) +
                        " modulo " + to_decimal(e.prime));
    }
    if (!seen.insert(e.prime).second) {
      throw DomainError(who + ": prime " + to_decimal(e.prime) + " assigned twice");
    }
  }
  const auto result = covering::is_covering_fast(dc.system(), {.w = std::nullopt, .threads = threads});
  if (!result.covered) {
    throw DomainError(who + ": congruences do not cover k = " + std::to_string(*result.witness));
  }
}

bool Construction::rests_on_probable_primes() const {
  return std::any_of(constraints.begin(), constraints.end(),
                     [](const Constraint& c) { return !c.proven_prime; });
}

const DigitCovering* Construction::find_digit(int d) const {
  for (const auto& dc : digits) {
    if (dc.digit == d) return &dc;
  }
  return nullptr;
}

Construction assemble(std::vector<DigitCovering> digits, const AssembleOptions& options) {
  if (digits.empty()) throw DomainError("nothing to cover: empty digit set");
  std::sort(digits.begin(), digits.end(),
            [](const DigitCovering& a, const DigitCovering& b) { return a.digit < b.digit; });
  for (std::size_t i = 1; i < digits.size(); ++i) {
    if (digits[i].digit == digits[i - 1].digit) {
      throw DomainError("digit " + std::to_string(digits[i].digit) + " given twice");
    }
  }
  if (options.check_invariants) {
    for (const auto& dc : digits) check_digit_covering(dc, options.threads);
  }

  Construction out;
  struct Shared {
    Natural residue;
    std::vector<DigitUse> uses;
  };
  std::map<Natural, Shared> by_prime;
  for (const auto& dc : digits) {
    for (const auto& e : dc.entries) {
      const Natural r = derive_b_residue(dc.digit, e.congruence.residue(), e.prime);
      auto [it, inserted] = by_prime.try_emplace(e.prime, Shared{r, {}});
      it->second.uses.push_back({dc.digit, e.congruence.residue()});
      if (!inserted && it->second.residue != r) {
        throw InconsistentConstraints("prime " + to_decimal(e.prime) + " needs B = " +
                                      to_decimal(it->second.residue) + " and B = " + to_decimal(r) +
                                      " (digit " + std::to_string(dc.digit) + ")");
      }
      const bool proven = arith::is_prime(e.prime).proven();
      out.constraints.push_back({e.prime, r, e.congruence, dc.digit, e.rho, proven});
    }
  }

  std::vector<arith::Residue> system;
  system.reserve(by_prime.size());
  for (const auto& [p, shared] : by_prime) system.push_back({shared.residue, p});
  const auto crt = arith::crt_combine(system);
  out.A = crt.modulus;
  const Natural& largest = by_prime.rbegin()->first;
  out.B = crt.residue;
  if (out.B <= largest) out.B += out.A * ((largest - out.B) / out.A + 1);

  if (gcd(out.A, out.B) != 1) {
    throw DomainError("gcd(A, B) = " + to_decimal(gcd(out.A, out.B)) +
                      ": some assigned prime divides d 10^a");
  }

  for (const auto& [p, shared] : by_prime) {
    if (p >= 11 || shared.uses.empty()) continue;
    std::string ds;
    for (const auto& u : shared.uses) ds += (ds.empty() ? "" : ", ") + std::to_string(u.digit);
    out.notes.push_back("p = " + to_decimal(p) + " (B = " + to_decimal(shared.residue) + " mod " +
                        to_decimal(p) + ") covers d in {" + ds + "}");
  }
  out.digits = std::move(digits);
  return out;
}

Certificate substitution_divisor(const Construction& c, const Natural& n, int d, std::uint64_t k) {
  if (mod_nonneg(n - c.B, c.A) != 0) throw DomainError("n is not congruent to B modulo A");
  const DigitCovering* dc = c.find_digit(d);
  if (dc == nullptr) throw DomainError("digit " + std::to_string(d) + " is not covered");
  for (const auto& e : dc->entries) {
    if (!e.congruence.matches(k)) continue;
    Certificate cert{e.prime, e.congruence, n + pow10(k) * d, false};
    if (!mpz_divisible_p(cert.value.get_mpz_t(), e.prime.get_mpz_t())) {
      throw std::logic_error("certificate prime " + to_decimal(e.prime) + " does not divide n + " +
                             std::to_string(d) + "*10^" + std::to_string(k));
    }
    cert.proves_composite = abs(cert.value) > e.prime;
    return cert;
  }
  throw std::logic_error("no congruence for digit " + std::to_string(d) + " matches k = " +
                         std::to_string(k));
}

StarReport verify_property_star_sample(const Construction& c, std::size_t samples,
                                       std::uint64_t k_max, std::uint64_t seed) {
  StarReport report;
  report.samples = samples;
  report.k_max = k_max;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples && report.passed(); ++s) {
    Natural t;
    const std::uint64_t draw = (rng() >> 1) + 1;
    mpz_import(t.get_mpz_t(), 1, -1, sizeof(draw), 0, 0, &draw);
    const Natural n = c.B + c.A * t;
    for (const auto& dc : c.digits) {
      for (std::uint64_t k = 0; k <= k_max; ++k) {
        ++report.checked;
        auto fail = [&](std::string why) {
          report.first_failure = StarFailure{n, dc.digit, k, std::move(why)};
        };
        try {
          const auto cert = substitution_divisor(c, n, dc.digit, k);
          if (!cert.proves_composite) {
            fail("value does not exceed its certificate prime");
          } else if (arith::is_prime(abs(cert.value)).is_prime()) {
            fail("primality test disagrees with the certificate");
          }
        } catch (const std::exception& e) {
          fail(e.what());
        }
        if (!report.passed()) return report;
      }
    }
  }
  return report;
}

void write_construction(std::ostream& out, const Construction& c) {
  out << "A=" << to_decimal(c.A) << '\n' << "B=" << to_decimal(c.B) << '\n';
  for (const auto& k : c.constraints) {
    out << to_decimal(k.prime) << ' ' << k.congruence.residue() << ' ' << k.congruence.modulus()
        << ' ' << k.digit << ' ';
    if (k.rho) {
      out << *k.rho;
    } else {
      out << '-';
    }
    out << '\n';
  }
}

Construction read_construction(std::istream& in, const std::string& source) {
  Construction c;
  bool have_a = false, have_b = false;
  std::map<int, DigitCovering> digits;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::stringstream fields(raw);
    std::string first;
    if (!(fields >> first)) continue;
    try {
      if (first.starts_with("A=")) {
        c.A = parse_natural(first.substr(2));
        have_a = true;
        continue;
      }
      if (first.starts_with("B=")) {
        c.B = parse_natural(first.substr(2));
        have_b = true;
        continue;
      }
      std::string a_text, m_text, d_text, rho_text;
      if (!(fields >> a_text >> m_text >> d_text >> rho_text)) {
        throw ParseError(source, line_no, "expected 'p a m d rho'");
      }
      const Natural p = parse_natural(first);
      const int d = std::stoi(d_text);
      if (!valid_digit(d)) throw ParseError(source, line_no, "bad digit " + d_text);
      const covering::Congruence cong(std::stoull(a_text), std::stoull(m_text));
      std::optional<std::uint32_t> rho;
      if (rho_text != "-") rho = static_cast<std::uint32_t>(std::stoul(rho_text));
      auto& dc = digits[d];
      dc.digit = d;
      dc.entries.push_back({cong, p, rho});
      c.constraints.push_back({p, derive_b_residue(d, cong.residue(), p), cong, d, rho,
                               arith::is_prime(p).proven()});
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  if (!have_a || !have_b) throw ParseError(source, 0, "missing A= or B= line");
  for (const auto& k : c.constraints) {
    if (c.A % k.prime != 0 || mod_nonneg(c.B - k.b_residue, k.prime) != 0) {
      throw ParseError(source, 0, "A, B do not satisfy the constraint for p = " + to_decimal(k.prime));
    }
  }
  for (auto& [d, dc] : digits) c.digits.push_back(std::move(dc));
  return c;
}

}  // namespace wdd::construction
