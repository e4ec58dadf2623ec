#include "wdd/covering.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"
#include "wdd/arith.hpp"
#include "wdd/errors.hpp"

namespace wdd::covering {

Congruence::Congruence(std::uint64_t residue, std::uint64_t modulus)
    : residue_(residue), modulus_(modulus) {
  if (modulus == 0) throw std::invalid_argument("congruence modulus must be positive");
  if (residue >= modulus) {
    throw std::invalid_argument("congruence residue " + std::to_string(residue) +
                                " not below modulus " + std::to_string(modulus));
  }
}

Congruence Congruence::normalized(std::int64_t residue, std::uint64_t modulus) {
  if (modulus == 0) throw std::invalid_argument("congruence modulus must be positive");
  if (residue >= 0) return {static_cast<std::uint64_t>(residue) % modulus, modulus};
  const std::uint64_t mag = static_cast<std::uint64_t>(-(residue + 1)) + 1;
  const std::uint64_t r = mag % modulus;
  return {r == 0 ? 0 : modulus - r, modulus};
}

bool Congruence::matches(std::int64_t k) const noexcept {
  return normalized(k, modulus_).residue() == residue_;
}

std::optional<std::size_t> CoveringSystem::find_match(std::int64_t k) const noexcept {
  for (std::size_t i = 0; i < congruences_.size(); ++i) {
    if (congruences_[i].matches(k)) return i;
  }
  return std::nullopt;
}

LcmAnalysis lcm_analysis(const CoveringSystem& system) {
  if (system.empty()) throw std::invalid_argument("lcm of an empty system");
  LcmAnalysis out;
  out.count = system.size();
  for (const auto& c : system.congruences()) out.lcm = arith::lcm_u64(out.lcm, c.modulus());
  if (out.lcm > 1) out.max_prime = arith::factor_u64(out.lcm).back().first;
  return out;
}

CoverResult is_covering_naive(const CoveringSystem& system, std::uint64_t limit) {
  const auto lcm = lcm_analysis(system).lcm;
  if (lcm > limit) {
    throw BudgetExceeded("naive scan of " + std::to_string(lcm) + " residues exceeds limit " +
                         std::to_string(limit));
  }
  const auto& cs = system.congruences();
  for (std::uint64_t r = 0; r < lcm; ++r) {
    const bool hit =
        std::any_of(cs.begin(), cs.end(), [r](const Congruence& c) { return c.matches(r); });
    if (!hit) return {false, r};
  }
  return {true, std::nullopt};
}

std::uint64_t default_split(std::uint64_t lcm) {
  if (lcm <= 1) return 1;
  const std::uint64_t q = arith::factor_u64(lcm).back().first;
  if (lcm % (60 * q) == 0) return 60 * q;
  const std::uint64_t cap = 10'000 * q;
  std::uint64_t best = q;
  for (std::uint64_t d : arith::divisors_u64(lcm / q)) {
    std::uint64_t rest = d;
    for (std::uint64_t p : {2u, 3u, 5u}) {
      while (rest % p == 0) rest /= p;
    }
    if (rest == 1 && d * q <= cap) best = std::max(best, d * q);
  }
  return best;
}

ResidueClassReduction reduce_class(const CoveringSystem& system, std::uint64_t w, std::uint64_t u) {
  if (w == 0) throw std::invalid_argument("class modulus w must be positive");
  ResidueClassReduction red;
  red.u = u;
  red.w = w;
  for (const auto& c : system.congruences()) {
    const std::uint64_t g = std::gcd(c.modulus(), w);
    if (c.residue() % g == u % g) red.filtered.push_back(c);
  }
  std::stable_sort(red.filtered.begin(), red.filtered.end(),
                   [](const Congruence& a, const Congruence& b) { return a.modulus() < b.modulus(); });
  if (red.filtered.empty()) return red;
  for (const auto& c : red.filtered) red.lcm_prime = arith::lcm_u64(red.lcm_prime, c.modulus());
  red.delta = std::gcd(w, red.lcm_prime);
  red.span = red.lcm_prime / red.delta;
  return red;
}

namespace {

void require_split_divides(const CoveringSystem& system, std::uint64_t w) {
  const auto lcm = lcm_analysis(system).lcm;
  if (w == 0 || lcm % w != 0) {
    throw std::invalid_argument("w = " + std::to_string(w) + " does not divide lcm " +
                                std::to_string(lcm));
  }
}

}  // namespace

std::vector<ResidueClassReduction> reduction_profile(const CoveringSystem& system, std::uint64_t w) {
  require_split_divides(system, w);
  std::vector<ResidueClassReduction> out;
  out.reserve(w);
  for (std::uint64_t u = 0; u < w; ++u) out.push_back(reduce_class(system, w, u));
  return out;
}

std::optional<std::uint64_t> first_uncovered(const ResidueClassReduction& red) {
  if (red.filtered.empty()) return 0;
  const auto* begin = red.filtered.data();
  const auto* end = begin + red.filtered.size();
  std::uint64_t v = red.u;
  for (std::uint64_t t = 0; t < red.span; ++t, v += red.w) {
    const Congruence* c = begin;
    while (c != end && v % c->modulus() != c->residue()) ++c;
    if (c == end) return t;
  }
  return std::nullopt;
}

CoverResult is_covering_fast(const CoveringSystem& system, const FastOptions& options) {
  const auto lcm = lcm_analysis(system).lcm;
  const std::uint64_t w = options.w.value_or(default_split(lcm));
  require_split_divides(system, w);

  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> best_u{kNone};
  std::mutex mutex;
  std::map<std::uint64_t, std::uint64_t> failures;  // u -> least uncovered t

  detail::parallel_for(w, options.threads, [&](std::size_t index) {
    const auto u = static_cast<std::uint64_t>(index);
    if (u > best_u.load(std::memory_order_relaxed)) return;
    const auto red = reduce_class(system, w, u);
    const auto t = first_uncovered(red);
    if (!t) return;
    std::lock_guard lock(mutex);
    failures.emplace(u, *t);
    std::uint64_t current = best_u.load();
    while (u < current && !best_u.compare_exchange_weak(current, u)) {
    }
  });

  if (failures.empty()) return {true, std::nullopt};
  const auto [u, t] = *failures.begin();
  return {false, w * t + u};
}

// ---------------------------------------------------------------------------

CoveringSystem CoveringFile::system() const {
  std::vector<Congruence> cs;
  cs.reserve(rows.size());
  for (const auto& row : rows) cs.push_back(row.congruence);
  return CoveringSystem(std::move(cs));
}

CoveringFile parse_covering(std::istream& in, const std::string& source) {
  CoveringFile file;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) {
      std::stringstream comment(raw.substr(hash + 1));
      std::string keyword;
      long long digit;
      if (comment >> keyword && keyword == "digit") {
        if (!(comment >> digit) || digit < -9 || digit > 9 || digit == 0) {
          throw ParseError(source, line_no, "digit header needs d in -9..-1, 1..9");
        }
        if (file.digit && *file.digit != digit) {
          throw ParseError(source, line_no, "conflicting digit headers");
        }
        file.digit = static_cast<int>(digit);
      }
      raw.resize(hash);
    }
    std::stringstream fields(raw);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() < 2 || tokens.size() > 3) {
      throw ParseError(source, line_no, "expected 'a m [rho]'");
    }
    long long a = 0;
    unsigned long long m = 0, rho = 0;
    try {
      std::size_t used = 0;
      a = std::stoll(tokens[0], &used);
      if (used != tokens[0].size()) throw std::invalid_argument("trailing");
      if (tokens[1].front() == '-') throw std::invalid_argument("negative modulus");
      m = std::stoull(tokens[1], &used);
      if (used != tokens[1].size()) throw std::invalid_argument("trailing");
      if (tokens.size() == 3) {
        if (tokens[2].front() == '-') throw std::invalid_argument("negative rho");
        rho = std::stoull(tokens[2], &used);
        if (used != tokens[2].size() || rho == 0 || rho > UINT32_MAX) {
          throw std::invalid_argument("rho");
        }
      }
    } catch (const std::exception&) {
      throw ParseError(source, line_no, "malformed congruence line '" + raw + "'");
    }
    if (m == 0) throw ParseError(source, line_no, "modulus must be positive");
    const auto c = Congruence::normalized(a, m);
    if (a < 0 || static_cast<unsigned long long>(a) >= m) {
      file.warnings.push_back(source + ":" + std::to_string(line_no) + ": residue " +
                              std::to_string(a) + " normalized to " + std::to_string(c.residue()) +
                              " mod " + std::to_string(m));
    }
    CoveringRow row{c, std::nullopt};
    if (tokens.size() == 3) row.rho = static_cast<std::uint32_t>(rho);
    file.rows.push_back(row);
  }
  return file;
}

CoveringFile load_covering(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_covering(in, path);
}

void write_covering(std::ostream& out, const CoveringFile& file) {
  if (file.digit) out << "# digit " << *file.digit << '\n';
  for (const auto& row : file.rows) {
    out << row.congruence.residue() << ' ' << row.congruence.modulus();
    if (row.rho) out << ' ' << *row.rho;
    out << '\n';
  }
}

}  // namespace wdd::covering
