#include "wdd/order_table.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "parallel.hpp"
#include "wdd/cyclotomic.hpp"
#include "wdd/errors.hpp"

namespace wdd::cyclotomic {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::uint64_t parse_u64(const std::string& text, const std::string& source, std::size_t line) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), ::isdigit)) {
    throw ParseError(source, line, "expected a nonnegative integer, got '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::out_of_range&) {
    throw ParseError(source, line, "integer out of range: " + text);
  }
}

}  // namespace

OrderTable parse_order_table(std::istream& in, const std::string& source) {
  OrderTable table;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(source, line_no, "missing ':'");
    const std::uint64_t m = parse_u64(trim(line.substr(0, colon)), source, line_no);
    if (m == 0) throw ParseError(source, line_no, "modulus must be positive");
    if (table.contains(m)) {
      throw ParseError(source, line_no, "duplicate modulus " + std::to_string(m));
    }
    OrderTableEntry entry{m, {}};
    std::stringstream items(line.substr(colon + 1));
    std::string item;
    while (std::getline(items, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      std::size_t repeat = 1;
      if (const auto star = item.find('*'); star != std::string::npos) {
        repeat = parse_u64(trim(item.substr(star + 1)), source, line_no);
        if (repeat != 1 && repeat != 2) {
          throw ParseError(source, line_no, "multiplicity must be 1 or 2");
        }
        item = trim(item.substr(0, star));
      }
      Natural value;
      try {
        value = parse_natural(item);
      } catch (const DomainError& e) {
        throw ParseError(source, line_no, e.what());
      }
      for (std::size_t r = 0; r < repeat; ++r) entry.elements.push_back({value, Provenance::Unclassified});
    }
    table.emplace(m, std::move(entry));
  }
  return table;
}

OrderTable load_order_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_order_table(in, path);
}

void write_order_table(std::ostream& out, const OrderTable& table) {
  for (const auto& [m, entry] : table) {
    out << m << ':';
    const auto& els = entry.elements;
    for (std::size_t i = 0; i < els.size(); ++i) {
      out << (i == 0 ? " " : ", ") << to_decimal(els[i].value);
      if (i + 1 < els.size() && els[i + 1].value == els[i].value) {
        out << "*2";
        ++i;
      }
    }
    out << '\n';
  }
}

std::map<std::uint64_t, std::size_t> parse_lcounts(std::istream& in, const std::string& source) {
  std::map<std::uint64_t, std::size_t> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::stringstream fields(trim(raw.substr(0, raw.find('#'))));
    std::string m_text, l_text, extra;
    if (!(fields >> m_text)) continue;
    if (!(fields >> l_text) || (fields >> extra)) {
      throw ParseError(source, line_no, "expected 'm L'");
    }
    const auto m = parse_u64(m_text, source, line_no);
    if (!out.emplace(m, parse_u64(l_text, source, line_no)).second) {
      throw ParseError(source, line_no, "duplicate modulus " + m_text);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

bool EntryReport::failed(int check) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.check == check; });
}

bool ValidationReport::valid() const {
  return std::all_of(entries.begin(), entries.end(), [](const EntryReport& e) { return e.valid(); });
}

namespace {

EntryReport validate_entry(const OrderTableEntry& entry, const ValidationOptions& options) {
  EntryReport report;
  const std::uint64_t m = entry.modulus;
  report.modulus = m;
  report.count = entry.count();
  report.provenance.assign(entry.count(), Provenance::Unclassified);
  auto flag = [&](int check, const Natural* element, std::string message) {
    report.violations.push_back({check, element ? to_decimal(*element) : std::string{},
                                 std::move(message)});
  };

  const Natural phi = cyclotomic_value(m);
  const Natural modulus = m;

  std::map<Natural, std::size_t> multiplicity;
  for (const auto& el : entry.elements) ++multiplicity[el.value];

  std::set<Natural> primes;
  std::set<Natural> composites;
  std::set<Natural> rejected;  // cannot stand in as a placeholder
  for (const auto& [value, times] : multiplicity) {
    const bool divides = value > 0 && phi % value == 0;
    const bool coprime = value > 0 && gcd(value, modulus) == 1;
    if (!divides) flag(1, &value, "does not divide Phi_" + std::to_string(m) + "(10)");
    if (!coprime) flag(2, &value, "not coprime to " + std::to_string(m));

    if (value < 2) {
      flag(3, &value, "neither a prime nor a composite placeholder");
      rejected.insert(value);
      continue;
    }
    if (arith::is_prime(value, options.budget.primality).is_prime()) {
      primes.insert(value);
      if (times > 1) flag(3, &value, "prime listed more than once");
      continue;
    }
    composites.insert(value);
    if (!divides || !coprime) {
      flag(3, &value, "composite entry is not a valid placeholder");
      rejected.insert(value);
    }
    if (times > 2) flag(3, &value, "placeholder listed more than twice");
  }
  if (composites.size() > 1) flag(3, nullptr, "more than one distinct composite entry");

  Natural prime_product = 1;
  for (const auto& p : primes) prime_product *= p;
  for (const auto& q : composites) {
    if (gcd(q, prime_product) != 1) flag(4, &q, "placeholder shares a factor with the listed primes");
    if (multiplicity[q] >= 2) {
      if (auto pp = arith::is_perfect_power(q)) {
        flag(5, &q, "placeholder is a perfect power (" + to_decimal(pp->base) + "^" +
                        std::to_string(pp->exponent) + ")");
      }
    }
  }

  for (std::size_t i = 0; i < entry.elements.size(); ++i) {
    const auto& v = entry.elements[i].value;
    if (primes.contains(v)) {
      report.provenance[i] = Provenance::VerifiedPrime;
    } else if (composites.contains(v) && !rejected.contains(v)) {
      report.provenance[i] = Provenance::PlaceholderComposite;
    }
  }

  if (options.expected_counts) {
    if (auto it = options.expected_counts->find(m); it != options.expected_counts->end()) {
      if (it->second != entry.count()) {
        flag(6, nullptr, "list length " + std::to_string(entry.count()) + " but L(" +
                             std::to_string(m) + ") = " + std::to_string(it->second));
      }
    }
  }
  if (m <= options.cross_check_limit) {
    const auto computed = primes_of_order(m, options.budget, true);
    if (computed.complete) {
      report.cross_checked = true;
      std::set<Natural> known;
      for (const auto& op : computed.primes) known.insert(op.prime);
      for (const auto& p : primes) {
        if (!known.contains(p)) flag(6, &p, "not among the primes of order " + std::to_string(m));
      }
    }
  }
  return report;
}

}  // namespace

ValidationReport validate_order_table(const OrderTable& table, const ValidationOptions& options) {
  std::vector<const OrderTableEntry*> entries;
  for (const auto& [m, entry] : table) entries.push_back(&entry);
  ValidationReport report;
  report.entries.resize(entries.size());
  detail::parallel_for(entries.size(), options.threads, [&](std::size_t i) {
    report.entries[i] = validate_entry(*entries[i], options);
    // The map key is authoritative even if the entry's own field disagrees.
    report.entries[i].modulus = entries[i]->modulus;
  });
  return report;
}

OrderTable classified(const OrderTable& table, const ValidationReport& report) {
  OrderTable out = table;
  for (const auto& er : report.entries) {
    auto it = out.find(er.modulus);
    if (it == out.end()) continue;
    for (std::size_t i = 0; i < er.provenance.size() && i < it->second.elements.size(); ++i) {
      it->second.elements[i].provenance = er.provenance[i];
    }
  }
  return out;
}

OrderTable build_order_table(const std::vector<std::uint64_t>& moduli,
                             const arith::FactorBudget& budget) {
  OrderTable table;
  for (std::uint64_t m : moduli) {
    const auto found = primes_of_order(m, budget, true);
    OrderTableEntry entry{m, {}};
    for (const auto& op : found.primes) entry.elements.push_back({op.prime, Provenance::VerifiedPrime});
    table.emplace(m, std::move(entry));
  }
  return table;
}

}  // namespace wdd::cyclotomic
