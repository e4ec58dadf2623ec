// wdd: command-line front end for covering verification, the progression
// construction, digit-substitution checks, Graham sequences and order tables.
//
// Exit codes: 0 success, 1 verification failure, 2 data/parse/usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wdd/arith.hpp"
#include "wdd/construction.hpp"
#include "wdd/covering.hpp"
#include "wdd/cyclotomic.hpp"
#include "wdd/delicate.hpp"
#include "wdd/errors.hpp"
#include "wdd/graham.hpp"
#include "wdd/order_table.hpp"
#include "wdd/report.hpp"
#include "wdd/tables.hpp"

namespace {

using json = nlohmann::ordered_json;
using wdd::Natural;
using wdd::to_decimal;

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kDataError = 2;

struct Globals {
  unsigned threads = 1;
  double budget_seconds = 0;
  std::string format = "text";

  bool json() const { return format == "json"; }
  wdd::arith::FactorBudget budget() const {
    wdd::arith::FactorBudget b;
    b.seconds = budget_seconds;
    return b;
  }
};

void emit(const Globals& g, const json& doc, const std::string& text) {
  if (g.json()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << text;
  }
}

std::vector<int> parse_digits(const std::string& list) {
  if (list == "all") return wdd::tables::all_digits();
  std::vector<int> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    int d = 0;
    try {
      d = std::stoi(item);
    } catch (const std::exception&) {
      throw wdd::DomainError("bad digit '" + item + "'");
    }
    if (!wdd::construction::valid_digit(d)) throw wdd::DomainError("digit out of range: " + item);
    out.push_back(d);
  }
  return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& list) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    out.push_back(std::stoull(item));
  }
  return out;
}

std::string join(const std::vector<std::uint64_t>& xs) {
  std::string out;
  for (auto x : xs) out += (out.empty() ? "" : ", ") + std::to_string(x);
  return out;
}

// ---------------------------------------------------------------------------
// cover

struct CoverArgs {
  std::string file;
  bool naive = false;
  bool fast = false;
  std::uint64_t w = 0;
  bool profile = false;
};

int run_cover_verify(const Globals& g, const CoverArgs& args) {
  namespace cv = wdd::covering;
  const auto file = cv::load_covering(args.file);
  for (const auto& w : file.warnings) std::cerr << "warning: " << w << '\n';
  const auto system = file.system();
  const auto analysis = cv::lcm_analysis(system);
  const std::uint64_t w = args.w != 0 ? args.w : cv::default_split(analysis.lcm);

  const auto t0 = std::chrono::steady_clock::now();
  cv::CoverResult result;
  std::string method;
  if (args.naive) {
    method = "naive";
    result = cv::is_covering_naive(system);
  } else {
    method = "fast";
    result = cv::is_covering_fast(system, {.w = w, .threads = g.threads});
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json doc;
  if (file.digit) doc["digit"] = *file.digit;
  doc["congruences"] = analysis.count;
  doc["lcm"] = std::to_string(analysis.lcm);
  doc["max_prime"] = analysis.max_prime;
  doc["method"] = method;
  if (!args.naive) doc["w"] = w;
  doc["covering"] = result.covered;
  if (result.witness) doc["witness"] = std::to_string(*result.witness);
  doc["seconds"] = seconds;

  std::ostringstream text;
  if (file.digit) text << "digit        " << *file.digit << '\n';
  text << "congruences  " << analysis.count << '\n'
       << "lcm          " << analysis.lcm << '\n'
       << "max prime    " << analysis.max_prime << '\n'
       << "method       " << method;
  if (!args.naive) text << " (w = " << w << ")";
  text << '\n' << "covering     " << (result.covered ? "true" : "false") << '\n';
  if (result.witness) text << "witness      " << *result.witness << " (satisfies no congruence)\n";
  text << "seconds      " << seconds << '\n';

  if (args.profile) {
    const auto profile = cv::reduction_profile(system, w);
    std::uint64_t max_span = 0, total = 0;
    std::size_t empty = 0;
    for (const auto& r : profile) {
      max_span = std::max(max_span, r.span);
      total += r.span;
      empty += r.filtered.empty() ? 1 : 0;
    }
    std::vector<std::uint64_t> argmax;
    for (const auto& r : profile) {
      if (r.span == max_span) argmax.push_back(r.u);
    }
    json classes = json::array();
    for (const auto& r : profile) {
      classes.push_back({{"u", r.u},
                         {"filtered", r.filtered.size()},
                         {"lcm", std::to_string(r.lcm_prime)},
                         {"delta", r.delta},
                         {"span", r.span}});
    }
    doc["profile"] = {{"w", w},
                      {"classes", profile.size()},
                      {"empty_classes", empty},
                      {"max_span", max_span},
                      {"max_span_classes", argmax},
                      {"total_span", total},
                      {"per_class", classes}};
    text << "profile      " << profile.size() << " classes, " << empty << " empty, total span " << total
         << '\n'
         << "max span     " << max_span << " at u in {" << join(argmax) << "}\n";
    for (std::uint64_t u : argmax) {
      const auto& r = profile[u];
      text << "  u=" << u << ": |C'|=" << r.filtered.size() << " l'=" << r.lcm_prime
           << " delta=" << r.delta << " span=" << r.span << '\n';
    }
  }
  emit(g, doc, text.str());
  return result.covered ? kOk : kVerificationFailed;
}

// ---------------------------------------------------------------------------
// construct

wdd::construction::Construction build_construction(const Globals& g, const std::vector<int>& digits,
                                                   const std::string& dir) {
  namespace cn = wdd::construction;
  const auto bundle = wdd::tables::ingest_tables(dir);
  std::vector<cn::DigitCovering> coverings;
  for (int d : digits) {
    const auto& src = bundle.digits.at(d);
    if (src.mod3) {
      coverings.push_back(cn::mod3_covering(d));
      continue;
    }
    if (!bundle.orders) {
      throw wdd::DomainError("bundle in " + dir + " has no order table to resolve primes for digit " +
                             std::to_string(d));
    }
    coverings.push_back(cn::resolve(d, *src.covering, *bundle.orders));
  }
  return cn::assemble(std::move(coverings), {.check_invariants = true, .threads = g.threads});
}

int run_construct_assemble(const Globals& g, const std::string& digit_list, const std::string& dir,
                           const std::string& out_path) {
  const auto c = build_construction(g, parse_digits(digit_list), dir);
  std::ostringstream exported;
  wdd::construction::write_construction(exported, c);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << exported.str();
    if (!out) throw std::runtime_error("cannot write " + out_path);
  }
  json doc;
  doc["A"] = to_decimal(c.A);
  doc["B"] = to_decimal(c.B);
  doc["gcd_AB"] = to_decimal(gcd(c.A, c.B));
  doc["constraints"] = c.constraints.size();
  doc["probable_primes_used"] = c.rests_on_probable_primes();
  doc["notes"] = c.notes;
  std::string text = out_path.empty() ? exported.str() : "wrote " + out_path + "\n";
  for (const auto& n : c.notes) text += "# " + n + "\n";
  emit(g, doc, text);
  return kOk;
}

wdd::construction::Construction load_construction(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw wdd::ParseError(path, 0, "cannot open file");
  return wdd::construction::read_construction(in, path);
}

int run_construct_certify(const Globals& g, const std::string& from, const std::string& n_text, int d,
                          std::uint64_t k) {
  const auto c = load_construction(from);
  const auto cert = wdd::construction::substitution_divisor(c, wdd::parse_natural(n_text), d, k);
  json doc = {{"prime", to_decimal(cert.prime)},
              {"congruence", {{"a", cert.congruence.residue()}, {"m", cert.congruence.modulus()}}},
              {"value", to_decimal(cert.value)},
              {"proves_composite", cert.proves_composite}};
  std::ostringstream text;
  text << "n + " << d << "*10^" << k << " is divisible by " << to_decimal(cert.prime) << " (k = "
       << cert.congruence.residue() << " mod " << cert.congruence.modulus() << ")\n"
       << "composite    " << (cert.proves_composite ? "true" : "not established (value <= prime)") << '\n';
  emit(g, doc, text.str());
  return cert.proves_composite ? kOk : kVerificationFailed;
}

int run_construct_sample(const Globals& g, const std::string& from, std::size_t samples,
                         std::uint64_t k_max, std::uint64_t seed) {
  const auto c = load_construction(from);
  const auto r = wdd::construction::verify_property_star_sample(c, samples, k_max, seed);
  json doc = {{"samples", r.samples}, {"k_max", r.k_max}, {"checked", r.checked}, {"passed", r.passed()}};
  std::ostringstream text;
  text << "checked " << r.checked << " values over " << r.samples << " samples, k <= " << r.k_max << ": "
       << (r.passed() ? "all composite with certificates" : "FAILED") << '\n';
  if (r.first_failure) {
    const auto& f = *r.first_failure;
    doc["failure"] = {{"n", to_decimal(f.n)}, {"d", f.digit}, {"k", f.k}, {"reason", f.reason}};
    text << "first failure: n=" << to_decimal(f.n) << " d=" << f.digit << " k=" << f.k << ": " << f.reason
         << '\n';
  }
  emit(g, doc, text.str());
  return r.passed() ? kOk : kVerificationFailed;
}

// ---------------------------------------------------------------------------
// delicate

std::string describe(const wdd::delicate::Substitution& s) {
  return "position " + std::to_string(s.position) + ": " + std::to_string(s.original) + " -> " +
         std::to_string(s.replacement);
}

int run_delicate_check(const Globals& g, const std::string& n_text, std::optional<std::uint32_t> widely,
                       bool verbose) {
  namespace dl = wdd::delicate;
  const Natural p = wdd::parse_natural(n_text);
  json doc;
  doc["n"] = n_text;
  std::ostringstream text;
  int code = kOk;
  if (widely) {
    const auto v = dl::is_widely_digitally_delicate_window(p, *widely);
    doc["window"] = *widely;
    doc["passes_window"] = v.passes;
    text << n_text << ": ";
    if (v.passes) {
      text << "no prime within " << *widely << " leading-zero positions (not a proof of wide delicacy)\n";
    } else {
      doc["witness"] = to_decimal(*v.prime);
      doc["substitution"] = describe(*v.substitution);
      text << "fails, " << to_decimal(*v.prime) << " is prime (" << describe(*v.substitution) << ")\n";
      code = kVerificationFailed;
    }
  } else {
    const bool delicate = dl::is_digitally_delicate(p);
    doc["digitally_delicate"] = delicate;
    text << n_text << ": digitally delicate = " << (delicate ? "true" : "false") << '\n';
    code = delicate ? kOk : kVerificationFailed;
  }
  if (verbose) {
    json items = json::array();
    for (const auto& o : dl::substitution_report(p)) {
      items.push_back({{"position", o.substitution.position},
                       {"replacement", o.substitution.replacement},
                       {"value", to_decimal(o.value)},
                       {"prime", o.prime}});
      text << "  " << to_decimal(o.value) << (o.prime ? "  prime" : "") << '\n';
    }
    doc["substitutions"] = items;
  }
  emit(g, doc, text.str());
  return code;
}

int run_delicate_scan(const Globals& g, std::uint64_t bound) {
  const auto found = wdd::delicate::find_first_digitally_delicate(bound);
  json doc = {{"bound", bound}};
  doc["first"] = found ? json(*found) : json(nullptr);
  emit(g, doc, found ? std::to_string(*found) + "\n" : "none\n");
  return found ? kOk : kVerificationFailed;
}

int run_delicate_stable(const Globals& g, const std::string& n_text) {
  const bool stable = wdd::delicate::is_composite_digit_stable(wdd::parse_natural(n_text));
  emit(g, {{"n", n_text}, {"composite_digit_stable", stable}},
       n_text + ": composite digit-stable = " + (stable ? "true" : "false") + "\n");
  return stable ? kOk : kVerificationFailed;
}

// ---------------------------------------------------------------------------
// graham

struct GrahamArgs {
  std::string a;
  std::string b;
  std::string primes;
};

wdd::graham::GrahamInstance graham_instance(const GrahamArgs& args) {
  auto inst = wdd::graham::vsemirnov_instance();
  if (!args.a.empty()) inst.a = wdd::parse_natural(args.a);
  if (!args.b.empty()) inst.b = wdd::parse_natural(args.b);
  if (!args.primes.empty()) inst.primes = parse_u64_list(args.primes);
  return inst;
}

int run_graham_verify(const Globals& g, const GrahamArgs& args) {
  const auto inst = graham_instance(args);
  const auto r = wdd::graham::verify_cover(inst);
  json doc = {{"a", to_decimal(inst.a)},
              {"b", to_decimal(inst.b)},
              {"N", to_decimal(inst.modulus())},
              {"period_lcm", r.lcm},
              {"covered", r.covered},
              {"terms_exceed_primes", r.terms_exceed_primes},
              {"spot_check_passed", r.spot_check_passed}};
  std::ostringstream text;
  text << "N            " << to_decimal(inst.modulus()) << '\n'
       << "period lcm   " << r.lcm << '\n';
  json per = json::array();
  for (const auto& pc : r.primes) {
    per.push_back({{"p", pc.prime}, {"period", pc.period}, {"zeros", pc.zeros}, {"hits", pc.hits}});
    text << "  p=" << pc.prime << " period=" << pc.period << " zeros=" << pc.zeros << " hits=" << pc.hits
         << '\n';
  }
  doc["primes"] = per;
  text << "covered      " << (r.covered ? "true" : "false") << '\n';
  if (r.uncovered) {
    doc["uncovered_index"] = *r.uncovered;
    text << "uncovered    u_" << *r.uncovered << '\n';
  }
  text << "u_j > max p  " << (r.terms_exceed_primes ? "true" : "false") << " (j >= 2)\n"
       << "spot check   " << r.spot_checked << " terms " << (r.spot_check_passed ? "ok" : "FAILED") << '\n';
  emit(g, doc, text.str());
  return r.covered && r.spot_check_passed ? kOk : kVerificationFailed;
}

int run_graham_reduce(const Globals& g, const GrahamArgs& args) {
  const auto inst = graham_instance(args);
  const auto r = wdd::graham::reduce_seeds(inst);
  json doc = {{"gcd_a", to_decimal(r.gcd_a)},
              {"gcd_b", to_decimal(r.gcd_b)},
              {"a_prime", {{"residue", to_decimal(r.a_reduced.residue)}, {"modulus", to_decimal(r.a_reduced.modulus)}}},
              {"b_prime", {{"residue", to_decimal(r.b_reduced.residue)}, {"modulus", to_decimal(r.b_reduced.modulus)}}}};
  std::ostringstream text;
  text << "gcd(a, N) = " << to_decimal(r.gcd_a) << ", gcd(b, N) = " << to_decimal(r.gcd_b) << '\n'
       << "a' = " << to_decimal(r.a_reduced.residue) << " (mod " << to_decimal(r.a_reduced.modulus) << ")\n"
       << "b' = " << to_decimal(r.b_reduced.residue) << " (mod " << to_decimal(r.b_reduced.modulus) << ")\n";
  emit(g, doc, text.str());
  return kOk;
}

// ---------------------------------------------------------------------------
// order

int run_order_primes(const Globals& g, std::uint64_t m, bool force) {
  const auto r = wdd::cyclotomic::primes_of_order(m, g.budget(), force);
  json primes = json::array();
  std::ostringstream text;
  text << m << ":";
  for (std::size_t i = 0; i < r.primes.size(); ++i) {
    primes.push_back(to_decimal(r.primes[i].prime));
    text << (i == 0 ? " " : ", ") << to_decimal(r.primes[i].prime) << (r.primes[i].proven ? "" : "?");
  }
  text << '\n';
  if (!r.complete) {
    text << "# incomplete: unfactored cofactor with " << wdd::delicate::decimal_length(r.cofactor)
         << " digits\n";
  }
  emit(g, {{"m", m}, {"primes", primes}, {"complete", r.complete},
           {"cofactor_digits", wdd::delicate::decimal_length(r.cofactor)}},
       text.str());
  return kOk;
}

int run_order_phi(const Globals& g, std::uint64_t m) {
  const auto v = wdd::cyclotomic::cyclotomic_value(m);
  emit(g, {{"m", m}, {"value", to_decimal(v)}}, to_decimal(v) + "\n");
  return kOk;
}

int run_order_mult(const Globals& g, const std::string& base, const std::string& modulus) {
  const auto ord = wdd::arith::multiplicative_order(wdd::parse_natural(base), wdd::parse_natural(modulus),
                                                    g.budget());
  emit(g, {{"base", base}, {"modulus", modulus}, {"order", to_decimal(ord)}}, to_decimal(ord) + "\n");
  return kOk;
}

int run_order_validate(const Globals& g, const std::string& file, const std::string& lcounts_file,
                       std::uint64_t cross_check) {
  namespace cy = wdd::cyclotomic;
  const auto table = cy::load_order_table(file);
  std::map<std::uint64_t, std::size_t> lcounts;
  if (!lcounts_file.empty()) {
    std::ifstream in(lcounts_file);
    if (!in) throw wdd::ParseError(lcounts_file, 0, "cannot open file");
    lcounts = cy::parse_lcounts(in, lcounts_file);
  }
  cy::ValidationOptions opts;
  opts.budget = g.budget();
  opts.cross_check_limit = cross_check;
  opts.expected_counts = lcounts.empty() ? nullptr : &lcounts;
  opts.threads = g.threads;
  const auto report = cy::validate_order_table(table, opts);

  json entries = json::array();
  std::ostringstream text;
  std::size_t bad = 0;
  for (const auto& e : report.entries) {
    json v = json::array();
    for (const auto& x : e.violations) v.push_back({{"check", x.check}, {"element", x.element}, {"message", x.message}});
    entries.push_back({{"m", e.modulus}, {"count", e.count}, {"valid", e.valid()},
                       {"cross_checked", e.cross_checked}, {"violations", v}});
    if (!e.valid()) {
      ++bad;
      for (const auto& x : e.violations) {
        text << "m=" << e.modulus << " check " << x.check << (x.element.empty() ? "" : " [" + x.element + "]")
             << ": " << x.message << '\n';
      }
    }
  }
  text << report.entries.size() << " moduli, " << bad << " with violations\n";
  emit(g, {{"valid", report.valid()}, {"entries", entries}}, text.str());
  return report.valid() ? kOk : kVerificationFailed;
}

int run_order_build(const Globals& g, const std::string& moduli_list, const std::string& lcounts_file,
                    std::uint64_t max_m, bool complete_only) {
  namespace cy = wdd::cyclotomic;
  std::vector<std::uint64_t> moduli = parse_u64_list(moduli_list);
  std::map<std::uint64_t, std::size_t> lcounts;
  if (!lcounts_file.empty()) {
    std::ifstream in(lcounts_file);
    if (!in) throw wdd::ParseError(lcounts_file, 0, "cannot open file");
    lcounts = cy::parse_lcounts(in, lcounts_file);
    for (const auto& [m, l] : lcounts) moduli.push_back(m);
  }
  std::sort(moduli.begin(), moduli.end());
  moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());
  std::erase_if(moduli, [&](std::uint64_t m) { return m == 0 || (max_m != 0 && m > max_m); });

  cy::OrderTable table;
  std::ostringstream comments;
  for (std::uint64_t m : moduli) {
    const auto found = cy::primes_of_order(m, g.budget(), true);
    if (complete_only && !found.complete) continue;
    std::size_t keep = found.primes.size();
    if (auto it = lcounts.find(m); it != lcounts.end()) {
      if (keep < it->second) continue;
      keep = it->second;  // the coverings use the smallest L(m) primes of each order
    }
    cy::OrderTableEntry entry{m, {}};
    for (std::size_t i = 0; i < keep; ++i) {
      entry.elements.push_back({found.primes[i].prime, cy::Provenance::VerifiedPrime});
    }
    table.emplace(m, std::move(entry));
  }
  std::ostringstream text;
  cy::write_order_table(text, table);
  json doc = json::object();
  for (const auto& [m, e] : table) {
    json xs = json::array();
    for (const auto& el : e.elements) xs.push_back(to_decimal(el.value));
    doc[std::to_string(m)] = xs;
  }
  emit(g, doc, text.str());
  return kOk;
}

// ---------------------------------------------------------------------------
// report

int run_report(const Globals& g, const std::string& dir, const std::string& digit_list) {
  const auto bundle = wdd::tables::ingest_tables(dir);
  for (const auto& w : bundle.warnings) std::cerr << "warning: " << w << '\n';
  wdd::report::ReportOptions opts;
  opts.threads = g.threads;
  if (!digit_list.empty()) opts.digits = parse_digits(digit_list);
  const auto r = wdd::report::reproduce_report(bundle, opts);

  json rows = json::array();
  std::ostringstream text;
  text << "   d  cong.             lcm  max p  covering  matches  primes resolved      seconds\n";
  for (const auto& d : r.digits) {
    json row = {{"digit", d.digit},
                {"mod3", d.mod3},
                {"congruences", d.count},
                {"lcm", std::to_string(d.lcm)},
                {"max_prime", d.max_prime},
                {"w", d.w},
                {"covering", d.covered},
                {"count_matches", d.count_matches},
                {"lcm_matches", d.lcm_matches},
                {"max_prime_matches", d.max_prime_matches},
                {"rho_within_counts", d.rho_within_counts},
                {"primes_resolved", d.primes_resolved},
                {"assignment_verified", d.assignment_verified},
                {"seconds", d.seconds}};
    if (d.witness) row["witness"] = std::to_string(*d.witness);
    rows.push_back(row);
    char line[160];
    std::snprintf(line, sizeof line, "%4d  %5zu  %14llu  %5llu  %-8s  %-7s  %6zu/%-6zu %-3s  %9.3f\n", d.digit, d.count,
                  static_cast<unsigned long long>(d.lcm), static_cast<unsigned long long>(d.max_prime),
                  d.covered ? "true" : "FALSE", d.matches() ? "yes" : "NO", d.primes_resolved, d.count,
                  d.assignment_verified ? "all" : "", d.seconds);
    text << line;
  }
  text << "all covering: " << (r.all_covered() ? "true" : "false")
       << ", published values match: " << (r.all_match() ? "true" : "false") << ", total " << r.seconds
       << " s\n";
  emit(g, {{"digits", rows}, {"all_covering", r.all_covered()}, {"all_match", r.all_match()},
           {"seconds", r.seconds}},
       text.str());
  return r.all_covered() && r.all_match() ? kOk : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covering systems and widely digitally delicate primes"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--budget", g.budget_seconds, "Factoring time budget in seconds (0 = none)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.fallthrough();

  std::function<int()> action;

  // cover
  auto* cover = app.add_subcommand("cover", "Covering systems");
  cover->require_subcommand(1);
  CoverArgs cover_args;
  auto* cover_verify = cover->add_subcommand("verify", "Check that a covering file covers every integer");
  cover_verify->add_option("file", cover_args.file, "Covering file (a m [rho] per line)")->required();
  auto* naive_flag = cover_verify->add_flag("--naive", cover_args.naive, "Scan [0, lcm) directly");
  auto* fast_flag = cover_verify->add_flag("--fast", cover_args.fast, "Residue-class reduction (default)");
  naive_flag->excludes(fast_flag);
  cover_verify->add_option("--w", cover_args.w, "Class modulus for the fast path (must divide lcm)");
  cover_verify->add_flag("--profile", cover_args.profile, "Print per-class reduction statistics");
  cover_verify->callback([&] { action = [&] { return run_cover_verify(g, cover_args); }; });

  // construct
  auto* construct = app.add_subcommand("construct", "Assemble and certify A n + B");
  construct->require_subcommand(1);
  std::string digit_list = "all", tables_dir = WDD_DATA_DIR, out_path, from_path, n_text;
  int cert_digit = 0;
  std::uint64_t cert_k = 0, k_max = 200, seed = 1;
  std::size_t samples = 100;
  auto* assemble = construct->add_subcommand("assemble", "Build (A, B) from digit coverings");
  assemble->add_option("--digits", digit_list, "Comma-separated digits or 'all'");
  assemble->add_option("--tables", tables_dir, "Table bundle directory");
  assemble->add_option("--out", out_path, "Write the construction export here");
  assemble->callback([&] { action = [&] { return run_construct_assemble(g, digit_list, tables_dir, out_path); }; });
  auto* certify = construct->add_subcommand("certify", "Divisor certificate for n + d 10^k");
  certify->add_option("--from", from_path, "Construction export file")->required();
  certify->add_option("--n", n_text, "n = B (mod A)")->required();
  certify->add_option("--d", cert_digit, "Digit shift d")->required();
  certify->add_option("--k", cert_k, "Exponent k")->required();
  certify->callback([&] { action = [&] { return run_construct_certify(g, from_path, n_text, cert_digit, cert_k); }; });
  auto* sample = construct->add_subcommand("sample", "Spot-check property (*) on random n");
  sample->add_option("--from", from_path, "Construction export file")->required();
  sample->add_option("--samples", samples, "Number of random n");
  sample->add_option("--k-max", k_max, "Largest exponent k");
  sample->add_option("--seed", seed, "RNG seed");
  sample->callback([&] { action = [&] { return run_construct_sample(g, from_path, samples, k_max, seed); }; });

  // delicate
  auto* delicate = app.add_subcommand("delicate", "Digit-substitution predicates");
  delicate->require_subcommand(1);
  std::string delicate_n;
  std::optional<std::uint32_t> widely;
  bool verbose = false;
  std::uint64_t bound = 0;
  auto* check = delicate->add_subcommand("check", "Is a prime digitally delicate?");
  check->add_option("n", delicate_n, "Prime to test")->required();
  check->add_option("--widely", widely, "Also try this many leading-zero positions");
  check->add_flag("--verbose", verbose, "List every substituted value");
  check->callback([&] { action = [&] { return run_delicate_check(g, delicate_n, widely, verbose); }; });
  auto* scan = delicate->add_subcommand("scan", "Least digitally delicate prime up to a bound");
  scan->add_option("--bound", bound, "Upper bound")->required();
  scan->callback([&] { action = [&] { return run_delicate_scan(g, bound); }; });
  auto* stable = delicate->add_subcommand("stable", "Is a composite coprime to 10 digit-stable?");
  stable->add_option("n", delicate_n, "Composite to test")->required();
  stable->callback([&] { action = [&] { return run_delicate_stable(g, delicate_n); }; });

  // graham
  auto* graham = app.add_subcommand("graham", "Composite Fibonacci-like sequences");
  graham->require_subcommand(1);
  GrahamArgs graham_args;
  for (auto* sub : {graham->add_subcommand("verify", "Check the prime cover of every term"),
                    graham->add_subcommand("reduce", "Reduce the seeds by gcd with N")}) {
    sub->add_option("--a", graham_args.a, "Seed u0 (default: smallest known)");
    sub->add_option("--b", graham_args.b, "Seed u1");
    sub->add_option("--primes", graham_args.primes, "Comma-separated prime set");
    const bool is_verify = sub->get_name() == "verify";
    sub->callback([&, is_verify] {
      action = [&, is_verify] { return is_verify ? run_graham_verify(g, graham_args) : run_graham_reduce(g, graham_args); };
    });
  }

  // order
  auto* order = app.add_subcommand("order", "Cyclotomic values and order tables");
  order->require_subcommand(1);
  std::uint64_t modulus_m = 0, cross_check = 0, max_m = 0;
  bool force = false, complete_only = false;
  std::string base_text, mod_text, table_file, lcounts_file, moduli_list;
  auto* primes = order->add_subcommand("primes", "Primes p with ord_p(10) = m");
  primes->add_option("m", modulus_m, "Order")->required();
  primes->add_flag("--force", force, "Factor even above the default modulus limit");
  primes->callback([&] { action = [&] { return run_order_primes(g, modulus_m, force); }; });
  auto* phi = order->add_subcommand("phi", "Phi_m(10)");
  phi->add_option("m", modulus_m, "Index")->required();
  phi->callback([&] { action = [&] { return run_order_phi(g, modulus_m); }; });
  auto* mult = order->add_subcommand("mult", "Multiplicative order of base modulo n");
  mult->add_option("base", base_text)->required();
  mult->add_option("modulus", mod_text)->required();
  mult->callback([&] { action = [&] { return run_order_mult(g, base_text, mod_text); }; });
  auto* validate = order->add_subcommand("validate", "Run the list checks on an order-table file");
  validate->add_option("file", table_file)->required();
  validate->add_option("--lcounts", lcounts_file, "Expected L(m) counts");
  validate->add_option("--cross-check", cross_check, "Cross-check against factorizations for m up to this");
  validate->callback([&] { action = [&] { return run_order_validate(g, table_file, lcounts_file, cross_check); }; });
  auto* build = order->add_subcommand("build", "Write an order table from factorizations");
  build->add_option("--moduli", moduli_list, "Comma-separated moduli");
  build->add_option("--lcounts", lcounts_file, "Use every modulus of an L(m) file, keeping the first L(m) primes");
  build->add_option("--max-m", max_m, "Skip moduli above this");
  build->add_flag("--complete-only", complete_only,
                 "Only moduli whose Phi_m(10) factors completely");
  build->callback([&] { action = [&] { return run_order_build(g, moduli_list, lcounts_file, max_m, complete_only); }; });

  // report
  auto* report = app.add_subcommand("report", "Verify every digit covering against the published tables");
  std::string report_digits;
  report->add_option("--tables", tables_dir, "Table bundle directory");
  report->add_option("--digits", report_digits, "Restrict to these digits");
  report->callback([&] { action = [&] { return run_report(g, tables_dir, report_digits); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kDataError;
  }

  try {
    return action ? action() : kDataError;
  } catch (const wdd::InconsistentConstraints& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
}
