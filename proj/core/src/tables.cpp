#include "wdd/tables.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "wdd/errors.hpp"

namespace wdd::tables {

namespace fs = std::filesystem;

const std::vector<int>& all_digits() {
  static const std::vector<int> digits = {-9, -8, -7, -6, -5, -4, -3, -2, -1,
                                          1,  2,  3,  4,  5,  6,  7,  8,  9};
  return digits;
}

covering::CoveringSystem TableBundle::system(int digit) const {
  const auto& src = digits.at(digit);
  if (src.mod3) return covering::CoveringSystem({covering::Congruence(0, 1)});
  return src.covering->system();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::size_t> parse_parts(const std::string& text, const std::string& source,
                                     std::size_t line) {
  std::vector<std::size_t> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      parts.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw ParseError(source, line, "bad part count '" + item + "'");
    }
  }
  return parts;
}

void load_covering_source(DigitSource& src, const fs::path& dir, std::vector<std::string>& warnings) {
  const fs::path path = dir / src.file;
  const std::string bytes = read_file(path);
  if (!src.sha256.empty() && sha256_hex(bytes) != src.sha256) {
    throw ParseError(path.string(), 0, "checksum does not match the manifest");
  }
  std::istringstream in(bytes);
  auto file = covering::parse_covering(in, path.string());
  if (file.digit && *file.digit != src.digit) {
    throw ParseError(path.string(), 0, "header digit " + std::to_string(*file.digit) +
                                           " but manifest says " + std::to_string(src.digit));
  }
  file.digit = src.digit;
  warnings.insert(warnings.end(), file.warnings.begin(), file.warnings.end());
  src.covering = std::move(file);
}

}  // namespace

std::string sha256_file(const std::string& path) { return sha256_hex(read_file(path)); }

TableBundle ingest_tables(const std::string& directory) {
  TableBundle bundle;
  bundle.directory = directory;
  const fs::path dir(directory);
  if (!fs::is_directory(dir)) throw ParseError(directory, 0, "not a directory");
  const fs::path manifest = dir / "MANIFEST";

  if (fs::exists(manifest)) {
    std::istringstream in(read_file(manifest));
    std::string raw;
    std::size_t line_no = 0;
    const std::string source = manifest.string();
    while (std::getline(in, raw)) {
      ++line_no;
      if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
      std::stringstream fields(raw);
      std::vector<std::string> tok;
      for (std::string t; fields >> t;) tok.push_back(t);
      if (tok.empty()) continue;
      if (tok[0] == "digit") {
        if (tok.size() < 3) throw ParseError(source, line_no, "expected 'digit <d> <file|mod3> ...'");
        DigitSource src;
        try {
          src.digit = std::stoi(tok[1]);
        } catch (const std::exception&) {
          throw ParseError(source, line_no, "bad digit '" + tok[1] + "'");
        }
        if (std::find(all_digits().begin(), all_digits().end(), src.digit) == all_digits().end()) {
          throw ParseError(source, line_no, "digit out of range: " + tok[1]);
        }
        if (bundle.digits.contains(src.digit)) {
          throw ParseError(source, line_no, "digit " + tok[1] + " listed twice");
        }
        if (tok[2] == "mod3") {
          if (((src.digit % 3) + 3) % 3 != 2) {
            throw ParseError(source, line_no, "mod3 marker needs d = 2 (mod 3)");
          }
          src.mod3 = true;
        } else {
          if (tok.size() != 6) {
            throw ParseError(source, line_no, "expected 'digit <d> <file> <rows> <parts> <sha256>'");
          }
          src.file = tok[2];
          std::size_t rows = 0;
          try {
            rows = std::stoull(tok[3]);
          } catch (const std::exception&) {
            throw ParseError(source, line_no, "bad row count '" + tok[3] + "'");
          }
          src.parts = parse_parts(tok[4], source, line_no);
          std::size_t total = 0;
          for (auto p : src.parts) total += p;
          if (total != rows) throw ParseError(source, line_no, "part counts do not sum to rows");
          src.sha256 = tok[5];
          load_covering_source(src, dir, bundle.warnings);
          if (src.covering->rows.size() != rows) {
            throw ParseError((dir / src.file).string(), 0,
                             std::to_string(src.covering->rows.size()) + " congruences but manifest says " +
                                 std::to_string(rows));
          }
        }
        bundle.digits.emplace(src.digit, std::move(src));
      } else if (tok[0] == "lcounts" || tok[0] == "orders") {
        if (tok.size() < 3) throw ParseError(source, line_no, "expected '<kind> <file> ... <sha256>'");
        const fs::path path = dir / tok[1];
        const std::string bytes = read_file(path);
        if (sha256_hex(bytes) != tok.back()) {
          throw ParseError(path.string(), 0, "checksum does not match the manifest");
        }
        std::istringstream data(bytes);
        if (tok[0] == "lcounts") {
          bundle.lcounts = cyclotomic::parse_lcounts(data, path.string());
          if (tok.size() == 4 && std::to_string(bundle.lcounts.size()) != tok[2]) {
            throw ParseError(path.string(), 0, "row count does not match the manifest");
          }
        } else {
          bundle.orders = cyclotomic::parse_order_table(data, path.string());
          bundle.orders_file = tok[1];
        }
      } else {
        throw ParseError(source, line_no, "unknown manifest entry '" + tok[0] + "'");
      }
    }
  } else {
    for (const auto& item : fs::directory_iterator(dir)) {
      if (!item.is_regular_file() || item.path().extension() != ".txt") continue;
      auto file = covering::load_covering(item.path().string());
      if (!file.digit) continue;
      DigitSource src;
      src.digit = *file.digit;
      src.file = item.path().filename().string();
      src.parts = {file.rows.size()};
      bundle.warnings.insert(bundle.warnings.end(), file.warnings.begin(), file.warnings.end());
      src.covering = std::move(file);
      if (!bundle.digits.emplace(src.digit, std::move(src)).second) {
        throw ParseError(item.path().string(), 0, "second covering for the same digit");
      }
    }
  }

  std::string missing;
  for (int d : all_digits()) {
    if (!bundle.digits.contains(d)) missing += (missing.empty() ? "" : ", ") + std::to_string(d);
  }
  if (!missing.empty()) {
    throw ParseError(directory, 0, "no covering or mod3 marker for digits {" + missing + "}");
  }
  return bundle;
}

void write_bundle(const TableBundle& bundle, const std::string& directory) {
  const fs::path dir(directory);
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& bytes) {
    std::ofstream out(dir / name, std::ios::binary);
    out << bytes;
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    return sha256_hex(bytes);
  };

  std::ostringstream manifest;
  manifest << "# digit <d> <file> <rows> <parts> <sha256> | digit <d> mod3\n";
  for (const auto& [d, src] : bundle.digits) {
    if (src.mod3) {
      manifest << "digit " << d << " mod3\n";
      continue;
    }
    std::ostringstream body;
    covering::write_covering(body, *src.covering);
    const std::string name = src.file.empty() ? "cover_" + std::to_string(d) + ".txt" : src.file;
    const auto sha = write(name, body.str());
    std::string parts;
    for (auto p : src.parts) parts += (parts.empty() ? "" : ",") + std::to_string(p);
    manifest << "digit " << d << ' ' << name << ' ' << src.covering->rows.size() << ' ' << parts << ' '
             << sha << '\n';
  }
  if (!bundle.lcounts.empty()) {
    std::ostringstream body;
    for (const auto& [m, l] : bundle.lcounts) body << m << ' ' << l << '\n';
    manifest << "lcounts lcounts.txt " << bundle.lcounts.size() << ' ' << write("lcounts.txt", body.str())
             << '\n';
  }
  if (bundle.orders) {
    std::ostringstream body;
    cyclotomic::write_order_table(body, *bundle.orders);
    const std::string name = bundle.orders_file.empty() ? "orders.txt" : bundle.orders_file;
    manifest << "orders " << name << ' ' << write(name, body.str()) << '\n';
  }
  write("MANIFEST", manifest.str());
}

}  // namespace wdd::tables
