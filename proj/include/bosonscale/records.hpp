#ifndef BOSONSCALE_RECORDS_HPP
#define BOSONSCALE_RECORDS_HPP

#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

namespace bosonscale {

/// What a record's value means. Probabilities (exact, asymptotic, MC mean)
/// are logs; mc-sigma and rel-err are plain numbers relative to the exact value.
enum class Quantity { ExactP, ExactR, AsymP, AsymR, McMean, McSigma, RelErr };

inline std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::ExactP: return "exact-P";
    case Quantity::ExactR: return "exact-R";
    case Quantity::AsymP: return "asym-P";
    case Quantity::AsymR: return "asym-R";
    case Quantity::McMean: return "mc-mean";
    case Quantity::McSigma: return "mc-sigma";
    case Quantity::RelErr: return "rel-err";
  }
  return "unknown";
}

inline std::optional<Quantity> parse_quantity(std::string_view s) {
  for (auto q : {Quantity::ExactP, Quantity::ExactR, Quantity::AsymP, Quantity::AsymR,
                 Quantity::McMean, Quantity::McSigma, Quantity::RelErr})
    if (to_string(q) == s) return q;
  return std::nullopt;
}

inline bool is_log_domain(Quantity q) {
  return q != Quantity::McSigma && q != Quantity::RelErr;
}

struct OutputRecord {
  std::size_t n = 0;
  std::size_t m = 0;
  double k = 0.0;
  double t = 1.0;
  Quantity quantity = Quantity::ExactP;
  double value = 0.0;
  std::vector<std::pair<std::string, std::string>> extra;

  std::optional<std::string> find_extra(std::string_view key) const {
    for (const auto& [kk, v] : extra)
      if (kk == key) return v;
    return std::nullopt;
  }

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

/// Shortest round-trip decimal with a '.' separator, independent of locale.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_number(std::string_view s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("parse_number: not a number: '" + std::string(s) + "'");
  }
  return v;
}

inline std::size_t parse_count(std::string_view s) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("parse_count: not a count: '" + std::string(s) + "'");
  }
  return v;
}

namespace detail {

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Splits one CSV line (no embedded newlines) into fields, honouring quotes.
inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  if (quoted) throw std::invalid_argument("CSV: unterminated quote");
  return fields;
}

inline std::string join_extra(const OutputRecord& r) {
  std::string out;
  for (const auto& [key, v] : r.extra) {
    if (!out.empty()) out += ';';
    out += key + '=' + v;
  }
  return out;
}

inline std::vector<std::pair<std::string, std::string>> split_extra(std::string_view s) {
  std::vector<std::pair<std::string, std::string>> out;
  while (!s.empty()) {
    const auto semi = s.find(';');
    const std::string_view item = s.substr(0, semi);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("CSV: malformed extra field");
    out.emplace_back(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    if (semi == std::string_view::npos) break;
    s.remove_prefix(semi + 1);
  }
  return out;
}

}  // namespace detail

/// Column layouts. Records carry every field; figures drop m and extra.
enum class CsvLayout { Record, Figure };

inline std::string csv_header(CsvLayout layout) {
  return layout == CsvLayout::Record ? "n,m,k,t,quantity,value,extra" : "n,k,t,quantity,value";
}

inline std::string to_csv_row(const OutputRecord& r, CsvLayout layout) {
  std::string row = std::to_string(r.n) + ',';
  if (layout == CsvLayout::Record) row += std::to_string(r.m) + ',';
  row += format_number(r.k) + ',' + format_number(r.t) + ',' + std::string(to_string(r.quantity)) +
         ',' + format_number(r.value);
  if (layout == CsvLayout::Record) row += ',' + detail::csv_field(detail::join_extra(r));
  return row;
}

inline void write_csv(std::ostream& os, const std::vector<OutputRecord>& records, CsvLayout layout) {
  os << csv_header(layout) << '\n';
  for (const auto& r : records) os << to_csv_row(r, layout) << '\n';
}

/// Reads either layout, selecting columns by header name. A figure CSV has
/// no m column; m is then recovered as round(k n).
inline std::vector<OutputRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("CSV: missing header");
  const auto header = detail::split_csv_line(line);
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    return std::nullopt;
  };
  const auto cn = column("n"), cm = column("m"), ck = column("k"), ct = column("t"),
             cq = column("quantity"), cv = column("value"), ce = column("extra");
  if (!cn || !ck || !ct || !cq || !cv) throw std::invalid_argument("CSV: header lacks a required column");

  std::vector<OutputRecord> out;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != header.size()) throw std::invalid_argument("CSV: row width differs from header");
    OutputRecord r;
    r.n = parse_count(f[*cn]);
    r.k = parse_number(f[*ck]);
    r.m = cm ? parse_count(f[*cm]) : static_cast<std::size_t>(std::llround(r.k * r.n));
    r.t = parse_number(f[*ct]);
    const auto q = parse_quantity(f[*cq]);
    if (!q) throw std::invalid_argument("CSV: unknown quantity '" + f[*cq] + "'");
    r.quantity = *q;
    r.value = parse_number(f[*cv]);
    if (ce) r.extra = detail::split_extra(f[*ce]);
    out.push_back(std::move(r));
  }
  return out;
}

inline nlohmann::ordered_json to_json(const OutputRecord& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["k"] = r.k;
  j["t"] = r.t;
  j["quantity"] = std::string(to_string(r.quantity));
  j["value"] = r.value;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  for (const auto& [key, v] : r.extra) extra[key] = v;
  j["extra"] = std::move(extra);
  return j;
}

inline OutputRecord from_json(const nlohmann::ordered_json& j) {
  OutputRecord r;
  r.n = j.at("n").get<std::size_t>();
  r.m = j.at("m").get<std::size_t>();
  r.k = j.at("k").get<double>();
  r.t = j.at("t").get<double>();
  const auto q = parse_quantity(j.at("quantity").get<std::string>());
  if (!q) throw std::invalid_argument("JSON: unknown quantity");
  r.quantity = *q;
  r.value = j.at("value").is_null() ? std::nan("") : j.at("value").get<double>();
  for (const auto& [key, v] : j.at("extra").items()) r.extra.emplace_back(key, v.get<std::string>());
  return r;
}

inline void write_json_lines(std::ostream& os, const std::vector<OutputRecord>& records) {
  for (const auto& r : records) os << to_json(r).dump() << '\n';
}

inline std::vector<OutputRecord> read_json_lines(std::istream& is) {
  std::vector<OutputRecord> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    out.push_back(from_json(nlohmann::ordered_json::parse(line)));
  }
  return out;
}

}  // namespace bosonscale

#endif  // BOSONSCALE_RECORDS_HPP
