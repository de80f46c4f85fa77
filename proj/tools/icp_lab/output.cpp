#include "output.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <sstream>

namespace icp::lab {

Format parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "table") return Format::Table;
  throw InputError("unknown format '" + std::string(name) + "' (expected json, csv or table)");
}

std::string_view to_string(Format f) noexcept {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Table: return "table";
  }
  return "json";
}

Json to_json(const Manifest& m) {
  return Json{{"command", m.command},
              {"parameters", m.parameters},
              {"seed", m.seed},
              {"tool_version", m.tool_version},
              {"timestamp", m.timestamp}};
}

Manifest manifest_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("manifest: expected an object");
  auto need = [&](const char* key) -> const Json& {
    if (!j.contains(key)) throw InputError(std::string("manifest: missing field '") + key + "'");
    return j[key];
  };
  Manifest m;
  const Json& command = need("command");
  const Json& parameters = need("parameters");
  const Json& seed = need("seed");
  if (!command.is_string()) throw InputError("manifest.command: expected a string");
  if (!parameters.is_object()) throw InputError("manifest.parameters: expected an object");
  if (!seed.is_number_unsigned()) throw InputError("manifest.seed: expected a nonnegative integer");
  m.command = command.get<std::string>();
  m.parameters = parameters;
  m.seed = seed.get<std::uint64_t>();
  if (j.contains("tool_version") && j["tool_version"].is_string()) {
    m.tool_version = j["tool_version"].get<std::string>();
  }
  if (j.contains("timestamp") && j["timestamp"].is_string()) {
    m.timestamp = j["timestamp"].get<std::string>();
  }
  return m;
}

Json flatten_row(const Json& row) {
  Json flat = Json::object();
  for (const auto& [key, value] : row.items()) {
    if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) flat[key + "_" + std::to_string(i + 1)] = value[i];
    } else {
      flat[key] = value;
    }
  }
  return flat;
}

namespace {

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  return v.dump();
}

std::string table_cell(const Json& v) {
  if (v.is_number_float()) return table_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

std::vector<std::string> columns_of(const std::vector<Json>& rows) {
  std::vector<std::string> cols;
  for (const auto& r : rows) {
    for (const auto& [key, _] : r.items()) {
      if (std::find(cols.begin(), cols.end(), key) == cols.end()) cols.push_back(key);
    }
  }
  return cols;
}

std::string render_csv(const Manifest& manifest, const std::vector<Json>& raw_rows) {
  std::vector<Json> rows;
  for (const auto& r : raw_rows) rows.push_back(flatten_row(r));
  const auto cols = columns_of(rows);
  std::ostringstream os;
  os << "# " << kCsvVersion << ' ' << to_json(manifest).dump() << '\n';
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) os << ',';
      if (r.contains(cols[c])) os << csv_cell(r[cols[c]]);
    }
    os << '\n';
  }
  return os.str();
}

std::string render_rows_table(const std::vector<Json>& raw_rows) {
  std::vector<Json> rows;
  for (const auto& r : raw_rows) rows.push_back(flatten_row(r));
  const auto cols = columns_of(rows);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) width[c] = cols[c].size();
  for (const auto& r : rows) {
    auto& line = cells.emplace_back();
    for (std::size_t c = 0; c < cols.size(); ++c) {
      line.push_back(r.contains(cols[c]) ? table_cell(r[cols[c]]) : "");
      width[c] = std::max(width[c], line.back().size());
    }
  }
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      os << (c ? "  " : "") << line[c];
      if (c + 1 < line.size()) os << std::string(width[c] - line[c].size(), ' ');
    }
    os << '\n';
  };
  emit(cols);
  for (const auto& line : cells) emit(line);
  return os.str();
}

// Nested objects as dotted keys; long arrays are summarized by their length.
void flatten_nested(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten_nested(value, prefix.empty() ? key : prefix + "." + key, out);
    }
    return;
  }
  if (j.is_array()) {
    const bool scalars = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
    if (scalars && j.size() <= 8) {
      std::string s = "[";
      for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + table_cell(j[i]);
      out.emplace_back(prefix, s + "]");
    } else {
      out.emplace_back(prefix, "(" + std::to_string(j.size()) + " items)");
    }
    return;
  }
  out.emplace_back(prefix, table_cell(j));
}

std::string render_kv_table(const Json& body) {
  std::vector<std::pair<std::string, std::string>> kv;
  flatten_nested(body, "", kv);
  std::size_t w = 0;
  for (const auto& [k, _] : kv) w = std::max(w, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : kv) os << k << std::string(w - k.size() + 2, ' ') << v << '\n';
  return os.str();
}

}  // namespace

std::string render(const Manifest& manifest, const Output& output, Format format) {
  switch (format) {
    case Format::Json: {
      Json doc{{"manifest", to_json(manifest)}, {"kind", output.kind}};
      for (const auto& [key, value] : output.body.items()) doc[key] = value;
      if (output.rows && !output.body.contains("rows")) doc["rows"] = *output.rows;
      return doc.dump(2) + "\n";
    }
    case Format::Csv:
      if (!output.rows) {
        throw InputError("csv output is not available for " + output.kind + " records; use json or table");
      }
      return render_csv(manifest, *output.rows);
    case Format::Table:
      if (output.rows) return render_rows_table(*output.rows);
      return render_kv_table(output.body);
  }
  return {};
}

std::string table_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5g", x);
  return buf;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(std::string_view s, std::string_view spec) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw InputError("invalid number '" + std::string(s) + "' in range '" + std::string(spec) + "'");
  }
  return v;
}

constexpr std::size_t kMaxRangeLength = 1'000'000;

}  // namespace

std::vector<double> parse_real_list(std::string_view spec, bool allow_inf) {
  std::vector<double> out;
  if (trim(spec).empty()) throw InputError("empty range");
  for (auto item : split(spec, ',')) {
    if (allow_inf && (item == "inf" || item == "infinity")) {
      out.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse_real(parts[0], spec));
      continue;
    }
    if (parts.size() > 3) throw InputError("range '" + std::string(item) + "' has too many fields");
    const double a = parse_real(parts[0], spec);
    const double b = parse_real(parts[1], spec);
    const double step = parts.size() == 3 ? parse_real(parts[2], spec) : 1.0;
    if (!(step > 0.0)) throw InputError("range '" + std::string(item) + "' needs a positive step");
    if (b < a) throw InputError("range '" + std::string(item) + "' is decreasing");
    const double count = std::floor((b - a) / step + 1e-9) + 1.0;
    if (count > static_cast<double>(kMaxRangeLength)) {
      throw InputError("range '" + std::string(item) + "' is too long");
    }
    for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) out.push_back(a + static_cast<double>(i) * step);
  }
  return out;
}

std::vector<int> parse_int_list(std::string_view spec) {
  std::vector<int> out;
  for (double v : parse_real_list(spec)) {
    if (v != std::floor(v) || std::abs(v) > 1e9) {
      throw InputError("range '" + std::string(spec) + "' must contain integers");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::string iso8601_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

TextPosition position_of_offset(std::string_view text, std::size_t offset) {
  TextPosition pos;
  offset = std::min(offset, text.size());
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

namespace {

/// Minimal JSON scanner: walks tokens outside strings and reports the offset
/// of each element of the first array keyed "entries".
std::optional<std::size_t> entry_offset(std::string_view text, std::size_t index) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_string = [&] {
    ++i;
    while (i < n && text[i] != '"') i += text[i] == '\\' ? 2 : 1;
    ++i;
  };
  // Find the key.
  bool found = false;
  while (i < n && !found) {
    if (text[i] == '"') {
      const std::size_t start = i;
      skip_string();
      if (text.substr(start, i - start) == "\"entries\"") {
        std::size_t j = i;
        while (j < n && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j < n && text[j] == ':') {
          ++j;
          while (j < n && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
          if (j < n && text[j] == '[') {
            i = j + 1;
            found = true;
          }
        }
      }
    } else {
      ++i;
    }
  }
  if (!found) return std::nullopt;
  // Walk elements at depth 0 of the array.
  std::size_t element = 0;
  int depth = 0;
  bool at_start = true;
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (depth == 0 && c == ']') return std::nullopt;
    if (depth == 0 && at_start) {
      if (element == index) return i;
      at_start = false;
    }
    if (c == '"') {
      skip_string();
      continue;
    }
    if (c == '[' || c == '{') ++depth;
    if (c == ']' || c == '}') --depth;
    if (depth == 0 && c == ',') {
      ++element;
      at_start = true;
    }
    ++i;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::size_t> entry_line(std::string_view text, std::size_t index) {
  const auto off = entry_offset(text, index);
  if (!off) return std::nullopt;
  return position_of_offset(text, *off).line;
}

std::optional<std::size_t> key_line(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  if (pos == std::string_view::npos) return std::nullopt;
  return position_of_offset(text, pos).line;
}

}  // namespace icp::lab
