#pragma once

// Output plumbing for icp_lab: run manifests, JSON/CSV/table rendering, range
// parsing and line-anchored diagnostics for input files.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "icp/serialization.hpp"

namespace icp::lab {

using Json = io::Json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitIo = 3;

/// Bad flags, ranges or input files (exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or unwritable paths (exit code 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv, Table };

Format parse_format(std::string_view name);
std::string_view to_string(Format f) noexcept;

inline constexpr std::string_view kCsvVersion = "icp_lab-csv-1";

struct Manifest {
  std::string command;
  Json parameters = Json::object();
  std::uint64_t seed = 42;
  std::string tool_version;
  std::string timestamp;
};

Json to_json(const Manifest& m);
/// Throws InputError when fields are missing or mistyped.
Manifest manifest_from_json(const Json& j);

/// A command result. `rows` is set for tabular kinds (scans, listings,
/// reports) and is the only content CSV can carry.
struct Output {
  std::string kind;
  Json body = Json::object();
  std::optional<std::vector<Json>> rows;
};

/// Flattens a row: arrays of scalars become name_1, name_2, ...
Json flatten_row(const Json& row);

std::string render(const Manifest& manifest, const Output& output, Format format);

/// Number formatting for human-readable tables: 5 significant digits.
std::string table_number(double x);

/// Inclusive "a:b[:step]" ranges, comma lists of values or ranges, or a
/// single value. "inf" is accepted as a list element when allow_inf is set.
std::vector<double> parse_real_list(std::string_view spec, bool allow_inf = false);
std::vector<int> parse_int_list(std::string_view spec);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string iso8601_now();

struct TextPosition {
  std::size_t line = 1;
  std::size_t column = 1;
};

TextPosition position_of_offset(std::string_view text, std::size_t offset);
/// Line on which element `index` of the first "entries" array starts.
std::optional<std::size_t> entry_line(std::string_view text, std::size_t index);
/// Line of the first occurrence of the quoted key.
std::optional<std::size_t> key_line(std::string_view text, std::string_view key);

}  // namespace icp::lab
