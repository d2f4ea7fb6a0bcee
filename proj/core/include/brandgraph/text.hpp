#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace brandgraph {

// --- TSV field escaping -----------------------------------------------
//
// Dataset files are tab-separated with one record per physical line.
// Fields escape embedded tabs, newlines and backslashes as \t, \n, \\ so
// that the line/column grammar stays trivial.

std::string tsv_escape(std::string_view raw);

/// Inverse of tsv_escape. Returns nullopt on a malformed escape
/// (lone backslash or unknown escape code).
std::optional<std::string> tsv_unescape(std::string_view field);

/// Splits one physical line into fields on raw tab characters.
std::vector<std::string_view> split_tsv_line(std::string_view line);

// --- RFC 3339 timestamps ----------------------------------------------

/// Parses "YYYY-MM-DDTHH:MM:SS[.frac](Z|±HH:MM)" to Unix seconds.
/// Fractional seconds are accepted and truncated. Returns nullopt on
/// malformed input.
std::optional<std::int64_t> parse_rfc3339(std::string_view s);

/// Canonical UTC form "YYYY-MM-DDTHH:MM:SSZ".
std::string format_rfc3339(std::int64_t unix_seconds);

// --- Deterministic number formatting ------------------------------------

/// Integral doubles render as integers ("1951"), everything else with 9
/// decimal places ("0.381985294"). Used for report cells so repeated runs
/// emit identical bytes.
std::string format_score(double v);

/// Shortest round-trip representation (17 significant digits maximum),
/// locale-independent.
std::string format_double(double v);

/// RFC 4180 CSV field: quotes the value when it contains a comma, quote
/// or line break, doubling embedded quotes.
std::string csv_field(std::string_view raw);

}  // namespace brandgraph
