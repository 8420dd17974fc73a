#pragma once

#include <iosfwd>
#include <string>

#include "report.hpp"

namespace symfp::cli {

/// Shortest round-trip-safe rendering used everywhere: %.17g, with
/// non-finite values spelled nan/inf/-inf.
std::string format_double(double x);

/// Compact JSON with doubles at 17 significant digits (non-finite as null).
std::string to_json_text(const Json& j);

std::string format_cell(const Cell& c);
/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

/// Only the header and data rows as CSV text; used to compare runs.
std::string csv_rows(const Report& r);

/// `#`-prefixed metadata block, header, rows.
void write_csv(std::ostream& os, const Report& r);
/// {"meta": {..., "summary": ..., "checks": ...}, "rows": [...]}; rows are
/// objects keyed by column name.
void write_json(std::ostream& os, const Report& r);

}  // namespace symfp::cli
