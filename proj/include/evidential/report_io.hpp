#pragma once

#include <string>
#include <vector>

#include "evidential/inference.hpp"

namespace evidential {

enum class FieldKind { number, boolean, text };

struct ReportField {
  std::string name;
  FieldKind kind = FieldKind::number;
  double num = 0.0;
  bool flag = false;
  std::string str;
};

// Flat serialization schema. Calibration rows are flattened into
// <method>_lr and <method>_posterior entries so JSON stays a single flat
// object and CSV a header row plus one value row.
std::vector<ReportField> report_fields(const EvidentialReport& report);
// Same fields plus the poll annex: n, k, p0, exact_binomial_tail.
std::vector<ReportField> report_fields(const PollReport& report);

// Compact JSON object with keys in sorted order; parsing and re-emitting
// the result reproduces it byte for byte.
std::string render_json(const std::vector<ReportField>& fields);
// Two-row CSV: header line, then one row of values at the given number of
// significant digits. Fields containing commas, quotes or newlines are
// quoted RFC-4180 style.
std::string render_csv(const std::vector<ReportField>& fields, int precision);
// Aligned name/value lines for terminals.
std::string render_text(const std::vector<ReportField>& fields, int precision);

// %.*g formatting used across all renderers; precision clamped to [1, 17].
std::string format_number(double v, int precision);

}  // namespace evidential
