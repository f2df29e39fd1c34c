#include "evidential/report_io.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"

namespace evidential {
namespace {

void add_num(std::vector<ReportField>& f, std::string name, double v) {
  ReportField field;
  field.name = std::move(name);
  field.kind = FieldKind::number;
  field.num = v;
  f.push_back(std::move(field));
}

void add_bool(std::vector<ReportField>& f, std::string name, bool v) {
  ReportField field;
  field.name = std::move(name);
  field.kind = FieldKind::boolean;
  field.flag = v;
  f.push_back(std::move(field));
}

void add_text(std::vector<ReportField>& f, std::string name, std::string v) {
  ReportField field;
  field.name = std::move(name);
  field.kind = FieldKind::text;
  field.str = std::move(v);
  f.push_back(std::move(field));
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_number(double v, int precision) {
  const int p = std::clamp(precision, 1, 17);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", p, v);
  return buf;
}

std::vector<ReportField> report_fields(const EvidentialReport& report) {
  std::vector<ReportField> f;
  f.reserve(20);
  add_num(f, "z", report.z.value());
  add_num(f, "p_one_sided", report.p_one_sided.value());
  add_num(f, "p_two_sided", report.p_two_sided.value());
  add_bool(f, "observed_matches_favored", report.observed_matches_favored);
  add_text(f, "lr_orientation",
           report.oriented_to_observed ? "observed" : "favored");
  for (Method m : {Method::marsman, Method::mle_lr, Method::goodman,
                   Method::sellke}) {
    for (const CalibrationRow& row : report.rows) {
      if (row.method != m) continue;
      const std::string key = method_key(m);
      add_num(f, key + "_lr", row.lr.value());
      add_num(f, key + "_posterior", row.posterior.value());
    }
  }
  add_num(f, "sellke_raw", report.sellke_raw);
  add_bool(f, "sellke_valid", report.sellke_valid);
  add_num(f, "posterior_favored", report.posterior_favored.value());
  add_num(f, "sign_error_prob", report.sign_error_prob.value());
  add_num(f, "observed_power", report.observed_power.value());
  return f;
}

std::vector<ReportField> report_fields(const PollReport& report) {
  std::vector<ReportField> f = report_fields(report.report);
  add_num(f, "n", static_cast<double>(report.poll.n));
  add_num(f, "k", static_cast<double>(report.poll.k));
  add_num(f, "p0", report.poll.p0.value());
  add_num(f, "exact_binomial_tail", report.exact_binomial_tail.value());
  return f;
}

std::string render_json(const std::vector<ReportField>& fields) {
  nlohmann::json obj = nlohmann::json::object();
  for (const ReportField& f : fields) {
    switch (f.kind) {
      case FieldKind::number: obj[f.name] = f.num; break;
      case FieldKind::boolean: obj[f.name] = f.flag; break;
      case FieldKind::text: obj[f.name] = f.str; break;
    }
  }
  return obj.dump();
}

std::string render_csv(const std::vector<ReportField>& fields, int precision) {
  std::string header, row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) {
      header += ',';
      row += ',';
    }
    const ReportField& f = fields[i];
    header += csv_escape(f.name);
    switch (f.kind) {
      case FieldKind::number: row += format_number(f.num, precision); break;
      case FieldKind::boolean: row += f.flag ? "true" : "false"; break;
      case FieldKind::text: row += csv_escape(f.str); break;
    }
  }
  return header + "\n" + row + "\n";
}

std::string render_text(const std::vector<ReportField>& fields,
                        int precision) {
  std::size_t width = 0;
  for (const ReportField& f : fields) width = std::max(width, f.name.size());
  std::string out;
  for (const ReportField& f : fields) {
    out += f.name;
    out.append(width - f.name.size() + 2, ' ');
    switch (f.kind) {
      case FieldKind::number: out += format_number(f.num, precision); break;
      case FieldKind::boolean: out += f.flag ? "true" : "false"; break;
      case FieldKind::text: out += f.str; break;
    }
    out += '\n';
  }
  return out;
}

}  // namespace evidential
