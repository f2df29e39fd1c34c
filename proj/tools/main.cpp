// Command-line front end; talks to the library through the C API only.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "evidential.h"
#include "json.hpp"

namespace {

using nlohmann::json;

enum class Format { text, csv, json_out };

struct Output {
  Format format = Format::text;
  int precision = 6;
  std::string out_path;  // empty: stdout
};

[[noreturn]] void die_usage(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  std::exit(2);
}

[[noreturn]] void die_internal(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  std::exit(1);
}

// Library failures map onto the exit-code contract: domain and argument
// misuse are usage errors, anything else is internal.
void check(ev_status s) {
  if (s == EV_OK) return;
  if (s == EV_ERR_DOMAIN || s == EV_ERR_INVALID_ARGUMENT)
    die_usage(ev_last_error());
  die_internal(ev_last_error());
}

double lib1(ev_status (*fn)(double, double*), double x) {
  double out = 0.0;
  check(fn(x, &out));
  return out;
}

double lib2(ev_status (*fn)(double, double, double*), double x, double y) {
  double out = 0.0;
  check(fn(x, y, &out));
  return out;
}

std::string format_g(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
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

// JSON has no non-finite numbers: NaN becomes null, infinities strings.
json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

struct Cell {
  enum class Kind { number, text, boolean, empty } kind = Kind::empty;
  double num = 0.0;
  std::string str;
  bool flag = false;
};

Cell cell(double v) {
  Cell c;
  c.kind = Cell::Kind::number;
  c.num = v;
  return c;
}

Cell cell(const std::string& s) {
  Cell c;
  c.kind = Cell::Kind::text;
  c.str = s;
  return c;
}

Cell cell(const char* s) { return cell(std::string(s)); }

Cell cell(bool b) {
  Cell c;
  c.kind = Cell::Kind::boolean;
  c.flag = b;
  return c;
}

Cell empty_cell() { return Cell{}; }

std::string cell_string(const Cell& c, int precision) {
  switch (c.kind) {
    case Cell::Kind::number: return format_g(c.num, precision);
    case Cell::Kind::text: return c.str;
    case Cell::Kind::boolean: return c.flag ? "true" : "false";
    case Cell::Kind::empty: return "";
  }
  return "";
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::string to_text(int precision) const {
    std::vector<std::size_t> width(columns.size());
    std::vector<std::vector<std::string>> rendered;
    rendered.push_back(columns);
    for (const auto& row : rows) {
      std::vector<std::string> r;
      for (const Cell& c : row) r.push_back(cell_string(c, precision));
      rendered.push_back(std::move(r));
    }
    for (const auto& row : rendered)
      for (std::size_t i = 0; i < row.size(); ++i)
        width[i] = std::max(width[i], row[i].size());
    std::string out;
    for (std::size_t ri = 0; ri < rendered.size(); ++ri) {
      for (std::size_t i = 0; i < rendered[ri].size(); ++i) {
        if (i) out += "  ";
        const bool numeric =
            ri > 0 && rows[ri - 1][i].kind == Cell::Kind::number;
        const std::size_t pad = width[i] - rendered[ri][i].size();
        if (numeric) out.append(pad, ' ');
        out += rendered[ri][i];
        if (!numeric && i + 1 < rendered[ri].size()) out.append(pad, ' ');
      }
      out += '\n';
    }
    return out;
  }

  std::string to_csv(int precision) const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(columns[i]);
    }
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        if (row[i].kind == Cell::Kind::text)
          out += csv_escape(row[i].str);
        else
          out += cell_string(row[i], precision);
      }
      out += '\n';
    }
    return out;
  }

  json to_json() const {
    json arr = json::array();
    for (const auto& row : rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < row.size(); ++i) {
        switch (row[i].kind) {
          case Cell::Kind::number: obj[columns[i]] = json_number(row[i].num); break;
          case Cell::Kind::text: obj[columns[i]] = row[i].str; break;
          case Cell::Kind::boolean: obj[columns[i]] = row[i].flag; break;
          case Cell::Kind::empty: obj[columns[i]] = nullptr; break;
        }
      }
      arr.push_back(std::move(obj));
    }
    return arr;
  }
};

// Ordered key/value payload for the scalar-result commands.
struct KvPayload {
  std::vector<std::pair<std::string, Cell>> fields;

  void add(const std::string& name, Cell c) { fields.emplace_back(name, c); }

  std::string to_text(int precision) const {
    std::size_t width = 0;
    for (const auto& [name, c] : fields) width = std::max(width, name.size());
    std::string out;
    for (const auto& [name, c] : fields) {
      out += name;
      out.append(width - name.size() + 2, ' ');
      out += cell_string(c, precision);
      out += '\n';
    }
    return out;
  }

  std::string to_csv(int precision) const {
    std::string header, row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) {
        header += ',';
        row += ',';
      }
      header += csv_escape(fields[i].first);
      if (fields[i].second.kind == Cell::Kind::text)
        row += csv_escape(fields[i].second.str);
      else
        row += cell_string(fields[i].second, precision);
    }
    return header + "\n" + row + "\n";
  }

  json to_json() const {
    json obj = json::object();
    for (const auto& [name, c] : fields) {
      switch (c.kind) {
        case Cell::Kind::number: obj[name] = json_number(c.num); break;
        case Cell::Kind::text: obj[name] = c.str; break;
        case Cell::Kind::boolean: obj[name] = c.flag; break;
        case Cell::Kind::empty: obj[name] = nullptr; break;
      }
    }
    return obj;
  }
};

void emit(const Output& output, const std::string& payload) {
  if (output.out_path.empty()) {
    std::fputs(payload.c_str(), stdout);
    return;
  }
  std::ofstream file(output.out_path, std::ios::binary);
  if (!file) die_internal("cannot open output file: " + output.out_path);
  file << payload;
  if (!file.good()) die_internal("failed writing: " + output.out_path);
}

void emit_table(const Output& output, const Table& table) {
  switch (output.format) {
    case Format::text: emit(output, table.to_text(output.precision)); break;
    case Format::csv: emit(output, table.to_csv(output.precision)); break;
    case Format::json_out: emit(output, table.to_json().dump() + "\n"); break;
  }
}

void emit_kv(const Output& output, const KvPayload& kv) {
  switch (output.format) {
    case Format::text: emit(output, kv.to_text(output.precision)); break;
    case Format::csv: emit(output, kv.to_csv(output.precision)); break;
    case Format::json_out: emit(output, kv.to_json().dump() + "\n"); break;
  }
}

// --------------------------------------------------------------------------
// calibration row assembly shared by calibrate/table1/figure1

struct MethodValues {
  ev_method method;
  double lr;
  double posterior;
  double sort_key;  // validity-bounded form
  bool valid;
};

// Evaluates one calibration at exact (p, z); sellke reports the oriented raw
// value but ranks by its validity bound.
MethodValues method_values(ev_method m, double p, double z,
                           double prior_odds) {
  MethodValues v{m, 0.0, 0.0, 0.0, true};
  switch (m) {
    case EV_METHOD_MARSMAN: v.lr = lib1(ev_marsman_lr, p); break;
    case EV_METHOD_MLE: v.lr = lib1(ev_mle_lr, p); break;
    case EV_METHOD_GOODMAN: v.lr = lib1(ev_goodman_lr, z); break;
    case EV_METHOD_SELLKE: {
      double raw = 0.0, bound = 0.0;
      int valid = 0;
      check(ev_sellke_mbf(p, &raw, &bound, &valid));
      v.lr = 1.0 / raw;
      v.sort_key = 1.0 / bound;
      v.valid = valid != 0;
      break;
    }
  }
  if (m != EV_METHOD_SELLKE) v.sort_key = v.lr;
  v.posterior = lib2(ev_posterior_from_lr, v.lr, prior_odds);
  return v;
}

std::vector<MethodValues> all_method_values(double p, double z,
                                            double prior_odds) {
  std::vector<MethodValues> rows;
  for (ev_method m : {EV_METHOD_MARSMAN, EV_METHOD_MLE, EV_METHOD_GOODMAN,
                      EV_METHOD_SELLKE})
    rows.push_back(method_values(m, p, z, prior_odds));
  std::stable_sort(rows.begin(), rows.end(),
                   [](const MethodValues& a, const MethodValues& b) {
                     return a.sort_key > b.sort_key;
                   });
  return rows;
}

// Resolves the (p, z) pair from whichever was given: p = Phi(-|z|) or
// z = -Phi^-1(p).
void resolve_p_z(std::optional<double> p_opt, std::optional<double> z_opt,
                 double& p, double& z) {
  if (p_opt) {
    p = *p_opt;
    z = -lib1(ev_std_normal_quantile, p);
  } else {
    z = std::fabs(*z_opt);
    if (!std::isfinite(z)) die_usage("z must be finite");
    p = lib1(ev_std_normal_cdf, -z);
    if (!(p > 0.0 && p < 1.0))
      die_usage("z is too extreme: one-sided p underflows");
  }
}

// --------------------------------------------------------------------------
// subcommands

void run_calibrate(std::optional<double> p_opt, std::optional<double> z_opt,
                   double prior_odds, const std::string& method,
                   const Output& output) {
  double p = 0.0, z = 0.0;
  resolve_p_z(p_opt, z_opt, p, z);

  std::vector<MethodValues> rows = all_method_values(p, z, prior_odds);
  if (method != "all") {
    ev_method wanted;
    if (method == "marsman") wanted = EV_METHOD_MARSMAN;
    else if (method == "mle") wanted = EV_METHOD_MLE;
    else if (method == "goodman") wanted = EV_METHOD_GOODMAN;
    else if (method == "sellke") wanted = EV_METHOD_SELLKE;
    else die_usage("unknown method: " + method +
                   " (expected marsman|mle|goodman|sellke|all)");
    std::erase_if(rows, [&](const MethodValues& r) { return r.method != wanted; });
  }

  Table table;
  table.columns = {"method", "p_one_sided", "z", "lr", "orientation",
                   "posterior", "valid"};
  for (const MethodValues& r : rows)
    table.rows.push_back({cell(ev_method_key(r.method)), cell(p), cell(z),
                          cell(r.lr), cell("favored"), cell(r.posterior),
                          cell(r.valid)});
  emit_table(output, table);
}

void run_table1(double z, double prior_odds, bool paper_rounding,
                const Output& output) {
  if (!std::isfinite(z)) die_usage("z must be finite");
  Table table;
  table.columns = {"method", "formula", "prior", "lr",
                   paper_rounding ? "posterior_percent" : "posterior",
                   "orientation", "valid"};

  if (!paper_rounding) {
    ev_calibration_row rows[4];
    check(ev_calibration_table(z, prior_odds, rows));
    for (const ev_calibration_row& r : rows) {
      const ev_method m = static_cast<ev_method>(r.method);
      table.rows.push_back({cell(ev_method_key(m)), cell(ev_method_formula(m)),
                            cell(ev_method_prior(m)), cell(r.lr),
                            cell(r.posterior), cell("favored"),
                            cell(r.valid != 0)});
    }
    emit_table(output, table);
    return;
  }

  // Two-decimal display mode: p-based methods are evaluated at p rounded
  // to two decimals and LRs print with two decimals and floored posterior
  // percentages; the z-based method uses the unrounded z.
  const double zr = std::fabs(z);
  const double p = lib1(ev_std_normal_cdf, -zr);
  const double p2 = std::round(p * 100.0) / 100.0;
  if (!(p2 > 0.0 && p2 < 1.0))
    die_usage("paper rounding needs a one-sided p of at least 0.005");
  for (const MethodValues& r : all_method_values(p2, zr, prior_odds)) {
    const double lr_disp = std::round(r.lr * 100.0) / 100.0;
    const double pct = std::floor(r.posterior * 100.0 + 1e-9);
    table.rows.push_back({cell(ev_method_key(r.method)),
                          cell(ev_method_formula(r.method)),
                          cell(ev_method_prior(r.method)), cell(lr_disp),
                          cell(pct), cell("favored"), cell(r.valid)});
  }
  emit_table(output, table);
}

std::string make_figure_svg(const std::vector<double>& ps,
                            const std::vector<std::vector<double>>& curves,
                            const std::vector<std::string>& labels);

void run_figure1(double p_min, double p_max, int steps,
                 const std::string& svg_path, const Output& output) {
  if (!(p_min > 0.0 && p_min < p_max && p_max <= 0.5))
    die_usage("figure range must satisfy 0 < p-min < p-max <= 0.5");
  if (steps < 2) die_usage("need at least 2 steps");

  Table table;
  table.columns = {"p", "z", "marsman", "mle", "goodman", "sellke_oriented",
                   "sellke_valid"};
  std::vector<double> ps;
  std::vector<std::vector<double>> curves(4);
  for (int i = 0; i < steps; ++i) {
    const double p = p_min + (p_max - p_min) * i / (steps - 1);
    const double z = -lib1(ev_std_normal_quantile, p);
    const double marsman = lib1(ev_marsman_lr, p);
    const double mle = lib1(ev_mle_lr, p);
    const double goodman = lib1(ev_goodman_lr, z);
    double raw = 0.0, bound = 0.0;
    int valid = 0;
    check(ev_sellke_mbf(p, &raw, &bound, &valid));
    const double sellke = 1.0 / raw;
    table.rows.push_back({cell(p), cell(z), cell(marsman), cell(mle),
                          cell(goodman), cell(sellke), cell(valid != 0)});
    ps.push_back(p);
    curves[0].push_back(marsman);
    curves[1].push_back(mle);
    curves[2].push_back(goodman);
    curves[3].push_back(sellke);
  }

  if (!svg_path.empty()) {
    const std::string svg = make_figure_svg(
        ps, curves, {"marsman", "mle", "goodman", "sellke"});
    std::ofstream file(svg_path, std::ios::binary);
    if (!file) die_internal("cannot open svg file: " + svg_path);
    file << svg;
    if (!file.good()) die_internal("failed writing: " + svg_path);
  }
  emit_table(output, table);
}

void run_roc(double delta, const std::string& cutoffs_spec,
             const Output& output) {
  double lo = 0.0, hi = 0.0, step = 0.0;
  if (std::sscanf(cutoffs_spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3)
    die_usage("cutoffs must be given as lo:hi:step");
  if (!(step > 0.0) || !(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
    die_usage("cutoffs must satisfy lo < hi with positive step");
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1.5));
  std::vector<double> cutoffs;
  for (int i = 0; i < count; ++i) cutoffs.push_back(lo + i * step);

  Table table;
  table.columns = {"cutoff", "fpr", "tpr", "lr_positive", "lr_negative",
                   "lr_secant_product", "lr_tangent"};
  for (double c : cutoffs) {
    ev_roc_point pt;
    check(ev_roc_point_at(delta, c, &pt));
    std::vector<Cell> row{cell(pt.cutoff), cell(pt.fpr), cell(pt.tpr)};
    const bool interior = pt.fpr >= 1e-12 && pt.fpr <= 1.0 - 1e-12 &&
                          pt.tpr >= 1e-12 && pt.tpr <= 1.0 - 1e-12;
    if (interior) {
      double pos = 0.0, neg = 0.0, prod = 0.0;
      check(ev_roc_secants(&pt, &pos, &neg, &prod));
      row.push_back(cell(pos));
      row.push_back(cell(neg));
      row.push_back(cell(prod));
    } else {
      // Corner-adjacent points have singular secants; cells stay empty.
      row.push_back(empty_cell());
      row.push_back(empty_cell());
      row.push_back(empty_cell());
    }
    double tangent = 0.0;
    check(ev_roc_tangent(delta, c, &tangent));
    row.push_back(cell(tangent));
    table.rows.push_back(std::move(row));
  }

  ev_convexity_report conv;
  check(ev_roc_convexity(delta, cutoffs.data(), cutoffs.size(), &conv));
  const bool proper =
      conv.monotone_increasing != 0 && conv.slopes_strictly_decreasing != 0;

  switch (output.format) {
    case Format::text: {
      std::string payload = table.to_text(output.precision);
      payload += "convexity: ";
      payload += proper ? "pass" : "fail";
      payload += " (monotone ";
      payload += conv.monotone_increasing ? "yes" : "no";
      payload += ", slopes strictly decreasing ";
      payload += conv.slopes_strictly_decreasing ? "yes" : "no";
      payload += ")\nmax tangent vs secant-product gap: ";
      payload += format_g(conv.max_tangent_secant_gap, output.precision);
      payload += "\n";
      emit(output, payload);
      break;
    }
    case Format::csv:
      emit(output, table.to_csv(output.precision));
      break;
    case Format::json_out: {
      json obj = json::object();
      obj["separation"] = json_number(delta);
      obj["rows"] = table.to_json();
      obj["convexity"] = {
          {"pass", proper},
          {"monotone_increasing", conv.monotone_increasing != 0},
          {"slopes_strictly_decreasing", conv.slopes_strictly_decreasing != 0},
          {"max_slope_increase", json_number(conv.max_slope_increase)},
          {"max_tangent_secant_gap",
           json_number(conv.max_tangent_secant_gap)},
      };
      emit(output, obj.dump() + "\n");
      break;
    }
  }
}

void emit_report(const ev_report* report, const Output& output) {
  const ev_format fmt = output.format == Format::text ? EV_FORMAT_TEXT
                        : output.format == Format::csv ? EV_FORMAT_CSV
                                                       : EV_FORMAT_JSON;
  size_t len = 0;
  const ev_status probe =
      ev_report_render(report, fmt, output.precision, nullptr, 0, &len);
  if (probe != EV_ERR_BUFFER_TOO_SMALL && probe != EV_OK) check(probe);
  std::vector<char> buf(len + 1);
  check(ev_report_render(report, fmt, output.precision, buf.data(), buf.size(),
                         &len));
  std::string payload(buf.data(), len);
  if (output.format == Format::json_out) payload += '\n';
  emit(output, payload);
}

void run_report(double theta, double se, double delta,
                const std::string& favored, double prior_odds,
                const Output& output) {
  ev_direction dir = EV_DIRECTION_UNSPECIFIED;
  if (favored == "greater") dir = EV_DIRECTION_GREATER;
  else if (favored == "less") dir = EV_DIRECTION_LESS;
  else if (!favored.empty())
    die_usage("favored must be greater or less");
  ev_report* report = nullptr;
  check(ev_report_trial(theta, se, delta, dir, prior_odds, &report));
  emit_report(report, output);
  ev_report_free(report);
}

void run_poll(std::uint64_t n, std::uint64_t k, double p0, double prior_odds,
              const Output& output) {
  ev_report* report = nullptr;
  check(ev_report_poll(n, k, p0, prior_odds, &report));
  emit_report(report, output);
  ev_report_free(report);
}

double analytic_exceedance(double theta, double se, double cutoff) {
  if (cutoff == -INFINITY) return 1.0;
  if (cutoff == INFINITY) return 0.0;
  // 1 - Phi((c - theta)/se) computed without cancellation as Phi((theta-c)/se).
  return lib1(ev_std_normal_cdf, (theta - cutoff) / se);
}

void run_simulate(const std::string& mode, std::uint64_t seed,
                  std::uint64_t n_sims, double true_theta, double se,
                  double cutoff, double delta, unsigned workers,
                  const Output& output) {
  KvPayload kv;
  kv.add("mode", cell(mode));
  kv.add("seed", cell(static_cast<double>(seed)));
  kv.add("n_sims", cell(static_cast<double>(n_sims)));

  if (mode == "exceedance") {
    ev_mc_estimate est;
    check(ev_mc_exceedance(seed, n_sims, true_theta, se, cutoff, workers,
                           &est));
    kv.add("true_theta", cell(true_theta));
    kv.add("se", cell(se));
    kv.add("cutoff", cell(cutoff));
    kv.add("estimate", cell(est.estimate));
    kv.add("std_error", cell(est.std_error));
    kv.add("analytic", cell(analytic_exceedance(true_theta, se, cutoff)));
  } else if (mode == "secant-lr") {
    ev_mc_secant_comparison cmp;
    check(ev_mc_secant_comparison_run(delta, cutoff, n_sims, seed, workers,
                                      &cmp));
    kv.add("separation", cell(delta));
    kv.add("cutoff", cell(cutoff));
    kv.add("fpr_estimate", cell(cmp.fpr.estimate));
    kv.add("fpr_std_error", cell(cmp.fpr.std_error));
    kv.add("tpr_estimate", cell(cmp.tpr.estimate));
    kv.add("tpr_std_error", cell(cmp.tpr.std_error));
    kv.add("analytic_fpr", cell(cmp.analytic_fpr));
    kv.add("analytic_tpr", cell(cmp.analytic_tpr));
    kv.add("empirical_secant_lr", cell(cmp.empirical_lr));
    kv.add("empirical_lr_std_error", cell(cmp.empirical_lr_se));
    kv.add("analytic_secant_lr", cell(cmp.analytic_secant_lr));
    kv.add("analytic_tangent_lr", cell(cmp.analytic_tangent_lr));
    kv.add("tangent_differs", cell(cmp.tangent_differs != 0));
  } else if (mode == "sign-error") {
    ev_mc_estimate est;
    check(ev_mc_sign_error(true_theta, se, delta, n_sims, seed, workers,
                           &est));
    kv.add("true_theta", cell(true_theta));
    kv.add("se", cell(se));
    kv.add("delta", cell(delta));
    kv.add("estimate", cell(est.estimate));
    kv.add("std_error", cell(est.std_error));
    kv.add("analytic",
           cell(lib1(ev_std_normal_cdf,
                     -std::fabs(true_theta - delta) / se)));
  } else {
    die_usage("unknown mode: " + mode +
              " (expected exceedance|secant-lr|sign-error)");
  }
  emit_kv(output, kv);
}

// --------------------------------------------------------------------------
// SVG rendering for the figure command

std::string make_figure_svg(const std::vector<double>& ps,
                            const std::vector<std::vector<double>>& curves,
                            const std::vector<std::string>& labels) {
  const double width = 720, height = 480;
  const double ml = 70, mr = 150, mt = 40, mb = 55;
  const double pw = width - ml - mr, ph = height - mt - mb;

  const double x_lo = ps.front(), x_hi = ps.back();
  double y_lo = INFINITY, y_hi = -INFINITY;
  for (const auto& curve : curves)
    for (double v : curve) {
      const double ly = std::log10(v);
      y_lo = std::min(y_lo, ly);
      y_hi = std::max(y_hi, ly);
    }
  if (y_hi - y_lo < 1e-9) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }

  const auto x_at = [&](double p) {
    return ml + pw * (p - x_lo) / (x_hi - x_lo);
  };
  const auto y_at = [&](double lr) {
    return mt + ph * (1.0 - (std::log10(lr) - y_lo) / (y_hi - y_lo));
  };
  const auto fmt2 = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  const char* colors[4] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "width=\"720\" height=\"480\" viewBox=\"0 0 720 480\">\n";
  svg += "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt2(ml) + "\" y=\"24\" font-family=\"sans-serif\" "
         "font-size=\"15\">likelihood ratio vs one-sided P-value</text>\n";

  // axes
  svg += "<line x1=\"" + fmt2(ml) + "\" y1=\"" + fmt2(mt + ph) + "\" x2=\"" +
         fmt2(ml + pw) + "\" y2=\"" + fmt2(mt + ph) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt2(ml) + "\" y1=\"" + fmt2(mt) + "\" x2=\"" +
         fmt2(ml) + "\" y2=\"" + fmt2(mt + ph) + "\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double p = x_lo + (x_hi - x_lo) * i / 4;
    const double x = x_at(p);
    svg += "<line x1=\"" + fmt2(x) + "\" y1=\"" + fmt2(mt + ph) + "\" x2=\"" +
           fmt2(x) + "\" y2=\"" + fmt2(mt + ph + 5) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt2(x) + "\" y=\"" + fmt2(mt + ph + 20) +
           "\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"middle\">" +
           format_g(p, 3) + "</text>\n";
  }
  svg += "<text x=\"" + fmt2(ml + pw / 2) + "\" y=\"" + fmt2(height - 12) +
         "\" font-family=\"sans-serif\" font-size=\"13\" "
         "text-anchor=\"middle\">one-sided P-value</text>\n";

  const int k_lo = static_cast<int>(std::ceil(y_lo));
  const int k_hi = static_cast<int>(std::floor(y_hi));
  for (int k = k_lo; k <= k_hi; ++k) {
    const double y = mt + ph * (1.0 - (k - y_lo) / (y_hi - y_lo));
    svg += "<line x1=\"" + fmt2(ml - 5) + "\" y1=\"" + fmt2(y) + "\" x2=\"" +
           fmt2(ml) + "\" y2=\"" + fmt2(y) + "\" stroke=\"black\"/>\n";
    char label[32];
    std::snprintf(label, sizeof label, "1e%d", k);
    svg += "<text x=\"" + fmt2(ml - 8) + "\" y=\"" + fmt2(y + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"end\">" +
           label + "</text>\n";
  }
  svg += "<text x=\"18\" y=\"" + fmt2(mt + ph / 2) +
         "\" font-family=\"sans-serif\" font-size=\"13\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         fmt2(mt + ph / 2) + ")\">likelihood ratio (log scale)</text>\n";

  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += colors[ci % 4];
    svg += "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i) svg += ' ';
      svg += fmt2(x_at(ps[i])) + "," + fmt2(y_at(curves[ci][i]));
    }
    svg += "\"/>\n";
    const double ly = mt + 18 + 22 * static_cast<double>(ci);
    svg += "<line x1=\"" + fmt2(ml + pw + 12) + "\" y1=\"" + fmt2(ly - 4) +
           "\" x2=\"" + fmt2(ml + pw + 34) + "\" y2=\"" + fmt2(ly - 4) +
           "\" stroke=\"" + colors[ci % 4] + "\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + fmt2(ml + pw + 40) + "\" y=\"" + fmt2(ly) +
           "\" font-family=\"sans-serif\" font-size=\"13\">" + labels[ci] +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json_out;
  die_usage("unknown format: " + s + " (expected text, csv or json)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evidential: one-sided P-values as likelihood ratios,"
               " posteriors and sign-error risk"};
  app.require_subcommand(1);

  std::string format_name = "text";
  if (const char* env = std::getenv("EVIDENTIAL_FORMAT")) {
    if (*env != '\0') {
      parse_format(env);  // dies with a usage error if invalid
      format_name = env;
    }
  }
  Output output;
  app.add_option("--format", format_name, "output format: text, csv or json")
      ->capture_default_str();
  app.add_option("--precision", output.precision,
                 "significant digits for numbers")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
  app.add_option("--out", output.out_path, "write output to a file");

  // Option targets are filled in before any subcommand callback fires, so
  // the callbacks grab the fully resolved output settings through this.
  const auto resolved = [&]() {
    Output o = output;
    o.format = parse_format(format_name);
    return o;
  };

  // calibrate ---------------------------------------------------------
  auto* calibrate = app.add_subcommand(
      "calibrate", "convert a one-sided p or a z value into LRs");
  calibrate->fallthrough();
  std::optional<double> cal_p, cal_z;
  double cal_prior = 1.0;
  std::string cal_method = "all";
  auto* opt_p = calibrate->add_option("--p", cal_p, "one-sided p-value");
  auto* opt_z = calibrate->add_option("--z", cal_z, "standardized effect");
  calibrate->add_option("--prior-odds", cal_prior, "prior odds, favored:other");
  calibrate->add_option("--method", cal_method,
                        "marsman|mle|goodman|sellke|all");
  calibrate->callback([&] {
    if ((opt_p->count() > 0) == (opt_z->count() > 0))
      die_usage("give exactly one of --p or --z");
    run_calibrate(cal_p, cal_z, cal_prior, cal_method, resolved());
  });

  // report -------------------------------------------------------------
  auto* report = app.add_subcommand(
      "report", "full evidential report for an estimate with its SE");
  report->fallthrough();
  double rep_theta = 0.0, rep_se = 1.0, rep_delta = 0.0, rep_prior = 1.0;
  std::string rep_favored;
  report->add_option("--theta", rep_theta, "observed effect")->required();
  report->add_option("--se", rep_se, "standard error")->required();
  report->add_option("--delta", rep_delta, "dividing value (default 0)");
  report->add_option("--favored", rep_favored,
                     "favored direction: greater or less");
  report->add_option("--prior-odds", rep_prior, "prior odds on favored");
  report->callback([&] {
    run_report(rep_theta, rep_se, rep_delta, rep_favored, rep_prior,
               resolved());
  });

  // table1 --------------------------------------------------------------
  auto* table1 = app.add_subcommand(
      "table1", "four-calibration comparison table at a given z");
  table1->fallthrough();
  double t1_z = 1.0, t1_prior = 1.0;
  bool t1_paper = false;
  table1->add_option("--z", t1_z, "standardized effect (default 1)");
  table1->add_option("--prior-odds", t1_prior, "prior odds");
  table1->add_flag("--paper-rounding", t1_paper,
                   "evaluate at p rounded to 2 decimals and print "
                   "2-decimal LRs with floored posterior percents");
  table1->callback(
      [&] { run_table1(t1_z, t1_prior, t1_paper, resolved()); });

  // figure1 --------------------------------------------------------------
  auto* figure1 = app.add_subcommand(
      "figure1", "LR-vs-p curves for all four calibrations");
  figure1->fallthrough();
  double f1_min = 0.001, f1_max = 0.5;
  int f1_steps = 500;
  std::string f1_svg;
  figure1->add_option("--p-min", f1_min, "grid start (default 0.001)");
  figure1->add_option("--p-max", f1_max, "grid end (default 0.5)");
  figure1->add_option("--steps", f1_steps, "grid size (default 500)");
  figure1->add_option("--svg", f1_svg, "also write an SVG line plot here");
  figure1->callback(
      [&] { run_figure1(f1_min, f1_max, f1_steps, f1_svg, resolved()); });

  // roc ------------------------------------------------------------------
  auto* roc = app.add_subcommand(
      "roc", "binormal ROC points with secant/tangent LRs and convexity");
  roc->fallthrough();
  double roc_delta = 1.0;
  std::string roc_cutoffs = "-4:4:0.1";
  roc->add_option("--delta", roc_delta, "separation (default 1)");
  roc->add_option("--cutoffs", roc_cutoffs, "grid as lo:hi:step");
  roc->callback([&] { run_roc(roc_delta, roc_cutoffs, resolved()); });

  // poll -------------------------------------------------------------------
  auto* poll = app.add_subcommand(
      "poll", "evidential report for k of n against a dividing share");
  poll->fallthrough();
  std::uint64_t poll_n = 0, poll_k = 0;
  double poll_p0 = 0.5, poll_prior = 1.0;
  poll->add_option("--n", poll_n, "sample size")->required();
  poll->add_option("--k", poll_k, "count in the favored direction")
      ->required();
  poll->add_option("--p0", poll_p0, "dividing share (default 0.5)");
  poll->add_option("--prior-odds", poll_prior, "prior odds");
  poll->callback(
      [&] { run_poll(poll_n, poll_k, poll_p0, poll_prior, resolved()); });

  // simulate ------------------------------------------------------------
  auto* simulate = app.add_subcommand(
      "simulate", "seeded Monte Carlo checks of the frequentist identities");
  simulate->fallthrough();
  std::string sim_mode = "exceedance";
  std::uint64_t sim_seed = 0, sim_n = 1'000'000;
  double sim_theta = 0.0, sim_se = 1.0, sim_cutoff = 0.0, sim_delta = 1.0;
  unsigned sim_workers = 1;
  simulate->add_option("--mode", sim_mode,
                       "exceedance|secant-lr|sign-error (default exceedance)");
  simulate->add_option("--seed", sim_seed, "RNG seed (required)")->required();
  simulate->add_option("--n-sims", sim_n, "number of simulations");
  simulate->add_option("--true-theta", sim_theta, "true effect");
  simulate->add_option("--se", sim_se, "standard error of the estimator");
  simulate->add_option("--cutoff", sim_cutoff, "decision cutoff");
  simulate->add_option("--delta", sim_delta,
                       "separation (secant-lr) or dividing value (sign-error)");
  simulate->add_option("--workers", sim_workers,
                       "thread count; results do not depend on it");
  simulate->callback([&] {
    run_simulate(sim_mode, sim_seed, sim_n, sim_theta, sim_se, sim_cutoff,
                 sim_delta, sim_workers, resolved());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
