#include "rosette/emit.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

#include "rosette/errors.hpp"

namespace rosette {

namespace {

using Json = nlohmann::ordered_json;

// The value as a JSON number, rounded to the same nine digits as the text
// forms. Non-finite values become null.
Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  const std::string text = format_number(v);
  double rounded = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), rounded);
  return rounded;
}

Json meta_json(const DocumentMeta& meta) {
  Json j = Json::object();
  j["tool_version"] = kToolVersion;
  j["alpha"] = number(meta.alpha);
  j["n_r"] = meta.state.n_r;
  j["n_theta"] = meta.state.n_theta;
  if (meta.z) j["z"] = *meta.z;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

OutputDocument document(Format f, std::string payload, const DocumentMeta& meta) {
  return {f, std::move(payload), meta.entries()};
}

void require(Format f, std::initializer_list<Format> allowed, const char* what) {
  if (std::find(allowed.begin(), allowed.end(), f) == allowed.end())
    throw ArgumentError(std::string(what) + " cannot be written as " + to_string(f));
}

// RFC 4180 quoting for the few free-text fields.
std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_row(std::initializer_list<std::string> fields) {
  std::string line;
  bool first = true;
  for (const std::string& f : fields) {
    if (!first) line += ',';
    line += f;
    first = false;
  }
  return line + "\n";
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

double table_value(const OrbitParams& p, std::string_view q) {
  if (q == "omega") return p.omega;
  if (q == "epsilon") return p.epsilon;
  if (q == "a_over_a0") return p.a / PhysicalConstants::bohr_radius;
  if (q == "r_min") return p.r_min;
  if (q == "r_max") return p.r_max;
  return p.delta_theta;
}

// Printed-precision text when the cell was published, nine digits otherwise.
std::string table_cell(const TableRow& row, std::string_view q) {
  for (const CellComparison& c : row.comparisons)
    if (c.quantity == q) return c.computed;
  return format_number(table_value(*row.params, q));
}

std::string match_flags(const TableRow& row) {
  if (!row.ok()) return "domain_error";
  std::string flags;
  for (const CellComparison& c : row.comparisons) {
    if (!flags.empty()) flags += ';';
    flags += c.quantity + (c.match ? "=ok" : "=MISMATCH");
  }
  return flags;
}

Json cell_number(const std::string& text) {
  double v = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), v);
  return v;
}

// --- SVG ---------------------------------------------------------------

struct Canvas {
  double scale;
  std::string px(double v) const { return format_number(v * scale); }
  // SVG y grows downward.
  std::string py(double v) const { return format_number(-v * scale); }
};

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string svg_body(const Trajectory& t, std::span<const SelfIntersection> intersections,
                     const RenderSpec& spec, const DocumentMeta& meta, double r_max) {
  const Canvas cv{spec.scale(r_max)};
  const double w = spec.width;
  const double h = spec.height;
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
       std::to_string(spec.width) + "\" height=\"" + std::to_string(spec.height) +
       "\" viewBox=\"" + format_number(-w / 2) + " " + format_number(-h / 2) + " " +
       format_number(w) + " " + format_number(h) + "\">\n";
  s += "<metadata>";
  for (const auto& [k, v] : meta.entries()) s += k + "=" + escape_xml(v) + ";";
  s += "caption_direction=" + escape_xml(spec.caption_direction) + "</metadata>\n";
  s += "<rect x=\"" + format_number(-w / 2) + "\" y=\"" + format_number(-h / 2) +
       "\" width=\"" + format_number(w) + "\" height=\"" + format_number(h) +
       "\" fill=\"white\"/>\n";

  const OrbitParams& p = t.params();
  if (spec.show_envelopes) {
    for (double r : {p.r_min, p.r_max})
      s += "<circle class=\"envelope\" cx=\"0\" cy=\"0\" r=\"" + cv.px(r) +
           "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
  }

  const auto samples = t.samples();
  s += "<path class=\"orbit\" fill=\"none\" stroke=\"#1f4e9a\" stroke-width=\"1\" d=\"";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    s += i == 0 ? "M" : " L";
    s += cv.px(samples[i].x) + " " + cv.py(samples[i].y);
  }
  const auto& first = samples.front();
  const auto& last = samples.back();
  if (samples.size() > 2 && std::hypot(last.x - first.x, last.y - first.y) < 1e-12 * p.a) s += " Z";
  s += "\"/>\n";

  s += "<circle class=\"nucleus\" cx=\"0\" cy=\"0\" r=\"3\" fill=\"black\"/>\n";

  if (spec.show_intersections) {
    constexpr double arm = 4.0;
    for (const SelfIntersection& x : intersections) {
      if (!x.transversal || x.theta1 < t.theta_start() || x.theta2 > t.theta_end()) continue;
      const double cx = x.position.x * cv.scale;
      const double cy = -x.position.y * cv.scale;
      s += "<g class=\"crossing\" stroke=\"#c0392b\" stroke-width=\"1.5\">";
      s += "<line x1=\"" + format_number(cx - arm) + "\" y1=\"" + format_number(cy - arm) +
           "\" x2=\"" + format_number(cx + arm) + "\" y2=\"" + format_number(cy + arm) + "\"/>";
      s += "<line x1=\"" + format_number(cx - arm) + "\" y1=\"" + format_number(cy + arm) +
           "\" x2=\"" + format_number(cx + arm) + "\" y2=\"" + format_number(cy - arm) + "\"/>";
      s += "</g>\n";
    }
  }
  s += "</svg>\n";
  return s;
}

void check_spec(const RenderSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0) throw ArgumentError("render size must be positive");
  if (!(spec.margin_fraction >= 0.0 && spec.margin_fraction < 0.5))
    throw ArgumentError("margin fraction must lie in [0, 0.5)");
  if (spec.frames && *spec.frames < 1) throw ArgumentError("frame count must be positive");
}

}  // namespace

const char* to_string(Format f) noexcept {
  switch (f) {
    case Format::csv: return "csv";
    case Format::json: return "json";
    case Format::svg: return "svg";
  }
  return "?";
}

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  if (name == "svg") return Format::svg;
  throw ArgumentError("unknown format '" + std::string(name) + "' (csv, json, svg)");
}

std::vector<std::pair<std::string, std::string>> DocumentMeta::entries() const {
  std::vector<std::pair<std::string, std::string>> out = {
      {"tool_version", kToolVersion},
      {"alpha", format_number(alpha)},
      {"n_r", std::to_string(state.n_r)},
      {"n_theta", std::to_string(state.n_theta)}};
  if (z) out.emplace_back("z", std::to_string(*z));
  return out;
}

std::string format_number(double value) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  if (value == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 9);
  return std::string(buf, ptr);
}

OutputDocument emit_params(const ElementRecord& element, const OrbitParams& params,
                           const ValidityReport& validity, const DocumentMeta& meta) {
  Json j;
  j["metadata"] = meta_json(meta);
  j["z"] = element.z;
  j["symbol"] = element.symbol;
  j["name"] = element.name;
  j["ion_label"] = element.ion_label;
  j["validity"] = to_string(validity.status);
  j["omega"] = number(params.omega);
  j["energy_ratio"] = number(params.energy_ratio);
  j["epsilon"] = number(params.epsilon);
  j["a"] = number(params.a);
  j["r_min"] = number(params.r_min);
  j["r_max"] = number(params.r_max);
  j["delta_theta"] = number(params.delta_theta);
  j["revolutions_per_period"] = number(params.revolutions_per_period);
  j["radial_period"] = number(params.radial_period());
  return document(Format::json, dump(j), meta);
}

std::vector<LevelEntry> energy_levels(int z, std::pair<int, int> n_r_range,
                                      std::pair<int, int> n_theta_range,
                                      PhysicalConstants constants) {
  if (n_r_range.first > n_r_range.second || n_theta_range.first > n_theta_range.second)
    throw ArgumentError("level ranges must be non-empty (lo <= hi)");
  const auto cells = (static_cast<long long>(n_r_range.second) - n_r_range.first + 1) *
                     (static_cast<long long>(n_theta_range.second) - n_theta_range.first + 1);
  if (cells > 1'000'000) throw ResourceError("level grid exceeds 1e6 cells");
  std::vector<LevelEntry> out;
  for (int nr = n_r_range.first; nr <= n_r_range.second; ++nr) {
    for (int nt = n_theta_range.first; nt <= n_theta_range.second; ++nt) {
      const IonSpec ion = make_ion(z, {nr, nt}, constants);
      LevelEntry e{nr, nt, std::nullopt, validate(ion).status};
      if (e.status != Validity::supercritical) e.energy_ratio = energy_ratio(ion);
      out.push_back(e);
    }
  }
  return out;
}

OutputDocument emit_levels(std::span<const LevelEntry> levels, Format format,
                           const DocumentMeta& meta) {
  require(format, {Format::csv, Format::json}, "levels");
  if (format == Format::csv) {
    std::string s = "n_r,n_theta,energy_ratio,status\n";
    for (const LevelEntry& e : levels)
      s += csv_row({std::to_string(e.n_r), std::to_string(e.n_theta),
                    e.energy_ratio ? format_number(*e.energy_ratio) : "", to_string(e.status)});
    return document(format, s, meta);
  }
  Json j;
  j["metadata"] = meta_json(meta);
  Json rows = Json::array();
  for (const LevelEntry& e : levels) {
    Json r;
    r["n_r"] = e.n_r;
    r["n_theta"] = e.n_theta;
    r["energy_ratio"] = e.energy_ratio ? number(*e.energy_ratio) : Json(nullptr);
    r["status"] = to_string(e.status);
    rows.push_back(std::move(r));
  }
  j["levels"] = std::move(rows);
  return document(format, dump(j), meta);
}

OutputDocument emit_trace(const Trajectory& trajectory, Format format, const DocumentMeta& meta) {
  require(format, {Format::csv, Format::json}, "trace");
  if (format == Format::csv) {
    std::string s = "theta,r,x,y\n";
    s.reserve(trajectory.size() * 48);
    for (const TrajectorySample& p : trajectory.samples())
      s += csv_row({format_number(p.theta), format_number(p.r), format_number(p.x),
                    format_number(p.y)});
    return document(format, s, meta);
  }
  Json j;
  j["metadata"] = meta_json(meta);
  j["theta_start"] = number(trajectory.theta_start());
  j["theta_end"] = number(trajectory.theta_end());
  j["samples_per_revolution"] = trajectory.samples_per_revolution();
  Json pts = Json::array();
  for (const TrajectorySample& p : trajectory.samples())
    pts.push_back(Json::array({number(p.theta), number(p.r), number(p.x), number(p.y)}));
  j["columns"] = Json::array({"theta", "r", "x", "y"});
  j["samples"] = std::move(pts);
  return document(format, dump(j), meta);
}

OutputDocument emit_intersections(const Trajectory& trajectory,
                                  std::span<const SelfIntersection> intersections,
                                  const std::optional<OracleAgreement>& oracle,
                                  const DocumentMeta& meta) {
  const OrbitParams& p = trajectory.params();
  Json j;
  j["metadata"] = meta_json(meta);
  j["theta_start"] = number(trajectory.theta_start());
  j["theta_end"] = number(trajectory.theta_end());
  Json list = Json::array();
  for (const SelfIntersection& x : intersections) {
    Json r;
    r["k"] = x.k;
    r["m"] = x.m;
    r["theta1"] = number(x.theta1);
    r["theta2"] = number(x.theta2);
    r["x"] = number(x.position.x);
    r["y"] = number(x.position.y);
    r["radius"] = number(x.radius);
    r["transversal"] = x.transversal;
    r["midpoint_residual"] = number(midpoint_identity_check(x, p));
    list.push_back(std::move(r));
  }
  j["intersections"] = std::move(list);
  if (oracle) {
    Json o;
    o["samples_per_revolution"] = trajectory.samples_per_revolution();
    o["closed_form_count"] = oracle->closed_form_count;
    o["oracle_count"] = oracle->oracle_count;
    o["counts_match"] = oracle->counts_match;
    o["max_theta_error"] = number(oracle->max_theta_error);
    o["max_position_error_over_a"] = number(oracle->max_position_error);
    j["oracle"] = std::move(o);
  }
  return document(Format::json, dump(j), meta);
}

OutputDocument emit_table(const ElementTable& table, Format format, const DocumentMeta& meta) {
  require(format, {Format::csv, Format::json}, "table");
  if (table.rows.empty()) throw ArgumentError("table has no rows");

  if (format == Format::csv) {
    std::string s =
        "z,symbol,omega,epsilon,a_over_a0,r_min,r_max,delta_theta,revolutions_per_period,"
        "crossings_per_period,loops_per_period,paper_winding,match_flags\n";
    for (const TableRow& row : table.rows) {
      const auto winding = row.element.published_winding();
      std::vector<std::string> f{std::to_string(row.element.z), csv_field(row.element.symbol)};
      for (std::string_view q : kTableQuantities) f.push_back(row.ok() ? table_cell(row, q) : "");
      if (row.ok()) {
        f.push_back(format_number(row.topology->revolutions_per_period));
        f.push_back(std::to_string(row.topology->crossings_per_period));
        f.push_back(std::to_string(row.topology->loops_per_period));
      } else {
        f.insert(f.end(), {"", "", ""});
      }
      f.push_back(winding ? std::to_string(*winding) : "");
      f.push_back(csv_field(match_flags(row)));
      for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + f[i];
      s += "\n";
    }
    return document(format, s, meta);
  }

  Json j;
  j["metadata"] = meta_json(meta);
  Json rows = Json::array();
  for (const TableRow& row : table.rows) {
    const auto winding = row.element.published_winding();
    Json r;
    r["z"] = row.element.z;
    r["symbol"] = row.element.symbol;
    for (std::string_view q : kTableQuantities)
      r[std::string(q)] = row.ok() ? cell_number(table_cell(row, q)) : Json(nullptr);
    r["revolutions_per_period"] =
        row.ok() ? number(row.topology->revolutions_per_period) : Json(nullptr);
    r["crossings_per_period"] = row.ok() ? Json(row.topology->crossings_per_period) : Json(nullptr);
    r["loops_per_period"] = row.ok() ? Json(row.topology->loops_per_period) : Json(nullptr);
    r["paper_winding"] = winding ? Json(*winding) : Json(nullptr);
    r["match_flags"] = match_flags(row);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return document(format, dump(j), meta);
}

OutputDocument emit_winding_report(std::span<const WindingComparison> report, Format format,
                                   const DocumentMeta& meta) {
  require(format, {Format::csv, Format::json}, "winding report");
  if (format == Format::csv) {
    std::string s =
        "z,symbol,paper_winding,revolutions_per_period,loops_per_period,rounded_revolutions,"
        "floor_plus_one,loops_match\n";
    for (const WindingComparison& w : report)
      s += csv_row({std::to_string(w.z), csv_field(w.symbol), std::to_string(w.published),
                    format_number(w.revolutions_per_period), std::to_string(w.loops_per_period),
                    std::to_string(w.rounded_revolutions), std::to_string(w.floor_plus_one),
                    bool_text(w.loops_match)});
    return document(format, s, meta);
  }
  Json j;
  j["metadata"] = meta_json(meta);
  Json rows = Json::array();
  for (const WindingComparison& w : report) {
    Json r;
    r["z"] = w.z;
    r["symbol"] = w.symbol;
    r["paper_winding"] = w.published;
    r["revolutions_per_period"] = number(w.revolutions_per_period);
    r["loops_per_period"] = w.loops_per_period;
    r["rounded_revolutions"] = w.rounded_revolutions;
    r["floor_plus_one"] = w.floor_plus_one;
    r["loops_match"] = w.loops_match;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return document(format, dump(j), meta);
}

OutputDocument emit_scan(const ScanResult& scan, Format format, const DocumentMeta& meta) {
  require(format, {Format::csv, Format::json}, "scan");
  if (format == Format::csv) {
    std::string s =
        "z,omega,epsilon,a,r_min,r_max,delta_theta,revolutions,crossings_per_period,"
        "loops_per_period\n";
    for (const ScanRow& r : scan.rows)
      s += csv_row({std::to_string(r.z), format_number(r.params.omega),
                    format_number(r.params.epsilon), format_number(r.params.a),
                    format_number(r.params.r_min), format_number(r.params.r_max),
                    format_number(r.params.delta_theta),
                    format_number(r.params.revolutions_per_period),
                    std::to_string(r.crossings_per_period), std::to_string(r.loops_per_period)});
    return document(format, s, meta);
  }
  Json j;
  j["metadata"] = meta_json(meta);
  Json rows = Json::array();
  for (const ScanRow& r : scan.rows) {
    Json o;
    o["z"] = r.z;
    o["omega"] = number(r.params.omega);
    o["epsilon"] = number(r.params.epsilon);
    o["a"] = number(r.params.a);
    o["r_min"] = number(r.params.r_min);
    o["r_max"] = number(r.params.r_max);
    o["delta_theta"] = number(r.params.delta_theta);
    o["revolutions"] = number(r.params.revolutions_per_period);
    o["crossings_per_period"] = r.crossings_per_period;
    o["loops_per_period"] = r.loops_per_period;
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  Json crit = Json::array();
  for (const CriticalCharge& c : scan.critical_charges) {
    Json o;
    o["n"] = c.n;
    o["z_critical_real"] = number(c.z_critical);
    o["first_integer_z"] = c.first_integer_z;
    crit.push_back(std::move(o));
  }
  j["critical_charges"] = std::move(crit);
  return document(format, dump(j), meta);
}

double RenderSpec::scale(double r_max) const {
  if (!(r_max > 0.0)) throw ArgumentError("r_max must be positive to scale a figure");
  return std::min(width, height) * (1.0 - 2.0 * margin_fraction) / (2.2 * r_max);
}

OutputDocument render_svg(const Trajectory& trajectory,
                          std::span<const SelfIntersection> intersections, const RenderSpec& spec,
                          const DocumentMeta& meta) {
  check_spec(spec);
  if (trajectory.size() == 0) throw ArgumentError("cannot render an empty trajectory");
  return document(Format::svg,
                  svg_body(trajectory, intersections, spec, meta, trajectory.params().r_max), meta);
}

OutputDocument render_frame(const Trajectory& trajectory,
                            std::span<const SelfIntersection> intersections,
                            const RenderSpec& spec, const DocumentMeta& meta, int index,
                            int count) {
  if (count < 1 || index < 0 || index >= count) throw ArgumentError("frame index out of range");
  if (index == count - 1) return render_svg(trajectory, intersections, spec, meta);
  const double t0 = trajectory.theta_start();
  const double cut = t0 + (trajectory.theta_end() - t0) * (index + 1) / count;
  return render_svg(trajectory.truncated(cut), intersections, spec, meta);
}

std::string frame_file_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%04d.svg", index);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view payload) {
  namespace fs = std::filesystem;
  std::random_device rd;
  const fs::path tmp = path.parent_path() /
                       (path.filename().string() + ".tmp" + std::to_string(rd() % 1000000));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignore;
      fs::remove(tmp, ignore);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace rosette
