// rosette: command-line front end over the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rosette/rosette.h"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitArgument = 3;

struct Failure {
  int code;
  std::string message;
};

void check(rosette_status s) {
  if (s != ROSETTE_OK) throw Failure{static_cast<int>(s), rosette_last_error()};
}

struct Deleter {
  void operator()(rosette_ion* p) const { rosette_ion_destroy(p); }
  void operator()(rosette_trajectory* p) const { rosette_trajectory_destroy(p); }
  void operator()(rosette_catalog* p) const { rosette_catalog_destroy(p); }
  void operator()(rosette_document* p) const { rosette_document_destroy(p); }
};
using Ion = std::unique_ptr<rosette_ion, Deleter>;
using Trajectory = std::unique_ptr<rosette_trajectory, Deleter>;
using Catalog = std::unique_ptr<rosette_catalog, Deleter>;
using Document = std::unique_ptr<rosette_document, Deleter>;

struct Options {
  std::optional<int> z;
  int n_r = 1;
  int n_theta = 1;
  double alpha = rosette_default_alpha();
  double periods = 1.0;
  int samples_per_rev = 4096;
  std::string format;
  std::string out;

  std::vector<int> nr_range{1, 3};
  std::vector<int> ntheta_range{1, 3};
  bool verify = true;

  bool paper_catalog = false;
  std::vector<int> z_list;
  std::string catalog_file;
  bool winding_report = false;

  int z_from = 1;
  int z_to = 136;
  unsigned workers = 0;

  int width = 800;
  int height = 800;
  double margin = 0.05;
  int frames = 0;
  bool no_envelopes = false;
  bool no_intersections = false;
};

rosette_format format_or(const Options& o, rosette_format fallback) {
  if (o.format.empty()) return fallback;
  if (o.format == "csv") return ROSETTE_FORMAT_CSV;
  if (o.format == "json") return ROSETTE_FORMAT_JSON;
  if (o.format == "svg") return ROSETTE_FORMAT_SVG;
  throw Failure{kExitArgument, "unknown --format '" + o.format + "' (csv, json, svg)"};
}

int require_z(const Options& o) {
  if (!o.z) throw Failure{kExitArgument, "--Z is required for this command"};
  return *o.z;
}

Ion make_ion(const Options& o) {
  rosette_ion* ion = nullptr;
  check(rosette_ion_create(require_z(o), o.n_r, o.n_theta, o.alpha, &ion));
  return Ion(ion);
}

Trajectory make_trajectory(const Options& o, const rosette_ion* ion) {
  rosette_trajectory* t = nullptr;
  check(rosette_trajectory_sample(ion, o.periods, o.samples_per_rev, &t));
  return Trajectory(t);
}

void deliver(const rosette_document* doc, const std::string& out) {
  if (out.empty() || out == "-") {
    std::fwrite(rosette_document_data(doc), 1, rosette_document_size(doc), stdout);
    std::fflush(stdout);
    return;
  }
  check(rosette_document_write(doc, out.c_str()));
}

template <typename F>
Document produce(F&& emit) {
  rosette_document* doc = nullptr;
  check(emit(&doc));
  return Document(doc);
}

void run_params(const Options& o) {
  const Ion ion = make_ion(o);
  const Document doc = produce([&](rosette_document** d) { return rosette_emit_params(ion.get(), d); });
  deliver(doc.get(), o.out);
}

void run_levels(const Options& o) {
  const int z = require_z(o);
  const rosette_format f = format_or(o, ROSETTE_FORMAT_CSV);
  const Document doc = produce([&](rosette_document** d) {
    return rosette_emit_levels(z, o.alpha, o.nr_range[0], o.nr_range[1], o.ntheta_range[0],
                               o.ntheta_range[1], f, d);
  });
  deliver(doc.get(), o.out);
}

void run_trace(const Options& o) {
  const Ion ion = make_ion(o);
  const Trajectory t = make_trajectory(o, ion.get());
  const rosette_format f = format_or(o, ROSETTE_FORMAT_CSV);
  const Document doc =
      produce([&](rosette_document** d) { return rosette_emit_trace(t.get(), f, d); });
  deliver(doc.get(), o.out);
}

void run_intersections(const Options& o) {
  if (format_or(o, ROSETTE_FORMAT_JSON) != ROSETTE_FORMAT_JSON)
    throw Failure{kExitArgument, "intersections are written as json only"};
  const Ion ion = make_ion(o);
  const Trajectory t = make_trajectory(o, ion.get());
  const Document doc = produce(
      [&](rosette_document** d) { return rosette_emit_intersections(t.get(), o.verify ? 1 : 0, d); });
  deliver(doc.get(), o.out);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitIo, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void run_table(const Options& o) {
  const int sources = (o.paper_catalog ? 1 : 0) + (o.z_list.empty() ? 0 : 1) +
                      (o.catalog_file.empty() ? 0 : 1);
  if (sources > 1)
    throw Failure{kExitArgument, "choose one of --paper-catalog, --z-list, --catalog"};
  rosette_catalog* raw = nullptr;
  if (!o.z_list.empty()) {
    check(rosette_catalog_from_z_list(o.z_list.data(), o.z_list.size(), &raw));
  } else if (!o.catalog_file.empty()) {
    const std::string text = read_file(o.catalog_file);
    check(rosette_catalog_parse(text.data(), text.size(), &raw));
  } else {
    check(rosette_catalog_paper(&raw));
  }
  const Catalog catalog(raw);
  const rosette_format f = format_or(o, ROSETTE_FORMAT_CSV);
  const Document doc = produce([&](rosette_document** d) {
    return o.winding_report
               ? rosette_emit_winding_report(catalog.get(), o.n_r, o.n_theta, o.alpha, f, d)
               : rosette_emit_table(catalog.get(), o.n_r, o.n_theta, o.alpha, f, d);
  });
  deliver(doc.get(), o.out);
}

void run_scan(const Options& o) {
  const unsigned workers = o.workers ? o.workers : std::max(1u, std::thread::hardware_concurrency());
  const rosette_format f = format_or(o, ROSETTE_FORMAT_JSON);
  const Document doc = produce([&](rosette_document** d) {
    return rosette_emit_scan(o.z_from, o.z_to, o.n_r, o.n_theta, o.alpha, workers, f, d);
  });
  deliver(doc.get(), o.out);
}

void run_render(const Options& o) {
  if (format_or(o, ROSETTE_FORMAT_SVG) != ROSETTE_FORMAT_SVG)
    throw Failure{kExitArgument, "render writes svg only"};
  const Ion ion = make_ion(o);
  const Trajectory t = make_trajectory(o, ion.get());
  rosette_render_spec spec;
  rosette_render_spec_default(&spec);
  spec.width = o.width;
  spec.height = o.height;
  spec.margin_fraction = o.margin;
  spec.show_envelopes = o.no_envelopes ? 0 : 1;
  spec.show_intersections = o.no_intersections ? 0 : 1;

  if (o.frames <= 0) {
    const Document doc =
        produce([&](rosette_document** d) { return rosette_render(t.get(), &spec, 0, 0, d); });
    deliver(doc.get(), o.out);
    return;
  }
  if (o.out.empty() || o.out == "-")
    throw Failure{kExitArgument, "--frames needs --out DIR"};
  std::error_code ec;
  std::filesystem::create_directories(o.out, ec);
  if (ec) throw Failure{kExitIo, "cannot create " + o.out + ": " + ec.message()};
  for (int i = 0; i < o.frames; ++i) {
    const Document frame = produce(
        [&](rosette_document** d) { return rosette_render(t.get(), &spec, i, o.frames, d); });
    char name[64];
    rosette_frame_file_name(i, name, sizeof name);
    deliver(frame.get(), (std::filesystem::path(o.out) / name).string());
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Relativistic Kepler rosettes of hydrogen-like ions"};
  app.set_version_flag("--version", std::string(rosette_version()));
  app.set_config("--config", "", "read `key = value` defaults from a file; flags win");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--Z", o.z, "nuclear charge")->check(CLI::PositiveNumber);
  app.add_option("--nr", o.n_r, "radial quantum number")->capture_default_str();
  app.add_option("--ntheta", o.n_theta, "azimuthal quantum number")->capture_default_str();
  app.add_option("--alpha", o.alpha, "fine-structure constant")->capture_default_str();
  app.add_option("--periods", o.periods, "window length in radial periods")->capture_default_str();
  app.add_option("--samples-per-rev", o.samples_per_rev, "polyline samples per revolution")
      ->capture_default_str();
  app.add_option("--format", o.format, "csv, json or svg (default depends on command)");
  app.add_option("--out", o.out, "output file (directory for --frames); stdout if omitted");

  auto* params = app.add_subcommand("params", "orbit parameters of one ion (json)");
  auto* levels = app.add_subcommand("levels", "energy_ratio over a grid of quantum numbers");
  levels->add_option("--nr-range", o.nr_range, "LO HI")->expected(2)->capture_default_str();
  levels->add_option("--ntheta-range", o.ntheta_range, "LO HI")->expected(2)->capture_default_str();
  auto* trace = app.add_subcommand("trace", "sampled trajectory (csv)");
  auto* inter = app.add_subcommand("intersections", "self-intersections with oracle check (json)");
  inter->add_flag("!--no-verify", o.verify, "skip the polyline oracle");
  auto* table = app.add_subcommand("table", "orbit parameter table (csv or json)");
  table->add_flag("--paper-catalog", o.paper_catalog, "the embedded published catalog (default)");
  table->add_option("--z-list", o.z_list, "comma-separated Z values")->delimiter(',');
  table->add_option("--catalog", o.catalog_file, "catalog file in the rosette-catalog format");
  table->add_flag("--winding-report", o.winding_report,
                  "published winding labels next to computed loop counts");
  auto* scan = app.add_subcommand("scan", "sweep Z and locate critical charges (json)");
  scan->add_option("--z-from", o.z_from)->capture_default_str();
  scan->add_option("--z-to", o.z_to)->capture_default_str();
  scan->add_option("--workers", o.workers, "threads; 0 = all cores")->capture_default_str();
  auto* render = app.add_subcommand("render", "svg figure or frame sequence");
  render->add_option("--width", o.width)->capture_default_str();
  render->add_option("--height", o.height)->capture_default_str();
  render->add_option("--margin", o.margin, "margin fraction")->capture_default_str();
  render->add_option("--frames", o.frames, "write N frames frame_0000.svg ... into --out");
  render->add_flag("--no-envelopes", o.no_envelopes);
  render->add_flag("--no-intersections", o.no_intersections);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitArgument;
  }

  try {
    if (*params) run_params(o);
    else if (*levels) run_levels(o);
    else if (*trace) run_trace(o);
    else if (*inter) run_intersections(o);
    else if (*table) run_table(o);
    else if (*scan) run_scan(o);
    else if (*render) run_render(o);
  } catch (const Failure& f) {
    std::cerr << "rosette: " << f.message << "\n";
    return f.code;
  }
  return 0;
}
