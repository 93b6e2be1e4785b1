#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rosette/catalog.hpp"
#include "rosette/emit.hpp"
#include "rosette/errors.hpp"

using namespace rosette;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Figure {
  OrbitParams params;
  Trajectory trajectory;
  std::vector<SelfIntersection> crossings;
};

Figure figure(int z, double periods = 1.0, double alpha = kCodata2018Alpha) {
  const OrbitParams p = orbit_params(make_ion(z, {}, PhysicalConstants::with_alpha(alpha)));
  const double end = periods * p.radial_period();
  return {p, sample(p, 0.0, end), enumerate_intersections(p, 0.0, end)};
}

DocumentMeta meta_for(int z) { return {kCodata2018Alpha, {}, z}; }

const char* kTableHeader =
    "z,symbol,omega,epsilon,a_over_a0,r_min,r_max,delta_theta,revolutions_per_period,"
    "crossings_per_period,loops_per_period,paper_winding,match_flags";

}  // namespace

TEST_CASE("nine significant digits") {
  CHECK(format_number(0.508456625145) == "0.508456625");
  CHECK(format_number(118.67665643946162) == "118.676656");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(4.0) == "4");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("published table csv") {
  const ElementTable t = element_table(paper_catalog());
  const OutputDocument d = emit_table(t, Format::csv, {});
  const auto ls = lines(d.payload);
  REQUIRE(ls.size() == 8);
  CHECK(ls[0] == kTableHeader);
  CHECK(ls[1].rfind("92,U,0.741135,0.904882,0.0353163,0.003359209,0.067273472,2.19461,", 0) == 0);
  CHECK(ls[3].rfind("118,Og,0.508457,0.941479,0.0222041,0.0012994,0.0431087,6.07418,", 0) == 0);
  CHECK(ls[7].rfind("135,Utp,0.171738,", 0) == 0);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    CHECK(count(ls[i], "=ok") == 6);
    CHECK(count(ls[i], "MISMATCH") == 0);
  }
  CHECK(d.payload.back() == '\n');
  CHECK(d.payload.find('\r') == std::string::npos);
}

TEST_CASE("published table csv matches the golden file") {
  const ElementTable t = element_table(paper_catalog());
  const std::string golden = read(std::filesystem::path(ROSETTE_TEST_DATA) / "paper_table.csv");
  CHECK(emit_table(t, Format::csv, {}).payload == golden);
}

TEST_CASE("table json mirrors the csv keys") {
  const ElementTable t = element_table(paper_catalog());
  const auto j = nlohmann::ordered_json::parse(emit_table(t, Format::json, {}).payload);
  REQUIRE(j["rows"].size() == 7);
  std::string keys;
  for (const auto& [k, v] : j["rows"][0].items()) keys += (keys.empty() ? "" : ",") + k;
  CHECK(keys == kTableHeader);
  CHECK(j["rows"][0]["omega"].get<double>() == 0.741135);
  CHECK(j["rows"][0]["paper_winding"] == 1);
  CHECK(j["metadata"]["tool_version"] == kToolVersion);
}

TEST_CASE("fixture-free row and empty table") {
  const ElementTable h = element_table(std::vector<ElementRecord>{element_for(1)});
  const auto ls = lines(emit_table(h, Format::csv, {}).payload);
  REQUIRE(ls.size() == 2);
  CHECK(ls[1].rfind("1,H,0.999973374,", 0) == 0);
  CHECK(ls[1].size() >= 2);
  CHECK(ls[1].substr(ls[1].size() - 2) == ",,");  // paper_winding, match_flags empty
  CHECK_THROWS_AS(emit_table(ElementTable{}, Format::csv, {}), ArgumentError);
  CHECK_THROWS_AS(emit_table(h, Format::svg, {}), ArgumentError);
}

TEST_CASE("scan json") {
  const auto j = nlohmann::ordered_json::parse(emit_scan(critical_z_scan(1, 136), Format::json, {}).payload);
  CHECK(j["rows"].size() == 136);
  CHECK(j["critical_charges"][0]["n"] == 2);
  CHECK(j["critical_charges"][0]["first_integer_z"] == 119);
  CHECK(j["critical_charges"][0]["z_critical_real"].get<double>() == 118.676656);
  const auto csv = lines(emit_scan(critical_z_scan(1, 3), Format::csv, {}).payload);
  CHECK(csv[0] ==
        "z,omega,epsilon,a,r_min,r_max,delta_theta,revolutions,crossings_per_period,loops_per_period");
  CHECK(csv.size() == 4);
}

TEST_CASE("params and intersections documents") {
  const OrbitParams p = orbit_params(make_ion(118));
  const auto j = nlohmann::ordered_json::parse(
      emit_params(element_for(118), p, validate(make_ion(118)), meta_for(118)).payload);
  CHECK(j["omega"].get<double>() == 0.508456625);
  CHECK(j["validity"] == "valid");
  CHECK(j["metadata"]["z"] == 118);

  const Figure f = figure(118);
  const auto oracle = oracle_intersections(f.trajectory);
  const auto agreement = compare_with_oracle(f.params, f.crossings, oracle);
  const auto ji = nlohmann::ordered_json::parse(
      emit_intersections(f.trajectory, f.crossings, agreement, meta_for(118)).payload);
  REQUIRE(ji["intersections"].size() == 1);
  CHECK(ji["intersections"][0]["k"] == 1);
  CHECK(ji["oracle"]["counts_match"] == true);
}

TEST_CASE("levels and trace") {
  const auto levels = energy_levels(92, {0, 2}, {1, 2}, {});
  CHECK(levels.size() == 6);
  const auto ls = lines(emit_levels(levels, Format::csv, meta_for(92)).payload);
  CHECK(ls[0] == "n_r,n_theta,energy_ratio,status");
  CHECK(ls[3] == "1,1,0.933041968,valid");
  const auto super = energy_levels(140, {1, 1}, {1, 2}, {});
  CHECK(!super[0].energy_ratio.has_value());
  CHECK(super[0].status == Validity::supercritical);
  CHECK(super[1].energy_ratio.has_value());
  CHECK_THROWS_AS(energy_levels(1, {2, 1}, {1, 1}, {}), ArgumentError);

  const Figure f = figure(92);
  const auto tl = lines(emit_trace(f.trajectory, Format::csv, meta_for(92)).payload);
  CHECK(tl[0] == "theta,r,x,y");
  CHECK(tl.size() == f.trajectory.size() + 1);
}

TEST_CASE("Og figure") {
  const Figure f = figure(118);
  const RenderSpec spec;
  const std::string svg = render_svg(f.trajectory, f.crossings, spec, meta_for(118)).payload;
  CHECK(count(svg, "<path") == 1);
  CHECK(count(svg, "class=\"envelope\"") == 2);
  CHECK(count(svg, "stroke-dasharray") == 2);
  CHECK(count(svg, "class=\"nucleus\"") == 1);
  CHECK(count(svg, "class=\"crossing\"") == 1);
  CHECK(svg.find("viewBox=\"-400 -400 800 800\"") != std::string::npos);

  RenderSpec bare;
  bare.show_envelopes = false;
  bare.show_intersections = false;
  const std::string plain = render_svg(f.trajectory, f.crossings, bare, meta_for(118)).payload;
  CHECK(count(plain, "class=\"envelope\"") == 0);
  CHECK(count(plain, "class=\"crossing\"") == 0);
}

TEST_CASE("non-relativistic figure is closed and unmarked") {
  const Figure f = figure(1, 1.0, 0.0);
  const std::string svg = render_svg(f.trajectory, f.crossings, {}, meta_for(1)).payload;
  CHECK(count(svg, "class=\"crossing\"") == 0);
  CHECK(svg.find(" Z\"") != std::string::npos);
}

TEST_CASE("every path point lies inside the margins") {
  for (int z : {1, 92, 118, 135}) {
    CAPTURE(z);
    const Figure f = figure(z, 3.0);
    RenderSpec spec;
    spec.width = 640;
    spec.height = 480;
    const std::string svg = render_svg(f.trajectory, f.crossings, spec, meta_for(z)).payload;
    const auto d0 = svg.find(" d=\"") + 4;
    const std::string d = svg.substr(d0, svg.find('"', d0) - d0);
    const std::regex pt(R"([ML](-?[0-9.e+-]+) (-?[0-9.e+-]+))");
    const double hx = spec.width / 2.0 * (1 - 2 * spec.margin_fraction);
    const double hy = spec.height / 2.0 * (1 - 2 * spec.margin_fraction);
    std::size_t n = 0;
    for (auto it = std::sregex_iterator(d.begin(), d.end(), pt); it != std::sregex_iterator(); ++it) {
      const double x = std::stod((*it)[1]);
      const double y = std::stod((*it)[2]);
      CHECK(std::abs(x) <= hx);
      CHECK(std::abs(y) <= hy);
      ++n;
    }
    CHECK(n == f.trajectory.size());
  }
}

TEST_CASE("frames truncate and end at the static figure") {
  const Figure f = figure(122, 2.0);
  RenderSpec spec;
  spec.frames = 10;
  const DocumentMeta meta = meta_for(122);
  const std::string still = render_svg(f.trajectory, f.crossings, spec, meta).payload;
  std::size_t prev_len = 0;
  std::size_t prev_marks = 0;
  for (int i = 0; i < 10; ++i) {
    const std::string frame = render_frame(f.trajectory, f.crossings, spec, meta, i, 10).payload;
    CHECK(frame.size() > prev_len);
    CHECK(count(frame, "class=\"crossing\"") >= prev_marks);
    prev_len = frame.size();
    prev_marks = count(frame, "class=\"crossing\"");
    if (i == 9) CHECK(frame == still);
  }
  CHECK(prev_marks == 8);
  CHECK(count(render_frame(f.trajectory, f.crossings, spec, meta, 0, 10).payload,
              "class=\"crossing\"") == 0);
  CHECK_THROWS_AS(render_frame(f.trajectory, f.crossings, spec, meta, 10, 10), ArgumentError);
  CHECK(frame_file_name(7) == "frame_0007.svg");
}

TEST_CASE("render arguments") {
  const Figure f = figure(92);
  RenderSpec bad;
  bad.width = 0;
  CHECK_THROWS_AS(render_svg(f.trajectory, f.crossings, bad, {}), ArgumentError);
  RenderSpec margin;
  margin.margin_fraction = 0.5;
  CHECK_THROWS_AS(render_svg(f.trajectory, f.crossings, margin, {}), ArgumentError);
  CHECK(RenderSpec{}.scale(1.0) > 0.0);
}

TEST_CASE("identical inputs give identical payloads") {
  const ElementTable t = element_table(paper_catalog());
  CHECK(emit_table(t, Format::json, {}).payload == emit_table(t, Format::json, {}).payload);
  const Figure f = figure(135);
  CHECK(render_svg(f.trajectory, f.crossings, {}, meta_for(135)).payload ==
        render_svg(figure(135).trajectory, f.crossings, {}, meta_for(135)).payload);
}

TEST_CASE("atomic writes") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "rosette_emit_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path target = dir / "out.txt";
  write_file_atomic(target, "first\n");
  write_file_atomic(target, "second\n");
  CHECK(read(target) == "second\n");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  CHECK_THROWS(write_file_atomic(dir / "missing" / "x.txt", "x"));
  fs::remove_all(dir);
}

TEST_CASE("format names") {
  CHECK(parse_format("csv") == Format::csv);
  CHECK(std::string(to_string(Format::svg)) == "svg");
  CHECK_THROWS_AS(parse_format("xml"), ArgumentError);
}
