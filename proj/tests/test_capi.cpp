#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "rosette/rosette.h"

TEST_CASE("ion lifecycle and parameters") {
  rosette_ion* ion = nullptr;
  REQUIRE(rosette_ion_create(118, 1, 1, rosette_default_alpha(), &ion) == ROSETTE_OK);
  rosette_orbit_params p{};
  REQUIRE(rosette_ion_orbit_params(ion, &p) == ROSETTE_OK);
  CHECK(p.omega == doctest::Approx(0.50845662514535152).epsilon(1e-13));
  CHECK(p.radial_period == doctest::Approx(2 * 3.141592653589793 / p.omega));
  rosette_validity v = ROSETTE_MALFORMED;
  CHECK(rosette_ion_validate(ion, &v) == ROSETTE_OK);
  CHECK(v == ROSETTE_VALID);
  rosette_ion_destroy(ion);
}

TEST_CASE("status codes") {
  rosette_ion* ion = nullptr;
  CHECK(rosette_ion_create(0, 1, 1, rosette_default_alpha(), &ion) == ROSETTE_ERR_ARGUMENT);
  CHECK(ion == nullptr);
  CHECK(std::strlen(rosette_last_error()) > 0);
  CHECK(rosette_ion_create(1, 1, 1, 1.5, &ion) == ROSETTE_ERR_ARGUMENT);

  REQUIRE(rosette_ion_create(138, 1, 1, rosette_default_alpha(), &ion) == ROSETTE_OK);
  rosette_orbit_params p{};
  CHECK(rosette_ion_orbit_params(ion, &p) == ROSETTE_ERR_DOMAIN);
  CHECK(std::string(rosette_last_error()).find("supercritical") != std::string::npos);
  rosette_validity v = ROSETTE_VALID;
  CHECK(rosette_ion_validate(ion, &v) == ROSETTE_OK);
  CHECK(v == ROSETTE_SUPERCRITICAL);
  rosette_ion_destroy(ion);

  REQUIRE(rosette_ion_create(92, 1, 1, rosette_default_alpha(), &ion) == ROSETTE_OK);
  rosette_trajectory* t = nullptr;
  CHECK(rosette_trajectory_sample(ion, 2e6, 4096, &t) == ROSETTE_ERR_RESOURCE);
  CHECK(rosette_trajectory_sample(ion, 1.0, 10, &t) == ROSETTE_ERR_ARGUMENT);
  CHECK(rosette_trajectory_sample(ion, -1.0, 4096, &t) == ROSETTE_ERR_ARGUMENT);
  CHECK(t == nullptr);
  CHECK(rosette_ion_orbit_params(nullptr, &p) == ROSETTE_ERR_ARGUMENT);
  rosette_ion_destroy(ion);
}

TEST_CASE("two-call intersection enumeration") {
  rosette_ion* ion = nullptr;
  REQUIRE(rosette_ion_create(122, 1, 1, rosette_default_alpha(), &ion) == ROSETTE_OK);
  rosette_orbit_params p{};
  REQUIRE(rosette_ion_orbit_params(ion, &p) == ROSETTE_OK);
  size_t n = 0;
  REQUIRE(rosette_enumerate_intersections(ion, 0.0, 2 * p.radial_period, nullptr, 0, &n) ==
          ROSETTE_OK);
  CHECK(n >= 4);
  std::vector<rosette_intersection> buf(n);
  size_t again = 0;
  REQUIRE(rosette_enumerate_intersections(ion, 0.0, 2 * p.radial_period, buf.data(), buf.size(),
                                          &again) == ROSETTE_OK);
  CHECK(again == n);
  bool found = false;
  for (const auto& x : buf)
    if (x.k == 1 && x.m == 2) found = std::abs(x.theta1 - 0.61505526461545832) < 1e-12;
  CHECK(found);
  rosette_ion_destroy(ion);
}

TEST_CASE("trajectory access") {
  rosette_ion* ion = nullptr;
  REQUIRE(rosette_ion_create(92, 1, 1, rosette_default_alpha(), &ion) == ROSETTE_OK);
  rosette_trajectory* t = nullptr;
  REQUIRE(rosette_trajectory_sample(ion, 1.0, 512, &t) == ROSETTE_OK);
  const size_t n = rosette_trajectory_size(t);
  CHECK(n > 512);
  rosette_sample s{};
  CHECK(rosette_trajectory_point(t, 0, &s) == ROSETTE_OK);
  CHECK(s.theta == 0.0);
  CHECK(rosette_trajectory_point(t, n, &s) == ROSETTE_ERR_ARGUMENT);
  rosette_trajectory_destroy(t);
  rosette_ion_destroy(ion);
}

TEST_CASE("documents") {
  rosette_catalog* cat = nullptr;
  REQUIRE(rosette_catalog_paper(&cat) == ROSETTE_OK);
  CHECK(rosette_catalog_size(cat) == 7);
  rosette_document* doc = nullptr;
  REQUIRE(rosette_emit_table(cat, 1, 1, rosette_default_alpha(), ROSETTE_FORMAT_CSV, &doc) ==
          ROSETTE_OK);
  const std::string csv(rosette_document_data(doc), rosette_document_size(doc));
  CHECK(csv.rfind("z,symbol,omega,", 0) == 0);
  CHECK(rosette_document_format(doc) == ROSETTE_FORMAT_CSV);
  REQUIRE(rosette_document_metadata_count(doc) >= 4);
  const char* key = nullptr;
  const char* value = nullptr;
  REQUIRE(rosette_document_metadata(doc, 0, &key, &value) == ROSETTE_OK);
  CHECK(std::string(key) == "tool_version");
  CHECK(std::string(value) == rosette_version());
  CHECK(rosette_document_metadata(doc, 99, &key, &value) == ROSETTE_ERR_ARGUMENT);
  CHECK(rosette_document_write(doc, "/nonexistent-dir/x.csv") == ROSETTE_ERR_IO);
  rosette_document_destroy(doc);

  doc = nullptr;
  CHECK(rosette_emit_table(cat, 1, 1, rosette_default_alpha(), ROSETTE_FORMAT_SVG, &doc) ==
        ROSETTE_ERR_ARGUMENT);
  CHECK(doc == nullptr);
  rosette_catalog_destroy(cat);

  const int zs[] = {1, 140};
  REQUIRE(rosette_catalog_from_z_list(zs, 2, &cat) == ROSETTE_OK);
  REQUIRE(rosette_emit_table(cat, 1, 1, rosette_default_alpha(), ROSETTE_FORMAT_CSV, &doc) ==
          ROSETTE_OK);
  const std::string mixed(rosette_document_data(doc), rosette_document_size(doc));
  CHECK(mixed.find("domain_error") != std::string::npos);
  rosette_document_destroy(doc);
  rosette_catalog_destroy(cat);

  const char bad[] = "format = rosette-catalog\nnonsense\n";
  CHECK(rosette_catalog_parse(bad, sizeof bad - 1, &cat) == ROSETTE_ERR_ARGUMENT);
  CHECK(std::string(rosette_last_error()).find("line 2") != std::string::npos);

  CHECK(rosette_emit_scan(1, 140, 1, 1, rosette_default_alpha(), 2, ROSETTE_FORMAT_JSON, &doc) ==
        ROSETTE_ERR_DOMAIN);
}

TEST_CASE("render through the C surface") {
  rosette_ion* ion = nullptr;
  REQUIRE(rosette_ion_create(118, 1, 1, rosette_default_alpha(), &ion) == ROSETTE_OK);
  rosette_trajectory* t = nullptr;
  REQUIRE(rosette_trajectory_sample(ion, 1.0, 4096, &t) == ROSETTE_OK);
  rosette_render_spec spec;
  rosette_render_spec_default(&spec);
  CHECK(spec.width == 800);
  CHECK(spec.show_envelopes == 1);
  rosette_document* still = nullptr;
  rosette_document* last = nullptr;
  REQUIRE(rosette_render(t, &spec, 0, 0, &still) == ROSETTE_OK);
  REQUIRE(rosette_render(t, &spec, 4, 5, &last) == ROSETTE_OK);
  CHECK(std::string(rosette_document_data(still)) == rosette_document_data(last));
  CHECK(std::string(rosette_document_data(still)).find("caption_direction=clockwise") !=
        std::string::npos);
  char name[32];
  CHECK(std::string(rosette_frame_file_name(3, name, sizeof name)) == "frame_0003.svg");
  rosette_document_destroy(still);
  rosette_document_destroy(last);
  rosette_trajectory_destroy(t);
  rosette_ion_destroy(ion);
}
