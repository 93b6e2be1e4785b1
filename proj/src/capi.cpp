#include "rosette/rosette.h"

#include <cstdio>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "rosette/catalog.hpp"
#include "rosette/emit.hpp"
#include "rosette/errors.hpp"
#include "rosette/physics.hpp"
#include "rosette/topology.hpp"
#include "rosette/trajectory.hpp"

struct rosette_ion {
  rosette::IonSpec spec;
};

struct rosette_trajectory {
  rosette::IonSpec spec;
  rosette::Trajectory trajectory;
};

struct rosette_catalog {
  std::vector<rosette::ElementRecord> elements;
};

struct rosette_document {
  rosette::OutputDocument doc;
};

namespace {

thread_local std::string g_last_error;

rosette_status fail(rosette_status s, const char* what) {
  g_last_error = what;
  return s;
}

// Maps the core's exception types onto status codes.
template <typename F>
rosette_status guarded(F&& body) noexcept {
  try {
    body();
    g_last_error.clear();
    return ROSETTE_OK;
  } catch (const rosette::DomainError& e) {
    return fail(ROSETTE_ERR_DOMAIN, e.what());
  } catch (const rosette::ArgumentError& e) {
    return fail(ROSETTE_ERR_ARGUMENT, e.what());
  } catch (const rosette::ResourceError& e) {
    return fail(ROSETTE_ERR_RESOURCE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ROSETTE_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(ROSETTE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ROSETTE_ERR_INTERNAL, "unknown failure");
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) throw rosette::ArgumentError(std::string(name) + " must not be null");
}

rosette::Format to_format(rosette_format f) {
  switch (f) {
    case ROSETTE_FORMAT_CSV: return rosette::Format::csv;
    case ROSETTE_FORMAT_JSON: return rosette::Format::json;
    case ROSETTE_FORMAT_SVG: return rosette::Format::svg;
  }
  throw rosette::ArgumentError("unknown format code");
}

rosette::DocumentMeta meta_for(const rosette::IonSpec& s, bool with_z = true) {
  rosette::DocumentMeta m;
  m.alpha = s.constants.alpha;
  m.state = s.state;
  if (with_z) m.z = s.z;
  return m;
}

rosette::ElementTable table_for(const rosette_catalog* catalog, int n_r, int n_theta,
                                double alpha) {
  need(catalog, "catalog");
  const auto constants = rosette::PhysicalConstants::with_alpha(alpha);
  const rosette::QuantumState state{n_r, n_theta};
  rosette::make_ion(1, state, constants);
  return rosette::element_table(catalog->elements, state, constants);
}

void hand_out(rosette::OutputDocument doc, rosette_document** out) {
  *out = new rosette_document{std::move(doc)};
}

}  // namespace

extern "C" {

const char* rosette_version(void) { return rosette::kToolVersion; }

const char* rosette_last_error(void) { return g_last_error.c_str(); }

double rosette_default_alpha(void) { return rosette::kCodata2018Alpha; }

rosette_status rosette_ion_create(int z, int n_r, int n_theta, double alpha, rosette_ion** out) {
  return guarded([&] {
    need(out, "out");
    const auto ion =
        rosette::make_ion(z, {n_r, n_theta}, rosette::PhysicalConstants::with_alpha(alpha));
    *out = new rosette_ion{ion};
  });
}

void rosette_ion_destroy(rosette_ion* ion) { delete ion; }

rosette_status rosette_ion_orbit_params(const rosette_ion* ion, rosette_orbit_params* out) {
  return guarded([&] {
    need(ion, "ion");
    need(out, "out");
    const auto p = rosette::orbit_params(ion->spec);
    *out = {p.omega, p.epsilon, p.a, p.energy_ratio, p.r_min, p.r_max, p.delta_theta,
            p.revolutions_per_period, p.radial_period()};
  });
}

rosette_status rosette_ion_validate(const rosette_ion* ion, rosette_validity* out) {
  return guarded([&] {
    need(ion, "ion");
    need(out, "out");
    const auto report = rosette::validate(ion->spec);
    *out = static_cast<rosette_validity>(report.status);
  });
}

rosette_status rosette_trajectory_sample(const rosette_ion* ion, double periods,
                                         int samples_per_revolution, rosette_trajectory** out) {
  return guarded([&] {
    need(ion, "ion");
    need(out, "out");
    if (!(periods > 0.0)) throw rosette::ArgumentError("periods must be positive");
    const auto p = rosette::orbit_params(ion->spec);
    auto t = rosette::sample(p, 0.0, periods * p.radial_period(), samples_per_revolution);
    *out = new rosette_trajectory{ion->spec, std::move(t)};
  });
}

size_t rosette_trajectory_size(const rosette_trajectory* trajectory) {
  return trajectory ? trajectory->trajectory.size() : 0;
}

rosette_status rosette_trajectory_point(const rosette_trajectory* trajectory, size_t index,
                                        rosette_sample* out) {
  return guarded([&] {
    need(trajectory, "trajectory");
    need(out, "out");
    const auto s = trajectory->trajectory.samples();
    if (index >= s.size()) throw rosette::ArgumentError("sample index out of range");
    *out = {s[index].theta, s[index].r, s[index].x, s[index].y};
  });
}

void rosette_trajectory_destroy(rosette_trajectory* trajectory) { delete trajectory; }

rosette_status rosette_enumerate_intersections(const rosette_ion* ion, double theta_start,
                                               double theta_end, rosette_intersection* buffer,
                                               size_t capacity, size_t* count) {
  return guarded([&] {
    need(ion, "ion");
    need(count, "count");
    const auto p = rosette::orbit_params(ion->spec);
    const auto list = rosette::enumerate_intersections(p, theta_start, theta_end);
    *count = list.size();
    if (buffer == nullptr) return;
    for (size_t i = 0; i < list.size() && i < capacity; ++i) {
      const auto& x = list[i];
      buffer[i] = {x.theta1, x.theta2, x.k, x.m, x.position.x, x.position.y, x.radius,
                   x.transversal ? 1 : 0};
    }
  });
}

rosette_status rosette_catalog_paper(rosette_catalog** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rosette_catalog{rosette::paper_catalog()};
  });
}

rosette_status rosette_catalog_parse(const char* text, size_t length, rosette_catalog** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new rosette_catalog{rosette::parse_catalog({text, length})};
  });
}

rosette_status rosette_catalog_from_z_list(const int* z, size_t count, rosette_catalog** out) {
  return guarded([&] {
    need(out, "out");
    if (count > 0) need(z, "z");
    std::vector<rosette::ElementRecord> elements;
    for (size_t i = 0; i < count; ++i) {
      if (z[i] < 1) throw rosette::ArgumentError("Z must be >= 1");
      elements.push_back(rosette::element_for(z[i]));
    }
    *out = new rosette_catalog{std::move(elements)};
  });
}

size_t rosette_catalog_size(const rosette_catalog* catalog) {
  return catalog ? catalog->elements.size() : 0;
}

void rosette_catalog_destroy(rosette_catalog* catalog) { delete catalog; }

rosette_status rosette_emit_params(const rosette_ion* ion, rosette_document** out) {
  return guarded([&] {
    need(ion, "ion");
    need(out, "out");
    const auto p = rosette::orbit_params(ion->spec);
    hand_out(rosette::emit_params(rosette::element_for(ion->spec.z), p,
                                  rosette::validate(ion->spec), meta_for(ion->spec)),
             out);
  });
}

rosette_status rosette_emit_levels(int z, double alpha, int n_r_lo, int n_r_hi, int n_theta_lo,
                                   int n_theta_hi, rosette_format format,
                                   rosette_document** out) {
  return guarded([&] {
    need(out, "out");
    const auto constants = rosette::PhysicalConstants::with_alpha(alpha);
    const auto levels =
        rosette::energy_levels(z, {n_r_lo, n_r_hi}, {n_theta_lo, n_theta_hi}, constants);
    rosette::DocumentMeta meta;
    meta.alpha = alpha;
    meta.state = {n_r_lo, n_theta_lo};
    meta.z = z;
    hand_out(rosette::emit_levels(levels, to_format(format), meta), out);
  });
}

rosette_status rosette_emit_trace(const rosette_trajectory* trajectory, rosette_format format,
                                  rosette_document** out) {
  return guarded([&] {
    need(trajectory, "trajectory");
    need(out, "out");
    hand_out(rosette::emit_trace(trajectory->trajectory, to_format(format),
                                 meta_for(trajectory->spec)),
             out);
  });
}

rosette_status rosette_emit_intersections(const rosette_trajectory* trajectory, int verify,
                                          rosette_document** out) {
  return guarded([&] {
    need(trajectory, "trajectory");
    need(out, "out");
    const auto& t = trajectory->trajectory;
    const auto list = rosette::enumerate_intersections(t.params(), t.theta_start(), t.theta_end());
    std::optional<rosette::OracleAgreement> agreement;
    if (verify) {
      const auto oracle = rosette::oracle_intersections(t);
      agreement = rosette::compare_with_oracle(t.params(), list, oracle);
    }
    hand_out(rosette::emit_intersections(t, list, agreement, meta_for(trajectory->spec)), out);
  });
}

rosette_status rosette_emit_table(const rosette_catalog* catalog, int n_r, int n_theta,
                                  double alpha, rosette_format format, rosette_document** out) {
  return guarded([&] {
    need(out, "out");
    const auto table = table_for(catalog, n_r, n_theta, alpha);
    rosette::DocumentMeta meta{alpha, {n_r, n_theta}, std::nullopt};
    hand_out(rosette::emit_table(table, to_format(format), meta), out);
  });
}

rosette_status rosette_emit_winding_report(const rosette_catalog* catalog, int n_r, int n_theta,
                                           double alpha, rosette_format format,
                                           rosette_document** out) {
  return guarded([&] {
    need(out, "out");
    const auto table = table_for(catalog, n_r, n_theta, alpha);
    const auto report = rosette::winding_report(table);
    rosette::DocumentMeta meta{alpha, {n_r, n_theta}, std::nullopt};
    hand_out(rosette::emit_winding_report(report, to_format(format), meta), out);
  });
}

rosette_status rosette_emit_scan(int z_from, int z_to, int n_r, int n_theta, double alpha,
                                 unsigned workers, rosette_format format, rosette_document** out) {
  return guarded([&] {
    need(out, "out");
    const auto constants = rosette::PhysicalConstants::with_alpha(alpha);
    const auto scan = rosette::critical_z_scan(z_from, z_to, {n_r, n_theta}, constants, workers);
    rosette::DocumentMeta meta{alpha, {n_r, n_theta}, std::nullopt};
    hand_out(rosette::emit_scan(scan, to_format(format), meta), out);
  });
}

void rosette_render_spec_default(rosette_render_spec* spec) {
  if (spec == nullptr) return;
  const rosette::RenderSpec d;
  *spec = {d.width, d.height, d.margin_fraction, d.show_envelopes ? 1 : 0,
           d.show_intersections ? 1 : 0};
}

rosette_status rosette_render(const rosette_trajectory* trajectory,
                              const rosette_render_spec* spec, int frame_index, int frame_count,
                              rosette_document** out) {
  return guarded([&] {
    need(trajectory, "trajectory");
    need(out, "out");
    rosette::RenderSpec rs;
    if (spec != nullptr) {
      rs.width = spec->width;
      rs.height = spec->height;
      rs.margin_fraction = spec->margin_fraction;
      rs.show_envelopes = spec->show_envelopes != 0;
      rs.show_intersections = spec->show_intersections != 0;
    }
    if (frame_count > 0) rs.frames = frame_count;
    rs.caption_direction = rosette::element_for(trajectory->spec.z).caption_direction;
    const auto& t = trajectory->trajectory;
    const auto list = rosette::enumerate_intersections(t.params(), t.theta_start(), t.theta_end());
    const auto meta = meta_for(trajectory->spec);
    hand_out(frame_count > 0 ? rosette::render_frame(t, list, rs, meta, frame_index, frame_count)
                             : rosette::render_svg(t, list, rs, meta),
             out);
  });
}

const char* rosette_frame_file_name(int index, char* buffer, size_t size) {
  if (buffer == nullptr || size == 0) return nullptr;
  std::snprintf(buffer, size, "%s", rosette::frame_file_name(index).c_str());
  return buffer;
}

const char* rosette_document_data(const rosette_document* doc) {
  return doc ? doc->doc.payload.c_str() : nullptr;
}

size_t rosette_document_size(const rosette_document* doc) {
  return doc ? doc->doc.payload.size() : 0;
}

rosette_format rosette_document_format(const rosette_document* doc) {
  if (doc == nullptr) return ROSETTE_FORMAT_JSON;
  switch (doc->doc.format) {
    case rosette::Format::csv: return ROSETTE_FORMAT_CSV;
    case rosette::Format::svg: return ROSETTE_FORMAT_SVG;
    default: return ROSETTE_FORMAT_JSON;
  }
}

size_t rosette_document_metadata_count(const rosette_document* doc) {
  return doc ? doc->doc.metadata.size() : 0;
}

rosette_status rosette_document_metadata(const rosette_document* doc, size_t index,
                                         const char** key, const char** value) {
  return guarded([&] {
    need(doc, "document");
    need(key, "key");
    need(value, "value");
    if (index >= doc->doc.metadata.size()) throw rosette::ArgumentError("metadata index out of range");
    *key = doc->doc.metadata[index].first.c_str();
    *value = doc->doc.metadata[index].second.c_str();
  });
}

rosette_status rosette_document_write(const rosette_document* doc, const char* path) {
  if (doc == nullptr || path == nullptr) return fail(ROSETTE_ERR_ARGUMENT, "null document or path");
  try {
    rosette::write_file_atomic(path, doc->doc.payload);
    g_last_error.clear();
    return ROSETTE_OK;
  } catch (const std::exception& e) {
    return fail(ROSETTE_ERR_IO, e.what());
  }
}

void rosette_document_destroy(rosette_document* doc) { delete doc; }

}  // extern "C"
