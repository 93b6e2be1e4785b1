#pragma once

// Serialization of orbit data: CSV and JSON tables, SVG figures.
// Every payload is a pure function of its inputs.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rosette/catalog.hpp"
#include "rosette/physics.hpp"
#include "rosette/topology.hpp"
#include "rosette/trajectory.hpp"

namespace rosette {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Format { csv, json, svg };

const char* to_string(Format f) noexcept;
/// Throws ArgumentError for anything but csv, json, svg.
Format parse_format(std::string_view name);

/// Provenance attached to every document.
struct DocumentMeta {
  double alpha = kCodata2018Alpha;
  QuantumState state;
  std::optional<int> z;

  std::vector<std::pair<std::string, std::string>> entries() const;
};

struct OutputDocument {
  Format format = Format::json;
  std::string payload;
  std::vector<std::pair<std::string, std::string>> metadata;
};

/// Nine significant digits, "C" locale, no trailing zeros.
std::string format_number(double value);

OutputDocument emit_params(const ElementRecord& element, const OrbitParams& params,
                           const ValidityReport& validity, const DocumentMeta& meta);

struct LevelEntry {
  int n_r = 0;
  int n_theta = 1;
  std::optional<double> energy_ratio;  ///< empty when supercritical
  Validity status = Validity::valid;
};

/// energy_ratio over every (n_r, n_theta) in the inclusive ranges.
std::vector<LevelEntry> energy_levels(int z, std::pair<int, int> n_r_range,
                                      std::pair<int, int> n_theta_range,
                                      PhysicalConstants constants);
OutputDocument emit_levels(std::span<const LevelEntry> levels, Format format,
                           const DocumentMeta& meta);

/// theta,r,x,y per sample.
OutputDocument emit_trace(const Trajectory& trajectory, Format format, const DocumentMeta& meta);

OutputDocument emit_intersections(const Trajectory& trajectory,
                                  std::span<const SelfIntersection> intersections,
                                  const std::optional<OracleAgreement>& oracle,
                                  const DocumentMeta& meta);

/// Columns: z,symbol,omega,epsilon,a_over_a0,r_min,r_max,delta_theta,
/// revolutions_per_period,crossings_per_period,loops_per_period,
/// paper_winding,match_flags. Published cells are written at printed
/// precision. Throws ArgumentError for an empty table.
OutputDocument emit_table(const ElementTable& table, Format format, const DocumentMeta& meta);
OutputDocument emit_winding_report(std::span<const WindingComparison> report, Format format,
                                   const DocumentMeta& meta);
OutputDocument emit_scan(const ScanResult& scan, Format format, const DocumentMeta& meta);

struct RenderSpec {
  int width = 800;
  int height = 800;
  double margin_fraction = 0.05;
  bool show_envelopes = true;
  bool show_intersections = true;
  std::optional<int> frames;
  std::string caption_direction = "counterclockwise";

  /// Pixels per Bohr radius so that a disc of radius 1.1 r_max fits
  /// inside the margins.
  double scale(double r_max) const;
};

/// Static figure. Only transversal crossings with theta2 <= the
/// trajectory's end are marked.
OutputDocument render_svg(const Trajectory& trajectory,
                          std::span<const SelfIntersection> intersections, const RenderSpec& spec,
                          const DocumentMeta& meta);

/// Frame i of `count`: the trajectory cut at
/// start + (end - start)(i + 1)/count. The last frame equals render_svg.
OutputDocument render_frame(const Trajectory& trajectory,
                            std::span<const SelfIntersection> intersections,
                            const RenderSpec& spec, const DocumentMeta& meta, int index,
                            int count);

/// frame_0000.svg, frame_0001.svg, ...
std::string frame_file_name(int index);

/// Writes via a sibling temporary file and rename. Throws std::runtime_error
/// on I/O failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view payload);

}  // namespace rosette
