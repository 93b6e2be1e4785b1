#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rosette/physics.hpp"
#include "rosette/topology.hpp"

namespace rosette {

/// A value exactly as printed: normalized digits plus printed decimals.
struct PublishedValue {
  std::string text;
  int decimals = 0;
  std::string source;
};

/// Printed self-intersection angle pair; kept as metadata only.
struct PublishedCrossing {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double radius = 0.0;
  std::string source;
};

struct ElementRecord {
  int z = 0;
  std::string symbol;
  std::string name;
  std::string ion_label;  ///< hydrogen-like charge state, z - 1
  std::string caption_direction;
  std::map<std::string, PublishedValue> published;
  std::vector<PublishedCrossing> published_crossings;

  std::optional<int> published_winding() const;
};

/// Quantities compared against published cells, in table order.
inline constexpr std::array<std::string_view, 6> kTableQuantities = {
    "omega", "epsilon", "a_over_a0", "r_min", "r_max", "delta_theta"};

/// Parses the `key = value` catalog format (see data/paper_catalog.txt).
/// Throws ArgumentError naming the offending line.
std::vector<ElementRecord> parse_catalog(std::string_view text);
std::string_view paper_catalog_text() noexcept;
const std::vector<ElementRecord>& paper_catalog();

/// Symbol and name for any Z >= 1: IUPAC names up to 118, systematic
/// placeholders (Ubb, Utp, ...) beyond.
std::string element_symbol(int z);
std::string element_name(int z);
/// Record without published data; uses the catalog entry when one exists.
ElementRecord element_for(int z);

/// Fixed-point rendering with `decimals` places, locale independent.
std::string format_fixed(double value, int decimals);

struct CellComparison {
  std::string quantity;
  std::string computed;
  std::string published;
  bool match = false;
};

struct TableRow {
  ElementRecord element;
  std::optional<OrbitParams> params;
  std::optional<TopologyMetrics> topology;
  std::string error;  ///< set when the element is outside the domain
  std::vector<CellComparison> comparisons;

  bool ok() const noexcept { return params.has_value(); }
  bool all_match() const noexcept;
};

struct ElementTable {
  QuantumState state;
  PhysicalConstants constants;
  std::vector<TableRow> rows;  ///< ordered by z
};

/// One row per element; domain errors are recorded per row.
ElementTable element_table(std::span<const ElementRecord> elements, QuantumState state = {},
                           PhysicalConstants constants = {});

struct WindingComparison {
  int z = 0;
  std::string symbol;
  int published = 0;
  double revolutions_per_period = 0.0;
  int loops_per_period = 0;
  int rounded_revolutions = 0;
  int floor_plus_one = 0;
  bool loops_match = false;
};

/// Published figure labels side by side with the computed topology counts,
/// for rows that carry a published winding.
std::vector<WindingComparison> winding_report(const ElementTable& table);

struct ScanRow {
  int z = 0;
  OrbitParams params;
  int crossings_per_period = 0;
  int loops_per_period = 0;
};

struct CriticalCharge {
  int n = 0;
  double z_critical = 0.0;
  int first_integer_z = 0;
};

struct ScanResult {
  QuantumState state;
  PhysicalConstants constants;
  std::vector<ScanRow> rows;
  std::vector<CriticalCharge> critical_charges;
};

/// Real charge at which 1/omega reaches the integer n (n >= 2):
/// sqrt(n_theta^2 - n_theta^2 / n^2) / alpha.
double critical_charge(int n, QuantumState state, PhysicalConstants constants);

/// Sweeps z_from..z_to; rows are computed on `workers` threads and merged
/// in Z order. Throws DomainError if z_to >= n_theta / alpha.
ScanResult critical_z_scan(int z_from, int z_to, QuantumState state = {},
                           PhysicalConstants constants = {}, unsigned workers = 1);

}  // namespace rosette
