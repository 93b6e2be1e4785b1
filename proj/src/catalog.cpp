#include "rosette/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "paper_catalog_data.hpp"
#include "rosette/errors.hpp"

namespace rosette {

namespace {

constexpr std::array<const char*, 118> kSymbols = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg", "Al", "Si", "P",
    "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn",
    "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh",
    "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
    "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W",  "Re",
    "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th",
    "Pa", "U",  "Np", "Pu", "Am", "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db",
    "Sg", "Bh", "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

constexpr std::array<const char*, 118> kNames = {
    "Hydrogen",     "Helium",       "Lithium",     "Beryllium",   "Boron",
    "Carbon",       "Nitrogen",     "Oxygen",      "Fluorine",    "Neon",
    "Sodium",       "Magnesium",    "Aluminium",   "Silicon",     "Phosphorus",
    "Sulfur",       "Chlorine",     "Argon",       "Potassium",   "Calcium",
    "Scandium",     "Titanium",     "Vanadium",    "Chromium",    "Manganese",
    "Iron",         "Cobalt",       "Nickel",      "Copper",      "Zinc",
    "Gallium",      "Germanium",    "Arsenic",     "Selenium",    "Bromine",
    "Krypton",      "Rubidium",     "Strontium",   "Yttrium",     "Zirconium",
    "Niobium",      "Molybdenum",   "Technetium",  "Ruthenium",   "Rhodium",
    "Palladium",    "Silver",       "Cadmium",     "Indium",      "Tin",
    "Antimony",     "Tellurium",    "Iodine",      "Xenon",       "Caesium",
    "Barium",       "Lanthanum",    "Cerium",      "Praseodymium", "Neodymium",
    "Promethium",   "Samarium",     "Europium",    "Gadolinium",  "Terbium",
    "Dysprosium",   "Holmium",      "Erbium",      "Thulium",     "Ytterbium",
    "Lutetium",     "Hafnium",      "Tantalum",    "Tungsten",    "Rhenium",
    "Osmium",       "Iridium",      "Platinum",    "Gold",        "Mercury",
    "Thallium",     "Lead",         "Bismuth",     "Polonium",    "Astatine",
    "Radon",        "Francium",     "Radium",      "Actinium",    "Thorium",
    "Protactinium", "Uranium",      "Neptunium",   "Plutonium",   "Americium",
    "Curium",       "Berkelium",    "Californium", "Einsteinium", "Fermium",
    "Mendelevium",  "Nobelium",     "Lawrencium",  "Rutherfordium", "Dubnium",
    "Seaborgium",   "Bohrium",      "Hassium",     "Meitnerium",  "Darmstadtium",
    "Roentgenium",  "Copernicium",  "Nihonium",    "Flerovium",   "Moscovium",
    "Livermorium",  "Tennessine",   "Oganesson"};

constexpr std::array<const char*, 10> kRoots = {"nil",  "un",  "bi",   "tri", "quad",
                                                "pent", "hex", "sept", "oct", "enn"};

std::string systematic_name(int z) {
  const std::string digits = std::to_string(z);
  std::string name;
  for (char c : digits) {
    std::string root = kRoots[c - '0'];
    // "enn" + "nil" drops one n.
    if (root == "nil" && name.ends_with("enn"))
      root = "il";
    name += root;
  }
  // "bi"/"tri" + "ium" drops one i.
  name += name.back() == 'i' ? "um" : "ium";
  name[0] = static_cast<char>(name[0] - 'a' + 'A');
  return name;
}

std::string systematic_symbol(int z) {
  std::string sym;
  for (char c : std::to_string(z)) sym += kRoots[c - '0'][0];
  sym[0] = static_cast<char>(sym[0] - 'a' + 'A');
  return sym;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ArgumentError("catalog line " + std::to_string(line) + ": " + what);
}

double to_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    fail(line, "not a number: '" + std::string(s) + "'");
  return v;
}

int to_int(std::string_view s, std::size_t line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    fail(line, "not an integer: '" + std::string(s) + "'");
  return v;
}

// Printed decimal: optional sign, digits, optional fraction. Digit-group
// spaces are removed.
PublishedValue published_value(std::string_view raw, std::size_t line) {
  std::string text;
  for (char c : raw)
    if (c != ' ') text += c;
  std::size_t i = (!text.empty() && text[0] == '-') ? 1 : 0;
  const std::size_t int_begin = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == int_begin) fail(line, "malformed published value '" + text + "'");
  int decimals = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++decimals;
    if (decimals == 0) fail(line, "malformed published value '" + text + "'");
  }
  if (i != text.size()) fail(line, "malformed published value '" + text + "'");
  return {text, decimals, {}};
}

bool is_published_key(std::string_view key) {
  return key == "winding" ||
         std::find(kTableQuantities.begin(), kTableQuantities.end(), key) != kTableQuantities.end();
}

void check_complete(const ElementRecord& e, std::size_t line) {
  if (e.z < 1) fail(line, "element without a positive z");
  if (e.symbol.empty()) fail(line, "element z=" + std::to_string(e.z) + " has no symbol");
}

}  // namespace

std::optional<int> ElementRecord::published_winding() const {
  const auto it = published.find("winding");
  if (it == published.end()) return std::nullopt;
  return std::stoi(it->second.text);
}

std::vector<ElementRecord> parse_catalog(std::string_view text) {
  std::vector<ElementRecord> out;
  std::optional<ElementRecord> current;
  std::size_t current_line = 0;
  bool format_seen = false;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (!current) return;
    check_complete(*current, current_line);
    out.push_back(std::move(*current));
    current.reset();
  };

  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    std::string_view source;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      source = trim(line.substr(hash + 1));
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line != "[element]") fail(line_no, "unknown section " + std::string(line));
      if (!format_seen) fail(line_no, "missing 'format = rosette-catalog' header");
      flush();
      current.emplace();
      current_line = line_no;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail(line_no, "expected 'key = value'");

    if (!current) {
      if (key == "format") {
        if (value != "rosette-catalog") fail(line_no, "unsupported format " + std::string(value));
        format_seen = true;
      } else if (key == "version") {
        if (to_int(value, line_no) != 1) fail(line_no, "unsupported version " + std::string(value));
      } else {
        fail(line_no, "unknown header key " + std::string(key));
      }
      continue;
    }

    ElementRecord& e = *current;
    if (key == "z") {
      e.z = to_int(value, line_no);
    } else if (key == "symbol") {
      e.symbol = value;
    } else if (key == "name") {
      e.name = value;
    } else if (key == "ion_label") {
      e.ion_label = value;
    } else if (key == "caption_direction") {
      if (value != "clockwise" && value != "counterclockwise")
        fail(line_no, "caption_direction must be clockwise or counterclockwise");
      e.caption_direction = value;
    } else if (key == "crossing") {
      std::istringstream fields{std::string(value)};
      std::string t1, t2, r, extra;
      if (!(fields >> t1 >> t2 >> r) || (fields >> extra))
        fail(line_no, "crossing needs 'theta1 theta2 radius'");
      e.published_crossings.push_back({to_double(t1, line_no), to_double(t2, line_no),
                                       to_double(r, line_no), std::string(source)});
    } else if (is_published_key(key)) {
      if (e.published.contains(std::string(key)))
        fail(line_no, "duplicate " + std::string(key));
      PublishedValue v = published_value(value, line_no);
      v.source = source;
      e.published.emplace(std::string(key), std::move(v));
    } else {
      fail(line_no, "unknown key " + std::string(key));
    }
  }
  flush();
  if (!format_seen) throw ArgumentError("catalog: missing 'format = rosette-catalog' header");

  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.z < r.z; });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].z == out[i - 1].z)
      throw ArgumentError("catalog: duplicate element z=" + std::to_string(out[i].z));
  return out;
}

std::string_view paper_catalog_text() noexcept { return detail::kPaperCatalog; }

const std::vector<ElementRecord>& paper_catalog() {
  static const std::vector<ElementRecord> catalog = parse_catalog(paper_catalog_text());
  return catalog;
}

std::string element_symbol(int z) {
  if (z < 1) throw ArgumentError("Z must be >= 1");
  return z <= 118 ? kSymbols[z - 1] : systematic_symbol(z);
}

std::string element_name(int z) {
  if (z < 1) throw ArgumentError("Z must be >= 1");
  return z <= 118 ? kNames[z - 1] : systematic_name(z);
}

ElementRecord element_for(int z) {
  for (const ElementRecord& e : paper_catalog())
    if (e.z == z) return e;
  ElementRecord e;
  e.z = z;
  e.symbol = element_symbol(z);
  e.name = element_name(z);
  e.ion_label = z == 1 ? e.symbol : e.symbol + "^" + std::to_string(z - 1) + "+";
  e.caption_direction = "counterclockwise";
  return e;
}

std::string format_fixed(double value, int decimals) {
  char buf[512];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
  if (ec != std::errc{}) throw ArgumentError("value does not fit fixed formatting");
  std::string s(buf, ptr);
  // -0.000 prints as 0.000
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

bool TableRow::all_match() const noexcept {
  return ok() && std::all_of(comparisons.begin(), comparisons.end(),
                             [](const CellComparison& c) { return c.match; });
}

namespace {

double quantity(const OrbitParams& p, std::string_view name) {
  if (name == "omega") return p.omega;
  if (name == "epsilon") return p.epsilon;
  if (name == "a_over_a0") return p.a / PhysicalConstants::bohr_radius;
  if (name == "r_min") return p.r_min;
  if (name == "r_max") return p.r_max;
  return p.delta_theta;
}

}  // namespace

ElementTable element_table(std::span<const ElementRecord> elements, QuantumState state,
                           PhysicalConstants constants) {
  ElementTable table{state, constants, {}};
  for (const ElementRecord& e : elements) {
    TableRow row;
    row.element = e;
    try {
      const OrbitParams p = orbit_params(make_ion(e.z, state, constants));
      TopologyMetrics t = topology_metrics(p);
      t.paper_winding = e.published_winding();
      for (std::string_view q : kTableQuantities) {
        const auto it = e.published.find(std::string(q));
        if (it == e.published.end()) continue;
        CellComparison c;
        c.quantity = q;
        c.published = it->second.text;
        c.computed = format_fixed(quantity(p, q), it->second.decimals);
        c.match = c.computed == c.published;
        row.comparisons.push_back(std::move(c));
      }
      row.params = p;
      row.topology = t;
    } catch (const DomainError& err) {
      row.error = err.what();
    }
    table.rows.push_back(std::move(row));
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const TableRow& l, const TableRow& r) { return l.element.z < r.element.z; });
  return table;
}

std::vector<WindingComparison> winding_report(const ElementTable& table) {
  std::vector<WindingComparison> out;
  for (const TableRow& row : table.rows) {
    const auto published = row.element.published_winding();
    if (!published || !row.ok()) continue;
    WindingComparison w;
    w.z = row.element.z;
    w.symbol = row.element.symbol;
    w.published = *published;
    w.revolutions_per_period = row.topology->revolutions_per_period;
    w.loops_per_period = row.topology->loops_per_period;
    w.rounded_revolutions = static_cast<int>(std::lround(w.revolutions_per_period));
    w.floor_plus_one = static_cast<int>(std::floor(w.revolutions_per_period)) + 1;
    w.loops_match = w.loops_per_period == w.published;
    out.push_back(w);
  }
  return out;
}

double critical_charge(int n, QuantumState state, PhysicalConstants constants) {
  if (n < 2) throw ArgumentError("critical charge needs n >= 2");
  if (!(constants.alpha > 0.0)) throw DomainError("no critical charge when alpha = 0");
  const double nt = state.n_theta;
  const double nn = n;
  return std::sqrt(nt * nt - nt * nt / (nn * nn)) / constants.alpha;
}

ScanResult critical_z_scan(int z_from, int z_to, QuantumState state, PhysicalConstants constants,
                           unsigned workers) {
  if (z_from < 1 || z_to < z_from) throw ArgumentError("scan needs 1 <= z_from <= z_to");
  if (constants.alpha > 0.0 && !(z_to < state.n_theta / constants.alpha))
    throw DomainError("scan end Z=" + std::to_string(z_to) +
                      " reaches the supercritical bound n_theta/alpha");
  // Structural checks once, up front.
  make_ion(z_from, state, constants);

  ScanResult result{state, constants, {}, {}};
  const auto count = static_cast<std::size_t>(z_to - z_from + 1);
  result.rows.resize(count);

  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(std::min<std::size_t>(count, 64)));
  std::vector<std::exception_ptr> failures(workers);
  auto work = [&](std::size_t begin, std::size_t stride) {
    try {
      for (std::size_t i = begin; i < count; i += stride) {
        ScanRow& row = result.rows[i];
        row.z = z_from + static_cast<int>(i);
        row.params = orbit_params(make_ion(row.z, state, constants));
        const TopologyMetrics t = topology_metrics(row.params);
        row.crossings_per_period = t.crossings_per_period;
        row.loops_per_period = t.loops_per_period;
      }
    } catch (...) {
      failures[begin] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  if (constants.alpha > 0.0) {
    for (int n = 2;; ++n) {
      const double zc = critical_charge(n, state, constants);
      if (zc > z_to) break;
      if (zc >= z_from)
        result.critical_charges.push_back({n, zc, static_cast<int>(std::ceil(zc))});
    }
  }
  return result;
}

}  // namespace rosette
