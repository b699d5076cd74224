#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sand/geo_mesh.hpp"

namespace sand {

struct SensorSpec {
  std::string name;
  double range_km = 0.0;
  double unit_price_usd = 0.0;
  int fov_multiplier = 1;  // units per site for 360 degree coverage
  bool tracks_noncooperative = false;
  // Indexed by terrain file code 0..4 (Open, Water, Neighborhood, Hill, Commercial).
  std::array<double, 5> detect{};

  // Zero for OutsideArea.
  double detection(Terrain t) const {
    return t == Terrain::OutsideArea ? 0.0 : detect[static_cast<std::size_t>(t)];
  }

  friend bool operator==(const SensorSpec&, const SensorSpec&) = default;
};

// Validated, immutable set of sensor types, kept sorted by name.
class SensorCatalog {
 public:
  SensorCatalog() = default;
  // Throws InvariantViolation naming the offending spec and field.
  explicit SensorCatalog(std::vector<SensorSpec> specs);

  const std::vector<SensorSpec>& specs() const { return specs_; }
  std::size_t size() const { return specs_.size(); }
  const SensorSpec* find(std::string_view name) const;
  double min_range_km() const;

  friend bool operator==(const SensorCatalog&, const SensorCatalog&) = default;

 private:
  std::vector<SensorSpec> specs_;
};

SensorCatalog parse_catalog(std::string_view json_text);
SensorCatalog load_catalog(const std::filesystem::path& path);
std::string catalog_json(const SensorCatalog& catalog);

// Six representative sensor types with their terrain detection rows.
const SensorCatalog& default_catalog();

// Multiplies every detection probability by `factor`, clamping to (0, 0.9999].
SensorCatalog scale_detection(const SensorCatalog& catalog, double factor);

// Selector grammar: "all", "noncooperative_capable", or explicit names.
struct SensorFilter {
  enum class Kind { All, NonCooperative, Names };
  Kind kind = Kind::All;
  std::vector<std::string> names;

  static SensorFilter all() { return {}; }
  static SensorFilter noncooperative() { return {Kind::NonCooperative, {}}; }
  static SensorFilter of(std::vector<std::string> names) {
    return {Kind::Names, std::move(names)};
  }
  std::string describe() const;
};

// Throws InvalidArgument for unknown names or an empty result.
SensorCatalog filter_catalog(const SensorCatalog& catalog, const SensorFilter& filter);

}  // namespace sand
