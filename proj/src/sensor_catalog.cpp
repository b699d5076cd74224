#include "sand/sensor_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "sand/error.hpp"

namespace sand {
namespace {

constexpr std::array<const char*, 5> kDetectKeys = {"open", "water", "neighborhood",
                                                    "hill", "commercial"};

[[noreturn]] void violation(const std::string& spec, const std::string& what) {
  throw Error(ErrorCode::InvariantViolation, "sensor '" + spec + "': " + what);
}

void validate(const SensorSpec& s) {
  if (s.name.empty()) violation(s.name, "name must be non-empty");
  if (!(s.range_km > 0.0) || !std::isfinite(s.range_km)) violation(s.name, "range_km must be > 0");
  if (!(s.unit_price_usd > 0.0) || !std::isfinite(s.unit_price_usd)) {
    violation(s.name, "unit_price_usd must be > 0");
  }
  if (s.fov_multiplier < 1) violation(s.name, "fov_multiplier must be an integer >= 1");
  for (std::size_t t = 0; t < s.detect.size(); ++t) {
    const double p = s.detect[t];
    if (!(p > 0.0 && p < 1.0)) {
      violation(s.name, std::string("detect.") + kDetectKeys[t] + " = " + std::to_string(p) +
                            " must lie in (0, 1)");
    }
  }
}

SensorSpec spec_from_json(const nlohmann::json& j) {
  SensorSpec s;
  try {
    s.name = j.at("name").get<std::string>();
    s.range_km = j.at("range_km").get<double>();
    s.unit_price_usd = j.at("unit_price_usd").get<double>();
    const double fov = j.at("fov_multiplier").get<double>();
    if (fov != std::floor(fov)) violation(s.name, "fov_multiplier must be an integer");
    s.fov_multiplier = static_cast<int>(fov);
    s.tracks_noncooperative = j.at("tracks_noncooperative").get<bool>();
    const auto& d = j.at("detect");
    for (std::size_t t = 0; t < kDetectKeys.size(); ++t) {
      s.detect[t] = d.at(kDetectKeys[t]).get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("catalog entry: ") + e.what());
  }
  return s;
}

}  // namespace

SensorCatalog::SensorCatalog(std::vector<SensorSpec> specs) : specs_(std::move(specs)) {
  if (specs_.empty()) throw Error(ErrorCode::InvariantViolation, "sensor catalog is empty");
  for (const auto& s : specs_) validate(s);
  std::sort(specs_.begin(), specs_.end(),
            [](const SensorSpec& a, const SensorSpec& b) { return a.name < b.name; });
  for (std::size_t i = 1; i < specs_.size(); ++i) {
    if (specs_[i].name == specs_[i - 1].name) violation(specs_[i].name, "duplicate name");
  }
}

const SensorSpec* SensorCatalog::find(std::string_view name) const {
  for (const auto& s : specs_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

double SensorCatalog::min_range_km() const {
  double r = specs_.front().range_km;
  for (const auto& s : specs_) r = std::min(r, s.range_km);
  return r;
}

SensorCatalog parse_catalog(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("catalog: ") + e.what());
  }
  const nlohmann::json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("sensors")) throw Error(ErrorCode::ParseError, "catalog: missing 'sensors'");
    list = &doc["sensors"];
  }
  if (!list->is_array()) throw Error(ErrorCode::ParseError, "catalog: 'sensors' must be an array");
  std::vector<SensorSpec> specs;
  for (const auto& item : *list) specs.push_back(spec_from_json(item));
  return SensorCatalog(std::move(specs));
}

SensorCatalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open catalog " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

std::string catalog_json(const SensorCatalog& catalog) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& s : catalog.specs()) {
    nlohmann::ordered_json detect;
    for (std::size_t t = 0; t < kDetectKeys.size(); ++t) detect[kDetectKeys[t]] = s.detect[t];
    list.push_back({{"name", s.name},
                    {"range_km", s.range_km},
                    {"unit_price_usd", s.unit_price_usd},
                    {"fov_multiplier", s.fov_multiplier},
                    {"tracks_noncooperative", s.tracks_noncooperative},
                    {"detect", detect}});
  }
  nlohmann::ordered_json doc;
  doc["sensors"] = std::move(list);
  return doc.dump(2) + "\n";
}

const SensorCatalog& default_catalog() {
  //                  open  water neigh hill  comm
  static const SensorCatalog catalog({
      {"Radar", 2.41, 35000.0, 3, true, {0.95, 0.90, 0.85, 0.75, 0.75}},
      {"ADS-B", 321.87, 2250.0, 1, false, {0.99, 0.99, 0.90, 0.85, 0.80}},
      {"RemoteID", 5.02, 1100.0, 1, false, {0.95, 0.95, 0.85, 0.80, 0.75}},
      {"RF", 4.99, 35000.0, 1, true, {0.95, 0.95, 0.85, 0.80, 0.75}},
      {"Acoustic", 0.5, 9000.0, 1, true, {0.75, 0.65, 0.40, 0.25, 0.20}},
      {"OpticalCamera", 0.4, 3500.0, 6, true, {0.90, 0.90, 0.80, 0.75, 0.70}},
  });
  return catalog;
}

SensorCatalog scale_detection(const SensorCatalog& catalog, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw Error(ErrorCode::InvalidArgument, "detection scale factor must be > 0");
  }
  std::vector<SensorSpec> out = catalog.specs();
  for (auto& s : out) {
    for (auto& p : s.detect) {
      p = std::clamp(p * factor, 1e-9, 0.9999);
    }
  }
  return SensorCatalog(std::move(out));
}

std::string SensorFilter::describe() const {
  switch (kind) {
    case Kind::All: return "all";
    case Kind::NonCooperative: return "noncooperative_capable";
    case Kind::Names: {
      std::vector<std::string> sorted = names;
      std::sort(sorted.begin(), sorted.end());
      std::string out;
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i != 0) out += '+';
        out += sorted[i];
      }
      return out;
    }
  }
  return "";
}

SensorCatalog filter_catalog(const SensorCatalog& catalog, const SensorFilter& filter) {
  std::vector<SensorSpec> kept;
  switch (filter.kind) {
    case SensorFilter::Kind::All:
      return catalog;
    case SensorFilter::Kind::NonCooperative:
      for (const auto& s : catalog.specs()) {
        if (s.tracks_noncooperative) kept.push_back(s);
      }
      break;
    case SensorFilter::Kind::Names:
      for (const auto& name : filter.names) {
        const SensorSpec* s = catalog.find(name);
        if (s == nullptr) {
          throw Error(ErrorCode::InvalidArgument, "sensor filter names unknown sensor '" + name + "'");
        }
        if (std::none_of(kept.begin(), kept.end(),
                         [&](const SensorSpec& k) { return k.name == name; })) {
          kept.push_back(*s);
        }
      }
      break;
  }
  if (kept.empty()) throw Error(ErrorCode::InvalidArgument, "sensor filter selects no sensors");
  return SensorCatalog(std::move(kept));
}

}  // namespace sand
