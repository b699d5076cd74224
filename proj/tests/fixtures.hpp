#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "sand/pipeline.hpp"

namespace sand::testing {

inline std::filesystem::path data_dir() {
  const char* d = std::getenv("SAND_DATA_DIR");
  return d ? std::filesystem::path(d) : std::filesystem::path("data");
}

inline std::filesystem::path mini_city_path() { return data_dir() / "mini_city" / "scenario.json"; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("sand_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

// The bundled mini-city with its sensor filter replaced.
inline Scenario mini_city(const std::vector<std::string>& filter) {
  Scenario s = load_scenario(mini_city_path());
  s.filter = SensorFilter::of(filter);
  return s;
}

inline nlohmann::json mini_city_json() {
  return nlohmann::json::parse(slurp(mini_city_path()));
}

}  // namespace sand::testing
