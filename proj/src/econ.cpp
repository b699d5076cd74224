#include "sand/econ.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"

#include "sand/error.hpp"

namespace sand::econ {
namespace {

std::string read_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, std::string("cannot open ") + what + " " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

nlohmann::json parse_json(std::string_view text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

double number_or(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) {
    throw Error(ErrorCode::ParseError, std::string("'") + key + "' must be a number");
  }
  return j[key].get<double>();
}

}  // namespace

std::string_view aircraft_class_key(AircraftClass c) {
  switch (c) {
    case AircraftClass::CooperativeManned: return "cooperative_manned";
    case AircraftClass::CooperativeUncrewed: return "cooperative_uncrewed";
    case AircraftClass::NonCooperative: return "noncooperative";
  }
  return "";
}

const std::array<MessageSpec, kAircraftClasses>& default_messages() {
  static const std::array<MessageSpec, kAircraftClasses> specs = {{
      {AircraftClass::CooperativeManned, "ASTERIX CAT-021", 42, 1136, 1.0},
      {AircraftClass::CooperativeUncrewed, "ASTERIX CAT-129", 14, 432, 1.0},
      {AircraftClass::NonCooperative, "ASTERIX CAT-062", 27, 2648, 1.0},
  }};
  return specs;
}

std::array<double, kAircraftClasses> data_volume_bits(
    const ClassHours& hours, const std::array<MessageSpec, kAircraftClasses>& specs) {
  std::array<double, kAircraftClasses> bits{};
  for (std::size_t c = 0; c < kAircraftClasses; ++c) {
    if (specs[c].message_bits <= 0 || specs[c].ping_rate_hz < 1.0) {
      throw Error(ErrorCode::InvariantViolation,
                  "message spec needs positive size and a ping rate of at least 1 Hz");
    }
    bits[c] = hours[c] * 3600.0 * specs[c].ping_rate_hz * static_cast<double>(specs[c].message_bits);
  }
  return bits;
}

double total_volume_bits(const ClassHours& hours,
                         const std::array<MessageSpec, kAircraftClasses>& specs) {
  const auto bits = data_volume_bits(hours, specs);
  return bits[0] + bits[1] + bits[2];
}

ClassHours TrafficProjection::hours_for(int year, Band band) const {
  if (years.empty()) return {};
  if (year <= years.front().year) return years.front().hours;
  const Year* last = &years.front();
  for (const auto& y : years) {
    if (y.year == year) return y.hours;
    if (y.year < year) last = &y;
  }
  // Past a listed year without an exact row: grow from the closest earlier row.
  const double g = band == Band::Low ? growth_low : growth_high;
  const double factor = std::pow(1.0 + g, year - last->year);
  ClassHours out = last->hours;
  for (auto& h : out) h *= factor;
  return out;
}

TrafficProjection parse_traffic(std::string_view json_text) {
  const auto doc = parse_json(json_text, "traffic");
  TrafficProjection t;
  try {
    t.growth_low = number_or(doc, "growth_low", 0.0);
    t.growth_high = number_or(doc, "growth_high", t.growth_low);
    for (const auto& row : doc.at("years")) {
      TrafficProjection::Year y;
      y.year = row.at("year").get<int>();
      for (std::size_t c = 0; c < kAircraftClasses; ++c) {
        y.hours[c] = number_or(row, std::string(aircraft_class_key(static_cast<AircraftClass>(c))).c_str(), 0.0);
        if (y.hours[c] < 0.0) throw Error(ErrorCode::InvariantViolation, "flight hours must be >= 0");
      }
      if (!t.years.empty() && y.year <= t.years.back().year) {
        throw Error(ErrorCode::InvariantViolation, "traffic years must be strictly increasing");
      }
      t.years.push_back(y);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("traffic: ") + e.what());
  }
  if (!(t.growth_low >= 0.0 && t.growth_low <= t.growth_high)) {
    throw Error(ErrorCode::InvariantViolation, "traffic growth needs 0 <= growth_low <= growth_high");
  }
  return t;
}

TrafficProjection load_traffic(const std::filesystem::path& path) {
  return parse_traffic(read_file(path, "traffic projection"));
}

void CloudPricingPolicy::validate() const {
  auto non_negative = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::InvariantViolation, std::string("pricing: ") + name + " must be >= 0");
    }
  };
  for (std::size_t i = 0; i < ingest_tiers.size(); ++i) {
    non_negative(ingest_tiers[i].upper_bytes, "tier upper_bytes");
    non_negative(ingest_tiers[i].cost_usd, "tier cost_usd");
    if (i > 0 && !(ingest_tiers[i].upper_bytes > ingest_tiers[i - 1].upper_bytes)) {
      throw Error(ErrorCode::InvariantViolation, "pricing: tier thresholds must strictly increase");
    }
  }
  if (ingest_overflow_usd_per_byte) non_negative(*ingest_overflow_usd_per_byte, "overflow rate");
  non_negative(storage_usd_per_byte_month, "storage rate");
  non_negative(analytics_fixed_usd, "analytics fixed");
  non_negative(analytics_usd_per_byte, "analytics rate");
  non_negative(database_fixed_usd, "database fixed");
  non_negative(database_usd_per_byte, "database rate");
  non_negative(reporting_usd_per_user, "reporting rate");
}

CloudPricingPolicy parse_pricing(std::string_view json_text) {
  const auto doc = parse_json(json_text, "pricing");
  CloudPricingPolicy p;
  try {
    const auto& ingest = doc.at("ingest");
    for (const auto& t : ingest.at("tiers")) {
      p.ingest_tiers.push_back({t.at("upper_bytes").get<double>(), t.at("cost_usd").get<double>()});
    }
    if (ingest.contains("overflow_usd_per_byte") && !ingest["overflow_usd_per_byte"].is_null()) {
      p.ingest_overflow_usd_per_byte = ingest["overflow_usd_per_byte"].get<double>();
    }
    p.storage_usd_per_byte_month = doc.at("storage").at("usd_per_byte_month").get<double>();
    p.analytics_fixed_usd = doc.at("analytics").at("fixed_usd").get<double>();
    p.analytics_usd_per_byte = doc.at("analytics").at("usd_per_byte").get<double>();
    p.database_fixed_usd = doc.at("database").at("fixed_usd").get<double>();
    p.database_usd_per_byte = doc.at("database").at("usd_per_byte").get<double>();
    p.reporting_usd_per_user = doc.at("reporting").at("usd_per_user").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("pricing: ") + e.what());
  }
  p.validate();
  return p;
}

CloudPricingPolicy load_pricing(const std::filesystem::path& path) {
  return parse_pricing(read_file(path, "pricing policy"));
}

double ingest_cost(double volume_bytes, const CloudPricingPolicy& policy) {
  for (const auto& tier : policy.ingest_tiers) {
    if (volume_bytes < tier.upper_bytes) return tier.cost_usd;
  }
  if (!policy.ingest_overflow_usd_per_byte) {
    throw Error(ErrorCode::VolumeAboveTopTier,
                fmt::format("yearly volume {:.0f} bytes exceeds the top ingest tier", volume_bytes));
  }
  const double base = policy.ingest_tiers.empty() ? 0.0 : policy.ingest_tiers.back().cost_usd;
  const double floor = policy.ingest_tiers.empty() ? 0.0 : policy.ingest_tiers.back().upper_bytes;
  return base + *policy.ingest_overflow_usd_per_byte * (volume_bytes - floor);
}

CloudCost cloud_cost(double year_volume_bytes, double stored_bytes, double subscribers,
                     const CloudPricingPolicy& policy) {
  CloudCost c;
  c.ingest = ingest_cost(year_volume_bytes, policy);
  c.storage = policy.storage_usd_per_byte_month * 12.0 * stored_bytes;
  c.analytics = policy.analytics_fixed_usd + policy.analytics_usd_per_byte * year_volume_bytes;
  c.database = policy.database_fixed_usd + policy.database_usd_per_byte * year_volume_bytes;
  c.reporting = policy.reporting_usd_per_user * subscribers;
  return c;
}

std::string_view subscriber_rounding_name(SubscriberRounding r) {
  switch (r) {
    case SubscriberRounding::None: return "none";
    case SubscriberRounding::Ceil: return "ceil";
    case SubscriberRounding::Nearest: return "nearest";
  }
  return "none";
}

SubscriberRounding subscriber_rounding_from_name(std::string_view name) {
  if (name == "none") return SubscriberRounding::None;
  if (name == "ceil") return SubscriberRounding::Ceil;
  if (name == "nearest") return SubscriberRounding::Nearest;
  throw Error(ErrorCode::InvalidArgument, "unknown subscriber rounding '" + std::string(name) + "'");
}

double subscribers(double n0, double growth, int year, int start_year, SubscriberRounding rounding,
                   int delay) {
  const int exponent = std::max(0, year - start_year - delay);
  const double n = n0 * std::pow(1.0 + growth, exponent);
  switch (rounding) {
    case SubscriberRounding::None: return n;
    // Snap before ceil so exact integers (n0 at the start) stay put.
    case SubscriberRounding::Ceil: return std::ceil(n - 1e-9);
    case SubscriberRounding::Nearest: return std::round(n);
  }
  return n;
}

double revenue(double n0, double monthly_fee, double growth, int year, int start_year,
               SubscriberRounding rounding, int delay) {
  return subscribers(n0, growth, year, start_year, rounding, delay) * monthly_fee * 12.0;
}

void compute_npv(CashFlowSeries& series) {
  const std::size_t n = series.years.size();
  series.npv.assign(n, 0.0);
  series.cumulative.assign(n, 0.0);
  double running = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double net = series.positive[i] - series.negative[i];
    const int t = series.years[i] - series.start_year;
    series.npv[i] = net / std::pow(1.0 + series.discount, t);
    running += series.npv[i];
    series.cumulative[i] = running;
  }
}

std::optional<int> break_even_year(const CashFlowSeries& series) {
  for (std::size_t i = 0; i < series.years.size(); ++i) {
    if (series.cumulative[i] >= 0.0) return series.years[i];
  }
  return std::nullopt;
}

CashFlowSeries make_series(int start_year, double discount, std::vector<double> positive,
                           std::vector<double> negative) {
  if (positive.size() != negative.size() || positive.empty()) {
    throw Error(ErrorCode::InvalidArgument, "cash flow series needs matching, non-empty flows");
  }
  CashFlowSeries s;
  s.start_year = start_year;
  s.discount = discount;
  for (std::size_t i = 0; i < positive.size(); ++i) s.years.push_back(start_year + static_cast<int>(i));
  s.positive = std::move(positive);
  s.negative = std::move(negative);
  compute_npv(s);
  return s;
}

void EconParams::validate() const {
  if (!(n0 >= 0.0)) throw Error(ErrorCode::InvalidArgument, "n0 must be >= 0");
  if (!(monthly_fee >= 0.0)) throw Error(ErrorCode::InvalidArgument, "fee must be >= 0");
  if (!(growth_low >= 0.0 && growth_low <= growth_high)) {
    throw Error(ErrorCode::InvalidArgument, "growth needs 0 <= growth_low <= growth_high");
  }
  if (!(discount > -1.0)) throw Error(ErrorCode::InvalidArgument, "discount rate must be > -1");
  if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  if (growth_delay < 0) throw Error(ErrorCode::InvalidArgument, "growth_delay must be >= 0");
}

ScenarioCashFlow scenario_npv(double capex_usd, const TrafficProjection& traffic,
                              const CloudPricingPolicy& policy, const EconParams& params) {
  params.validate();
  ScenarioCashFlow flow;
  flow.capex = capex_usd;
  const int n_years = params.horizon;

  auto band_flows = [&](Band band, std::vector<double>& revenue_out, std::vector<double>& cloud_out) {
    const double g = band == Band::Low ? params.growth_low : params.growth_high;
    std::vector<double> positive, negative;
    double stored = 0.0;
    for (int i = 0; i < n_years; ++i) {
      const int year = params.start_year + i;
      const double subs =
          subscribers(params.n0, g, year, params.start_year, params.rounding, params.growth_delay);
      const double rev = subs * params.monthly_fee * 12.0;
      const double bytes = total_volume_bits(traffic.hours_for(year, band)) / 8.0;
      stored += bytes;
      const double cloud = cloud_cost(bytes, stored, subs, policy).total();
      revenue_out.push_back(rev);
      cloud_out.push_back(cloud);
      positive.push_back(rev);
      negative.push_back(cloud + (i == 0 ? capex_usd : 0.0));
    }
    return make_series(params.start_year, params.discount, std::move(positive), std::move(negative));
  };
  flow.low = band_flows(Band::Low, flow.revenue_low, flow.cloud_low);
  flow.high = band_flows(Band::High, flow.revenue_high, flow.cloud_high);
  return flow;
}

std::string cashflow_csv(const ScenarioCashFlow& flow) {
  std::string out =
      "year,revenue_low,revenue_high,cloud_cost_low,cloud_cost_high,sensor_capex,npv_low,npv_high,"
      "cum_npv_low,cum_npv_high\n";
  for (std::size_t i = 0; i < flow.low.years.size(); ++i) {
    out += fmt::format("{},{:.2f},{:.2f},{:.2f},{:.2f},{:.2f},{:.2f},{:.2f},{:.2f},{:.2f}\n",
                       flow.low.years[i], flow.revenue_low[i], flow.revenue_high[i],
                       flow.cloud_low[i], flow.cloud_high[i], i == 0 ? flow.capex : 0.0,
                       flow.low.npv[i], flow.high.npv[i], flow.low.cumulative[i],
                       flow.high.cumulative[i]);
  }
  return out;
}

}  // namespace sand::econ
