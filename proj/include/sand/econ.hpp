#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sand::econ {

enum class AircraftClass { CooperativeManned = 0, CooperativeUncrewed = 1, NonCooperative = 2 };
inline constexpr std::size_t kAircraftClasses = 3;

std::string_view aircraft_class_key(AircraftClass c);

struct MessageSpec {
  AircraftClass aircraft_class;
  std::string interface_standard;
  int data_items = 0;
  long long message_bits = 0;
  double ping_rate_hz = 1.0;
};

// Surveillance message sizes per aircraft class (ASTERIX CAT-021/129/062).
const std::array<MessageSpec, kAircraftClasses>& default_messages();

using ClassHours = std::array<double, kAircraftClasses>;

// bits = hours * 3600 * ping_rate * message_bits, per class.
std::array<double, kAircraftClasses> data_volume_bits(
    const ClassHours& hours,
    const std::array<MessageSpec, kAircraftClasses>& specs = default_messages());
double total_volume_bits(const ClassHours& hours,
                         const std::array<MessageSpec, kAircraftClasses>& specs = default_messages());

enum class Band { Low, High };

struct TrafficProjection {
  struct Year {
    int year = 0;
    ClassHours hours{};
  };
  std::vector<Year> years;  // strictly increasing
  double growth_low = 0.0;  // applied beyond the last listed year
  double growth_high = 0.0;

  // Hours for `year`; before the first listed year the first row is used.
  ClassHours hours_for(int year, Band band) const;
};

TrafficProjection parse_traffic(std::string_view json_text);
TrafficProjection load_traffic(const std::filesystem::path& path);

struct Tier {
  double upper_bytes = 0.0;  // exclusive upper bound of this tier
  double cost_usd = 0.0;
};

struct CloudPricingPolicy {
  std::vector<Tier> ingest_tiers;
  std::optional<double> ingest_overflow_usd_per_byte;
  double storage_usd_per_byte_month = 0.0;
  double analytics_fixed_usd = 0.0;
  double analytics_usd_per_byte = 0.0;
  double database_fixed_usd = 0.0;
  double database_usd_per_byte = 0.0;
  double reporting_usd_per_user = 0.0;

  // Throws InvariantViolation on negative rates or non-increasing tiers.
  void validate() const;
};

CloudPricingPolicy parse_pricing(std::string_view json_text);
CloudPricingPolicy load_pricing(const std::filesystem::path& path);

struct CloudCost {
  double ingest = 0.0;
  double storage = 0.0;
  double analytics = 0.0;
  double database = 0.0;
  double reporting = 0.0;
  double total() const { return ingest + storage + analytics + database + reporting; }
};

// Step lookup: volume v falls in the first tier with v < upper_bytes. Throws
// VolumeAboveTopTier past the last tier unless an overflow rate is set.
double ingest_cost(double volume_bytes, const CloudPricingPolicy& policy);

// Cost of one year; storage is billed on everything retained so far.
CloudCost cloud_cost(double year_volume_bytes, double stored_bytes, double subscribers,
                     const CloudPricingPolicy& policy);

enum class SubscriberRounding { None, Ceil, Nearest };
std::string_view subscriber_rounding_name(SubscriberRounding r);
SubscriberRounding subscriber_rounding_from_name(std::string_view name);

// n0 * (1 + g)^max(0, year - start_year - delay), optionally rounded.
double subscribers(double n0, double growth, int year, int start_year,
                   SubscriberRounding rounding = SubscriberRounding::Ceil, int delay = 1);
// 12 * monthly_fee * subscribers(...)
double revenue(double n0, double monthly_fee, double growth, int year, int start_year,
               SubscriberRounding rounding = SubscriberRounding::Ceil, int delay = 1);

struct CashFlowSeries {
  int start_year = 0;
  double discount = 0.0;
  std::vector<int> years;
  std::vector<double> positive;
  std::vector<double> negative;
  std::vector<double> npv;
  std::vector<double> cumulative;
};

// Fills npv[t] = (positive - negative) / (1 + discount)^(year - start_year)
// and its prefix sums.
void compute_npv(CashFlowSeries& series);
std::optional<int> break_even_year(const CashFlowSeries& series);

CashFlowSeries make_series(int start_year, double discount, std::vector<double> positive,
                           std::vector<double> negative);

struct EconParams {
  double n0 = 100.0;
  double monthly_fee = 400.0;
  double growth_low = 0.10;
  double growth_high = 0.20;
  double discount = 0.10;
  int horizon = 10;  // years in the series, start_year first
  int start_year = 2024;
  int growth_delay = 1;  // years before growth starts compounding
  SubscriberRounding rounding = SubscriberRounding::Ceil;

  void validate() const;
};

struct ScenarioCashFlow {
  double capex = 0.0;
  std::vector<double> revenue_low, revenue_high;
  std::vector<double> cloud_low, cloud_high;
  CashFlowSeries low, high;

  std::optional<int> break_even_low() const { return break_even_year(low); }
  std::optional<int> break_even_high() const { return break_even_year(high); }
};

// Capex is charged at start_year; cloud costs and revenue every year.
ScenarioCashFlow scenario_npv(double capex_usd, const TrafficProjection& traffic,
                              const CloudPricingPolicy& policy, const EconParams& params);

// Header: year,revenue_low,revenue_high,cloud_cost_low,cloud_cost_high,
// sensor_capex,npv_low,npv_high,cum_npv_low,cum_npv_high
std::string cashflow_csv(const ScenarioCashFlow& flow);

}  // namespace sand::econ
