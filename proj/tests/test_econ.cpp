#include <cmath>
#include <random>

#include "doctest.h"

#include "sand/econ.hpp"
#include "sand/error.hpp"

using namespace sand;
using namespace sand::econ;

namespace {

CloudPricingPolicy policy() {
  return parse_pricing(R"({
    "ingest": {"tiers": [{"upper_bytes": 100, "cost_usd": 10}, {"upper_bytes": 1000, "cost_usd": 50}]},
    "storage": {"usd_per_byte_month": 0.01},
    "analytics": {"fixed_usd": 7, "usd_per_byte": 0.5},
    "database": {"fixed_usd": 3, "usd_per_byte": 0.25},
    "reporting": {"usd_per_user": 2}
  })");
}

TrafficProjection flat_traffic(double manned) {
  TrafficProjection t;
  t.years.push_back({2024, {manned, 0.0, 0.0}});
  return t;
}

}  // namespace

TEST_CASE("message sizes") {
  const auto& m = default_messages();
  CHECK(m[0].message_bits == 1136);
  CHECK(m[1].message_bits == 432);
  CHECK(m[2].message_bits == 2648);
  CHECK(m[0].interface_standard == "ASTERIX CAT-021");
  CHECK(m[1].interface_standard == "ASTERIX CAT-129");
  CHECK(m[2].interface_standard == "ASTERIX CAT-062");
  for (const auto& s : m) CHECK(s.ping_rate_hz == 1.0);
}

TEST_CASE("data volume") {
  CHECK(data_volume_bits({0, 1, 0})[1] == 1555200.0);
  CHECK(data_volume_bits({0, 0, 1})[2] == 9532800.0);
  CHECK(total_volume_bits({0, 0, 0}) == 0.0);
  CHECK(total_volume_bits({1, 1, 1}) == 3600.0 * (1136 + 432 + 2648));
  auto slow = default_messages();
  slow[0].ping_rate_hz = 0.5;
  CHECK_THROWS_AS(data_volume_bits({1, 0, 0}, slow), Error);
}

TEST_CASE("revenue") {
  CHECK(revenue(100, 400, 0.2, 2024, 2024) == 480000.0);
  CHECK(revenue(100, 400, 0.1, 2025, 2024) == 480000.0);
  CHECK(revenue(100, 400, 0.2, 2033, 2024) == doctest::Approx(2064000.0).epsilon(1000.0 / 2064000.0));
  CHECK(revenue(100, 400, 0.1, 2033, 2024) == doctest::Approx(1032000.0).epsilon(1000.0 / 1032000.0));
  // Fractional subscribers: (1.2)^8 * 480000.
  CHECK(revenue(100, 400, 0.2, 2033, 2024, SubscriberRounding::None) ==
        doctest::Approx(480000.0 * std::pow(1.2, 8)).epsilon(1e-12));
  for (int y = 2024; y < 2040; ++y) CHECK(revenue(100, 400, 0.0, y, 2024) == 480000.0);
  CHECK(subscribers(100, 0.2, 2026, 2024, SubscriberRounding::None, 0) == doctest::Approx(144.0));
  CHECK(subscriber_rounding_from_name("nearest") == SubscriberRounding::Nearest);
  CHECK_THROWS_AS(subscriber_rounding_from_name("up"), Error);
}

TEST_CASE("revenue band and monotonicity") {
  for (int y = 2024; y <= 2040; ++y) {
    CHECK(revenue(100, 400, 0.1, y, 2024) <= revenue(100, 400, 0.2, y, 2024));
    CHECK(revenue(100, 250, 0.1, y, 2024) < revenue(100, 400, 0.1, y, 2024));
  }
}

TEST_CASE("ingest tiers") {
  const auto p = policy();
  CHECK(ingest_cost(0, p) == 10);
  CHECK(ingest_cost(99.9, p) == 10);
  CHECK(ingest_cost(100, p) == 50);  // threshold belongs to the higher tier
  try {
    ingest_cost(1000, p);
    FAIL("expected VolumeAboveTopTier");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::VolumeAboveTopTier);
  }
  auto q = p;
  q.ingest_overflow_usd_per_byte = 0.1;
  CHECK(ingest_cost(1000, q) == 50);
  CHECK(ingest_cost(1100, q) == doctest::Approx(60));
  // Nondecreasing step function.
  double prev = 0;
  for (double v = 0; v < 2000; v += 3.7) {
    const double c = ingest_cost(v, q);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("cloud cost components") {
  const auto p = policy();
  const auto zero = cloud_cost(0, 0, 0, p);
  CHECK(zero.total() == 10 + 7 + 3);
  CHECK(zero.storage == 0);
  CHECK(zero.reporting == 0);
  const auto a = cloud_cost(40, 40, 5, p);
  const auto b = cloud_cost(80, 40, 5, p);
  CHECK(b.analytics - 7 == 2 * (a.analytics - 7));
  CHECK(b.database - 3 == 2 * (a.database - 3));
  CHECK(a.storage == doctest::Approx(0.01 * 12 * 40));
  CHECK(a.reporting == 10);
}

TEST_CASE("pricing validation") {
  CHECK_THROWS_AS(parse_pricing("{}"), Error);
  try {
    parse_pricing(R"({"ingest":{"tiers":[{"upper_bytes":10,"cost_usd":1},{"upper_bytes":10,"cost_usd":2}]},
      "storage":{"usd_per_byte_month":0},"analytics":{"fixed_usd":0,"usd_per_byte":0},
      "database":{"fixed_usd":0,"usd_per_byte":0},"reporting":{"usd_per_user":0}})");
    FAIL("expected InvariantViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvariantViolation);
  }
}

TEST_CASE("npv spot checks") {
  auto s = make_series(2024, 0.0, {1, 1}, {0, 0});
  CHECK(s.cumulative == std::vector<double>{1, 2});
  s = make_series(2024, 0.10, {0, 1}, {0, 0});
  CHECK(s.npv[1] == doctest::Approx(0.909091).epsilon(1e-6));
  CHECK(std::abs(s.npv[1] - 1 / 1.1) < 1e-9);
  s = make_series(2024, 0.0, {0, 1, 1, 1, 1}, {3, 0, 0, 0, 0});
  CHECK(break_even_year(s) == 2027);
  s = make_series(2024, 0.0, {0, 0}, {1, 1});
  CHECK_FALSE(break_even_year(s).has_value());
}

TEST_CASE("npv is linear in the flows") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> f(-1000, 1000);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> p1(8), n1(8), p2(8), n2(8), ps(8), ns(8);
    for (int t = 0; t < 8; ++t) {
      p1[t] = f(rng), n1[t] = f(rng), p2[t] = f(rng), n2[t] = f(rng);
      ps[t] = p1[t] + p2[t], ns[t] = n1[t] + n2[t];
    }
    const auto a = make_series(2024, 0.1, p1, n1), b = make_series(2024, 0.1, p2, n2);
    const auto s = make_series(2024, 0.1, ps, ns);
    for (int t = 0; t < 8; ++t) CHECK(s.npv[t] == doctest::Approx(a.npv[t] + b.npv[t]).epsilon(1e-9));
  }
}

TEST_CASE("scenario npv") {
  const auto p = policy();
  // Keep yearly bytes under the top tier: 0 hours.
  const auto traffic = flat_traffic(0.0);
  EconParams params;
  const auto zero = scenario_npv(0.0, traffic, p, params);
  REQUIRE(zero.low.years.size() == 10);
  CHECK(zero.low.years.front() == 2024);
  CHECK(zero.low.years.back() == 2033);
  CHECK(zero.break_even_low() == 2024);
  CHECK(zero.revenue_low[0] == 480000.0);
  CHECK(zero.revenue_high[0] == 480000.0);
  CHECK(zero.revenue_high.back() == 2064000.0);
  CHECK(zero.revenue_low.back() == 1032000.0);

  const auto huge = scenario_npv(125.28e6, traffic, p, params);
  CHECK_FALSE(huge.break_even_low().has_value());
  CHECK_FALSE(huge.break_even_high().has_value());
  CHECK(huge.low.negative[0] == doctest::Approx(125.28e6 + huge.cloud_low[0]));

  const auto mid = scenario_npv(2.0e6, traffic, p, params);
  for (std::size_t t = 0; t < mid.low.years.size(); ++t) {
    CHECK(mid.high.cumulative[t] >= mid.low.cumulative[t]);
  }
}

TEST_CASE("break-even is nonincreasing in fee and subscribers") {
  const auto p = policy();
  const auto traffic = flat_traffic(0.0);
  auto year = [](const ScenarioCashFlow& f) { return f.break_even_low().value_or(9999); };
  for (double capex : {0.5e6, 1.5e6, 3e6, 6e6}) {
    int prev = 100000;
    for (double fee : {100.0, 250.0, 400.0, 600.0}) {
      EconParams e;
      e.monthly_fee = fee;
      const int y = year(scenario_npv(capex, traffic, p, e));
      CHECK(y <= prev);
      prev = y;
    }
    prev = 100000;
    for (double n0 : {25.0, 50.0, 100.0, 200.0}) {
      EconParams e;
      e.n0 = n0;
      const int y = year(scenario_npv(capex, traffic, p, e));
      CHECK(y <= prev);
      prev = y;
    }
  }
}

TEST_CASE("traffic projection") {
  const auto t = parse_traffic(R"({"years":[{"year":2024,"cooperative_manned":10},
    {"year":2026,"cooperative_manned":20,"noncooperative":4}],"growth_low":0.1,"growth_high":0.5})");
  CHECK(t.hours_for(2020, Band::Low)[0] == 10);
  CHECK(t.hours_for(2025, Band::Low)[0] == doctest::Approx(11));
  CHECK(t.hours_for(2026, Band::High)[2] == 4);
  CHECK(t.hours_for(2028, Band::High)[0] == doctest::Approx(45));
  CHECK_THROWS_AS(parse_traffic(R"({"years":[{"year":2024},{"year":2024}]})"), Error);
  CHECK_THROWS_AS(parse_traffic(R"({"years":[],"growth_low":0.3,"growth_high":0.1})"), Error);
}

TEST_CASE("cash flow csv") {
  const auto flow = scenario_npv(1000.0, flat_traffic(0.0), policy(), EconParams{});
  const auto csv = cashflow_csv(flow);
  CHECK(csv.rfind("year,revenue_low,revenue_high,cloud_cost_low,cloud_cost_high,sensor_capex,"
                  "npv_low,npv_high,cum_npv_low,cum_npv_high\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
}
