#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "oracles.hpp"
#include "stormclust/preprocess.hpp"
#include "stormclust/rng.hpp"

using namespace stormclust;

namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double variance(std::span<const double> v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / static_cast<double>(v.size());
}

// Fixed input shared with the reference values below.
std::vector<double> reference_input() {
  std::vector<double> x(30);
  for (int i = 0; i < 30; ++i) x[i] = ((i * 37) % 23) / 7.0 + 0.1 * i;
  return x;
}

RawEvent event_from(std::span<const double> q, std::span<const double> c) {
  RawEvent e{"e", "s", {}, std::nullopt};
  for (std::size_t i = 0; i < q.size(); ++i) e.samples.push_back({static_cast<double>(i), q[i], c[i]});
  return e;
}

}  // namespace

TEST_CASE("Savitzky-Golay reproduces polynomials up to its order") {
  Rng rng(11);
  for (int order : {2, 3, 4}) {
    for (int window : {5, 13, 21}) {
      for (int degree = 0; degree <= order; ++degree) {
        std::vector<double> coeff(degree + 1);
        for (auto& c : coeff) c = rng.uniform(-2.0, 2.0);
        std::vector<double> y(50);
        for (int i = 0; i < 50; ++i) {
          const double t = i / 49.0;
          double v = 0.0;
          for (int d = degree; d >= 0; --d) v = v * t + coeff[d];
          y[i] = v;
        }
        const auto out = savitzky_golay(y, {order, window});
        INFO("order " << order << " window " << window << " degree " << degree);
        CHECK(max_abs_diff(out, y) <= 1e-9);
      }
    }
  }
}

TEST_CASE("Savitzky-Golay t squared, order 3 window 21") {
  std::vector<double> y(50);
  for (int i = 0; i < 50; ++i) y[i] = static_cast<double>(i) * i;
  CHECK(max_abs_diff(savitzky_golay(y, {3, 21}), y) <= 1e-9);
}

TEST_CASE("Savitzky-Golay constant and noise") {
  const std::vector<double> five(40, 5.0);
  CHECK(max_abs_diff(savitzky_golay(five, {3, 21}), five) <= 1e-12);

  Rng rng(3);
  std::vector<double> noise(200);
  for (auto& v : noise) v = rng.normal();
  CHECK(variance(savitzky_golay(noise, {3, 21})) < variance(noise));
}

TEST_CASE("Savitzky-Golay matches independently computed reference values") {
  // Values from a least-squares reference with polynomial edge fitting.
  const auto x = reference_input();
  const std::array<std::size_t, 6> at{0, 1, 5, 14, 28, 29};
  const std::array<double, 6> ref_3_21{0.9468150896722304, 1.1655534941249222, 1.948936193297098,
                                       3.195918367346897,  4.23537414965986,   4.4596784168212675};
  const std::array<double, 6> ref_2_5{0.18775510204081436, 1.3489795918367327, 1.4877551020408148,
                                      3.114285714285712,   4.2571428571428545, 4.3857142857142835};
  const auto a = savitzky_golay(x, {3, 21});
  const auto b = savitzky_golay(x, {2, 5});
  for (std::size_t i = 0; i < at.size(); ++i) {
    CHECK(a[at[i]] == doctest::Approx(ref_3_21[i]).epsilon(1e-12));
    CHECK(b[at[i]] == doctest::Approx(ref_2_5[i]).epsilon(1e-12));
  }
}

TEST_CASE("Savitzky-Golay configuration errors") {
  const std::vector<double> y(10, 1.0);
  CHECK_THROWS_AS(savitzky_golay(y, {3, 21}), ConfigError);
  CHECK_THROWS_AS(savitzky_golay(std::vector<double>(50, 1.0), {3, 20}), ConfigError);
  CHECK_THROWS_AS(savitzky_golay(std::vector<double>(50, 1.0), {5, 5}), ConfigError);
  CHECK_THROWS_AS(savitzky_golay(std::vector<double>(50, 1.0), {-1, 5}), ConfigError);
}

TEST_CASE("kernel centre row is symmetric and sums to one") {
  const SavitzkyGolayKernel k({3, 21});
  const auto w = k.weights(10);
  CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 0; i < 21; ++i) CHECK(w[i] == doctest::Approx(w[20 - i]).epsilon(1e-12));
}

TEST_CASE("spline reproduces linear data") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 4 + rng.uniform_index(60);
    std::vector<double> t(n), v(n);
    double acc = rng.uniform(-5.0, 5.0);
    for (std::size_t i = 0; i < n; ++i) {
      acc += rng.uniform(0.1, 3.0);
      t[i] = acc;
      v[i] = 2.0 * t[i];
    }
    const auto out = resample_spline(t, v, 50);
    REQUIRE(out.size() == 50);
    for (std::size_t i = 0; i < 50; ++i) {
      const double ti = t.front() + (t.back() - t.front()) * static_cast<double>(i) / 49.0;
      CHECK(std::abs(out[i] - 2.0 * ti) <= 1e-9);
    }
  }
}

TEST_CASE("spline constant, sine and idempotence") {
  std::vector<double> t(30), c(30, 4.5);
  std::iota(t.begin(), t.end(), 0.0);
  for (double v : resample_spline(t, c, 50)) CHECK(v == doctest::Approx(4.5).epsilon(1e-12));

  std::vector<double> ts(200), s(200);
  for (int i = 0; i < 200; ++i) {
    ts[i] = 2.0 * std::numbers::pi * i / 199.0;
    s[i] = std::sin(ts[i]);
  }
  const auto r = resample_spline(ts, s, 50);
  for (int i = 0; i < 50; ++i) CHECK(std::abs(r[i] - std::sin(2.0 * std::numbers::pi * i / 49.0)) < 1e-3);

  Rng rng(9);
  std::vector<double> u(50), y(50);
  for (int i = 0; i < 50; ++i) {
    u[i] = i;
    y[i] = rng.uniform01();
  }
  CHECK(max_abs_diff(resample_spline(u, y, 50), y) <= 1e-9);
}

TEST_CASE("natural spline matches an independent reference") {
  const std::vector<double> t{0, 1, 2.5, 4, 7};
  const std::vector<double> v{0.0, 2.0, 1.0, 3.0, -1.0};
  const std::array<double, 8> ref{0.0, 2.0, 1.3011879804332631, 1.4220824598183088,
                                  3.0, 2.994409503843466, 1.395527603074773, -0.9999999999999996};
  const auto out = resample_spline(t, v, 8);
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(out[i] == doctest::Approx(ref[i]).epsilon(1e-12));
}

TEST_CASE("spline input errors") {
  const std::vector<double> t{0, 1, 1, 2}, v{1, 2, 3, 4};
  CHECK_THROWS_AS(resample_spline(t, v, 50), ValidationError);
  const std::vector<double> t3{0, 1, 2}, v3{1, 2, 3};
  CHECK_THROWS_AS(resample_spline(t3, v3, 50), ValidationError);
}

TEST_CASE("normalize_unit") {
  const std::vector<double> a{2, 4, 6};
  const auto na = normalize_unit(a);
  CHECK(na[0] == 0.0);
  CHECK(na[1] == 0.5);
  CHECK(na[2] == 1.0);
  for (double v : normalize_unit(std::vector<double>{7, 7, 7})) CHECK(v == 0.0);

  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(2 + rng.uniform_index(100));
    for (auto& v : x) v = rng.uniform(-1e3, 1e3);
    const auto n = normalize_unit(x);
    CHECK(*std::min_element(n.begin(), n.end()) == 0.0);
    CHECK(*std::max_element(n.begin(), n.end()) == 1.0);
    CHECK(max_abs_diff(normalize_unit(n), n) <= 1e-12);
  }
}

TEST_CASE("preprocess_event output contract on random raw events") {
  Rng rng(1234);
  const PreprocessConfig cfg;
  for (int trial = 0; trial < 1000; ++trial) {
    RawEvent e{"e" + std::to_string(trial), "s", {}, std::nullopt};
    const std::size_t n = 4 + rng.uniform_index(150);
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      t += rng.uniform(1.0, 900.0);
      e.samples.push_back({t, rng.uniform(0.0, 50.0), rng.uniform(0.0, 2000.0)});
    }
    const auto p = preprocess_event(e, cfg);
    REQUIRE(p.discharge.size() == 50);
    REQUIRE(p.concentration.size() == 50);
    for (const auto* s : {&p.discharge, &p.concentration}) {
      const auto [lo, hi] = std::minmax_element(s->begin(), s->end());
      CHECK(std::abs(*lo) <= 1e-9);
      CHECK(std::abs(*hi - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("short events skip smoothing with a warning") {
  std::vector<double> q(15), c(15);
  for (int i = 0; i < 15; ++i) {
    q[i] = std::sin(i * 0.3);
    c[i] = i * 0.1;
  }
  const auto e = event_from(q, c);
  std::vector<std::string> warnings;
  const auto p = preprocess_event(e, {}, &warnings);
  CHECK(p.length() == 50);
  REQUIRE(warnings.size() == 1);
  // Unsmoothed resampling means the normalised knots still interpolate the raw shape.
  const auto direct = normalize_unit(resample_spline(e.times(), q, 50));
  CHECK(max_abs_diff(direct, p.discharge) <= 1e-12);
}

TEST_CASE("preprocessing is deterministic and thread-independent") {
  Rng rng(77);
  std::vector<RawEvent> events;
  for (int k = 0; k < 40; ++k) {
    RawEvent e{"e" + std::to_string(k), "s", {}, std::nullopt};
    for (int i = 0; i < 60; ++i) e.samples.push_back({i * 1.0, rng.uniform01(), rng.uniform01()});
    events.push_back(std::move(e));
  }
  const RawDataset raw(events);
  const auto a = preprocess_dataset(raw, {}, nullptr, 1);
  const auto b = preprocess_dataset(raw, {}, nullptr, 4);
  const auto c = preprocess_dataset(raw, {}, nullptr, 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].discharge == b[i].discharge);
    CHECK(a[i].concentration == b[i].concentration);
    CHECK(a[i].discharge == c[i].discharge);
  }
}

TEST_CASE("normalisation can be disabled") {
  std::vector<double> q(30), c(30);
  for (int i = 0; i < 30; ++i) {
    q[i] = 10.0 + i;
    c[i] = 5.0;
  }
  PreprocessConfig cfg;
  cfg.normalize = false;
  const auto p = preprocess_event(event_from(q, c), cfg);
  CHECK(p.discharge.front() == doctest::Approx(10.0));
  CHECK(p.discharge.back() == doctest::Approx(39.0));
  CHECK(p.concentration[7] == doctest::Approx(5.0));
}
