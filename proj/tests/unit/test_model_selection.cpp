#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "stormclust/model_selection.hpp"
#include "stormclust/rng.hpp"

using namespace stormclust;

TEST_CASE("kneedle on y = 1/k") {
  // Hand-run difference curve: (1 - y_n) - x_n = 0.3889, 0.5185, 0.5000, ... peaks at k = 3;
  // the threshold 0.5185 - 1/9 = 0.4074 is crossed at k = 6 before any later peak.
  std::vector<double> x, y;
  for (int k = 1; k <= 10; ++k) {
    x.push_back(k);
    y.push_back(1.0 / k);
  }
  CHECK(kneedle_index(x, y, 1.0).value() == 2);
}

TEST_CASE("kneedle on a straight line finds nothing") {
  const std::vector<double> x{1, 2, 3, 4, 5, 6};
  const std::vector<double> y{10, 8, 6, 4, 2, 0};
  CHECK_FALSE(kneedle_index(x, y).has_value());
  const std::vector<double> flat{3, 3, 3, 3};
  CHECK_FALSE(kneedle_index(std::span<const double>(x).first(4), flat).has_value());
}

TEST_CASE("kneedle on a steep drop then plateau, and affine invariance") {
  ElbowCurve curve{{1, 2, 3, 4, 5, 6, 7, 8, 9}, {100, 60, 35, 15, 13, 11.5, 10.5, 10, 9.6}, 1};
  CHECK(kneedle(curve).value() == 4);
  for (auto& v : curve.sse) v = 7.3 * v + 11.0;
  CHECK(kneedle(curve).value() == 4);
}

TEST_CASE("kneedle input errors") {
  const std::vector<double> two{1, 2};
  CHECK_THROWS_AS(kneedle_index(two, two), ValidationError);
  const std::vector<double> three{1, 2, 3};
  CHECK_THROWS_AS(kneedle_index(three, three, 0.0), ValidationError);
}

TEST_CASE("elbow curve") {
  Rng rng(12);
  const auto m = oracle::random_point_matrix(rng, 15);
  std::vector<std::size_t> ks;
  for (std::size_t k = 1; k <= 15; ++k) ks.push_back(k);
  const auto seeds = seed_range(3);
  const auto c1 = elbow_curve(m, ks, seeds, {}, 1);
  const auto c3 = elbow_curve(m, ks, seeds, {}, 3);
  CHECK(c1.sse == c3.sse);
  CHECK(c1.sse.back() == 0.0);
  CHECK(c1.sse.front() >= c1.sse.back());
  for (double v : c1.sse) CHECK(v >= 0.0);

  std::vector<Clustering> runs;
  elbow_curve(m, ks, seeds, {}, 2, &runs);
  REQUIRE(runs.size() == ks.size());
  CHECK(runs[3].k == 4);
  CHECK(runs[3].sse == c1.sse[3]);

  const std::vector<std::size_t> bad{1, 16};
  CHECK_THROWS_AS(elbow_curve(m, bad, seeds), ValidationError);
}

TEST_CASE("Hopkins under the uniform null") {
  Rng rng(8);
  std::vector<std::vector<double>> pts(800, std::vector<double>(100));
  for (auto& p : pts)
    for (auto& v : p) v = rng.uniform01();
  const double h = hopkins_points(pts, {});
  CHECK(h > 0.4);
  CHECK(h < 0.6);
}

TEST_CASE("Hopkins on duplicated clumps approaches one") {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 50; ++i) {
    pts.push_back({0.0, 0.0, 0.0});
    pts.push_back({1.0, 1.0, 1.0});
  }
  CHECK(hopkins_points(pts, {}) == 1.0);
}

TEST_CASE("Hopkins range, determinism and errors") {
  Rng rng(4);
  std::vector<std::vector<double>> pts(40, std::vector<double>(3));
  for (auto& p : pts)
    for (auto& v : p) v = rng.normal();
  const HopkinsOptions opt{0.2, 5, 9};
  const double a = hopkins_points(pts, opt);
  CHECK(a >= 0.0);
  CHECK(a <= 1.0);
  CHECK(a == hopkins_points(pts, opt));

  std::vector<std::vector<double>> few(9, std::vector<double>(2, 0.5));
  CHECK_THROWS_AS(hopkins_points(few, {}), ValidationError);
  std::vector<std::vector<double>> same(20, std::vector<double>(2, 0.5));
  CHECK_THROWS_AS(hopkins_points(same, {}), ValidationError);
  CHECK_THROWS_AS(hopkins_points(pts, {0.0, 5, 0}), ValidationError);
  CHECK_THROWS_AS(hopkins_points(pts, {0.5, 0, 0}), ValidationError);
}
