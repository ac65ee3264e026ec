#include <doctest.h>

#include <algorithm>
#include <limits>
#include <set>

#include "oracles.hpp"
#include "stormclust/evaluation.hpp"
#include "stormclust/kmedoids.hpp"

using namespace stormclust;

namespace {

// Points of `groups` tight clusters on a line, far apart.
DistanceMatrix grouped_line(std::size_t groups, std::size_t per_group, Rng& rng, std::vector<std::size_t>* truth) {
  std::vector<double> x;
  for (std::size_t g = 0; g < groups; ++g) {
    for (std::size_t i = 0; i < per_group; ++i) {
      x.push_back(100.0 * static_cast<double>(g) + rng.uniform01());
      if (truth) truth->push_back(g);
    }
  }
  DistanceMatrix m(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) m.set(i, j, std::abs(x[i] - x[j]));
  }
  return m;
}

}  // namespace

TEST_CASE("phase optimality and monotone cost on random instances") {
  Rng rng(2024);
  for (int inst = 0; inst < 60; ++inst) {
    const std::size_t n = 2 + rng.uniform_index(29);
    const auto m = oracle::random_point_matrix(rng, n, inst % 2 == 0 ? 0 : 4);
    const std::size_t k = 1 + rng.uniform_index(std::min<std::size_t>(n, 6));
    for (const Seeding s : {Seeding::uniform, Seeding::plus_plus}) {
      const auto c = kmedoids(m, k, static_cast<std::uint64_t>(inst), {100, s});
      INFO("instance " << inst << " n=" << n << " k=" << k);
      REQUIRE(c.converged);
      CHECK(oracle::phase1_violation(m, c).empty());
      CHECK(oracle::phase2_violation(m, c).empty());
      CHECK(oracle::monotone_violation(c).empty());
      CHECK(c.cost == doctest::Approx(configuration_cost(m, c.medoids, c.assignments)).epsilon(1e-9));
      CHECK(c.sse == doctest::Approx(configuration_sse(m, c.medoids, c.assignments)).epsilon(1e-9));
      const auto sizes = c.cluster_sizes();
      CHECK(std::count(sizes.begin(), sizes.end(), 0u) == 0);
      CHECK(std::set<std::size_t>(c.medoids.begin(), c.medoids.end()).size() == k);
    }
  }
}

TEST_CASE("k equal to n and k equal to one") {
  Rng rng(8);
  const auto m = oracle::random_point_matrix(rng, 12);
  const auto all = kmedoids(m, 12, 3);
  CHECK(all.cost == 0.0);
  CHECK(all.iterations == 1);
  CHECK(all.converged);
  for (std::size_t c = 0; c < 12; ++c) CHECK(all.assignments[all.medoids[c]] == c);

  const auto one = kmedoids(m, 1, 5);
  std::size_t best = 0;
  double best_sum = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 12; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < 12; ++j) s += m(i, j);
    if (s < best_sum) {
      best_sum = s;
      best = i;
    }
  }
  CHECK(one.medoids[0] == best);
  CHECK(one.cost == doctest::Approx(best_sum));
}

TEST_CASE("two separated groups are recovered for every seed") {
  Rng rng(17);
  std::vector<std::size_t> truth;
  const auto m = grouped_line(2, 10, rng, &truth);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (const Seeding s : {Seeding::uniform, Seeding::plus_plus}) {
      const auto c = kmedoids(m, 2, seed, {100, s});
      CHECK(rand_index(truth, c.assignments) == 1.0);
    }
  }
}

TEST_CASE("restarts keep the cheapest run") {
  Rng rng(31);
  std::vector<std::size_t> truth;
  const auto m = grouped_line(3, 8, rng, &truth);
  const auto seeds = seed_range(10);
  const auto best = kmedoids_restarts(m, 3, seeds);
  double worst = 0.0;
  double lowest = std::numeric_limits<double>::infinity();
  for (auto s : seeds) {
    const auto c = kmedoids(m, 3, s);
    worst = std::max(worst, c.cost);
    lowest = std::min(lowest, c.cost);
  }
  CHECK(best.cost == lowest);

  // Uniform draws that put two medoids in one group leave a worse local optimum.
  double uniform_worst = 0.0;
  for (std::uint64_t s = 0; s < 200; ++s) uniform_worst = std::max(uniform_worst, kmedoids(m, 3, s, {100, Seeding::uniform}).cost);
  const auto uniform_best = kmedoids_restarts(m, 3, seeds, {100, Seeding::uniform});
  CHECK(uniform_best.cost < uniform_worst);
  CHECK(rand_index(truth, uniform_best.assignments) == 1.0);

  const std::vector<std::uint64_t> single{4};
  const auto a = kmedoids_restarts(m, 3, single);
  const auto b = kmedoids(m, 3, 4);
  CHECK(a.medoids == b.medoids);
  CHECK(a.assignments == b.assignments);
  CHECK(a.cost == b.cost);
}

TEST_CASE("determinism") {
  Rng rng(99);
  const auto m = oracle::random_point_matrix(rng, 25);
  const auto a = kmedoids(m, 4, 123);
  const auto b = kmedoids(m, 4, 123);
  CHECK(a.medoids == b.medoids);
  CHECK(a.assignments == b.assignments);
  CHECK(a.iterations == b.iterations);
  CHECK(a.cost_history == b.cost_history);
  CHECK(initial_medoids(m, 4, 7, Seeding::uniform) == initial_medoids(m, 4, 7, Seeding::uniform));
}

TEST_CASE("initial medoids are distinct") {
  Rng rng(3);
  const auto m = oracle::random_point_matrix(rng, 20, 2);
  for (std::uint64_t s = 0; s < 50; ++s) {
    for (const Seeding sd : {Seeding::uniform, Seeding::plus_plus}) {
      const auto init = initial_medoids(m, 7, s, sd);
      CHECK(std::set<std::size_t>(init.begin(), init.end()).size() == 7);
    }
  }
}

TEST_CASE("assignment ties go to the lower medoid index") {
  // Event 1 sits midway between events 0 and 2.
  DistanceMatrix m(3);
  m.set(0, 1, 1.0);
  m.set(1, 2, 1.0);
  m.set(0, 2, 2.0);
  const auto c = kmedoids(m, 2, 0, {1, Seeding::uniform});
  if (std::find(c.medoids.begin(), c.medoids.end(), 1) == c.medoids.end()) {
    const std::size_t low = c.medoids[0] < c.medoids[1] ? 0 : 1;
    CHECK(c.assignments[1] == low);
  }
  CHECK(oracle::phase1_violation(m, c).empty());
}

TEST_CASE("invalid k") {
  DistanceMatrix m(3);
  CHECK_THROWS_AS(kmedoids(m, 0, 1), ValidationError);
  CHECK_THROWS_AS(kmedoids(m, 4, 1), ValidationError);
  CHECK_THROWS_AS(kmedoids_restarts(m, 2, std::vector<std::uint64_t>{}), ValidationError);
}
