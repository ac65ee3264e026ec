#include "stormclust/kmedoids.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "stormclust/rng.hpp"

namespace stormclust {

std::vector<std::size_t> Clustering::members(std::size_t c) const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < assignments.size(); ++e) {
    if (assignments[e] == c) out.push_back(e);
  }
  return out;
}

std::vector<std::size_t> Clustering::cluster_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (const auto c : assignments) ++sizes[c];
  return sizes;
}

std::vector<std::uint64_t> seed_range(std::size_t count, std::uint64_t first) {
  std::vector<std::uint64_t> seeds(count);
  std::iota(seeds.begin(), seeds.end(), first);
  return seeds;
}

double configuration_cost(const DistanceMatrix& matrix, std::span<const std::size_t> medoids,
                          std::span<const std::size_t> assignments) {
  double cost = 0.0;
  for (std::size_t e = 0; e < assignments.size(); ++e) cost += matrix(e, medoids[assignments[e]]);
  return cost;
}

double configuration_sse(const DistanceMatrix& matrix, std::span<const std::size_t> medoids,
                         std::span<const std::size_t> assignments) {
  double sse = 0.0;
  for (std::size_t e = 0; e < assignments.size(); ++e) {
    const double d = matrix(e, medoids[assignments[e]]);
    sse += d * d;
  }
  return sse;
}

namespace {

void check_k(const DistanceMatrix& matrix, std::size_t k) {
  if (k == 0) throw ValidationError("k must be at least 1");
  if (k > matrix.size()) {
    throw ValidationError("k (" + std::to_string(k) + ") exceeds the number of events (" +
                          std::to_string(matrix.size()) + ")");
  }
}

std::vector<std::size_t> assign(const DistanceMatrix& matrix, std::span<const std::size_t> medoids) {
  const auto n = matrix.size();
  std::vector<std::size_t> owner(n, SIZE_MAX);  // cluster whose medoid is event e
  for (std::size_t c = 0; c < medoids.size(); ++c) owner[medoids[c]] = c;

  std::vector<std::size_t> assignments(n);
  for (std::size_t e = 0; e < n; ++e) {
    if (owner[e] != SIZE_MAX) {
      assignments[e] = owner[e];
      continue;
    }
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < medoids.size(); ++c) {
      const double d = matrix(e, medoids[c]);
      if (d < best_d || (d == best_d && medoids[c] < medoids[best])) {
        best = c;
        best_d = d;
      }
    }
    assignments[e] = best;
  }
  return assignments;
}

std::vector<std::size_t> update_medoids(const DistanceMatrix& matrix, std::size_t k,
                                        std::span<const std::size_t> assignments) {
  std::vector<std::vector<std::size_t>> clusters(k);
  for (std::size_t e = 0; e < assignments.size(); ++e) clusters[assignments[e]].push_back(e);

  std::vector<std::size_t> medoids(k);
  for (std::size_t c = 0; c < k; ++c) {
    const auto& members = clusters[c];
    double best_sum = std::numeric_limits<double>::infinity();
    for (const auto candidate : members) {  // ascending, so strict < keeps the lower index on ties
      double sum = 0.0;
      for (const auto other : members) sum += matrix(candidate, other);
      if (sum < best_sum) {
        best_sum = sum;
        medoids[c] = candidate;
      }
    }
  }
  return medoids;
}

}  // namespace

std::vector<std::size_t> initial_medoids(const DistanceMatrix& matrix, std::size_t k, std::uint64_t seed,
                                         Seeding seeding) {
  check_k(matrix, k);
  const auto n = matrix.size();
  Rng rng(seed);

  if (seeding == Seeding::uniform) {
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.uniform_index(n - i)]);
    pool.resize(k);
    return pool;
  }

  std::vector<std::size_t> medoids{rng.uniform_index(n)};
  std::vector<double> nearest(n);
  for (std::size_t e = 0; e < n; ++e) nearest[e] = matrix(e, medoids[0]);
  std::vector<bool> chosen(n, false);
  chosen[medoids[0]] = true;

  while (medoids.size() < k) {
    double total = 0.0;
    for (std::size_t e = 0; e < n; ++e) {
      if (!chosen[e]) total += nearest[e] * nearest[e];
    }
    std::size_t pick = SIZE_MAX;
    if (total > 0.0) {
      const double target = rng.uniform01() * total;
      double acc = 0.0;
      for (std::size_t e = 0; e < n; ++e) {
        if (chosen[e]) continue;
        acc += nearest[e] * nearest[e];
        if (nearest[e] > 0.0) pick = e;
        if (acc > target && nearest[e] > 0.0) break;
      }
    } else {
      // every remaining event duplicates a medoid; fall back to a uniform pick
      std::size_t r = rng.uniform_index(n - medoids.size());
      for (std::size_t e = 0; e < n; ++e) {
        if (chosen[e]) continue;
        if (r-- == 0) {
          pick = e;
          break;
        }
      }
    }
    medoids.push_back(pick);
    chosen[pick] = true;
    for (std::size_t e = 0; e < n; ++e) nearest[e] = std::min(nearest[e], matrix(e, pick));
  }
  return medoids;
}

Clustering kmedoids(const DistanceMatrix& matrix, std::size_t k, std::uint64_t seed, KMedoidsOptions options) {
  check_k(matrix, k);
  if (options.max_iter == 0) throw ValidationError("max_iter must be at least 1");

  Clustering result;
  result.k = k;
  result.seed = seed;
  result.medoids = initial_medoids(matrix, k, seed, options.seeding);
  result.assignments = assign(matrix, result.medoids);
  result.cost = configuration_cost(matrix, result.medoids, result.assignments);
  result.cost_history.push_back(result.cost);

  for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
    result.iterations = iter;
    auto next = update_medoids(matrix, k, result.assignments);
    if (next == result.medoids) {
      result.converged = true;
      break;
    }
    result.medoids = std::move(next);
    result.assignments = assign(matrix, result.medoids);
    const double cost = configuration_cost(matrix, result.medoids, result.assignments);
    const double previous = result.cost_history.back();
    if (cost > previous + 1e-12 * std::max(1.0, previous)) {
      throw Error(ErrorKind::validation, "k-medoids cost increased from " + std::to_string(previous) + " to " +
                                             std::to_string(cost) + " at iteration " + std::to_string(iter));
    }
    result.cost = cost;
    result.cost_history.push_back(cost);
  }
  result.sse = configuration_sse(matrix, result.medoids, result.assignments);
  return result;
}

Clustering kmedoids_restarts(const DistanceMatrix& matrix, std::size_t k, std::span<const std::uint64_t> seeds,
                             KMedoidsOptions options) {
  if (seeds.empty()) throw ValidationError("at least one seed is required");
  Clustering best = kmedoids(matrix, k, seeds.front(), options);
  for (std::size_t s = 1; s < seeds.size(); ++s) {
    auto run = kmedoids(matrix, k, seeds[s], options);
    if (run.cost < best.cost) best = std::move(run);
  }
  return best;
}

}  // namespace stormclust
