#ifndef STORMCLUST_KMEDOIDS_HPP
#define STORMCLUST_KMEDOIDS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stormclust/distance.hpp"

namespace stormclust {

/// Result of one K-medoids run.
///
/// Cluster c is represented by event `medoids[c]`; `assignments[e]` is the
/// cluster of event e. `cost_history` holds the configuration cost after each
/// assignment phase and never increases.
struct Clustering {
  std::size_t k = 0;
  std::vector<std::size_t> medoids;
  std::vector<std::size_t> assignments;
  double cost = 0.0;  ///< sum of distances to own medoid
  double sse = 0.0;   ///< sum of squared distances to own medoid
  std::size_t iterations = 0;
  bool converged = false;
  std::uint64_t seed = 0;
  std::vector<double> cost_history;

  /// Members of cluster c in ascending event order.
  std::vector<std::size_t> members(std::size_t c) const;
  std::vector<std::size_t> cluster_sizes() const;
};

/// How initial medoids are drawn.
enum class Seeding {
  uniform,    ///< k events sampled uniformly without replacement
  plus_plus,  ///< first uniform, then each next with probability proportional to squared distance
};

struct KMedoidsOptions {
  std::size_t max_iter = 100;
  Seeding seeding = Seeding::plus_plus;
};

/// Alternating K-medoids over a precomputed matrix.
///
/// Phase 1 assigns every event to its closest medoid (ties to the medoid with
/// the lower event index; a medoid always belongs to its own cluster). Phase 2
/// replaces each medoid by the member with the smallest summed distance to the
/// other members (ties to the lower event index). Stops when the medoid set is
/// unchanged or after max_iter rounds. Deterministic in (matrix, k, seed, options).
///
/// Throws ValidationError when k is 0 or exceeds the number of events, and
/// Error if the recorded cost ever increases.
Clustering kmedoids(const DistanceMatrix& matrix, std::size_t k, std::uint64_t seed, KMedoidsOptions options = {});

/// Runs kmedoids once per seed and keeps the lowest cost (ties: earliest seed in the list).
Clustering kmedoids_restarts(const DistanceMatrix& matrix, std::size_t k, std::span<const std::uint64_t> seeds,
                             KMedoidsOptions options = {});

/// Seeds 0, 1, ..., count-1.
std::vector<std::uint64_t> seed_range(std::size_t count, std::uint64_t first = 0);

/// Initial medoids for a run, exposed for tests.
std::vector<std::size_t> initial_medoids(const DistanceMatrix& matrix, std::size_t k, std::uint64_t seed,
                                         Seeding seeding);

/// Total and squared-total distance of every event to the medoid of its cluster.
double configuration_cost(const DistanceMatrix& matrix, std::span<const std::size_t> medoids,
                          std::span<const std::size_t> assignments);
double configuration_sse(const DistanceMatrix& matrix, std::span<const std::size_t> medoids,
                         std::span<const std::size_t> assignments);

}  // namespace stormclust

#endif
