#ifndef STORMCLUST_MODEL_SELECTION_HPP
#define STORMCLUST_MODEL_SELECTION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stormclust/event_model.hpp"
#include "stormclust/kmedoids.hpp"

namespace stormclust {

/// SSE of the best-of-restarts clustering for each k.
struct ElbowCurve {
  std::vector<std::size_t> ks;
  std::vector<double> sse;
  std::size_t seeds_per_k = 0;

  void validate() const;
};

/// Clusters once per (k, seed) and records the SSE of the lowest-cost run per k.
/// Different k values may be evaluated on separate threads; the curve does not
/// depend on `threads`. When `runs` is non-null it receives the chosen clustering per k.
ElbowCurve elbow_curve(const DistanceMatrix& matrix, std::span<const std::size_t> ks,
                       std::span<const std::uint64_t> seeds, KMedoidsOptions options = {}, unsigned threads = 1,
                       std::vector<Clustering>* runs = nullptr);

/// Knee of a decreasing, convex curve (Kneedle, offline variant).
///
/// x and y are min-max normalised, the difference curve (1 - y) - x is
/// formed, and the first local maximum after which the difference curve
/// drops below max - sensitivity * mean(dx) is returned as an index into x.
/// Throws ValidationError for fewer than three points.
std::optional<std::size_t> kneedle_index(std::span<const double> x, std::span<const double> y,
                                         double sensitivity = 1.0);

/// kneedle_index applied to an elbow curve, reported as a k value.
std::optional<std::size_t> kneedle(const ElbowCurve& curve, double sensitivity = 1.0);

struct HopkinsOptions {
  double sample_fraction = 0.1;
  std::size_t repetitions = 10;
  std::uint64_t seed = 0;
};

/// Minimum number of points accepted by hopkins.
inline constexpr std::size_t kHopkinsMinPoints = 10;

/// Hopkins clusterability statistic in Euclidean space, averaged over repetitions.
///
/// Each repetition samples m = ceil(fraction * n) real points without
/// replacement and m uniform points in the data's bounding box; with u the
/// uniform points' nearest-real distances and w the sampled points'
/// nearest-other-real distances, H = sum(u) / (sum(u) + sum(w)).
/// Near 0.5 for uniform data, near 1 for clustered data.
double hopkins_points(std::span<const std::vector<double>> points, const HopkinsOptions& options);

/// Hopkins over events flattened to (discharge..., concentration...) vectors.
double hopkins(const Dataset& dataset, const HopkinsOptions& options);

}  // namespace stormclust

#endif
