#include "stormclust/model_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "stormclust/rng.hpp"

namespace stormclust {

void ElbowCurve::validate() const {
  if (ks.size() != sse.size()) throw ValidationError("elbow curve: ks and sse differ in length");
  for (std::size_t i = 1; i < ks.size(); ++i) {
    if (ks[i] <= ks[i - 1]) throw ValidationError("elbow curve: ks must be strictly ascending");
  }
}

ElbowCurve elbow_curve(const DistanceMatrix& matrix, std::span<const std::size_t> ks,
                       std::span<const std::uint64_t> seeds, KMedoidsOptions options, unsigned threads,
                       std::vector<Clustering>* runs) {
  if (ks.empty()) throw ValidationError("elbow curve needs at least one k");
  if (seeds.empty()) throw ValidationError("elbow curve needs at least one seed");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] == 0 || ks[i] > matrix.size()) {
      throw ValidationError("k = " + std::to_string(ks[i]) + " is outside [1, " + std::to_string(matrix.size()) + "]");
    }
    if (i > 0 && ks[i] <= ks[i - 1]) throw ValidationError("k values must be strictly ascending");
  }

  std::vector<Clustering> best(ks.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(ks.size()));
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned t) {
    try {
      for (std::size_t i = t; i < ks.size(); i += threads) best[i] = kmedoids_restarts(matrix, ks[i], seeds, options);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ElbowCurve curve;
  curve.ks.assign(ks.begin(), ks.end());
  curve.seeds_per_k = seeds.size();
  for (const auto& c : best) curve.sse.push_back(c.sse);
  if (runs) *runs = std::move(best);
  return curve;
}

std::optional<std::size_t> kneedle_index(std::span<const double> x, std::span<const double> y, double sensitivity) {
  const auto n = x.size();
  if (n != y.size()) throw ValidationError("kneedle: x and y differ in length");
  if (n < 3) throw ValidationError("kneedle needs at least three points, got " + std::to_string(n));
  if (!(sensitivity > 0.0)) throw ValidationError("kneedle sensitivity must be positive");

  const auto [x_lo, x_hi] = std::minmax_element(x.begin(), x.end());
  const auto [y_lo, y_hi] = std::minmax_element(y.begin(), y.end());
  const double x_range = *x_hi - *x_lo;
  const double y_range = *y_hi - *y_lo;
  if (!(x_range > 0.0) || !(y_range > 0.0)) return std::nullopt;

  std::vector<double> xn(n), diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    xn[i] = (x[i] - *x_lo) / x_range;
    const double yn = (y[i] - *y_lo) / y_range;
    diff[i] = (1.0 - yn) - xn[i];
  }
  double mean_step = 0.0;
  for (std::size_t i = 1; i < n; ++i) mean_step += xn[i] - xn[i - 1];
  mean_step /= static_cast<double>(n - 1);

  std::vector<std::size_t> maxima;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (diff[i] > diff[i - 1] && diff[i] >= diff[i + 1]) maxima.push_back(i);
  }

  for (std::size_t m = 0; m < maxima.size(); ++m) {
    const std::size_t peak = maxima[m];
    const double threshold = diff[peak] - sensitivity * mean_step;
    const std::size_t stop = m + 1 < maxima.size() ? maxima[m + 1] : n;
    for (std::size_t j = peak + 1; j < stop; ++j) {
      if (diff[j] < threshold) return peak;
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> kneedle(const ElbowCurve& curve, double sensitivity) {
  curve.validate();
  std::vector<double> x(curve.ks.begin(), curve.ks.end());
  const auto idx = kneedle_index(x, curve.sse, sensitivity);
  if (!idx) return std::nullopt;
  return curve.ks[*idx];
}

namespace {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

}  // namespace

double hopkins_points(std::span<const std::vector<double>> points, const HopkinsOptions& options) {
  const auto n = points.size();
  if (n < kHopkinsMinPoints) {
    throw ValidationError("Hopkins statistic needs at least " + std::to_string(kHopkinsMinPoints) + " points, got " +
                          std::to_string(n));
  }
  if (!(options.sample_fraction > 0.0 && options.sample_fraction <= 1.0)) {
    throw ValidationError("Hopkins sample_fraction must lie in (0, 1]");
  }
  if (options.repetitions == 0) throw ValidationError("Hopkins repetitions must be positive");
  const auto dims = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dims) throw ValidationError("Hopkins points differ in dimension");
  }

  std::vector<double> lo(points.front()), hi(points.front());
  for (const auto& p : points) {
    for (std::size_t d = 0; d < dims; ++d) {
      lo[d] = std::min(lo[d], p[d]);
      hi[d] = std::max(hi[d], p[d]);
    }
  }

  const auto m = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(options.sample_fraction * static_cast<double>(n) - 1e-9)), 1, n);
  Rng rng(options.seed);
  std::vector<std::size_t> pool(n);
  std::vector<double> probe(dims);
  double total = 0.0;

  for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < m; ++i) std::swap(pool[i], pool[i + rng.uniform_index(n - i)]);

    double sum_u = 0.0;
    double sum_w = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t d = 0; d < dims; ++d) probe[d] = rng.uniform(lo[d], hi[d]);
      double best_u = std::numeric_limits<double>::infinity();
      for (const auto& p : points) best_u = std::min(best_u, squared_distance(probe, p));
      sum_u += std::sqrt(best_u);

      const auto& sample = points[pool[i]];
      double best_w = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != pool[i]) best_w = std::min(best_w, squared_distance(sample, points[j]));
      }
      sum_w += std::sqrt(best_w);
    }
    if (!(sum_u + sum_w > 0.0)) throw ValidationError("Hopkins statistic is undefined: all points coincide");
    total += sum_u / (sum_u + sum_w);
  }
  return total / static_cast<double>(options.repetitions);
}

double hopkins(const Dataset& dataset, const HopkinsOptions& options) {
  std::vector<std::vector<double>> points;
  points.reserve(dataset.size());
  for (const auto& ev : dataset) {
    std::vector<double> v(ev.discharge);
    v.insert(v.end(), ev.concentration.begin(), ev.concentration.end());
    points.push_back(std::move(v));
  }
  return hopkins_points(points, options);
}

}  // namespace stormclust
