#ifndef STORMCLUST_DISTANCE_HPP
#define STORMCLUST_DISTANCE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stormclust/event_model.hpp"

namespace stormclust {

/// Multivariate series stored step-major: value(i, c) is variable c at step i.
class MultiSeries {
 public:
  MultiSeries() = default;
  MultiSeries(std::size_t length, std::size_t dims, std::vector<double> values);

  /// Builds a series from per-variable columns of equal length.
  static MultiSeries from_columns(std::span<const std::vector<double>> columns);
  static MultiSeries univariate(std::span<const double> values);
  /// Discharge and concentration as a two-variable series.
  static MultiSeries from_event(const ProcessedEvent& event);

  std::size_t length() const noexcept { return length_; }
  std::size_t dims() const noexcept { return dims_; }
  bool empty() const noexcept { return length_ == 0; }
  double operator()(std::size_t step, std::size_t dim) const { return values_[step * dims_ + dim]; }
  std::span<const double> step(std::size_t i) const { return {values_.data() + i * dims_, dims_}; }

  /// Variable `dim` as a univariate series.
  MultiSeries slice(std::size_t dim) const;

 private:
  std::size_t length_ = 0;
  std::size_t dims_ = 0;
  std::vector<double> values_;
};

enum class DistanceVariant { dependent, independent, euclidean };

std::string to_string(DistanceVariant v);
/// Accepts "dependent"/"dtw-d", "independent"/"dtw-i", "euclidean". Throws ConfigError otherwise.
DistanceVariant parse_distance_variant(const std::string& name);

struct DtwConfig {
  double window_fraction = 0.10;
  DistanceVariant variant = DistanceVariant::dependent;

  void validate() const;
};

/// Band half-width for a pair of lengths: ceil(window_fraction * max(n1, n2)),
/// raised to |n1 - n2| when that is larger (a message goes to `warning` if non-null).
std::size_t window_for(const DtwConfig& config, std::size_t n1, std::size_t n2, std::string* warning = nullptr);

/// Dependent multivariate DTW: one warping path shared by all variables, cell
/// cost the squared Euclidean distance between steps, |i - j| <= window.
/// Returns the square root of the minimal path sum.
///
/// Throws ValidationError on empty input or mismatched variable counts and
/// InfeasibleWindowError when window < |n1 - n2|.
double dtw_dependent(const MultiSeries& a, const MultiSeries& b, std::size_t window);

/// Sum over variables of univariate DTW, each with its own warping path.
double dtw_independent(const MultiSeries& a, const MultiSeries& b, std::size_t window);

/// Lock-step distance; lengths must match.
double euclidean(const MultiSeries& a, const MultiSeries& b);

/// Distance between two series under `config`, with the window derived from their lengths.
double distance(const MultiSeries& a, const MultiSeries& b, const DtwConfig& config);

/// Symmetric pairwise distance table with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n);
  /// Takes an n*n row-major table; throws ValidationError unless symmetric,
  /// finite, non-negative and zero on the diagonal.
  DistanceMatrix(std::size_t n, std::vector<double> values);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * n_, n_}; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double d);

  void validate() const;

  bool operator==(const DistanceMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// Pairwise distances between all events. Cells i < j are independent, so the
/// work is split across `threads`; the result is bitwise identical for any
/// thread count. `threads` = 0 uses the hardware concurrency.
DistanceMatrix distance_matrix(const Dataset& dataset, const DtwConfig& config, unsigned threads = 1,
                               std::vector<std::string>* warnings = nullptr);
DistanceMatrix distance_matrix(std::span<const MultiSeries> series, const DtwConfig& config, unsigned threads = 1,
                               std::vector<std::string>* warnings = nullptr);

/// n x n CSV with an event_id header row and column.
void save_distance_matrix(const DistanceMatrix& matrix, std::span<const std::string> event_ids,
                          const std::string& path);

}  // namespace stormclust

#endif
