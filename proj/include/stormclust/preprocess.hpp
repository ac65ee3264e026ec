#ifndef STORMCLUST_PREPROCESS_HPP
#define STORMCLUST_PREPROCESS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stormclust/event_model.hpp"

namespace stormclust {

/// Savitzky-Golay filter shape: polynomial order and (odd) window length in samples.
struct SmoothingConfig {
  int order = 3;
  int window = 21;

  /// Throws ConfigError unless window is odd, positive and greater than order.
  void validate() const;
};

struct PreprocessConfig {
  SmoothingConfig smoothing;
  std::size_t target_length = 50;
  bool normalize = true;

  void validate() const;
};

/// Least-squares smoothing weights for one (order, window) pair.
///
/// Row p of the kernel holds the weights that evaluate the window's fitted
/// polynomial at window position p. The centre row is the classic
/// convolution kernel; the other rows serve the first and last half-window
/// of a series, where the polynomial of the edge window is evaluated instead
/// of shrinking the window.
class SavitzkyGolayKernel {
 public:
  explicit SavitzkyGolayKernel(SmoothingConfig config);

  const SmoothingConfig& config() const noexcept { return config_; }
  int window() const noexcept { return config_.window; }

  /// Weights for window position `position` in [0, window).
  std::span<const double> weights(int position) const;

  /// Filters a series with length >= window. Output has the same length.
  std::vector<double> apply(std::span<const double> series) const;

 private:
  SmoothingConfig config_;
  std::vector<double> weights_;  // window x window, row-major
};

/// Filters with a kernel drawn from a process-wide cache keyed by (order, window).
/// Throws ConfigError if the window is longer than the series.
std::vector<double> savitzky_golay(std::span<const double> series, const SmoothingConfig& config);

/// Fits a natural interpolating cubic spline through (times, values) and
/// evaluates it at `target_length` equally spaced times from the first to the
/// last knot inclusive. Endpoints reproduce the first and last values exactly.
std::vector<double> resample_spline(std::span<const double> times, std::span<const double> values,
                                    std::size_t target_length);

/// Min-max scales into [0, 1]. A constant series maps to all zeros.
std::vector<double> normalize_unit(std::span<const double> series);

/// smooth -> resample -> normalize, independently per variable.
///
/// Events shorter than the smoothing window are resampled unsmoothed and a
/// message is appended to `warnings` when it is non-null.
ProcessedEvent preprocess_event(const RawEvent& event, const PreprocessConfig& config,
                                std::vector<std::string>* warnings = nullptr);

/// Applies preprocess_event to every event, optionally across threads.
/// Output order and content do not depend on the thread count.
Dataset preprocess_dataset(const RawDataset& dataset, const PreprocessConfig& config,
                           std::vector<std::string>* warnings = nullptr, unsigned threads = 1);

}  // namespace stormclust

#endif
