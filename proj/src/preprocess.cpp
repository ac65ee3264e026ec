#include "stormclust/preprocess.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <utility>

namespace stormclust {

void SmoothingConfig::validate() const {
  if (order < 0) throw ConfigError("smoothing order must be non-negative");
  if (window <= 0 || window % 2 == 0) {
    throw ConfigError("smoothing window must be a positive odd integer, got " + std::to_string(window));
  }
  if (window <= order) {
    throw ConfigError("smoothing window (" + std::to_string(window) + ") must exceed the order (" +
                      std::to_string(order) + ")");
  }
}

void PreprocessConfig::validate() const {
  smoothing.validate();
  if (target_length < 2) throw ConfigError("target_length must be at least 2");
}

SavitzkyGolayKernel::SavitzkyGolayKernel(SmoothingConfig config) : config_(config) {
  config_.validate();
  const int w = config_.window;
  const int terms = config_.order + 1;
  const double half = (w - 1) / 2.0;

  // Abscissae scaled into [-1, 1] keep the normal equations well conditioned.
  Eigen::MatrixXd vander(w, terms);
  for (int r = 0; r < w; ++r) {
    const double x = half > 0 ? (r - half) / half : 0.0;
    double p = 1.0;
    for (int c = 0; c < terms; ++c) {
      vander(r, c) = p;
      p *= x;
    }
  }
  // (V^T V)^{-1} V^T maps window samples to polynomial coefficients.
  const Eigen::MatrixXd gram = vander.transpose() * vander;
  const Eigen::MatrixXd projector = gram.ldlt().solve(vander.transpose());
  const Eigen::MatrixXd eval = vander * projector;  // row p: weights evaluating the fit at position p

  weights_.resize(static_cast<std::size_t>(w) * w);
  for (int p = 0; p < w; ++p) {
    for (int k = 0; k < w; ++k) weights_[static_cast<std::size_t>(p) * w + k] = eval(p, k);
  }
}

std::span<const double> SavitzkyGolayKernel::weights(int position) const {
  return std::span<const double>(weights_).subspan(static_cast<std::size_t>(position) * config_.window,
                                                   static_cast<std::size_t>(config_.window));
}

std::vector<double> SavitzkyGolayKernel::apply(std::span<const double> series) const {
  const auto n = series.size();
  const auto w = static_cast<std::size_t>(config_.window);
  if (n < w) {
    throw ConfigError("smoothing window (" + std::to_string(w) + ") exceeds series length (" + std::to_string(n) + ")");
  }
  const auto half = w / 2;
  std::vector<double> out(n);

  auto dot = [&](std::span<const double> weights, std::size_t start) {
    double acc = 0.0;
    for (std::size_t k = 0; k < w; ++k) acc += weights[k] * series[start + k];
    return acc;
  };

  for (std::size_t i = 0; i < half; ++i) out[i] = dot(weights(static_cast<int>(i)), 0);
  const auto centre = weights(static_cast<int>(half));
  for (std::size_t i = half; i + half < n; ++i) out[i] = dot(centre, i - half);
  for (std::size_t i = n - half; i < n; ++i) out[i] = dot(weights(static_cast<int>(i - (n - w))), n - w);
  return out;
}

namespace {

std::shared_ptr<const SavitzkyGolayKernel> cached_kernel(const SmoothingConfig& config) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const SavitzkyGolayKernel>> cache;
  const std::lock_guard lock(mutex);
  auto& slot = cache[{config.order, config.window}];
  if (!slot) slot = std::make_shared<const SavitzkyGolayKernel>(config);
  return slot;
}

}  // namespace

std::vector<double> savitzky_golay(std::span<const double> series, const SmoothingConfig& config) {
  config.validate();
  if (series.size() < static_cast<std::size_t>(config.window)) {
    throw ConfigError("smoothing window (" + std::to_string(config.window) + ") exceeds series length (" +
                      std::to_string(series.size()) + ")");
  }
  return cached_kernel(config)->apply(series);
}

std::vector<double> resample_spline(std::span<const double> times, std::span<const double> values,
                                    std::size_t target_length) {
  const auto n = times.size();
  if (n != values.size()) throw ValidationError("resample: times and values differ in length");
  if (n < kMinEventSamples) throw ValidationError("resample: at least 4 points are required");
  if (target_length < 2) throw ConfigError("resample: target length must be at least 2");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(times[i - 1] < times[i])) {
      throw ValidationError("resample: times must be strictly increasing (duplicate or unordered at index " +
                            std::to_string(i) + ")");
    }
  }

  // Natural spline second derivatives via the tridiagonal system (Thomas algorithm);
  // m[0] = m[n-1] = 0.
  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = times[i + 1] - times[i];
  std::vector<double> m(n, 0.0);
  {
    const std::size_t k = n - 2;  // interior unknowns
    std::vector<double> diag(k), upper(k), rhs(k);
    for (std::size_t r = 0; r < k; ++r) {
      const std::size_t i = r + 1;
      diag[r] = 2.0 * (h[i - 1] + h[i]);
      upper[r] = h[i];
      rhs[r] = 6.0 * ((values[i + 1] - values[i]) / h[i] - (values[i] - values[i - 1]) / h[i - 1]);
    }
    for (std::size_t r = 1; r < k; ++r) {
      const double f = h[r] / diag[r - 1];  // sub-diagonal entry of row r is h[r]
      diag[r] -= f * upper[r - 1];
      rhs[r] -= f * rhs[r - 1];
    }
    for (std::size_t r = k; r-- > 0;) {
      const double above = r + 1 < k ? upper[r] * m[r + 2] : 0.0;
      m[r + 1] = (rhs[r] - above) / diag[r];
    }
  }

  const double t0 = times.front();
  const double t1 = times.back();
  std::vector<double> out(target_length);
  std::size_t seg = 0;
  for (std::size_t q = 0; q < target_length; ++q) {
    const double t = t0 + (t1 - t0) * static_cast<double>(q) / static_cast<double>(target_length - 1);
    while (seg + 2 < n && t > times[seg + 1]) ++seg;
    const double a = times[seg + 1] - t;
    const double b = t - times[seg];
    const double hs = h[seg];
    out[q] = (m[seg] * a * a * a + m[seg + 1] * b * b * b) / (6.0 * hs) +
             (values[seg] / hs - m[seg] * hs / 6.0) * a + (values[seg + 1] / hs - m[seg + 1] * hs / 6.0) * b;
  }
  out.front() = values.front();
  out.back() = values.back();
  return out;
}

std::vector<double> normalize_unit(std::span<const double> series) {
  std::vector<double> out(series.size(), 0.0);
  if (series.empty()) return out;
  const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  const double min = *lo;
  const double range = *hi - min;
  if (!(range > 0.0)) return out;
  for (std::size_t i = 0; i < series.size(); ++i) out[i] = (series[i] - min) / range;
  return out;
}

ProcessedEvent preprocess_event(const RawEvent& event, const PreprocessConfig& config,
                                std::vector<std::string>* warnings) {
  config.validate();
  event.validate();

  const auto times = event.times();
  const bool smooth = event.samples.size() >= static_cast<std::size_t>(config.smoothing.window);
  if (!smooth && warnings) {
    warnings->push_back("event '" + event.event_id + "': " + std::to_string(event.samples.size()) +
                        " samples is shorter than the smoothing window (" + std::to_string(config.smoothing.window) +
                        "), smoothing skipped");
  }

  auto transform = [&](std::vector<double> values) {
    if (smooth) values = savitzky_golay(values, config.smoothing);
    values = resample_spline(times, values, config.target_length);
    if (config.normalize) values = normalize_unit(values);
    return values;
  };

  return ProcessedEvent{event.event_id, event.site_id, event.label, transform(event.discharge()),
                        transform(event.concentration())};
}

Dataset preprocess_dataset(const RawDataset& dataset, const PreprocessConfig& config,
                           std::vector<std::string>* warnings, unsigned threads) {
  config.validate();
  const auto n = dataset.size();
  std::vector<ProcessedEvent> out(n);
  std::vector<std::vector<std::string>> notes(n);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));

  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < n; i += stride) out[i] = preprocess_event(dataset[i], config, &notes[i]);
  };
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          try {
            work(t, threads);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  if (warnings) {
    for (auto& batch : notes) warnings->insert(warnings->end(), batch.begin(), batch.end());
  }
  return Dataset(std::move(out));
}

}  // namespace stormclust
