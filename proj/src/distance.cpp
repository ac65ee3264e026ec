#include "stormclust/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "stormclust/csv.hpp"

namespace stormclust {

MultiSeries::MultiSeries(std::size_t length, std::size_t dims, std::vector<double> values)
    : length_(length), dims_(dims), values_(std::move(values)) {
  if (values_.size() != length_ * dims_) throw ValidationError("series storage does not match length x dims");
}

MultiSeries MultiSeries::from_columns(std::span<const std::vector<double>> columns) {
  if (columns.empty()) return {};
  const auto n = columns.front().size();
  const auto m = columns.size();
  std::vector<double> values(n * m);
  for (std::size_t c = 0; c < m; ++c) {
    if (columns[c].size() != n) throw ValidationError("series variables differ in length");
    for (std::size_t i = 0; i < n; ++i) values[i * m + c] = columns[c][i];
  }
  return MultiSeries(n, m, std::move(values));
}

MultiSeries MultiSeries::univariate(std::span<const double> values) {
  return MultiSeries(values.size(), 1, std::vector<double>(values.begin(), values.end()));
}

MultiSeries MultiSeries::from_event(const ProcessedEvent& event) {
  const std::vector<double> cols[] = {event.discharge, event.concentration};
  return from_columns(cols);
}

MultiSeries MultiSeries::slice(std::size_t dim) const {
  std::vector<double> values(length_);
  for (std::size_t i = 0; i < length_; ++i) values[i] = (*this)(i, dim);
  return MultiSeries(length_, 1, std::move(values));
}

std::string to_string(DistanceVariant v) {
  switch (v) {
    case DistanceVariant::dependent: return "dependent";
    case DistanceVariant::independent: return "independent";
    case DistanceVariant::euclidean: return "euclidean";
  }
  return "unknown";
}

DistanceVariant parse_distance_variant(const std::string& name) {
  if (name == "dependent" || name == "dtw-d") return DistanceVariant::dependent;
  if (name == "independent" || name == "dtw-i") return DistanceVariant::independent;
  if (name == "euclidean") return DistanceVariant::euclidean;
  throw ConfigError("unknown distance variant '" + name + "' (expected dependent, independent or euclidean)");
}

void DtwConfig::validate() const {
  if (!(window_fraction >= 0.0 && window_fraction <= 1.0)) {
    throw ConfigError("window_fraction must lie in [0, 1]");
  }
}

std::size_t window_for(const DtwConfig& config, std::size_t n1, std::size_t n2, std::string* warning) {
  config.validate();
  const double raw = config.window_fraction * static_cast<double>(std::max(n1, n2));
  // 0.1 * 50 must give 5, not 6 from representation error
  auto window = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  const auto gap = n1 > n2 ? n1 - n2 : n2 - n1;
  if (window < gap) {
    if (warning) {
      *warning = "warping window " + std::to_string(window) + " raised to " + std::to_string(gap) +
                 " to cover the length difference";
    }
    window = gap;
  }
  return window;
}

namespace {

void check_pair(const MultiSeries& a, const MultiSeries& b) {
  if (a.empty() || b.empty()) throw ValidationError("DTW needs non-empty series");
  if (a.dims() != b.dims()) {
    throw ValidationError("series have different variable counts (" + std::to_string(a.dims()) + " vs " +
                          std::to_string(b.dims()) + ")");
  }
}

double squared_step_distance(const MultiSeries& a, std::size_t i, const MultiSeries& b, std::size_t j) {
  double acc = 0.0;
  const auto m = a.dims();
  for (std::size_t c = 0; c < m; ++c) {
    const double d = a(i, c) - b(j, c);
    acc += d * d;
  }
  return acc;
}

}  // namespace

double dtw_dependent(const MultiSeries& a, const MultiSeries& b, std::size_t window) {
  check_pair(a, b);
  const auto rows = a.length();
  const auto cols = b.length();
  const auto gap = rows > cols ? rows - cols : cols - rows;
  if (window < gap) {
    throw InfeasibleWindowError("warping window " + std::to_string(window) + " is smaller than the length difference " +
                                std::to_string(gap));
  }
  window = std::min(window, std::max(rows, cols));

  constexpr double inf = std::numeric_limits<double>::infinity();
  // Rolling rows over the band. Offset k = j - i + window holds D[i][j];
  // index 2*window+1 is a permanent +inf sentinel for the "up" lookup.
  const std::size_t width = 2 * window + 1;
  std::vector<double> prev(width + 1, inf);
  std::vector<double> curr(width + 1, inf);
  prev[window] = 0.0;  // D[0][0]

  for (std::size_t i = 1; i <= rows; ++i) {
    std::fill(curr.begin(), curr.end(), inf);
    const std::size_t j_lo = i > window ? i - window : 1;
    const std::size_t j_hi = std::min(cols, i + window);
    for (std::size_t j = j_lo; j <= j_hi; ++j) {
      const std::size_t k = j + window - i;
      const double left = k > 0 ? curr[k - 1] : inf;
      const double up = prev[k + 1];
      const double diag = prev[k];
      curr[k] = squared_step_distance(a, i - 1, b, j - 1) + std::min({diag, up, left});
    }
    std::swap(prev, curr);
  }
  return std::sqrt(prev[cols + window - rows]);
}

double dtw_independent(const MultiSeries& a, const MultiSeries& b, std::size_t window) {
  check_pair(a, b);
  double total = 0.0;
  for (std::size_t c = 0; c < a.dims(); ++c) total += dtw_dependent(a.slice(c), b.slice(c), window);
  return total;
}

double euclidean(const MultiSeries& a, const MultiSeries& b) {
  if (a.dims() != b.dims()) throw ValidationError("series have different variable counts");
  if (a.length() != b.length()) {
    throw ValidationError("Euclidean distance needs equal lengths (" + std::to_string(a.length()) + " vs " +
                          std::to_string(b.length()) + ")");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.length(); ++i) acc += squared_step_distance(a, i, b, i);
  return std::sqrt(acc);
}

double distance(const MultiSeries& a, const MultiSeries& b, const DtwConfig& config) {
  switch (config.variant) {
    case DistanceVariant::euclidean: return euclidean(a, b);
    case DistanceVariant::independent: return dtw_independent(a, b, window_for(config, a.length(), b.length()));
    case DistanceVariant::dependent: break;
  }
  return dtw_dependent(a, b, window_for(config, a.length(), b.length()));
}

DistanceMatrix::DistanceMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (values_.size() != n_ * n_) throw ValidationError("distance matrix storage is not n x n");
  validate();
}

void DistanceMatrix::set(std::size_t i, std::size_t j, double d) {
  values_[i * n_ + j] = d;
  values_[j * n_ + i] = d;
}

void DistanceMatrix::validate() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if ((*this)(i, i) != 0.0) throw ValidationError("distance matrix diagonal must be zero");
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double d = (*this)(i, j);
      if (!std::isfinite(d) || d < 0.0) throw ValidationError("distance matrix entries must be finite and >= 0");
      if (d != (*this)(j, i)) throw ValidationError("distance matrix must be symmetric");
    }
  }
}

DistanceMatrix distance_matrix(std::span<const MultiSeries> series, const DtwConfig& config, unsigned threads,
                               std::vector<std::string>* warnings) {
  config.validate();
  const auto n = series.size();
  DistanceMatrix matrix(n);
  if (n < 2) return matrix;

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n));

  std::mutex warn_mutex;
  std::vector<std::exception_ptr> errors(threads);
  // Row i is owned by worker i % threads; every cell is written exactly once.
  auto work = [&](unsigned t) {
    try {
      for (std::size_t i = t; i < n; i += threads) {
        for (std::size_t j = i + 1; j < n; ++j) {
          std::string note;
          if (config.variant != DistanceVariant::euclidean) {
            window_for(config, series[i].length(), series[j].length(), &note);
          }
          matrix.set(i, j, distance(series[i], series[j], config));
          if (!note.empty() && warnings) {
            const std::lock_guard lock(warn_mutex);
            warnings->push_back("pair (" + std::to_string(i) + ", " + std::to_string(j) + "): " + note);
          }
        }
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  if (warnings) std::sort(warnings->begin(), warnings->end());
  return matrix;
}

DistanceMatrix distance_matrix(const Dataset& dataset, const DtwConfig& config, unsigned threads,
                               std::vector<std::string>* warnings) {
  if (dataset.empty()) throw ValidationError("distance matrix needs at least one event");
  std::vector<MultiSeries> series;
  series.reserve(dataset.size());
  for (const auto& ev : dataset) series.push_back(MultiSeries::from_event(ev));
  return distance_matrix(series, config, threads, warnings);
}

void save_distance_matrix(const DistanceMatrix& matrix, std::span<const std::string> event_ids,
                          const std::string& path) {
  if (event_ids.size() != matrix.size()) throw ValidationError("event id count does not match matrix size");
  std::ostringstream out;
  out << "event_id";
  for (const auto& id : event_ids) out << ',' << id;
  out << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out << event_ids[i];
    for (std::size_t j = 0; j < matrix.size(); ++j) out << ',' << csv::format_double(matrix(i, j));
    out << '\n';
  }
  csv::write_text_file(path, out.str());
}

}  // namespace stormclust
