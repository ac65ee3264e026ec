#ifndef STORMCLUST_SYNTHGEN_HPP
#define STORMCLUST_SYNTHGEN_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "stormclust/event_model.hpp"

namespace stormclust {

/// Four-parameter unimodal event shape on normalised time [0, 1].
///
/// Zero before `onset`; inside the active window [onset, onset + duration_of_peak]
/// a raised-cosine rise reaches 1 at onset + time_to_peak * duration_of_peak,
/// then a raised-cosine fall ends at `recess`, which is held afterwards.
struct ShapeParams {
  double duration_of_peak = 0.8;
  double time_to_peak = 0.5;
  double onset = 0.0;
  double recess = 0.0;

  double peak_time() const noexcept { return onset + time_to_peak * duration_of_peak; }
  double window_end() const noexcept { return onset + duration_of_peak; }

  /// Throws ValidationError when a parameter is out of range.
  void validate() const;
};

struct HydrographType {
  std::string_view name;
  ShapeParams params;
};

/// The eight hydrograph and two concentration-graph shapes of the generator.
const std::array<HydrographType, 8>& hydrograph_types();
const std::array<HydrographType, 2>& concentration_types();

/// Continuous shape value at normalised time t in [0, 1].
double shape_value(const ShapeParams& params, double t);

/// Shape sampled at `length` equally spaced times on [0, 1]. The peak is
/// snapped to the nearest sample so the sampled curve attains exactly 1.
std::vector<double> shape_curve(const ShapeParams& params, std::size_t length);

struct SynthConfig {
  std::size_t events_per_type = 50;
  std::size_t raw_length = 100;
  double noise_std = 0.05;
  double noise_mean = 0.0;
  std::uint64_t seed = 42;

  void validate() const;
};

struct SynthLabel {
  std::size_t hydro_index = 0;  ///< into hydrograph_types()
  std::size_t conc_index = 0;   ///< into concentration_types()
  std::size_t combined() const noexcept { return 2 * hydro_index + conc_index; }
};

inline constexpr std::size_t kSyntheticTypeCount = 16;

struct SyntheticDataset {
  RawDataset events;  ///< label = combined type index as text
  std::vector<SynthLabel> labels;
};

/// events_per_type noisy events for each of the 16 (hydrograph, concentration)
/// combinations, grouped by combined label. Each event draws its noise from its
/// own stream derived from (seed, event index), so output depends only on config.
SyntheticDataset generate_dataset(const SynthConfig& config);

/// Shape-derived surrogate metrics for synthetic events (T_Q, T_SSC, T_QSSC,
/// Q_Recess, SSC_Recess) plus site and hysteresis_class columns, so the
/// evaluation reports can be exercised without field data.
EventMetricsTable synthetic_metrics(const SyntheticDataset& data);

}  // namespace stormclust

#endif
