#include "stormclust/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "stormclust/rng.hpp"

namespace stormclust {

void ShapeParams::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(duration_of_peak) || duration_of_peak <= 0.0) throw ValidationError("duration_of_peak must lie in (0, 1]");
  if (!(time_to_peak > 0.0 && time_to_peak < 1.0)) throw ValidationError("time_to_peak must lie in (0, 1)");
  if (!(onset >= 0.0 && onset < 1.0)) throw ValidationError("onset must lie in [0, 1)");
  if (!in_unit(recess)) throw ValidationError("recess must lie in [0, 1]");
}

const std::array<HydrographType, 8>& hydrograph_types() {
  static const std::array<HydrographType, 8> types = {{
      {"flashy_complete_recess", {0.4, 0.5, 0.0, 0.0}},
      {"flashy_incomplete_recess", {0.4, 0.5, 0.0, 0.4}},
      {"early_peak_complete_recess", {0.8, 0.2, 0.0, 0.0}},
      {"early_peak_incomplete_recess", {0.8, 0.2, 0.0, 0.4}},
      {"mid_peak_complete_recess", {0.8, 0.5, 0.0, 0.0}},
      {"mid_peak_incomplete_recess", {0.8, 0.5, 0.0, 0.4}},
      {"delayed_peak_complete_recess", {0.8, 0.8, 0.0, 0.0}},
      {"delayed_peak_incomplete_recess", {0.8, 0.8, 0.0, 0.4}},
  }};
  return types;
}

const std::array<HydrographType, 2>& concentration_types() {
  static const std::array<HydrographType, 2> types = {{
      {"early_peak", {0.5, 0.5, 0.0, 0.0}},
      {"late_peak", {0.5, 0.5, 0.5, 0.0}},
  }};
  return types;
}

namespace {

double raised_cosine_profile(double onset, double peak, double end, double recess, double t) {
  if (t < onset) return 0.0;
  if (t >= end) return recess;
  if (t <= peak) {
    if (peak <= onset) return 1.0;
    return 0.5 * (1.0 - std::cos(std::numbers::pi * (t - onset) / (peak - onset)));
  }
  return recess + (1.0 - recess) * 0.5 * (1.0 + std::cos(std::numbers::pi * (t - peak) / (end - peak)));
}

}  // namespace

double shape_value(const ShapeParams& params, double t) {
  return raised_cosine_profile(params.onset, params.peak_time(), params.window_end(), params.recess, t);
}

std::vector<double> shape_curve(const ShapeParams& params, std::size_t length) {
  params.validate();
  if (length < 2) throw ValidationError("shape length must be at least 2");
  const double steps = static_cast<double>(length - 1);
  double peak = std::round(params.peak_time() * steps) / steps;
  peak = std::clamp(peak, params.onset, params.window_end());
  std::vector<double> out(length);
  for (std::size_t i = 0; i < length; ++i) {
    const double t = static_cast<double>(i) / steps;
    out[i] = raised_cosine_profile(params.onset, peak, params.window_end(), params.recess, t);
  }
  return out;
}

void SynthConfig::validate() const {
  if (events_per_type == 0) throw ConfigError("events_per_type must be positive");
  if (raw_length < kMinEventSamples) throw ConfigError("raw_length must be at least 4");
  if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) throw ConfigError("noise_std must be a finite value >= 0");
  if (!std::isfinite(noise_mean)) throw ConfigError("noise_mean must be finite");
}

SyntheticDataset generate_dataset(const SynthConfig& config) {
  config.validate();
  const auto& hydro = hydrograph_types();
  const auto& conc = concentration_types();

  std::vector<std::vector<double>> hydro_curves, conc_curves;
  for (const auto& h : hydro) hydro_curves.push_back(shape_curve(h.params, config.raw_length));
  for (const auto& c : conc) conc_curves.push_back(shape_curve(c.params, config.raw_length));

  const std::size_t total = kSyntheticTypeCount * config.events_per_type;
  const int id_width = static_cast<int>(std::to_string(total - 1).size());

  SyntheticDataset out;
  std::vector<RawEvent> events;
  events.reserve(total);
  out.labels.reserve(total);
  std::size_t index = 0;
  for (std::size_t h = 0; h < hydro.size(); ++h) {
    for (std::size_t c = 0; c < conc.size(); ++c) {
      const SynthLabel label{h, c};
      for (std::size_t r = 0; r < config.events_per_type; ++r, ++index) {
        Rng rng(mix_seed(config.seed, index));
        std::ostringstream id;
        id << "syn" << std::setw(id_width) << std::setfill('0') << index;
        RawEvent ev{id.str(), "synthetic", {}, std::to_string(label.combined())};
        ev.samples.reserve(config.raw_length);
        for (std::size_t i = 0; i < config.raw_length; ++i) {
          const double q = hydro_curves[h][i] + rng.normal(config.noise_mean, config.noise_std);
          const double s = conc_curves[c][i] + rng.normal(config.noise_mean, config.noise_std);
          ev.samples.push_back({static_cast<double>(i), q, s});
        }
        events.push_back(std::move(ev));
        out.labels.push_back(label);
      }
    }
  }
  out.events = RawDataset(std::move(events));
  return out;
}

EventMetricsTable synthetic_metrics(const SyntheticDataset& data) {
  const auto n = data.events.size();
  std::vector<std::string> ids;
  std::vector<std::string> names = {"T_Q", "T_SSC", "T_QSSC", "Q_Recess", "SSC_Recess"};
  std::vector<EventMetricsTable::NumericColumn> numeric(names.size());
  EventMetricsTable::CategoricalColumn site, hysteresis;

  for (std::size_t e = 0; e < n; ++e) {
    const auto& ev = data.events[e];
    ids.push_back(ev.event_id);
    const auto q = ev.discharge();
    const auto s = ev.concentration();
    const auto t = ev.times();
    const auto q_peak = static_cast<std::size_t>(std::max_element(q.begin(), q.end()) - q.begin());
    const auto s_peak = static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin());
    const double hours = 1.0 / 3600.0;
    numeric[0].push_back((t[q_peak] - t.front()) * hours);
    numeric[1].push_back((t[s_peak] - t.front()) * hours);
    numeric[2].push_back((t[s_peak] - t[q_peak]) * hours);
    numeric[3].push_back(q.back() - q.front());
    numeric[4].push_back(s.back() - s.front());
    site.push_back(ev.site_id);
    hysteresis.push_back(std::string(concentration_types()[data.labels[e].conc_index].name));
  }
  return EventMetricsTable(std::move(ids), std::move(names), std::move(numeric), {"site", "hysteresis_class"},
                           {std::move(site), std::move(hysteresis)});
}

}  // namespace stormclust
