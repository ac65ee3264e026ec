#ifndef STORMCLUST_EVENT_MODEL_HPP
#define STORMCLUST_EVENT_MODEL_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stormclust/error.hpp"

namespace stormclust {

/// One sensor reading inside a storm event.
struct Sample {
  double time = 0.0;           ///< seconds since event start
  double discharge = 0.0;      ///< volumetric flow
  double concentration = 0.0;  ///< suspended sediment, mass per volume
};

/// Smallest event that can be spline-fitted.
inline constexpr std::size_t kMinEventSamples = 4;

/// Variable-length bivariate record of one storm event, as ingested.
struct RawEvent {
  std::string event_id;
  std::string site_id;
  std::vector<Sample> samples;
  std::optional<std::string> label;

  std::vector<double> times() const;
  std::vector<double> discharge() const;
  std::vector<double> concentration() const;

  /// Throws ValidationError unless samples are strictly ascending in time,
  /// finite, and at least kMinEventSamples long.
  void validate() const;
};

/// Fixed-length, unit-range trajectory used for clustering.
struct ProcessedEvent {
  std::string event_id;
  std::string site_id;
  std::optional<std::string> label;
  std::vector<double> discharge;
  std::vector<double> concentration;

  std::size_t length() const { return discharge.size(); }
};

/// Ordered, immutable collection of events with an id index.
/// Order is the order the events were supplied in; clustering seeds index into it.
template <class Event>
class EventSet {
 public:
  EventSet() = default;

  explicit EventSet(std::vector<Event> events) : events_(std::move(events)) {
    index_.reserve(events_.size());
    for (std::size_t i = 0; i < events_.size(); ++i) {
      if (!index_.emplace(events_[i].event_id, i).second) {
        throw ValidationError("duplicate event_id '" + events_[i].event_id + "'");
      }
    }
  }

  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }
  const Event& operator[](std::size_t i) const { return events_[i]; }
  const std::vector<Event>& events() const noexcept { return events_; }
  auto begin() const noexcept { return events_.begin(); }
  auto end() const noexcept { return events_.end(); }

  std::optional<std::size_t> find(std::string_view event_id) const {
    const auto it = index_.find(std::string(event_id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::string> event_ids() const {
    std::vector<std::string> ids;
    ids.reserve(events_.size());
    for (const auto& e : events_) ids.push_back(e.event_id);
    return ids;
  }

  /// Labels in event order; nullopt if any event is unlabeled.
  std::optional<std::vector<std::string>> labels() const {
    std::vector<std::string> out;
    out.reserve(events_.size());
    for (const auto& e : events_) {
      if (!e.label) return std::nullopt;
      out.push_back(*e.label);
    }
    return out;
  }

 private:
  std::vector<Event> events_;
  std::unordered_map<std::string, std::size_t> index_;
};

using RawDataset = EventSet<RawEvent>;
using Dataset = EventSet<ProcessedEvent>;

// ---------------------------------------------------------------------------
// long-csv: event_id,site_id,time_s,discharge,concentration[,label]

/// Reads a long-format CSV. One RawEvent per distinct event_id, in order of
/// first appearance; samples are re-sorted by time.
RawDataset load_events(const std::string& path);

/// Writes events in long-csv. A label column is written when any event has a label.
void save_events(const RawDataset& dataset, const std::string& path);

/// Processed events in long-csv, with time_s holding the sample index.
void save_processed(const Dataset& dataset, const std::string& path);
Dataset load_processed(const std::string& path);

// ---------------------------------------------------------------------------
// Storm event metrics

struct MetricInfo {
  std::string_view name;
  std::string_view group;
  std::string_view description;
};

/// The 24 recognised metric columns, in reporting order.
const std::array<MetricInfo, 24>& metric_catalog();
bool is_metric_name(std::string_view name);

/// Categorical columns accepted in a metrics file (and "cluster", filled after clustering).
inline constexpr std::array<std::string_view, 3> kCategoricalColumns = {"site", "hysteresis_class", "cluster"};

/// Per-event metrics keyed by event_id. Numeric cells may be missing.
class EventMetricsTable {
 public:
  using NumericColumn = std::vector<std::optional<double>>;
  using CategoricalColumn = std::vector<std::optional<std::string>>;

  EventMetricsTable() = default;
  EventMetricsTable(std::vector<std::string> event_ids, std::vector<std::string> numeric_names,
                    std::vector<NumericColumn> numeric, std::vector<std::string> categorical_names,
                    std::vector<CategoricalColumn> categorical);

  std::size_t row_count() const noexcept { return event_ids_.size(); }
  const std::vector<std::string>& event_ids() const noexcept { return event_ids_; }
  const std::vector<std::string>& numeric_names() const noexcept { return numeric_names_; }
  const std::vector<std::string>& categorical_names() const noexcept { return categorical_names_; }

  std::optional<std::size_t> find_row(std::string_view event_id) const;
  bool has_numeric(std::string_view name) const;
  bool has_categorical(std::string_view name) const;

  /// Throws ValidationError for an unknown column.
  const NumericColumn& numeric(std::string_view name) const;
  const CategoricalColumn& categorical(std::string_view name) const;

  /// Copy of this table with a categorical column added or replaced.
  EventMetricsTable with_categorical(const std::string& name, CategoricalColumn values) const;

 private:
  std::vector<std::string> event_ids_;
  std::unordered_map<std::string, std::size_t> row_index_;
  std::vector<std::string> numeric_names_;
  std::vector<NumericColumn> numeric_;
  std::vector<std::string> categorical_names_;
  std::vector<CategoricalColumn> categorical_;
};

/// Reads a metrics CSV: event_id plus any subset of the 24 metric names and
/// the categorical columns. Empty, NA and NaN cells are missing values.
EventMetricsTable load_metrics(const std::string& path);

/// Writes a table in the metrics-csv layout (missing cells left empty).
void save_metrics(const EventMetricsTable& table, const std::string& path);

/// Throws JoinError naming the first table row whose event_id is not in `event_ids`.
void validate_join(const EventMetricsTable& table, std::span<const std::string> event_ids);

}  // namespace stormclust

#endif
