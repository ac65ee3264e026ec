#include "stormclust/event_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "stormclust/csv.hpp"

namespace stormclust {

std::vector<double> RawEvent::times() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.time);
  return out;
}

std::vector<double> RawEvent::discharge() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.discharge);
  return out;
}

std::vector<double> RawEvent::concentration() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.concentration);
  return out;
}

void RawEvent::validate() const {
  if (samples.size() < kMinEventSamples) {
    throw ValidationError("event '" + event_id + "' has " + std::to_string(samples.size()) + " samples, at least " +
                          std::to_string(kMinEventSamples) + " are required");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!std::isfinite(s.time) || !std::isfinite(s.discharge) || !std::isfinite(s.concentration)) {
      throw ValidationError("event '" + event_id + "' has a non-finite value at sample " + std::to_string(i));
    }
    if (i > 0 && !(samples[i - 1].time < s.time)) {
      throw ValidationError("event '" + event_id + "' timestamps are not strictly increasing at sample " +
                            std::to_string(i));
    }
  }
}

namespace {

std::size_t require_column(const csv::Table& table, std::string_view name, const std::string& path) {
  const auto col = table.column(name);
  if (!col) throw SchemaError(path + ": missing required column '" + std::string(name) + "'");
  return *col;
}

double parse_finite(const std::string& cell, const std::string& path, std::size_t line, std::string_view column) {
  const auto v = csv::parse_double(cell);
  if (!v || !std::isfinite(*v)) {
    throw ParseError(path + ": row " + std::to_string(line) + ": column '" + std::string(column) +
                     "' has invalid value '" + cell + "'");
  }
  return *v;
}

bool is_missing_cell(std::string_view cell) {
  return cell.empty() || cell == "NA" || cell == "na" || cell == "NaN" || cell == "nan" || cell == "NAN";
}

}  // namespace

RawDataset load_events(const std::string& path) {
  const auto table = csv::read_file(path);
  const auto c_id = require_column(table, "event_id", path);
  const auto c_site = require_column(table, "site_id", path);
  const auto c_time = require_column(table, "time_s", path);
  const auto c_q = require_column(table, "discharge", path);
  const auto c_c = require_column(table, "concentration", path);
  const auto c_label = table.column("label");

  std::vector<RawEvent> events;
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto line = table.line_numbers[r];
    const auto& id = row[c_id];
    if (id.empty()) throw ParseError(path + ": row " + std::to_string(line) + ": empty event_id");

    Sample s{parse_finite(row[c_time], path, line, "time_s"), parse_finite(row[c_q], path, line, "discharge"),
             parse_finite(row[c_c], path, line, "concentration")};

    std::optional<std::string> label;
    if (c_label && !row[*c_label].empty()) label = row[*c_label];

    auto [it, inserted] = position.emplace(id, events.size());
    if (inserted) {
      events.push_back(RawEvent{id, row[c_site], {}, label});
    }
    auto& ev = events[it->second];
    if (ev.site_id != row[c_site]) {
      throw ValidationError(path + ": row " + std::to_string(line) + ": event '" + id +
                            "' changes site_id from '" + ev.site_id + "' to '" + row[c_site] + "'");
    }
    if (ev.label != label) {
      throw ValidationError(path + ": row " + std::to_string(line) + ": event '" + id + "' has inconsistent labels");
    }
    ev.samples.push_back(s);
  }

  for (auto& ev : events) {
    std::stable_sort(ev.samples.begin(), ev.samples.end(),
                     [](const Sample& a, const Sample& b) { return a.time < b.time; });
    ev.validate();
  }
  return RawDataset(std::move(events));
}

void save_events(const RawDataset& dataset, const std::string& path) {
  const bool with_label =
      std::any_of(dataset.begin(), dataset.end(), [](const RawEvent& e) { return e.label.has_value(); });
  std::ostringstream out;
  out << "event_id,site_id,time_s,discharge,concentration" << (with_label ? ",label" : "") << '\n';
  for (const auto& ev : dataset) {
    for (const auto& s : ev.samples) {
      out << ev.event_id << ',' << ev.site_id << ',' << csv::format_double(s.time) << ','
          << csv::format_double(s.discharge) << ',' << csv::format_double(s.concentration);
      if (with_label) out << ',' << ev.label.value_or("");
      out << '\n';
    }
  }
  csv::write_text_file(path, out.str());
}

void save_processed(const Dataset& dataset, const std::string& path) {
  std::vector<RawEvent> raw;
  raw.reserve(dataset.size());
  for (const auto& ev : dataset) {
    RawEvent r{ev.event_id, ev.site_id, {}, ev.label};
    for (std::size_t i = 0; i < ev.length(); ++i) {
      r.samples.push_back({static_cast<double>(i), ev.discharge[i], ev.concentration[i]});
    }
    raw.push_back(std::move(r));
  }
  save_events(RawDataset(std::move(raw)), path);
}

Dataset load_processed(const std::string& path) {
  const auto raw = load_events(path);
  std::vector<ProcessedEvent> out;
  out.reserve(raw.size());
  for (const auto& ev : raw) {
    out.push_back(ProcessedEvent{ev.event_id, ev.site_id, ev.label, ev.discharge(), ev.concentration()});
  }
  return Dataset(std::move(out));
}

const std::array<MetricInfo, 24>& metric_catalog() {
  static const std::array<MetricInfo, 24> catalog = {{
      {"T_Q", "hydrograph/sedigraph", "Time to peak discharge (hr)"},
      {"T_SSC", "hydrograph/sedigraph", "Time to peak suspended sediment (hr)"},
      {"T_QSSC", "hydrograph/sedigraph", "Lag between sediment peak and flow peak (hr)"},
      {"Q_Recess", "hydrograph/sedigraph", "Discharge change from event start to end"},
      {"SSC_Recess", "hydrograph/sedigraph", "Concentration change from event start to end"},
      {"HI", "hydrograph/sedigraph", "Hysteresis index"},
      {"T_LASTP", "antecedent", "Time since previous event (hr)"},
      {"A3P", "antecedent", "Precipitation over prior 3 days (mm)"},
      {"A14P", "antecedent", "Precipitation over prior 14 days (mm)"},
      {"SM_SHALLOW", "antecedent", "Soil moisture at 10 cm before event (%)"},
      {"SM_DEEP", "antecedent", "Soil moisture at 50 cm before event (%)"},
      {"BF_NORM", "antecedent", "Pre-event baseflow per drainage area (m3/s/km2)"},
      {"P", "rainfall", "Event precipitation total (mm)"},
      {"P_max", "rainfall", "Peak rainfall intensity (mm)"},
      {"D_P", "rainfall", "Precipitation duration (hr)"},
      {"T_PSSC", "rainfall", "Lag between sediment peak and rainfall centroid (hr)"},
      {"BL", "streamflow/sediment", "Basin lag"},
      {"Q_NORM", "streamflow/sediment", "Stormflow per drainage area (m3/s/km2)"},
      {"LogQ_NORM", "streamflow/sediment", "Stormflow log-normal quantile (%)"},
      {"D_Q", "streamflow/sediment", "Stormflow duration (hr)"},
      {"FI", "streamflow/sediment", "Flood intensity"},
      {"SSC", "streamflow/sediment", "Peak suspended sediment (mg/L)"},
      {"SSL_NORM", "streamflow/sediment", "Sediment load per drainage area (kg/m2)"},
      {"FLUX_NORM", "streamflow/sediment", "Sediment flux per drainage area and flow (kg/m3/km2)"},
  }};
  return catalog;
}

bool is_metric_name(std::string_view name) {
  const auto& cat = metric_catalog();
  return std::any_of(cat.begin(), cat.end(), [&](const MetricInfo& m) { return m.name == name; });
}

EventMetricsTable::EventMetricsTable(std::vector<std::string> event_ids, std::vector<std::string> numeric_names,
                                     std::vector<NumericColumn> numeric, std::vector<std::string> categorical_names,
                                     std::vector<CategoricalColumn> categorical)
    : event_ids_(std::move(event_ids)),
      numeric_names_(std::move(numeric_names)),
      numeric_(std::move(numeric)),
      categorical_names_(std::move(categorical_names)),
      categorical_(std::move(categorical)) {
  if (numeric_names_.size() != numeric_.size() || categorical_names_.size() != categorical_.size()) {
    throw ValidationError("metrics table: column names and column data disagree");
  }
  for (const auto& col : numeric_) {
    if (col.size() != event_ids_.size()) throw ValidationError("metrics table: ragged numeric column");
    for (const auto& cell : col) {
      if (cell && !std::isfinite(*cell)) throw ValidationError("metrics table: non-finite numeric cell");
    }
  }
  for (const auto& col : categorical_) {
    if (col.size() != event_ids_.size()) throw ValidationError("metrics table: ragged categorical column");
  }
  for (std::size_t i = 0; i < event_ids_.size(); ++i) {
    if (!row_index_.emplace(event_ids_[i], i).second) {
      throw SchemaError("metrics table: duplicate event_id '" + event_ids_[i] + "'");
    }
  }
}

std::optional<std::size_t> EventMetricsTable::find_row(std::string_view event_id) const {
  const auto it = row_index_.find(std::string(event_id));
  if (it == row_index_.end()) return std::nullopt;
  return it->second;
}

bool EventMetricsTable::has_numeric(std::string_view name) const {
  return std::find(numeric_names_.begin(), numeric_names_.end(), name) != numeric_names_.end();
}

bool EventMetricsTable::has_categorical(std::string_view name) const {
  return std::find(categorical_names_.begin(), categorical_names_.end(), name) != categorical_names_.end();
}

const EventMetricsTable::NumericColumn& EventMetricsTable::numeric(std::string_view name) const {
  const auto it = std::find(numeric_names_.begin(), numeric_names_.end(), name);
  if (it == numeric_names_.end()) throw ValidationError("metrics table has no numeric column '" + std::string(name) + "'");
  return numeric_[static_cast<std::size_t>(it - numeric_names_.begin())];
}

const EventMetricsTable::CategoricalColumn& EventMetricsTable::categorical(std::string_view name) const {
  const auto it = std::find(categorical_names_.begin(), categorical_names_.end(), name);
  if (it == categorical_names_.end()) {
    throw ValidationError("metrics table has no categorical column '" + std::string(name) + "'");
  }
  return categorical_[static_cast<std::size_t>(it - categorical_names_.begin())];
}

EventMetricsTable EventMetricsTable::with_categorical(const std::string& name, CategoricalColumn values) const {
  auto names = categorical_names_;
  auto cols = categorical_;
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    names.push_back(name);
    cols.push_back(std::move(values));
  } else {
    cols[static_cast<std::size_t>(it - names.begin())] = std::move(values);
  }
  return EventMetricsTable(event_ids_, numeric_names_, numeric_, std::move(names), std::move(cols));
}

EventMetricsTable load_metrics(const std::string& path) {
  const auto table = csv::read_file(path);
  const auto c_id = require_column(table, "event_id", path);

  std::vector<std::size_t> numeric_cols, categorical_cols;
  std::vector<std::string> numeric_names, categorical_names;
  std::unordered_set<std::string> seen;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    const auto& name = table.header[c];
    if (!seen.insert(name).second) throw SchemaError(path + ": duplicate column '" + name + "'");
    if (c == c_id) continue;
    if (is_metric_name(name)) {
      numeric_cols.push_back(c);
      numeric_names.push_back(name);
    } else if (std::find(kCategoricalColumns.begin(), kCategoricalColumns.end(), name) != kCategoricalColumns.end()) {
      categorical_cols.push_back(c);
      categorical_names.push_back(name);
    } else {
      throw SchemaError(path + ": unknown metrics column '" + name + "'");
    }
  }

  std::vector<std::string> ids;
  std::vector<EventMetricsTable::NumericColumn> numeric(numeric_cols.size());
  std::vector<EventMetricsTable::CategoricalColumn> categorical(categorical_cols.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto line = table.line_numbers[r];
    if (row[c_id].empty()) throw ParseError(path + ": row " + std::to_string(line) + ": empty event_id");
    ids.push_back(row[c_id]);
    for (std::size_t k = 0; k < numeric_cols.size(); ++k) {
      const auto& cell = row[numeric_cols[k]];
      if (is_missing_cell(cell)) {
        numeric[k].push_back(std::nullopt);
      } else {
        numeric[k].push_back(parse_finite(cell, path, line, numeric_names[k]));
      }
    }
    for (std::size_t k = 0; k < categorical_cols.size(); ++k) {
      const auto& cell = row[categorical_cols[k]];
      categorical[k].push_back(cell.empty() ? std::nullopt : std::optional<std::string>(cell));
    }
  }
  return EventMetricsTable(std::move(ids), std::move(numeric_names), std::move(numeric), std::move(categorical_names),
                           std::move(categorical));
}

void validate_join(const EventMetricsTable& table, std::span<const std::string> event_ids) {
  const std::unordered_set<std::string> known(event_ids.begin(), event_ids.end());
  for (const auto& id : table.event_ids()) {
    if (!known.contains(id)) throw JoinError("metrics row '" + id + "' has no matching event in the dataset");
  }
}

void save_metrics(const EventMetricsTable& table, const std::string& path) {
  std::ostringstream out;
  out << "event_id";
  for (const auto& name : table.numeric_names()) out << ',' << name;
  for (const auto& name : table.categorical_names()) out << ',' << name;
  out << '\n';
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    out << table.event_ids()[r];
    for (const auto& name : table.numeric_names()) {
      const auto& cell = table.numeric(name)[r];
      out << ',' << (cell ? csv::format_double(*cell) : std::string());
    }
    for (const auto& name : table.categorical_names()) out << ',' << table.categorical(name)[r].value_or("");
    out << '\n';
  }
  csv::write_text_file(path, out.str());
}

}  // namespace stormclust
