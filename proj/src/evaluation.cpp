#include "stormclust/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "stormclust/special_functions.hpp"

namespace stormclust {

std::vector<std::size_t> encode_labels(std::span<const std::string> labels) {
  std::unordered_map<std::string, std::size_t> codes;
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(codes.emplace(l, codes.size()).first->second);
  return out;
}

namespace {

std::uint64_t pairs(std::uint64_t n) { return n * (n - 1) / 2; }

void check_lengths(std::size_t a, std::size_t b, std::size_t minimum) {
  if (a != b) {
    throw ValidationError("labelings differ in length (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
  if (a < minimum) throw ValidationError("at least " + std::to_string(minimum) + " labels are required");
}

// Sparse joint counts plus marginals.
struct Joint {
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> cells;
  std::map<std::size_t, std::uint64_t> a, b;
};

Joint joint_counts(std::span<const std::size_t> x, std::span<const std::size_t> y) {
  Joint j;
  for (std::size_t i = 0; i < x.size(); ++i) {
    ++j.cells[{x[i], y[i]}];
    ++j.a[x[i]];
    ++j.b[y[i]];
  }
  return j;
}

double entropy(const std::map<std::size_t, std::uint64_t>& counts, double n) {
  double h = 0.0;
  for (const auto& [label, c] : counts) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

std::optional<long long> as_integer(const std::string& s) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

double rand_index(std::span<const std::size_t> labels_a, std::span<const std::size_t> labels_b) {
  check_lengths(labels_a.size(), labels_b.size(), 2);
  const auto j = joint_counts(labels_a, labels_b);
  std::uint64_t together_both = 0, together_a = 0, together_b = 0;
  for (const auto& [cell, c] : j.cells) together_both += pairs(c);
  for (const auto& [label, c] : j.a) together_a += pairs(c);
  for (const auto& [label, c] : j.b) together_b += pairs(c);
  const std::uint64_t total = pairs(labels_a.size());
  // agreements = pairs together in both + pairs apart in both
  const std::uint64_t agree = total + 2 * together_both - together_a - together_b;
  return static_cast<double>(agree) / static_cast<double>(total);
}

double rand_index(std::span<const std::string> labels_a, std::span<const std::string> labels_b) {
  check_lengths(labels_a.size(), labels_b.size(), 2);
  const auto a = encode_labels(labels_a);
  const auto b = encode_labels(labels_b);
  return rand_index(a, b);
}

HomogeneityCompleteness homogeneity_completeness(std::span<const std::size_t> truth,
                                                 std::span<const std::size_t> predicted) {
  check_lengths(truth.size(), predicted.size(), 1);
  const auto j = joint_counts(truth, predicted);
  const double n = static_cast<double>(truth.size());
  const double h_class = entropy(j.a, n);
  const double h_cluster = entropy(j.b, n);
  double h_class_given_cluster = 0.0;
  double h_cluster_given_class = 0.0;
  for (const auto& [cell, c] : j.cells) {
    const double nc = static_cast<double>(c);
    h_class_given_cluster -= nc / n * std::log(nc / static_cast<double>(j.b.at(cell.second)));
    h_cluster_given_class -= nc / n * std::log(nc / static_cast<double>(j.a.at(cell.first)));
  }
  HomogeneityCompleteness out;
  out.homogeneity = h_class == 0.0 ? 1.0 : std::clamp(1.0 - h_class_given_cluster / h_class, 0.0, 1.0);
  out.completeness = h_cluster == 0.0 ? 1.0 : std::clamp(1.0 - h_cluster_given_class / h_cluster, 0.0, 1.0);
  return out;
}

HomogeneityCompleteness homogeneity_completeness(std::span<const std::string> truth,
                                                 std::span<const std::string> predicted) {
  check_lengths(truth.size(), predicted.size(), 1);
  const auto t = encode_labels(truth);
  const auto p = encode_labels(predicted);
  return homogeneity_completeness(t, p);
}

std::vector<std::string> sorted_unique_labels(std::span<const std::string> labels) {
  std::vector<std::string> unique(labels.begin(), labels.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  const bool numeric = std::all_of(unique.begin(), unique.end(), [](const auto& s) { return as_integer(s).has_value(); });
  if (numeric) {
    std::sort(unique.begin(), unique.end(),
              [](const std::string& a, const std::string& b) { return *as_integer(a) < *as_integer(b); });
  }
  return unique;
}

ContingencyTable ContingencyTable::from_labels(std::span<const std::string> rows, std::span<const std::string> cols) {
  check_lengths(rows.size(), cols.size(), 1);
  ContingencyTable t;
  t.row_labels = sorted_unique_labels(rows);
  t.col_labels = sorted_unique_labels(cols);
  std::unordered_map<std::string, std::size_t> ri, ci;
  for (std::size_t i = 0; i < t.row_labels.size(); ++i) ri[t.row_labels[i]] = i;
  for (std::size_t i = 0; i < t.col_labels.size(); ++i) ci[t.col_labels[i]] = i;
  t.counts.assign(t.row_labels.size(), std::vector<std::uint64_t>(t.col_labels.size(), 0));
  for (std::size_t i = 0; i < rows.size(); ++i) ++t.counts[ri[rows[i]]][ci[cols[i]]];
  return t;
}

std::vector<std::uint64_t> ContingencyTable::row_totals() const {
  std::vector<std::uint64_t> out;
  for (const auto& row : counts) out.push_back(std::accumulate(row.begin(), row.end(), std::uint64_t{0}));
  return out;
}

std::vector<std::uint64_t> ContingencyTable::col_totals() const {
  std::vector<std::uint64_t> out(col_labels.size(), 0);
  for (const auto& row : counts) {
    for (std::size_t c = 0; c < row.size(); ++c) out[c] += row[c];
  }
  return out;
}

std::uint64_t ContingencyTable::total() const {
  const auto rows = row_totals();
  return std::accumulate(rows.begin(), rows.end(), std::uint64_t{0});
}

std::string ContingencyTable::to_csv(std::string_view corner) const {
  std::ostringstream out;
  out << corner;
  for (const auto& c : col_labels) out << ',' << c;
  out << ",Total\n";
  const auto rt = row_totals();
  for (std::size_t r = 0; r < row_labels.size(); ++r) {
    out << row_labels[r];
    for (const auto v : counts[r]) out << ',' << v;
    out << ',' << rt[r] << '\n';
  }
  out << "Total";
  for (const auto v : col_totals()) out << ',' << v;
  out << ',' << total() << '\n';
  return out.str();
}

ChiSquaredResult chi_squared_independence(const ContingencyTable& table) {
  const auto rt = table.row_totals();
  const auto ct = table.col_totals();
  std::vector<std::size_t> rows, cols;
  for (std::size_t r = 0; r < rt.size(); ++r) {
    if (rt[r] > 0) rows.push_back(r);
  }
  for (std::size_t c = 0; c < ct.size(); ++c) {
    if (ct[c] > 0) cols.push_back(c);
  }
  if (rows.size() < 2 || cols.size() < 2) {
    throw ValidationError("chi-squared test needs at least two non-empty rows and columns");
  }
  const double n = static_cast<double>(table.total());
  ChiSquaredResult out;
  for (const auto r : rows) {
    for (const auto c : cols) {
      const double expected = static_cast<double>(rt[r]) * static_cast<double>(ct[c]) / n;
      const double diff = static_cast<double>(table.counts[r][c]) - expected;
      out.statistic += diff * diff / expected;
    }
  }
  out.df = (rows.size() - 1) * (cols.size() - 1);
  out.p_value = special::chi_squared_sf(out.statistic, static_cast<double>(out.df));
  return out;
}

AnovaResult anova_oneway(std::span<const std::vector<double>> groups, std::string metric) {
  AnovaResult out;
  out.metric = std::move(metric);

  double grand_sum = 0.0;
  bool all_constant_within = true;
  std::optional<double> first_value;
  bool all_identical = true;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    ++out.groups_used;
    out.n_used += g.size();
    for (const double v : g) {
      if (!std::isfinite(v)) throw ValidationError("ANOVA values must be finite");
      grand_sum += v;
      if (v != g.front()) all_constant_within = false;
      if (!first_value) first_value = v;
      if (v != *first_value) all_identical = false;
    }
  }
  if (out.groups_used < 2) throw ValidationError("ANOVA needs at least two non-empty groups");
  if (out.n_used <= out.groups_used) throw ValidationError("ANOVA needs more observations than groups");
  out.df_between = out.groups_used - 1;
  out.df_within = out.n_used - out.groups_used;

  if (all_identical) {
    out.f_value = 0.0;
    out.p_value = 1.0;
    return out;
  }

  const double grand_mean = grand_sum / static_cast<double>(out.n_used);
  double ss_between = 0.0;
  double ss_within = 0.0;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    const double mean = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
    ss_between += static_cast<double>(g.size()) * (mean - grand_mean) * (mean - grand_mean);
    for (const double v : g) ss_within += (v - mean) * (v - mean);
  }
  if (all_constant_within) {
    out.f_value = std::numeric_limits<double>::infinity();
    out.p_value = 0.0;
    return out;
  }
  out.f_value = (ss_between / static_cast<double>(out.df_between)) / (ss_within / static_cast<double>(out.df_within));
  out.p_value = special::f_sf(out.f_value, static_cast<double>(out.df_between), static_cast<double>(out.df_within));
  return out;
}

AnovaResult anova_oneway(const EventMetricsTable& metrics, std::string_view metric, std::string_view grouping) {
  const auto& values = metrics.numeric(metric);
  const auto& groups = metrics.categorical(grouping);
  std::vector<std::string> present;
  for (std::size_t r = 0; r < metrics.row_count(); ++r) {
    if (values[r] && groups[r]) present.push_back(*groups[r]);
  }
  const auto labels = sorted_unique_labels(present);
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < labels.size(); ++i) slot[labels[i]] = i;
  std::vector<std::vector<double>> buckets(labels.size());
  for (std::size_t r = 0; r < metrics.row_count(); ++r) {
    if (values[r] && groups[r]) buckets[slot.at(*groups[r])].push_back(*values[r]);
  }
  return anova_oneway(buckets, std::string(metric));
}

EventMetricsTable attach_clusters(const EventMetricsTable& metrics, const Clustering& clustering,
                                  std::span<const std::string> event_ids) {
  if (event_ids.size() != clustering.assignments.size()) {
    throw ValidationError("clustering covers " + std::to_string(clustering.assignments.size()) + " events but " +
                          std::to_string(event_ids.size()) + " ids were given");
  }
  std::unordered_map<std::string, std::size_t> cluster_of;
  for (std::size_t e = 0; e < event_ids.size(); ++e) cluster_of[event_ids[e]] = clustering.assignments[e];
  EventMetricsTable::CategoricalColumn column;
  column.reserve(metrics.row_count());
  for (const auto& id : metrics.event_ids()) {
    const auto it = cluster_of.find(id);
    column.push_back(it == cluster_of.end() ? std::nullopt : std::optional<std::string>(std::to_string(it->second)));
  }
  return metrics.with_categorical("cluster", std::move(column));
}

std::vector<ZScoreProfile> zscore_profiles(const EventMetricsTable& metrics, const Clustering& clustering,
                                           std::span<const std::string> event_ids) {
  if (event_ids.size() != clustering.assignments.size()) {
    throw ValidationError("clustering and event id list differ in size");
  }
  std::unordered_map<std::string, std::size_t> cluster_of;
  for (std::size_t e = 0; e < event_ids.size(); ++e) cluster_of[event_ids[e]] = clustering.assignments[e];

  std::vector<std::pair<std::size_t, std::size_t>> joined;  // (table row, cluster)
  for (std::size_t r = 0; r < metrics.row_count(); ++r) {
    const auto it = cluster_of.find(metrics.event_ids()[r]);
    if (it != cluster_of.end()) joined.emplace_back(r, it->second);
  }
  if (joined.empty()) throw ValidationError("no metrics rows match the clustered events");

  std::vector<ZScoreProfile> profiles(clustering.k);
  for (std::size_t c = 0; c < clustering.k; ++c) profiles[c].cluster = c;

  for (const auto& name : metrics.numeric_names()) {
    const auto& col = metrics.numeric(name);
    double sum = 0.0;
    std::size_t count = 0;
    std::vector<double> cluster_sum(clustering.k, 0.0);
    std::vector<std::size_t> cluster_count(clustering.k, 0);
    for (const auto& [row, cluster] : joined) {
      if (!col[row]) continue;
      sum += *col[row];
      ++count;
      cluster_sum[cluster] += *col[row];
      ++cluster_count[cluster];
    }
    double stddev = 0.0;
    double mean = 0.0;
    if (count > 0) {
      mean = sum / static_cast<double>(count);
      double ss = 0.0;
      for (const auto& [row, cluster] : joined) {
        if (col[row]) ss += (*col[row] - mean) * (*col[row] - mean);
      }
      stddev = std::sqrt(ss / static_cast<double>(count));
    }
    for (std::size_t c = 0; c < clustering.k; ++c) {
      MetricZ mz{name, std::nullopt};
      if (stddev > 0.0 && cluster_count[c] > 0) {
        mz.z = (cluster_sum[c] / static_cast<double>(cluster_count[c]) - mean) / stddev;
      }
      profiles[c].metrics.push_back(std::move(mz));
    }
  }
  return profiles;
}

}  // namespace stormclust
