#ifndef STORMCLUST_EVALUATION_HPP
#define STORMCLUST_EVALUATION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stormclust/event_model.hpp"
#include "stormclust/kmedoids.hpp"

namespace stormclust {

/// Dense codes 0, 1, ... in order of first appearance.
std::vector<std::size_t> encode_labels(std::span<const std::string> labels);

/// Fraction of element pairs on which two partitions agree (both together or both apart).
/// Throws ValidationError on a length mismatch or fewer than two elements.
double rand_index(std::span<const std::size_t> labels_a, std::span<const std::size_t> labels_b);
double rand_index(std::span<const std::string> labels_a, std::span<const std::string> labels_b);

struct HomogeneityCompleteness {
  double homogeneity = 1.0;
  double completeness = 1.0;
};

/// h = 1 - H(C|K)/H(C) and c = 1 - H(K|C)/H(K), natural log; h = 1 when H(C) = 0
/// and c = 1 when H(K) = 0. C is the truth, K the prediction.
HomogeneityCompleteness homogeneity_completeness(std::span<const std::size_t> truth,
                                                 std::span<const std::size_t> predicted);
HomogeneityCompleteness homogeneity_completeness(std::span<const std::string> truth,
                                                 std::span<const std::string> predicted);

/// Rows x columns cross-tabulation of two labelings.
struct ContingencyTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<std::uint64_t>> counts;  ///< [row][col]

  /// Labels are sorted numerically when they are all integers, otherwise lexicographically.
  static ContingencyTable from_labels(std::span<const std::string> rows, std::span<const std::string> cols);

  std::vector<std::uint64_t> row_totals() const;
  std::vector<std::uint64_t> col_totals() const;
  std::uint64_t total() const;

  /// CSV with a Total column and a Total row; `corner` names the row-label column.
  std::string to_csv(std::string_view corner = "cluster") const;
};

/// Labels in display order: numeric when every label is an integer, else lexicographic.
std::vector<std::string> sorted_unique_labels(std::span<const std::string> labels);

struct ChiSquaredResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t df = 0;
};

/// Pearson test of independence. Rows and columns with zero total are
/// dropped first; fewer than two of either remaining is a ValidationError.
ChiSquaredResult chi_squared_independence(const ContingencyTable& table);

struct AnovaResult {
  std::string metric;
  double f_value = 0.0;  ///< +infinity when within-group variation is zero and between-group is not
  double p_value = 1.0;
  std::size_t df_between = 0;
  std::size_t df_within = 0;
  std::size_t groups_used = 0;
  std::size_t n_used = 0;
};

/// One-way ANOVA over groups of observations; empty groups are ignored.
AnovaResult anova_oneway(std::span<const std::vector<double>> groups, std::string metric = {});

/// ANOVA of a numeric metric grouped by a categorical column. Rows missing
/// either value are dropped.
AnovaResult anova_oneway(const EventMetricsTable& metrics, std::string_view metric, std::string_view grouping);

/// Copy of `metrics` with a "cluster" column filled from a clustering of `event_ids`.
/// Rows whose event is not clustered get a missing cluster.
EventMetricsTable attach_clusters(const EventMetricsTable& metrics, const Clustering& clustering,
                                  std::span<const std::string> event_ids);

struct MetricZ {
  std::string metric;
  std::optional<double> z;  ///< nullopt when undefined (zero global spread or no values in the cluster)
};

struct ZScoreProfile {
  std::size_t cluster = 0;
  std::vector<MetricZ> metrics;
};

/// Per cluster and metric: (cluster mean - global mean) / global population std,
/// over the metric rows that join to clustered events. Missing cells are skipped.
/// Throws ValidationError when no metric row joins.
std::vector<ZScoreProfile> zscore_profiles(const EventMetricsTable& metrics, const Clustering& clustering,
                                           std::span<const std::string> event_ids);

}  // namespace stormclust

#endif
