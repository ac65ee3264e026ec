// Independent reference implementations used only by tests.
#ifndef STORMCLUST_TEST_ORACLES_HPP
#define STORMCLUST_TEST_ORACLES_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stormclust/distance.hpp"
#include "stormclust/kmedoids.hpp"
#include "stormclust/rng.hpp"

namespace oracle {

/// Minimum over every monotone, boundary-anchored warping path with |i-j| <= window
/// of the summed squared step costs, square-rooted. +inf when no path fits the band.
double dtw_enumerate(const stormclust::MultiSeries& a, const stormclust::MultiSeries& b, std::size_t window);

/// Number of paths visited by the last dtw_enumerate call on this thread.
std::size_t last_path_count();

/// Random series with values in [0,1).
stormclust::MultiSeries random_series(stormclust::Rng& rng, std::size_t length, std::size_t dims);

/// Euclidean distance matrix of random 2-D points; `grid` > 0 snaps points to a coarse grid to create ties.
stormclust::DistanceMatrix random_point_matrix(stormclust::Rng& rng, std::size_t n, int grid = 0);

/// Empty string when every non-medoid sits with its closest medoid (ties to the lower medoid index)
/// and every medoid in its own cluster; otherwise a description of the first violation.
std::string phase1_violation(const stormclust::DistanceMatrix& m, const stormclust::Clustering& c);

/// Empty string when every medoid minimises the summed distance to its cluster members
/// (ties to the lower event index); otherwise a description of the first violation.
std::string phase2_violation(const stormclust::DistanceMatrix& m, const stormclust::Clustering& c);

/// Empty string when the cost history never increases.
std::string monotone_violation(const stormclust::Clustering& c);

/// Fresh empty directory under the system temp directory.
std::filesystem::path temp_dir(const std::string& tag);

std::string read_file(const std::filesystem::path& path);

}  // namespace oracle

#endif
