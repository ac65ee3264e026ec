#ifndef STORMCLUST_CLUSTERING_IO_HPP
#define STORMCLUST_CLUSTERING_IO_HPP

#include <span>
#include <string>

#include "stormclust/event_model.hpp"
#include "stormclust/kmedoids.hpp"

namespace stormclust {

/// Clustering document: k, seed, medoid_event_ids, assignments (event_id ->
/// cluster, in dataset order), cost, sse, iterations, converged. Byte-identical
/// for identical inputs.
std::string clustering_to_json(const Clustering& clustering, std::span<const std::string> event_ids);

/// Throws ValidationError unless the clustering covers every event, IoError on write failure.
void save_clustering(const Clustering& clustering, std::span<const std::string> event_ids, const std::string& path);
void save_clustering(const Clustering& clustering, const Dataset& dataset, const std::string& path);

/// Reads a clustering document and maps it onto `event_ids`. Throws JoinError
/// when the document and the id list describe different events.
Clustering load_clustering(const std::string& path, std::span<const std::string> event_ids);

}  // namespace stormclust

#endif
