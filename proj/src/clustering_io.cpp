#include "stormclust/clustering_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unordered_map>

#include "stormclust/csv.hpp"

namespace stormclust {

using ordered_json = nlohmann::ordered_json;

std::string clustering_to_json(const Clustering& clustering, std::span<const std::string> event_ids) {
  if (clustering.assignments.size() != event_ids.size()) {
    throw ValidationError("clustering assigns " + std::to_string(clustering.assignments.size()) +
                          " events but the dataset has " + std::to_string(event_ids.size()));
  }
  ordered_json doc;
  doc["k"] = clustering.k;
  doc["seed"] = clustering.seed;
  auto medoids = ordered_json::array();
  for (const auto m : clustering.medoids) medoids.push_back(event_ids[m]);
  doc["medoid_event_ids"] = std::move(medoids);
  auto assignments = ordered_json::object();
  for (std::size_t e = 0; e < event_ids.size(); ++e) assignments[event_ids[e]] = clustering.assignments[e];
  doc["assignments"] = std::move(assignments);
  doc["cost"] = clustering.cost;
  doc["sse"] = clustering.sse;
  doc["iterations"] = clustering.iterations;
  doc["converged"] = clustering.converged;
  return doc.dump(2) + "\n";
}

void save_clustering(const Clustering& clustering, std::span<const std::string> event_ids, const std::string& path) {
  csv::write_text_file(path, clustering_to_json(clustering, event_ids));
}

void save_clustering(const Clustering& clustering, const Dataset& dataset, const std::string& path) {
  const auto ids = dataset.event_ids();
  save_clustering(clustering, ids, path);
}

Clustering load_clustering(const std::string& path, std::span<const std::string> event_ids) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }

  Clustering c;
  try {
    c.k = doc.at("k").get<std::size_t>();
    c.seed = doc.at("seed").get<std::uint64_t>();
    c.cost = doc.at("cost").get<double>();
    c.sse = doc.at("sse").get<double>();
    c.iterations = doc.value("iterations", std::size_t{0});
    c.converged = doc.value("converged", false);

    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < event_ids.size(); ++i) index.emplace(event_ids[i], i);

    const auto& assignments = doc.at("assignments");
    if (assignments.size() != event_ids.size()) {
      throw JoinError(path + ": clustering has " + std::to_string(assignments.size()) + " assignments, dataset has " +
                      std::to_string(event_ids.size()) + " events");
    }
    c.assignments.assign(event_ids.size(), SIZE_MAX);
    for (const auto& [id, cluster] : assignments.items()) {
      const auto it = index.find(id);
      if (it == index.end()) throw JoinError(path + ": event '" + id + "' is not in the dataset");
      const auto value = cluster.get<std::size_t>();
      if (value >= c.k) throw ValidationError(path + ": event '" + id + "' assigned to cluster out of range");
      c.assignments[it->second] = value;
    }
    for (const auto& id : doc.at("medoid_event_ids")) {
      const auto it = index.find(id.get<std::string>());
      if (it == index.end()) throw JoinError(path + ": medoid '" + id.get<std::string>() + "' is not in the dataset");
      c.medoids.push_back(it->second);
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path + ": malformed clustering document: " + e.what());
  }
  if (c.medoids.size() != c.k) throw SchemaError(path + ": medoid count differs from k");
  for (std::size_t m = 0; m < c.k; ++m) {
    if (c.assignments[c.medoids[m]] != m) {
      throw ValidationError(path + ": medoid of cluster " + std::to_string(m) + " is not assigned to it");
    }
  }
  return c;
}

}  // namespace stormclust
