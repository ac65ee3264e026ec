#include "stormclust/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>
#include <thread>

#include "stormclust/clustering_io.hpp"
#include "stormclust/csv.hpp"
#include "stormclust/distance.hpp"
#include "stormclust/error.hpp"
#include "stormclust/evaluation.hpp"
#include "stormclust/event_model.hpp"
#include "stormclust/kmedoids.hpp"
#include "stormclust/model_selection.hpp"
#include "stormclust/preprocess.hpp"
#include "stormclust/svg.hpp"
#include "stormclust/synthgen.hpp"

namespace stormclust::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr const char* kToolVersion = "1.0.0";

struct GlobalOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  std::string config_file;
};

struct PreprocessOptions {
  int sg_order = 3;
  int sg_window = 21;
  std::size_t length = 50;
  bool no_normalize = false;
  bool preprocessed = false;

  PreprocessConfig config() const {
    PreprocessConfig c;
    c.smoothing.order = sg_order;
    c.smoothing.window = sg_window;
    c.target_length = length;
    c.normalize = !no_normalize;
    return c;
  }

  void add_to(CLI::App* app, bool allow_preprocessed) {
    app->add_option("--sg-order", sg_order, "Savitzky-Golay polynomial order")->capture_default_str();
    app->add_option("--sg-window", sg_window, "Savitzky-Golay window (odd)")->capture_default_str();
    app->add_option("--length", length, "resampled event length")->capture_default_str();
    app->add_flag("--no-normalize", no_normalize, "skip min-max normalisation");
    if (allow_preprocessed) {
      app->add_flag("--preprocessed", preprocessed, "input is already preprocessed; skip smoothing and resampling");
    }
  }

  Json to_json() const {
    if (preprocessed) return Json{{"already_preprocessed", true}};
    return Json{{"sg_order", sg_order}, {"sg_window", sg_window}, {"target_length", length},
                {"normalize", !no_normalize}};
  }
};

struct DtwOptions {
  double window_fraction = 0.10;
  std::string variant = "dependent";

  DtwConfig config() const {
    DtwConfig c;
    c.window_fraction = window_fraction;
    c.variant = parse_distance_variant(variant);
    c.validate();
    return c;
  }

  void add_to(CLI::App* app) {
    app->add_option("--window-fraction", window_fraction, "warping window as a fraction of series length")
        ->capture_default_str();
    app->add_option("--variant", variant, "dependent | independent | euclidean")->capture_default_str();
  }

  Json to_json() const { return Json{{"window_fraction", window_fraction}, {"variant", variant}}; }
};

struct SeedOptions {
  std::size_t restarts = 10;
  std::uint64_t seed_base = 0;
  std::vector<std::uint64_t> seeds;
  std::size_t max_iter = 100;
  std::string seeding = "plus_plus";

  std::vector<std::uint64_t> seed_list() const {
    if (!seeds.empty()) return seeds;
    if (restarts == 0) throw ValidationError("--restarts must be at least 1");
    return seed_range(restarts, seed_base);
  }

  KMedoidsOptions options() const {
    KMedoidsOptions o;
    o.max_iter = max_iter;
    if (seeding == "plus_plus" || seeding == "plusplus") {
      o.seeding = Seeding::plus_plus;
    } else if (seeding == "uniform") {
      o.seeding = Seeding::uniform;
    } else {
      throw ValidationError("unknown seeding '" + seeding + "' (expected plus_plus or uniform)");
    }
    if (max_iter == 0) throw ValidationError("--max-iter must be at least 1");
    return o;
  }

  void add_to(CLI::App* app) {
    app->add_option("--restarts", restarts, "number of seeds (seed-base, seed-base+1, ...)")->capture_default_str();
    app->add_option("--seed-base", seed_base, "first seed when --restarts is used")->capture_default_str();
    app->add_option("--seeds", seeds, "explicit seed list (overrides --restarts)");
    app->add_option("--max-iter", max_iter, "iteration cap per run")->capture_default_str();
    app->add_option("--seeding", seeding, "plus_plus | uniform")->capture_default_str();
  }

  Json to_json() const {
    return Json{{"seeds", seed_list()}, {"max_iter", max_iter}, {"seeding", seeding}};
  }
};

unsigned effective_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

fs::path prepare_out_dir(const std::string& dir) {
  if (dir.empty()) throw ValidationError("--out is required");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  return fs::path(dir);
}

void write_json(const fs::path& path, const Json& doc) { csv::write_text_file(path.string(), doc.dump(2) + "\n"); }

Json manifest(const std::string& command, Json parameters, const std::vector<std::string>& outputs) {
  Json m;
  m["tool"] = "stormclust";
  m["version"] = kToolVersion;
  m["command"] = command;
  m["parameters"] = std::move(parameters);
  m["outputs"] = outputs;
  return m;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
}

// Loads the input events and brings them to analysis form.
Dataset load_dataset(const std::string& input, const PreprocessOptions& pre, unsigned threads, std::ostream& err) {
  if (input.empty()) throw ValidationError("--input is required");
  if (pre.preprocessed) return load_processed(input);
  const RawDataset raw = load_events(input);
  std::vector<std::string> warnings;
  Dataset data = preprocess_dataset(raw, pre.config(), &warnings, threads);
  print_warnings(warnings, err);
  return data;
}

DistanceMatrix build_matrix(const Dataset& data, const DtwOptions& dtw, unsigned threads, std::ostream& err) {
  std::vector<std::string> warnings;
  DistanceMatrix m = distance_matrix(data, dtw.config(), threads, &warnings);
  std::sort(warnings.begin(), warnings.end());
  warnings.erase(std::unique(warnings.begin(), warnings.end()), warnings.end());
  print_warnings(warnings, err);
  return m;
}

std::string significance(double p) {
  if (p < 0.0001) return "p<0.0001";
  if (p < 0.001) return "p<0.001";
  if (p < 0.05) return "p<0.05";
  return "";
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

Json chi_json(const ChiSquaredResult& r) {
  return Json{{"statistic", r.statistic}, {"df", r.df}, {"p_value", r.p_value}};
}

// ---------------------------------------------------------------- synth

struct SynthCmd {
  SynthConfig config;
  std::string out;

  int run(std::ostream& out_stream) const {
    const fs::path dir = prepare_out_dir(out);
    const SyntheticDataset data = generate_dataset(config);
    save_events(data.events, (dir / "events.csv").string());
    save_metrics(synthetic_metrics(data), (dir / "metrics.csv").string());

    Json params{{"seed", config.seed},
                {"events_per_type", config.events_per_type},
                {"raw_length", config.raw_length},
                {"noise_std", config.noise_std},
                {"noise_mean", config.noise_mean}};
    Json m = manifest("synth", params, {"events.csv", "metrics.csv"});
    m["counts"] = Json{{"events", data.events.size()}, {"types", kSyntheticTypeCount}};
    write_json(dir / "manifest.json", m);
    out_stream << "wrote " << data.events.size() << " events to " << (dir / "events.csv").string() << "\n";
    return kExitOk;
  }
};

// ---------------------------------------------------------------- preprocess

struct PreprocessCmd {
  std::string input;
  std::string out;
  PreprocessOptions pre;

  int run(const GlobalOptions& g, std::ostream& out_stream, std::ostream& err) const {
    const fs::path dir = prepare_out_dir(out);
    const Dataset data = load_dataset(input, pre, effective_threads(g.threads), err);
    save_processed(data, (dir / "processed.csv").string());
    Json params{{"input", input}, {"preprocess", pre.to_json()}};
    Json m = manifest("preprocess", params, {"processed.csv"});
    m["counts"] = Json{{"events", data.size()}};
    write_json(dir / "manifest.json", m);
    out_stream << "preprocessed " << data.size() << " events\n";
    return kExitOk;
  }
};

// ---------------------------------------------------------------- cluster

struct ClusterCmd {
  std::string input;
  std::string out;
  std::size_t k = 0;
  bool dump_matrix = false;
  PreprocessOptions pre;
  DtwOptions dtw;
  SeedOptions seeds;

  int run(const GlobalOptions& g, std::ostream& out_stream, std::ostream& err) const {
    const unsigned threads = effective_threads(g.threads);
    const KMedoidsOptions kopt = seeds.options();
    const auto seed_list = seeds.seed_list();
    const fs::path dir = prepare_out_dir(out);
    const Dataset data = load_dataset(input, pre, threads, err);
    if (k < 1 || k > data.size()) {
      throw ValidationError("k=" + std::to_string(k) + " outside [1, " + std::to_string(data.size()) + "]");
    }
    const DistanceMatrix matrix = build_matrix(data, dtw, threads, err);
    const Clustering best = kmedoids_restarts(matrix, k, seed_list, kopt);
    const auto ids = data.event_ids();

    std::vector<std::string> outputs{"clustering.json", "membership.csv"};
    save_clustering(best, ids, (dir / "clustering.json").string());

    std::ostringstream mem;
    mem << "event_id,site_id,cluster,medoid_event_id,is_medoid,distance_to_medoid\n";
    for (std::size_t c = 0; c < best.k; ++c) {
      const std::size_t med = best.medoids[c];
      for (std::size_t e : best.members(c)) {
        mem << csv_cell(ids[e]) << ',' << csv_cell(data[e].site_id) << ',' << c << ',' << csv_cell(ids[med]) << ','
            << (e == med ? 1 : 0) << ',' << csv::format_double(matrix(e, med)) << '\n';
      }
    }
    csv::write_text_file((dir / "membership.csv").string(), mem.str());

    if (dump_matrix) {
      save_distance_matrix(matrix, ids, (dir / "distance_matrix.csv").string());
      outputs.push_back("distance_matrix.csv");
    }

    Json params{{"input", input}, {"k", k}, {"preprocess", pre.to_json()}, {"dtw", dtw.to_json()},
                {"kmedoids", seeds.to_json()}, {"threads", threads}};
    Json m = manifest("cluster", params, outputs);
    m["result"] = Json{{"seed", best.seed}, {"cost", best.cost}, {"sse", best.sse},
                       {"iterations", best.iterations}, {"converged", best.converged},
                       {"cluster_sizes", best.cluster_sizes()}};
    write_json(dir / "manifest.json", m);
    out_stream << "k=" << k << " cost=" << best.cost << " sse=" << best.sse << " (seed " << best.seed << ")\n";
    return kExitOk;
  }
};

// ---------------------------------------------------------------- elbow

struct ElbowCmd {
  std::string input;
  std::string out;
  std::size_t k_min = 2;
  std::size_t k_max = 24;
  double sensitivity = 1.0;
  bool no_plots = false;
  PreprocessOptions pre;
  DtwOptions dtw;
  SeedOptions seeds;

  int run(const GlobalOptions& g, std::ostream& out_stream, std::ostream& err) const {
    const unsigned threads = effective_threads(g.threads);
    if (k_min < 1 || k_max < k_min) throw ValidationError("invalid k-range");
    if (k_max - k_min + 1 < 3) {
      throw ValidationError("k-range " + std::to_string(k_min) + ".." + std::to_string(k_max) +
                            " has fewer than 3 points; the knee cannot be located");
    }
    if (!(sensitivity > 0.0) || !std::isfinite(sensitivity)) throw ValidationError("sensitivity must be positive");
    const KMedoidsOptions kopt = seeds.options();
    const auto seed_list = seeds.seed_list();
    const fs::path dir = prepare_out_dir(out);
    const Dataset data = load_dataset(input, pre, threads, err);
    if (k_max > data.size()) {
      throw ValidationError("k-max " + std::to_string(k_max) + " exceeds the number of events (" +
                            std::to_string(data.size()) + ")");
    }
    const DistanceMatrix matrix = build_matrix(data, dtw, threads, err);
    std::vector<std::size_t> ks;
    for (std::size_t k = k_min; k <= k_max; ++k) ks.push_back(k);
    const ElbowCurve curve = elbow_curve(matrix, ks, seed_list, kopt, threads);
    const auto knee = kneedle(curve, sensitivity);

    std::ostringstream csv_out;
    csv_out << "k,sse\n";
    for (std::size_t i = 0; i < curve.ks.size(); ++i) {
      csv_out << curve.ks[i] << ',' << csv::format_double(curve.sse[i]) << '\n';
    }
    csv::write_text_file((dir / "elbow.csv").string(), csv_out.str());
    std::vector<std::string> outputs{"elbow.csv", "knee.json"};

    Json knee_doc{{"sensitivity", sensitivity}, {"knee_k", knee ? Json(*knee) : Json(nullptr)}};
    write_json(dir / "knee.json", knee_doc);

    if (!no_plots) {
      std::vector<double> x(curve.ks.begin(), curve.ks.end());
      std::optional<double> hx;
      if (knee) hx = static_cast<double>(*knee);
      csv::write_text_file((dir / "elbow.svg").string(), svg::line_chart(x, curve.sse, "Elbow curve", "k", "SSE", hx));
      outputs.push_back("elbow.svg");
    }

    Json params{{"input", input}, {"k_min", k_min}, {"k_max", k_max}, {"sensitivity", sensitivity},
                {"emit_plots", !no_plots}, {"preprocess", pre.to_json()}, {"dtw", dtw.to_json()},
                {"kmedoids", seeds.to_json()}, {"threads", threads}};
    write_json(dir / "manifest.json", manifest("elbow", params, outputs));
    if (knee) {
      out_stream << "knee at k=" << *knee << "\n";
    } else {
      out_stream << "no knee found\n";
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------- hopkins

struct HopkinsCmd {
  std::string input;
  std::string out;
  HopkinsOptions options;
  PreprocessOptions pre;

  int run(const GlobalOptions& g, std::ostream& out_stream, std::ostream& err) const {
    const unsigned threads = effective_threads(g.threads);
    const Dataset data = load_dataset(input, pre, threads, err);
    const double h = hopkins(data, options);
    if (!out.empty()) {
      const fs::path dir = prepare_out_dir(out);
      write_json(dir / "hopkins.json", Json{{"hopkins", h}, {"events", data.size()}});
      Json params{{"input", input}, {"sample_fraction", options.sample_fraction},
                  {"repetitions", options.repetitions}, {"seed", options.seed}, {"preprocess", pre.to_json()}};
      write_json(dir / "manifest.json", manifest("hopkins", params, {"hopkins.json"}));
    }
    out_stream << "hopkins=" << csv::format_double(h) << "\n";
    return kExitOk;
  }
};

// ---------------------------------------------------------------- evaluate

struct EvaluateCmd {
  std::string input;
  std::string clustering_path;
  std::string metrics_path;
  std::string out;
  bool no_plots = false;

  int run(std::ostream& out_stream, std::ostream& err) const {
    if (input.empty()) throw ValidationError("--input is required");
    if (clustering_path.empty()) throw ValidationError("--clustering is required");
    const fs::path dir = prepare_out_dir(out);
    const RawDataset events = load_events(input);
    const auto ids = events.event_ids();
    const Clustering clustering = load_clustering(clustering_path, ids);
    std::optional<EventMetricsTable> metrics;
    if (!metrics_path.empty()) {
      metrics = load_metrics(metrics_path);
      validate_join(*metrics, ids);
    }

    std::vector<std::string> cluster_names(ids.size());
    for (std::size_t e = 0; e < ids.size(); ++e) cluster_names[e] = std::to_string(clustering.assignments[e]);

    Json report;
    report["n_events"] = ids.size();
    report["k"] = clustering.k;
    report["cluster_sizes"] = clustering.cluster_sizes();
    Json notices = Json::array();
    Json chi = Json::object();
    std::vector<std::string> outputs{"report.json"};

    auto contingency = [&](const std::string& name, const std::vector<std::string>& cols) {
      const auto table = ContingencyTable::from_labels(cluster_names, cols);
      const std::string file = "contingency_" + name + ".csv";
      csv::write_text_file((dir / file).string(), table.to_csv("cluster"));
      outputs.push_back(file);
      try {
        chi[name] = chi_json(chi_squared_independence(table));
      } catch (const ValidationError& e) {
        chi[name] = Json{{"skipped", e.what()}};
      }
    };

    if (const auto labels = events.labels()) {
      std::vector<std::string> predicted = cluster_names;
      const auto hc = homogeneity_completeness(std::span<const std::string>(*labels), predicted);
      report["external"] = Json{{"rand_index", rand_index(std::span<const std::string>(*labels), predicted)},
                                {"homogeneity", hc.homogeneity},
                                {"completeness", hc.completeness}};
      contingency("label", *labels);
    } else {
      report["external"] = nullptr;
      const std::string notice = "dataset has no labels; external metrics skipped";
      notices.push_back(notice);
      err << "notice: " << notice << "\n";
    }

    std::vector<std::string> sites;
    sites.reserve(events.size());
    for (const auto& ev : events) sites.push_back(ev.site_id);
    contingency("site", sites);

    if (metrics) {
      const EventMetricsTable table = attach_clusters(*metrics, clustering, ids);
      const bool has_hyst = table.has_categorical("hysteresis_class");
      if (has_hyst) {
        std::vector<std::string> hyst(ids.size());
        bool complete = true;
        const auto& col = table.categorical("hysteresis_class");
        for (std::size_t e = 0; e < ids.size(); ++e) {
          const auto row = table.find_row(ids[e]);
          if (!row || !col[*row]) {
            complete = false;
            break;
          }
          hyst[e] = *col[*row];
        }
        if (complete) {
          contingency("hysteresis_class", hyst);
        } else {
          notices.push_back("hysteresis_class missing for some events; its contingency table is skipped");
        }
      }
      write_anova(table, has_hyst, dir);
      outputs.push_back("anova.csv");
      write_zscores(table, clustering, ids, dir, outputs);
    } else {
      notices.push_back("no metrics table supplied; ANOVA and z-score outputs skipped");
    }

    report["chi_squared"] = chi;
    report["notices"] = notices;
    report["outputs"] = outputs;
    write_json(dir / "report.json", report);

    std::ostringstream chi_csv;
    chi_csv << "grouping,statistic,df,p_value\n";
    for (const auto& [name, r] : chi.items()) {
      if (!r.contains("statistic")) continue;
      chi_csv << name << ',' << csv::format_double(r["statistic"].get<double>()) << ',' << r["df"].get<std::size_t>()
              << ',' << csv::format_double(r["p_value"].get<double>()) << '\n';
    }
    csv::write_text_file((dir / "chi_squared.csv").string(), chi_csv.str());

    Json params{{"input", input}, {"clustering", clustering_path},
                {"metrics", metrics_path.empty() ? Json(nullptr) : Json(metrics_path)}, {"emit_plots", !no_plots}};
    auto all_outputs = outputs;
    all_outputs.push_back("chi_squared.csv");
    write_json(dir / "manifest.json", manifest("evaluate", params, all_outputs));

    if (report["external"].is_object()) {
      const auto& ex = report["external"];
      out_stream << "rand=" << ex["rand_index"].get<double>() << " homogeneity=" << ex["homogeneity"].get<double>()
                 << " completeness=" << ex["completeness"].get<double>() << "\n";
    }
    out_stream << "wrote evaluation to " << dir.string() << "\n";
    return kExitOk;
  }

  static void write_anova(const EventMetricsTable& table, bool has_hyst, const fs::path& dir) {
    std::ostringstream s;
    s << "metric,group,description,F_hysteresis,p_hysteresis,sig_hysteresis,F_clusters,p_clusters,sig_clusters\n";
    auto cells = [&](std::string_view metric, std::string_view grouping, bool available) {
      if (!available) {
        s << ",,";
        return;
      }
      try {
        const AnovaResult r = anova_oneway(table, metric, grouping);
        s << csv::format_double(r.f_value) << ',' << csv::format_double(r.p_value) << ',' << significance(r.p_value);
      } catch (const ValidationError&) {
        s << ",,";
      }
    };
    for (const auto& info : metric_catalog()) {
      if (!table.has_numeric(info.name)) continue;
      s << info.name << ',' << csv_cell(std::string(info.group)) << ',' << csv_cell(std::string(info.description))
        << ',';
      cells(info.name, "hysteresis_class", has_hyst);
      s << ',';
      cells(info.name, "cluster", true);
      s << '\n';
    }
    csv::write_text_file((dir / "anova.csv").string(), s.str());
  }

  void write_zscores(const EventMetricsTable& table, const Clustering& clustering,
                     const std::vector<std::string>& ids, const fs::path& dir,
                     std::vector<std::string>& outputs) const {
    const auto profiles = zscore_profiles(table, clustering, ids);
    std::vector<std::string> names;
    if (!profiles.empty()) {
      for (const auto& mz : profiles.front().metrics) names.push_back(mz.metric);
    }
    std::ostringstream s;
    s << "cluster";
    for (const auto& n : names) s << ',' << n;
    s << '\n';
    std::vector<svg::BarPanel> panels;
    for (const auto& p : profiles) {
      s << p.cluster;
      svg::BarPanel panel{"cluster " + std::to_string(p.cluster), {}};
      for (const auto& mz : p.metrics) {
        s << ',' << (mz.z ? csv::format_double(*mz.z) : std::string());
        panel.values.push_back(mz.z);
      }
      s << '\n';
      panels.push_back(std::move(panel));
    }
    csv::write_text_file((dir / "zscores.csv").string(), s.str());
    outputs.push_back("zscores.csv");
    if (!no_plots && !names.empty()) {
      csv::write_text_file((dir / "zscores.svg").string(), svg::bar_panels(names, panels, "Metric z-scores per cluster"));
      outputs.push_back("zscores.svg");
    }
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cluster storm events by the shape of their discharge and concentration curves."};
  app.name("stormclust");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI configuration file; [section] names match subcommands");

  GlobalOptions global;
  app.add_option("--threads", global.threads, "worker threads (0: all cores)")->capture_default_str();

  SynthCmd synth;
  auto* synth_app = app.add_subcommand("synth", "generate the labelled synthetic event set");
  synth_app->add_option("--out", synth.out, "output directory")->required();
  synth_app->add_option("--seed", synth.config.seed, "random seed")->capture_default_str();
  synth_app->add_option("--events-per-type", synth.config.events_per_type, "events per shape combination")
      ->capture_default_str();
  synth_app->add_option("--raw-length", synth.config.raw_length, "samples per raw event")->capture_default_str();
  synth_app->add_option("--noise-std", synth.config.noise_std, "Gaussian noise standard deviation")
      ->capture_default_str();
  synth_app->add_option("--noise-mean", synth.config.noise_mean, "Gaussian noise mean")->capture_default_str();

  PreprocessCmd prep;
  auto* prep_app = app.add_subcommand("preprocess", "smooth, resample and normalise events");
  prep_app->add_option("--input", prep.input, "events CSV")->required();
  prep_app->add_option("--out", prep.out, "output directory")->required();
  prep.pre.add_to(prep_app, false);

  ClusterCmd cluster;
  auto* cluster_app = app.add_subcommand("cluster", "K-medoids clustering over DTW distances");
  cluster_app->add_option("--input", cluster.input, "events CSV")->required();
  cluster_app->add_option("--out", cluster.out, "output directory")->required();
  cluster_app->add_option("--k", cluster.k, "number of clusters")->required();
  cluster_app->add_flag("--dump-matrix", cluster.dump_matrix, "also write the distance matrix");
  cluster.pre.add_to(cluster_app, true);
  cluster.dtw.add_to(cluster_app);
  cluster.seeds.add_to(cluster_app);

  ElbowCmd elbow;
  auto* elbow_app = app.add_subcommand("elbow", "SSE over a range of k and its knee");
  elbow_app->add_option("--input", elbow.input, "events CSV")->required();
  elbow_app->add_option("--out", elbow.out, "output directory")->required();
  elbow_app->add_option("--k-min", elbow.k_min, "smallest k")->capture_default_str();
  elbow_app->add_option("--k-max", elbow.k_max, "largest k")->capture_default_str();
  elbow_app->add_option("--sensitivity", elbow.sensitivity, "knee sensitivity S")->capture_default_str();
  elbow_app->add_flag("--no-plots", elbow.no_plots, "skip the SVG plot");
  elbow.pre.add_to(elbow_app, true);
  elbow.dtw.add_to(elbow_app);
  elbow.seeds.add_to(elbow_app);

  HopkinsCmd hop;
  auto* hop_app = app.add_subcommand("hopkins", "Hopkins clustering tendency statistic");
  hop_app->add_option("--input", hop.input, "events CSV")->required();
  hop_app->add_option("--out", hop.out, "optional output directory");
  hop_app->add_option("--sample-fraction", hop.options.sample_fraction, "fraction of events sampled")
      ->capture_default_str();
  hop_app->add_option("--repetitions", hop.options.repetitions, "repetitions averaged")->capture_default_str();
  hop_app->add_option("--seed", hop.options.seed, "random seed")->capture_default_str();
  hop.pre.add_to(hop_app, true);

  EvaluateCmd eval;
  auto* eval_app = app.add_subcommand("evaluate", "score a clustering and relate it to event metrics");
  eval_app->add_option("--input", eval.input, "events CSV the clustering was computed from")->required();
  eval_app->add_option("--clustering", eval.clustering_path, "clustering.json")->required();
  eval_app->add_option("--metrics", eval.metrics_path, "optional per-event metrics CSV");
  eval_app->add_option("--out", eval.out, "output directory")->required();
  eval_app->add_flag("--no-plots", eval.no_plots, "skip the SVG plot");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*synth_app) return synth.run(out);
    if (*prep_app) return prep.run(global, out, err);
    if (*cluster_app) return cluster.run(global, out, err);
    if (*elbow_app) return elbow.run(global, out, err);
    if (*hop_app) return hop.run(global, out, err);
    if (*eval_app) return eval.run(out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_input_error() ? kExitInput : kExitComputation;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitComputation;
}

}  // namespace stormclust::cli
