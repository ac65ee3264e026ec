#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "oracles.hpp"
#include "stormclust/cli.hpp"
#include "stormclust/csv.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = stormclust::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(oracle::read_file(p)); }

// Small synthetic set shared by the tests in this file.
const fs::path& small_data() {
  static const fs::path dir = [] {
    const auto d = oracle::temp_dir("cli_data");
    const auto r = run({"synth", "--out", d.string(), "--events-per-type", "5"});
    REQUIRE(r.code == 0);
    return d;
  }();
  return dir;
}

}  // namespace

TEST_CASE("synth writes events, metrics and a manifest") {
  const auto& d = small_data();
  CHECK(fs::exists(d / "events.csv"));
  CHECK(fs::exists(d / "metrics.csv"));
  const auto m = read_json(d / "manifest.json");
  CHECK(m["command"] == "synth");
  CHECK(m["parameters"]["seed"] == 42);
  CHECK(m["counts"]["events"] == 80);

  const auto again = oracle::temp_dir("cli_synth2");
  REQUIRE(run({"synth", "--out", again.string(), "--events-per-type", "5"}).code == 0);
  CHECK(oracle::read_file(d / "events.csv") == oracle::read_file(again / "events.csv"));
  CHECK(oracle::read_file(d / "manifest.json") == oracle::read_file(again / "manifest.json"));
}

TEST_CASE("cluster writes clustering, membership and optional matrix") {
  const auto out = oracle::temp_dir("cli_cluster");
  const auto r = run({"cluster", "--input", (small_data() / "events.csv").string(), "--k", "16", "--out", out.string(),
                      "--dump-matrix", "--threads", "2"});
  REQUIRE(r.code == 0);
  const auto c = read_json(out / "clustering.json");
  CHECK(c["k"] == 16);
  CHECK(c["medoid_event_ids"].size() == 16);
  CHECK(c["assignments"].size() == 80);
  CHECK(fs::exists(out / "distance_matrix.csv"));
  const auto mem = stormclust::csv::read_file((out / "membership.csv").string());
  CHECK(mem.rows.size() == 80);
  const auto m = read_json(out / "manifest.json");
  CHECK(m["parameters"]["dtw"]["window_fraction"] == 0.1);
  CHECK(m["parameters"]["kmedoids"]["seeds"].size() == 10);

  const auto one = oracle::temp_dir("cli_cluster1");
  REQUIRE(run({"cluster", "--input", (small_data() / "events.csv").string(), "--k", "1", "--out", one.string()}).code == 0);
  const auto c1 = read_json(one / "clustering.json");
  for (const auto& [id, cl] : c1["assignments"].items()) CHECK(cl == 0);
}

TEST_CASE("results do not depend on the thread count") {
  const auto a = oracle::temp_dir("cli_t1");
  const auto b = oracle::temp_dir("cli_t3");
  const auto in = (small_data() / "events.csv").string();
  REQUIRE(run({"--threads", "1", "cluster", "--input", in, "--k", "5", "--out", a.string()}).code == 0);
  REQUIRE(run({"--threads", "3", "cluster", "--input", in, "--k", "5", "--out", b.string()}).code == 0);
  CHECK(oracle::read_file(a / "clustering.json") == oracle::read_file(b / "clustering.json"));
}

TEST_CASE("exit codes") {
  const auto out = oracle::temp_dir("cli_exit");
  auto r = run({"cluster", "--input", (out / "absent.csv").string(), "--k", "3", "--out", out.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("absent.csv") != std::string::npos);

  r = run({"elbow", "--input", (small_data() / "events.csv").string(), "--k-min", "2", "--k-max", "3", "--out",
           out.string()});
  CHECK(r.code == 1);

  r = run({"cluster", "--input", (small_data() / "events.csv").string(), "--k", "81", "--out", out.string()});
  CHECK(r.code == 1);

  const auto bad = (out / "bad.csv").string();
  stormclust::csv::write_text_file(bad, "event_id,site_id,time_s,discharge\n");
  r = run({"cluster", "--input", bad, "--k", "2", "--out", out.string()});
  CHECK(r.code == 2);

  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("elbow with and without plots") {
  const auto out = oracle::temp_dir("cli_elbow");
  const auto in = (small_data() / "events.csv").string();
  REQUIRE(run({"elbow", "--input", in, "--k-max", "10", "--restarts", "2", "--out", out.string()}).code == 0);
  CHECK(fs::exists(out / "elbow.svg"));
  const auto csv = stormclust::csv::read_file((out / "elbow.csv").string());
  CHECK(csv.header == std::vector<std::string>{"k", "sse"});
  CHECK(csv.rows.size() == 9);
  CHECK(read_json(out / "knee.json").contains("knee_k"));

  const auto np = oracle::temp_dir("cli_elbow_np");
  REQUIRE(run({"elbow", "--input", in, "--k-max", "6", "--restarts", "2", "--no-plots", "--out", np.string()}).code == 0);
  CHECK_FALSE(fs::exists(np / "elbow.svg"));
  CHECK(fs::exists(np / "elbow.csv"));
}

TEST_CASE("preprocess and hopkins") {
  const auto out = oracle::temp_dir("cli_pre");
  REQUIRE(run({"preprocess", "--input", (small_data() / "events.csv").string(), "--out", out.string()}).code == 0);
  const auto h = oracle::temp_dir("cli_hop");
  const auto r = run({"hopkins", "--input", (out / "processed.csv").string(), "--preprocessed", "--out", h.string()});
  REQUIRE(r.code == 0);
  const double value = read_json(h / "hopkins.json")["hopkins"];
  CHECK(value > 0.5);
  CHECK(value <= 1.0);
}

TEST_CASE("config file supplies options and the command line overrides them") {
  const auto out = oracle::temp_dir("cli_cfg");
  const auto cfg = (out / "run.toml").string();
  stormclust::csv::write_text_file(cfg, "threads = 2\n[cluster]\nk = 4\nrestarts = 3\nwindow-fraction = 0.2\n");
  const auto in = (small_data() / "events.csv").string();
  REQUIRE(run({"--config", cfg, "cluster", "--input", in, "--out", (out / "a").string()}).code == 0);
  auto m = read_json(out / "a" / "manifest.json");
  CHECK(m["parameters"]["k"] == 4);
  CHECK(m["parameters"]["kmedoids"]["seeds"].size() == 3);
  CHECK(m["parameters"]["dtw"]["window_fraction"] == 0.2);
  CHECK(m["parameters"]["threads"] == 2);

  REQUIRE(run({"--config", cfg, "cluster", "--input", in, "--k", "6", "--out", (out / "b").string()}).code == 0);
  m = read_json(out / "b" / "manifest.json");
  CHECK(m["parameters"]["k"] == 6);

  CHECK(run({"--config", (out / "nope.toml").string(), "synth", "--out", out.string()}).code == 2);
}

TEST_CASE("evaluate with labels and metrics") {
  const auto c = oracle::temp_dir("cli_eval_c");
  const auto in = (small_data() / "events.csv").string();
  REQUIRE(run({"cluster", "--input", in, "--k", "16", "--out", c.string()}).code == 0);
  const auto e = oracle::temp_dir("cli_eval");
  const auto r = run({"evaluate", "--input", in, "--clustering", (c / "clustering.json").string(), "--metrics",
                      (small_data() / "metrics.csv").string(), "--out", e.string()});
  REQUIRE(r.code == 0);
  const auto rep = read_json(e / "report.json");
  CHECK(rep["external"].contains("rand_index"));
  CHECK(rep["external"].contains("homogeneity"));
  CHECK(rep["external"].contains("completeness"));
  CHECK(rep["chi_squared"].contains("label"));
  for (const char* f : {"contingency_label.csv", "contingency_site.csv", "contingency_hysteresis_class.csv",
                        "anova.csv", "zscores.csv", "zscores.svg", "chi_squared.csv"}) {
    CHECK_MESSAGE(fs::exists(e / f), f);
  }
  const auto anova = stormclust::csv::read_file((e / "anova.csv").string());
  CHECK(anova.header.front() == "metric");
  CHECK(anova.rows.size() == 5);
  CHECK(anova.column("F_clusters").has_value());
  CHECK(anova.column("F_hysteresis").has_value());
}

TEST_CASE("evaluate without labels skips external scores") {
  const auto dir = oracle::temp_dir("cli_nolabel");
  std::ostringstream s;
  s << "event_id,site_id,time_s,discharge,concentration\n";
  for (int e = 0; e < 12; ++e) {
    for (int i = 0; i < 30; ++i) {
      s << "ev" << e << ",site" << e % 3 << ',' << i * 300 << ',' << (e % 2 ? i : 30 - i) << ','
        << ((i * (e + 1)) % 7) << '\n';
    }
  }
  const auto in = (dir / "events.csv").string();
  stormclust::csv::write_text_file(in, s.str());
  REQUIRE(run({"cluster", "--input", in, "--k", "2", "--out", (dir / "c").string()}).code == 0);
  const auto r = run({"evaluate", "--input", in, "--clustering", (dir / "c" / "clustering.json").string(), "--out",
                      (dir / "e").string()});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("no labels") != std::string::npos);
  const auto rep = read_json(dir / "e" / "report.json");
  CHECK(rep["external"].is_null());
  CHECK(fs::exists(dir / "e" / "contingency_site.csv"));
}
