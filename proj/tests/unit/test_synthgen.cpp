#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "stormclust/synthgen.hpp"

using namespace stormclust;

TEST_CASE("shape values") {
  const ShapeParams mid{0.8, 0.5, 0.0, 0.4};
  CHECK(shape_value(mid, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(shape_value(mid, 0.4) == doctest::Approx(1.0));
  CHECK(shape_value(mid, 0.8) == doctest::Approx(0.4));
  CHECK(shape_value(mid, 0.95) == 0.4);

  const ShapeParams late{0.5, 0.5, 0.5, 0.0};
  CHECK(shape_value(late, 0.3) == 0.0);
  CHECK(shape_value(late, 0.75) == doctest::Approx(1.0));
  CHECK(shape_value(late, 1.0) == doctest::Approx(0.0).epsilon(1e-15));

  // Continuous across the rise/fall joins and the window edges.
  for (const auto& t : hydrograph_types()) {
    const auto& p = t.params;
    for (double edge : {p.onset, p.peak_time(), p.window_end()}) {
      if (edge > 1.0) continue;
      CHECK(std::abs(shape_value(p, edge - 1e-9) - shape_value(p, std::min(1.0, edge + 1e-9))) < 1e-6);
    }
  }
}

TEST_CASE("sampled shapes peak at exactly one and end at recess") {
  for (const auto* table : {&hydrograph_types()}) {
    for (const auto& t : *table) {
      const auto c = shape_curve(t.params, 100);
      CHECK(*std::max_element(c.begin(), c.end()) == 1.0);
      CHECK(c.back() == doctest::Approx(t.params.recess).epsilon(1e-12));
      CHECK(c.front() == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
  for (const auto& t : concentration_types()) {
    const auto c = shape_curve(t.params, 100);
    CHECK(*std::max_element(c.begin(), c.end()) == 1.0);
  }
}

TEST_CASE("type tables") {
  CHECK(hydrograph_types().size() == 8);
  CHECK(concentration_types().size() == 2);
  for (const auto& t : hydrograph_types()) CHECK_NOTHROW(t.params.validate());
  CHECK_THROWS_AS((ShapeParams{0.0, 0.5, 0.0, 0.0}.validate()), ValidationError);
  CHECK_THROWS_AS((ShapeParams{0.5, 1.0, 0.0, 0.0}.validate()), ValidationError);
}

TEST_CASE("dataset generation") {
  const auto data = generate_dataset({});
  CHECK(data.events.size() == 800);
  CHECK(data.labels.size() == 800);
  std::vector<std::size_t> per_type(kSyntheticTypeCount, 0);
  for (std::size_t i = 0; i < 800; ++i) {
    ++per_type[data.labels[i].combined()];
    CHECK(data.events[i].label.value() == std::to_string(data.labels[i].combined()));
    CHECK(data.events[i].samples.size() == 100);
  }
  for (auto n : per_type) CHECK(n == 50);

  SynthConfig small;
  small.events_per_type = 5;
  CHECK(generate_dataset(small).events.size() == 80);
}

TEST_CASE("generation is reproducible and seed-dependent") {
  SynthConfig cfg;
  cfg.events_per_type = 3;
  const auto a = generate_dataset(cfg);
  const auto b = generate_dataset(cfg);
  cfg.seed = 43;
  const auto c = generate_dataset(cfg);
  bool differs = false;
  for (std::size_t e = 0; e < a.events.size(); ++e) {
    for (std::size_t i = 0; i < a.events[e].samples.size(); ++i) {
      CHECK(a.events[e].samples[i].discharge == b.events[e].samples[i].discharge);
      differs |= a.events[e].samples[i].discharge != c.events[e].samples[i].discharge;
    }
  }
  CHECK(differs);
}

TEST_CASE("noise-free events follow the shapes") {
  SynthConfig cfg;
  cfg.events_per_type = 1;
  cfg.noise_std = 0.0;
  const auto data = generate_dataset(cfg);
  for (std::size_t e = 0; e < data.events.size(); ++e) {
    const auto& lab = data.labels[e];
    const auto q = shape_curve(hydrograph_types()[lab.hydro_index].params, 100);
    const auto c = shape_curve(concentration_types()[lab.conc_index].params, 100);
    CHECK(data.events[e].discharge() == q);
    CHECK(data.events[e].concentration() == c);
  }
}

TEST_CASE("noise statistics") {
  SynthConfig cfg;
  cfg.noise_mean = 0.3;
  const auto data = generate_dataset(cfg);
  double sum = 0.0, sq = 0.0;
  std::size_t n = 0;
  for (std::size_t e = 0; e < data.events.size(); ++e) {
    const auto& lab = data.labels[e];
    const auto q = shape_curve(hydrograph_types()[lab.hydro_index].params, 100);
    for (std::size_t i = 0; i < 100; ++i) {
      const double r = data.events[e].samples[i].discharge - q[i];
      sum += r;
      sq += r * r;
      ++n;
    }
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  CHECK(mean == doctest::Approx(0.3).epsilon(0.01));
  CHECK(sd == doctest::Approx(0.05).epsilon(0.02));
}

TEST_CASE("config validation") {
  SynthConfig cfg;
  cfg.events_per_type = 0;
  CHECK_THROWS_AS(generate_dataset(cfg), ConfigError);
  cfg = {};
  cfg.raw_length = 3;
  CHECK_THROWS_AS(generate_dataset(cfg), ConfigError);
  cfg = {};
  cfg.noise_std = -1.0;
  CHECK_THROWS_AS(generate_dataset(cfg), ConfigError);
}

TEST_CASE("surrogate metrics") {
  SynthConfig cfg;
  cfg.events_per_type = 2;
  const auto data = generate_dataset(cfg);
  const auto m = synthetic_metrics(data);
  CHECK(m.row_count() == data.events.size());
  for (const char* name : {"T_Q", "T_SSC", "T_QSSC", "Q_Recess", "SSC_Recess"}) CHECK(m.has_numeric(name));
  CHECK(m.has_categorical("site"));
  CHECK(m.has_categorical("hysteresis_class"));
  CHECK(m.categorical("hysteresis_class")[0].value() == std::string(concentration_types()[data.labels[0].conc_index].name));
}
