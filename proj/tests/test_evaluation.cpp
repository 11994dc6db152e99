#include <doctest.h>

#include <cmath>
#include <map>

#include "nrt/nrt.hpp"
#include "support/oracles.hpp"

using namespace nrt;

TEST_CASE("mae and rmse: examples") {
  CHECK(mae({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == 0.0);
  CHECK(mae({1.0, 3.0}, {2.0, 2.0}) == doctest::Approx(1.0));
  CHECK(rmse({1.0, 2.0}, {1.0, 2.0}) == 0.0);
  CHECK(rmse({0.0, 0.0}, {3.0, 4.0}) ==
        doctest::Approx(3.535533905932737622).epsilon(1e-12));
  CHECK_THROWS_AS(mae({1.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(rmse({}, {}), std::invalid_argument);
}

TEST_CASE("mae matches an independent summation and never exceeds rmse") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.bounded(50);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.uniform(-10, 10);
      b[i] = rng.uniform(-10, 10);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += std::fabs(a[i] - b[i]);
    CHECK(mae(a, b) == doctest::Approx(sum / n).epsilon(1e-12));
    CHECK(mae(a, b) <= rmse(a, b) + 1e-12);
  }
}

TEST_CASE("evaluate fills the report consistently") {
  const EvalReport report = evaluate({1.0, 5.0}, {2.0, 2.0});
  CHECK(report.n == 2);
  CHECK(report.per_sample_abs_errors == std::vector<double>{1.0, 3.0});
  CHECK(report.mae == doctest::Approx(2.0));
  CHECK(report.mae <= report.rmse);
}

TEST_CASE("stats: regularized incomplete beta against frozen references") {
  // 40-digit evaluations, frozen.
  CHECK(regularized_incomplete_beta(0.3, 2.5, 1.5) ==
        doctest::Approx(0.088943723170665599354).epsilon(1e-10));
  CHECK(regularized_incomplete_beta(0.9, 0.5, 0.5) ==
        doctest::Approx(0.79516723530086654835).epsilon(1e-10));
  CHECK(regularized_incomplete_beta(0.5, 3.0, 3.0) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(0.123, 7.5, 0.5) ==
        doctest::Approx(3.2057502470132011364e-8).epsilon(1e-9));
  CHECK(regularized_incomplete_beta(0.75, 4.0, 2.0) ==
        doctest::Approx(0.6328125).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(0.01, 0.5, 0.5) ==
        doctest::Approx(0.06376856085851984791683).epsilon(1e-10));
  CHECK(regularized_incomplete_beta(0.0, 1.0, 1.0) == 0.0);
  CHECK(regularized_incomplete_beta(1.0, 1.0, 1.0) == 1.0);
}

TEST_CASE("stats: student t cdf against frozen references") {
  CHECK(student_t_cdf(0.0, 5.0) == 0.5);
  CHECK(student_t_cdf(1.3, 7.0) ==
        doctest::Approx(0.88261608230381141647).epsilon(1e-10));
  CHECK(student_t_cdf(-2.1, 3.0) ==
        doctest::Approx(0.063282601274842303786).epsilon(1e-10));
  CHECK(student_t_cdf(5.5, 19.0) ==
        doctest::Approx(0.99998682498570654555).epsilon(1e-10));
  CHECK(student_t_cdf(-0.7, 1.0) ==
        doctest::Approx(0.30559988778578521052).epsilon(1e-10));
  CHECK(student_t_cdf(0.25, 30.0) ==
        doctest::Approx(0.5978542954597124503).epsilon(1e-10));
}

TEST_CASE("paired_t_test: degenerate and directional cases") {
  const std::vector<double> a{3.0, 4.0, 5.0, 6.0};
  CHECK_THROWS_AS(paired_t_test(a, a), DegenerateTestError);
  CHECK_THROWS_AS(paired_t_test(a, {1.0, 2.0, 3.0, 4.0}), DegenerateTestError);

  // Nearly constant positive differences: b clearly smaller, p near zero.
  const std::vector<double> b{2.0, 3.0, 4.0, 5.000001};
  const TTestResult r = paired_t_test(a, b);
  CHECK(r.df == 3);
  CHECK(r.t > 100.0);
  CHECK(r.p < 1e-5);
}

TEST_CASE("paired_t_test matches the frozen high-precision fixture") {
  const std::vector<double> a{12.1, 10.4, 9.8, 14.2, 11.0, 13.5, 9.9,
                              12.7, 10.1, 11.8, 13.0, 10.9, 12.4, 9.5,
                              14.8, 11.2, 10.6, 13.9, 12.2, 11.5};
  const std::vector<double> b{11.3, 10.0, 9.1, 13.1, 10.2, 13.8, 9.0,
                              11.9, 9.8, 11.1, 12.0, 10.2, 11.5, 9.9,
                              13.6, 10.4, 10.1, 12.8, 11.4, 10.7};
  const TTestResult r = paired_t_test(a, b);
  CHECK(r.df == 19);
  CHECK(r.t == doctest::Approx(7.3058507820828611105).epsilon(1e-10));
  CHECK(std::fabs(r.p - 3.1397003698809001704e-7) < 1e-10);
}

TEST_CASE("paired_t_test is antisymmetric in t") {
  Rng rng(7);
  std::vector<double> a, b;
  for (int i = 0; i < 25; ++i) {
    a.push_back(rng.uniform(0, 5));
    b.push_back(rng.uniform(0, 5));
  }
  const TTestResult ab = paired_t_test(a, b);
  const TTestResult ba = paired_t_test(b, a);
  CHECK(ab.t == doctest::Approx(-ba.t).epsilon(1e-12));
}

TEST_CASE("multi_seed_eval aggregates correctly") {
  Dataset train, test;
  train.dim = test.dim = 1;
  for (int i = 0; i < 10; ++i) {
    train.samples.push_back(Sample{{double(i)}, double(i)});
    test.samples.push_back(Sample{{double(i)}, double(i % 3)});
  }

  SUBCASE("deterministic runner has zero spread; one seed equals one run") {
    const SeedRunner constant = [&](const Dataset&, const Dataset*, const Dataset& t,
                                    std::uint64_t) {
      return std::vector<double>(t.size(), 1.0);
    };
    const MultiSeedSummary one = multi_seed_eval(constant, train, nullptr, test, 1, 5);
    const MultiSeedSummary many = multi_seed_eval(constant, train, nullptr, test, 6, 5);
    CHECK(one.per_seed.size() == 1);
    CHECK(one.mae_std == 0.0);
    CHECK(many.mae_std == 0.0);
    CHECK(one.mae_mean == doctest::Approx(many.mae_mean));
  }

  SUBCASE("mean equals the arithmetic mean of per-seed MAEs") {
    const SeedRunner seeded = [&](const Dataset&, const Dataset*, const Dataset& t,
                                  std::uint64_t seed) {
      return std::vector<double>(t.size(), static_cast<double>(seed % 4));
    };
    const MultiSeedSummary summary = multi_seed_eval(seeded, train, nullptr, test, 5, 2);
    double mean = 0.0;
    for (const EvalReport& r : summary.per_seed) mean += r.mae;
    mean /= 5.0;
    CHECK(summary.mae_mean == doctest::Approx(mean).epsilon(1e-12));
  }

  SUBCASE("runner failures carry the seed index") {
    const SeedRunner failing = [&](const Dataset&, const Dataset*, const Dataset& t,
                                   std::uint64_t seed) -> std::vector<double> {
      if (seed == 4) throw DivergedError("boom");
      return std::vector<double>(t.size(), 0.0);
    };
    try {
      multi_seed_eval(failing, train, nullptr, test, 5, 2);
      FAIL("expected DivergedError");
    } catch (const DivergedError& e) {
      CHECK(std::string(e.what()).find("seed 4") != std::string::npos);
    }
  }
}

TEST_CASE("node_error_report: single leaf and depth-1 identities") {
  SyntheticSpec spec = default_synthetic_spec(2, 120, 2, 0.3, 9);
  const SyntheticData synth = generate_synthetic(spec);

  TrainConfig cfg;
  cfg.layer_sizes = {8};
  cfg.epochs_per_node = 60;
  cfg.learning_rate = 0.02;
  cfg.min_node_size = 3;
  cfg.scan_candidate_cap = 12;
  cfg.seed = 2;

  SUBCASE("single leaf: only the overall MAE") {
    TrainConfig leaf_cfg = cfg;
    leaf_cfg.purity_epsilon = 1e9;  // everything is pure
    const NrtModel model = build_tree(synth.dataset, nullptr, leaf_cfg);
    REQUIRE(model.leaf_count == 1);
    const NodeErrorReport report = node_error_report(model, synth.dataset);
    CHECK(report.entries.size() == 1);
    CHECK(report.entries[0].mae == doctest::Approx(report.overall_mae));
  }

  SUBCASE("weighted child MAEs recombine to the parent") {
    TrainConfig deep_cfg = cfg;
    deep_cfg.max_depth = 2;
    const NrtModel model = build_tree(synth.dataset, nullptr, deep_cfg);
    const NodeErrorReport report = node_error_report(model, synth.dataset);

    std::map<int, NodeErrorEntry> by_id;
    for (const NodeErrorEntry& e : report.entries) by_id[e.node_id] = e;
    for (const NodeErrorEntry& e : report.entries) {
      if (e.leaf) continue;
      const TreeNode* node = find_node(model, e.node_id);
      const NodeErrorEntry& l = by_id.at(node->left->id);
      const NodeErrorEntry& r = by_id.at(node->right->id);
      CHECK(l.count + r.count == e.count);
      if (e.count > 0) {
        const double combined =
            (l.mae * l.count + r.mae * r.count) / static_cast<double>(e.count);
        CHECK(std::fabs(combined - e.mae) < 1e-9);
      }
    }
  }
}

TEST_CASE("node_error_report: the noisy regime dominates") {
  // Three regimes; the last one has a much wider response range, so its
  // subtree must report the largest MAE. Direct per-subset MAE recomputation
  // is the oracle via the weighted-mean checks above.
  SyntheticSpec spec;
  spec.num_regimes = 3;
  spec.dim = 2;
  spec.n = 240;
  spec.seed = 33;
  spec.response_ranges = {{0.0, 2.0}, {4.0, 6.0}, {8.0, 28.0}};
  spec.true_thresholds = {3.0, 7.0};
  spec.regime_centers = {{0.0, 0.0}, {4.0, 4.0}, {-4.0, 4.0}};
  spec.feature_noise = {0.3, 0.3, 0.3};
  spec.weight_by_range_width = false;
  const SyntheticData synth = generate_synthetic(spec);

  TrainConfig cfg;
  cfg.layer_sizes = {8};
  cfg.epochs_per_node = 60;
  cfg.learning_rate = 0.02;
  cfg.min_node_size = 5;
  cfg.max_depth = 3;
  cfg.scan_candidate_cap = 16;
  cfg.seed = 4;
  const NrtModel model = build_tree(synth.dataset, nullptr, cfg);
  const NodeErrorReport report = node_error_report(model, synth.dataset);

  // Among depth-1 siblings, the subtree containing the wide regime's center
  // response (18) carries the maximum MAE.
  double noisy_mae = -1.0, other_mae = -1.0;
  for (const NodeErrorEntry& e : report.entries) {
    if (e.depth != 1) continue;
    if (e.low < 18.0 && 18.0 <= e.high) {
      noisy_mae = e.mae;
    } else {
      other_mae = std::max(other_mae, e.mae);
    }
  }
  REQUIRE(noisy_mae >= 0.0);
  REQUIRE(other_mae >= 0.0);
  CHECK(noisy_mae > other_mae);

  CHECK_THROWS_AS(node_error_report(model, Dataset{{}, 2}), std::invalid_argument);
}
