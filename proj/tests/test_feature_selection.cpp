// Copyright 2026 The qvar developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "qvar/feature_selection.hpp"
#include "qvar/metrics.hpp"
#include "qvar/rng.hpp"

using namespace qv;

namespace {

Dataset random_dataset(Rng& rng, std::size_t records, std::size_t features) {
  Dataset d;
  d.num_records = records;
  d.num_features = features;
  d.values.resize(records * features);
  for (double& v : d.values) v = rng.uniform(-2.0, 2.0);
  return d;
}

}  // namespace

TEST_CASE("feature ranking") {
  REQUIRE(feature_ranking(std::vector<double>{0.5, 0.1, 0.3}) ==
          std::vector<std::size_t>{1, 2, 0});
  REQUIRE(feature_ranking(std::vector<double>{1.0, 1.0, 1.0}) ==
          std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("classical variance-threshold selection") {
  SECTION("a unit-variance feature survives t = 0.5") {
    Dataset d;
    d.num_records = 4;
    d.num_features = 1;
    d.values = {1.0, -1.0, 1.0, -1.0};
    const FeatureSelectionResult r = classical_feature_selection(d, 0.5);
    REQUIRE(r.kept == std::vector<std::size_t>{0});
    REQUIRE(r.dropped.empty());
  }
  SECTION("a threshold above every variance drops everything") {
    Rng rng(2);
    const Dataset d = random_dataset(rng, 6, 4);
    const FeatureSelectionResult r = classical_feature_selection(d, 1e6);
    REQUIRE(r.dropped.size() == 4);
    REQUIRE(r.kept.empty());
  }
  SECTION("variances match hand-computed two-pass values") {
    Dataset d;
    d.num_records = 4;
    d.num_features = 3;
    // columns: {1,2,3,4}, {0,0,0,0}, {2,-2,2,-2}
    d.values = {1, 0, 2, 2, 0, -2, 3, 0, 2, 4, 0, -2};
    const FeatureSelectionResult r = classical_feature_selection(d, 0.0);
    REQUIRE(r.variances[0] == Catch::Approx(1.25));
    REQUIRE(r.variances[1] == Catch::Approx(0.0));
    REQUIRE(r.variances[2] == Catch::Approx(4.0));
    REQUIRE(r.dropped == std::vector<std::size_t>{1});  // drop at variance <= t
    REQUIRE(r.ranking == std::vector<std::size_t>{1, 0, 2});
  }
}

TEST_CASE("oracle-backed selection") {
  SECTION("a constant feature is dropped at t = 0.1") {
    Dataset d;
    d.num_records = 4;
    d.num_features = 2;
    d.values = {5.0, 1.0, 5.0, -1.0, 5.0, 1.5, 5.0, -1.5};
    EstimatorConfig cfg;  // exact
    const FeatureSelectionResult r = hqfs(d, 0.1, cfg);
    REQUIRE(r.dropped == std::vector<std::size_t>{0});
    REQUIRE(r.kept == std::vector<std::size_t>{1});
  }
  SECTION("exact mode reproduces the classical selector on random data") {
    Rng rng(5);
    EstimatorConfig cfg;
    for (int trial = 0; trial < 50; ++trial) {
      const Dataset d = random_dataset(rng, 2 + rng.below(15), 1 + rng.below(8));
      const double t = rng.uniform(0.0, 2.0);
      const FeatureSelectionResult quantum = hqfs(d, t, cfg);
      const FeatureSelectionResult classical = classical_feature_selection(d, t);
      REQUIRE(quantum.kept == classical.kept);
      REQUIRE(quantum.dropped == classical.dropped);
      REQUIRE(quantum.ranking == classical.ranking);
      REQUIRE(accuracy(quantum.kept, classical.kept, d.num_features) == 1.0);
      REQUIRE(rbo(quantum.ranking, classical.ranking, 0.9) == Catch::Approx(1.0));
    }
  }
  SECTION("kept sets grow as the threshold shrinks") {
    Rng rng(9);
    const Dataset d = random_dataset(rng, 8, 5);
    EstimatorConfig cfg;
    const FeatureSelectionResult loose = hqfs(d, 0.2, cfg);
    const FeatureSelectionResult tight = hqfs(d, 1.0, cfg);
    for (std::size_t f : tight.kept) {
      REQUIRE(std::find(loose.kept.begin(), loose.kept.end(), f) != loose.kept.end());
    }
  }
  SECTION("fixed seeds give identical results for sampled estimators") {
    Rng rng(13);
    const Dataset d = random_dataset(rng, 8, 3);
    EstimatorConfig cfg;
    cfg.method = EstimationMethod::Mlae;
    cfg.shots = 32;
    cfg.seed = 321;
    const FeatureSelectionResult a = hqfs(d, 0.1, cfg);
    const FeatureSelectionResult b = hqfs(d, 0.1, cfg);
    REQUIRE(a.variances == b.variances);
    REQUIRE(a.ranking == b.ranking);
  }
  SECTION("negative thresholds are rejected") {
    Rng rng(17);
    const Dataset d = random_dataset(rng, 4, 2);
    EstimatorConfig cfg;
    REQUIRE_THROWS_AS(hqfs(d, -0.5, cfg), std::invalid_argument);
  }
}

TEST_CASE("record sampling is deterministic and shape-preserving") {
  Rng rng(21);
  const Dataset d = random_dataset(rng, 32, 4);
  const Dataset a = sample_records(d, 16, 77);
  const Dataset b = sample_records(d, 16, 77);
  REQUIRE(a.values == b.values);
  REQUIRE(a.num_records == 16);
  REQUIRE(a.num_features == 4);
  REQUIRE_THROWS_AS(sample_records(d, 100, 0), std::invalid_argument);
}
