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

// Command-line frontend: generate benchmark data, estimate variances, run
// feature selection and outlier detection, and run the verification suite.
// Exit codes: 0 success, 1 validation/input failure, 2 unexpected runtime
// error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qvar/qvar.hpp"

namespace {

struct MethodOptions {
  std::string method = "exact";
  int s = 6;
  std::int64_t shots = -1;  // -1: per-method default (0 for canonical, 128 for mlae)
  std::vector<int> schedule;
  std::uint64_t seed = 0;
};

void add_method_options(CLI::App* cmd, MethodOptions& opts) {
  cmd->add_option("--method", opts.method, "Estimator: exact, canonical or mlae")
      ->check(CLI::IsMember({"exact", "canonical", "mlae"}))
      ->capture_default_str();
  cmd->add_option("--s", opts.s, "Readout qubits (canonical); also sets the mlae schedule")
      ->check(CLI::Range(1, 20))
      ->capture_default_str();
  cmd->add_option("--shots", opts.shots,
                  "Measurement shots (canonical) or shots per round (mlae); 0 = exact readout");
  cmd->add_option("--schedule", opts.schedule, "Explicit mlae Grover-power schedule")
      ->delimiter(',');
  cmd->add_option("--seed", opts.seed, "Random seed")->capture_default_str();
}

qv::EstimatorConfig to_config(const MethodOptions& opts, bool schedule_from_s) {
  qv::EstimatorConfig cfg;
  if (opts.method == "exact") {
    cfg.method = qv::EstimationMethod::Exact;
  } else if (opts.method == "canonical") {
    cfg.method = qv::EstimationMethod::Canonical;
  } else {
    cfg.method = qv::EstimationMethod::Mlae;
  }
  cfg.s = opts.s;
  cfg.seed = opts.seed;
  if (opts.shots >= 0) {
    cfg.shots = static_cast<std::uint64_t>(opts.shots);
  } else {
    cfg.shots = cfg.method == qv::EstimationMethod::Mlae ? 128 : 0;
  }
  if (!opts.schedule.empty()) {
    cfg.schedule = opts.schedule;
  } else if (schedule_from_s && cfg.method == qv::EstimationMethod::Mlae) {
    cfg.schedule = qv::mlae_schedule_for(opts.s);
  }
  return cfg;
}

qv::json config_json(const MethodOptions& opts, const qv::EstimatorConfig& cfg) {
  qv::json j;
  j["method"] = opts.method;
  j["s"] = cfg.s;
  j["shots"] = cfg.shots;
  if (!cfg.schedule.empty()) j["schedule"] = cfg.schedule;
  return j;
}

void write_or_print(const std::optional<std::string>& path, const qv::json& doc) {
  if (path) {
    qv::save_results(*path, doc);
    std::cout << "wrote " << *path << "\n";
  } else {
    std::cout << doc.dump(2) << "\n";
  }
}

qv::json p_at_n_table(const qv::Ranking& r1, const qv::Ranking& r2) {
  qv::json table = qv::json::object();
  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}, std::size_t{5},
                        std::size_t{10}, std::size_t{15}, std::size_t{20}, std::size_t{25},
                        std::size_t{30}}) {
    if (n <= r1.size() && n <= r2.size()) {
      table[std::to_string(n)] = qv::precision_at_n(r1, r2, n);
    }
  }
  return table;
}

int run_gen_fs(const std::string& output, std::size_t records, std::size_t informative,
               std::size_t uninformative, double sigma, std::uint64_t seed) {
  qv::SynthFsSpec spec;
  spec.records = records;
  spec.informative = informative;
  spec.uninformative = uninformative;
  spec.noise_sigma = sigma;
  spec.seed = seed;
  qv::save_csv(output, qv::gen_fs(spec));
  std::cout << "wrote " << output << " (" << records << "x" << (informative + uninformative)
            << ")\n";
  return 0;
}

int run_gen_od(const std::string& output, const std::string& labels_path, std::size_t records,
               std::size_t dims, double contamination, std::uint64_t seed) {
  qv::SynthOdSpec spec;
  spec.records = records;
  spec.dims = dims;
  spec.contamination = contamination;
  spec.seed = seed;
  const qv::OdData od = qv::gen_od(spec);
  qv::save_csv(output, od.data);
  std::ofstream labels(labels_path);
  if (!labels) throw std::runtime_error("cannot open file for writing: " + labels_path);
  for (std::size_t idx : od.outlier_indices) labels << idx << '\n';
  std::cout << "wrote " << output << " (" << records << "x" << dims << ") and " << labels_path
            << " (" << od.outlier_indices.size() << " outliers)\n";
  return 0;
}

int run_qvar_cmd(const std::string& input, const std::optional<std::string>& output,
                 const MethodOptions& opts, bool compare, double rbo_p) {
  const qv::Dataset data = qv::load_csv(input);
  const qv::EstimatorConfig cfg = to_config(opts, false);

  std::vector<double> estimates(data.num_features);
  for (std::size_t f = 0; f < data.num_features; ++f) {
    qv::EstimatorConfig per_feature = cfg;
    per_feature.seed = qv::derive_stream(cfg.seed, f);
    estimates[f] = qv::estimate_variance(data.column(f), per_feature).variance;
  }
  const qv::Ranking ranking = qv::feature_ranking(estimates);

  qv::json metrics = qv::json::object();
  qv::json doc = qv::make_result_document("qvar", config_json(opts, cfg), estimates, ranking,
                                          metrics, opts.seed);
  if (compare) {
    std::vector<double> classical(data.num_features);
    for (std::size_t f = 0; f < data.num_features; ++f) {
      classical[f] = qv::classical_variance(data.column(f));
    }
    const qv::ErrorStats es = qv::error_stats(estimates, classical);
    doc["metrics"]["mae"] = es.mae;
    doc["metrics"]["mse"] = es.mse;
    doc["metrics"]["rmse"] = es.rmse;
    doc["metrics"]["rbo"] = qv::rbo(ranking, qv::feature_ranking(classical), rbo_p);
    doc["classical"] = classical;
  }
  write_or_print(output, doc);
  return 0;
}

int run_hqfs_cmd(const std::string& input, const std::optional<std::string>& output,
                 const MethodOptions& opts, double threshold, bool compare, double rbo_p,
                 std::size_t sample_size, std::size_t trials) {
  qv::Dataset data = qv::load_csv(input);
  const qv::EstimatorConfig cfg = to_config(opts, true);

  qv::json trials_json = qv::json::array();
  double acc_sum = 0.0;
  double rbo_sum = 0.0;
  qv::FeatureSelectionResult last;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const qv::Dataset view =
        sample_size == 0 ? data
                         : qv::sample_records(data, sample_size,
                                              qv::derive_stream(opts.seed, 9000 + trial));
    qv::EstimatorConfig trial_cfg = cfg;
    trial_cfg.seed = qv::derive_stream(cfg.seed, trial);
    last = qv::hqfs(view, threshold, trial_cfg);
    if (compare) {
      const qv::FeatureSelectionResult classical =
          qv::classical_feature_selection(view, threshold);
      const double acc = qv::accuracy(last.kept, classical.kept, view.num_features);
      const double ranking_rbo = qv::rbo(last.ranking, classical.ranking, rbo_p);
      acc_sum += acc;
      rbo_sum += ranking_rbo;
      trials_json.push_back({{"acc", acc}, {"rbo", ranking_rbo}});
    }
  }

  qv::json config = config_json(opts, cfg);
  config["threshold"] = threshold;
  if (sample_size != 0) {
    config["sample_size"] = sample_size;
    config["trials"] = trials;
  }
  qv::json doc = qv::make_result_document("hqfs", config, last.variances, last.ranking,
                                          qv::json::object(), opts.seed);
  doc["kept"] = last.kept;
  doc["dropped"] = last.dropped;
  if (compare) {
    doc["metrics"]["acc"] = acc_sum / static_cast<double>(trials);
    doc["metrics"]["rbo"] = rbo_sum / static_cast<double>(trials);
    if (trials > 1) doc["trials"] = trials_json;
  }
  write_or_print(output, doc);
  return 0;
}

int run_qoda_cmd(const std::string& input, const std::optional<std::string>& output,
                 const MethodOptions& opts, std::optional<double> threshold,
                 double contamination, bool compare, double rbo_p) {
  const qv::Dataset data = qv::load_csv(input);
  const qv::EstimatorConfig cfg = to_config(opts, true);

  // Score first; when no threshold is given, flag the bottom
  // ceil(contamination * M) scores.
  qv::OutlierResult result = qv::qoda(data, threshold.value_or(0.0), cfg, compare);
  if (!threshold) {
    const double t = qv::threshold_for_contamination(result.scores, contamination);
    result.outliers.clear();
    for (std::size_t p = 0; p < result.scores.size(); ++p) {
      if (result.scores[p] <= t) result.outliers.push_back(p);
    }
  }

  qv::json config = config_json(opts, cfg);
  if (threshold) {
    config["threshold"] = *threshold;
  } else {
    config["contamination"] = contamination;
  }
  qv::json doc = qv::make_result_document("qoda", config, result.scores, result.ranking,
                                          qv::json::object(), opts.seed);
  doc["outliers"] = result.outliers;
  if (compare) {
    const qv::Ranking angle_ranking = qv::feature_ranking(result.angle_scores);
    doc["classical"] = {{"angle_scores", result.angle_scores},
                        {"delta_scores", result.delta_scores}};
    doc["metrics"]["rbo"] = qv::rbo(result.ranking, angle_ranking, rbo_p);
    doc["metrics"]["p_at_n"] = p_at_n_table(result.ranking, angle_ranking);
    std::vector<double> lhs(data.num_records);
    std::vector<double> rhs(data.num_records);
    for (std::size_t pivot = 0; pivot < data.num_records; ++pivot) {
      const qv::BoundCheck bc = qv::check_bound(qv::translate_and_project(data, pivot));
      lhs[pivot] = bc.delta_variance;
      rhs[pivot] = bc.angle_bound;
    }
    const qv::ErrorStats es = qv::error_stats(rhs, lhs);
    doc["metrics"]["mae"] = es.mae;
    doc["metrics"]["mse"] = es.mse;
    doc["metrics"]["rmse"] = es.rmse;
  }
  write_or_print(output, doc);
  return 0;
}

int run_verify_cmd(std::uint64_t seed, const std::string& group) {
  const std::vector<qv::CheckResult> checks = qv::run_verification(seed, group);
  bool all_passed = true;
  std::string current_group;
  int passed = 0;
  for (const qv::CheckResult& check : checks) {
    if (check.group != current_group) {
      current_group = check.group;
      std::cout << "[" << current_group << "]\n";
    }
    std::cout << "  " << (check.passed ? "PASS" : "FAIL") << "  " << check.name << " ("
              << check.detail << ")\n";
    all_passed = all_passed && check.passed;
    passed += check.passed ? 1 : 0;
  }
  std::cout << passed << "/" << checks.size() << " checks passed\n";
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variance estimation on a quantum state-vector simulator, with "
               "variance-threshold feature selection and angle-based outlier detection"};
  app.require_subcommand(1);

  // gen
  CLI::App* gen = app.add_subcommand("gen", "Generate synthetic benchmark data");
  gen->require_subcommand(1);

  CLI::App* gen_fs_cmd = gen->add_subcommand("fs", "Feature-selection data");
  std::string fs_output = "fs.csv";
  std::size_t fs_records = 32;
  std::size_t fs_informative = 7;
  std::size_t fs_uninformative = 3;
  double fs_sigma = 0.05;
  std::uint64_t fs_seed = 0;
  gen_fs_cmd->add_option("-o,--output", fs_output, "Output CSV path")->capture_default_str();
  gen_fs_cmd->add_option("--records", fs_records, "Record count")->capture_default_str();
  gen_fs_cmd->add_option("--informative", fs_informative, "High-variance feature count")
      ->capture_default_str();
  gen_fs_cmd->add_option("--uninformative", fs_uninformative, "Low-variance feature count")
      ->capture_default_str();
  gen_fs_cmd->add_option("--sigma", fs_sigma, "Noise std deviation of uninformative features")
      ->capture_default_str();
  gen_fs_cmd->add_option("--seed", fs_seed, "Random seed")->capture_default_str();

  CLI::App* gen_od_cmd = gen->add_subcommand("od", "Outlier-detection data");
  std::string od_output = "od.csv";
  std::string od_labels;
  std::size_t od_records = 100;
  std::size_t od_dims = 2;
  double od_contamination = 0.1;
  std::uint64_t od_seed = 0;
  gen_od_cmd->add_option("-o,--output", od_output, "Output CSV path")->capture_default_str();
  gen_od_cmd->add_option("--labels", od_labels,
                         "Ground-truth label file (default: <output>.labels)");
  gen_od_cmd->add_option("--records", od_records, "Record count")->capture_default_str();
  gen_od_cmd->add_option("--dims", od_dims, "Feature count")->capture_default_str();
  gen_od_cmd->add_option("--contamination", od_contamination, "Outlier fraction in (0,1)")
      ->capture_default_str();
  gen_od_cmd->add_option("--seed", od_seed, "Random seed")->capture_default_str();

  // qvar
  CLI::App* qvar_cmd = app.add_subcommand("qvar", "Estimate per-column variances of a CSV");
  std::string qvar_input;
  std::optional<std::string> qvar_output;
  MethodOptions qvar_opts;
  bool qvar_compare = false;
  double qvar_rbo_p = 0.9;
  qvar_cmd->add_option("-i,--input", qvar_input, "Input CSV")->required();
  qvar_cmd->add_option("-o,--output", qvar_output, "Output JSON path (default: stdout)");
  add_method_options(qvar_cmd, qvar_opts);
  qvar_cmd->add_flag("--compare-classical", qvar_compare,
                     "Attach classical variances and error metrics");
  qvar_cmd->add_option("--rbo-p", qvar_rbo_p, "RBO persistence")->capture_default_str();

  // hqfs
  CLI::App* hqfs_cmd = app.add_subcommand("hqfs", "Variance-threshold feature selection");
  std::string hqfs_input;
  std::optional<std::string> hqfs_output;
  MethodOptions hqfs_opts;
  double hqfs_threshold = 0.1;
  bool hqfs_compare = false;
  double hqfs_rbo_p = 0.9;
  std::size_t hqfs_sample = 0;
  std::size_t hqfs_trials = 1;
  hqfs_cmd->add_option("-i,--input", hqfs_input, "Input CSV")->required();
  hqfs_cmd->add_option("-o,--output", hqfs_output, "Output JSON path (default: stdout)");
  add_method_options(hqfs_cmd, hqfs_opts);
  hqfs_cmd->add_option("-t,--threshold", hqfs_threshold, "Variance threshold (drop if <= t)")
      ->capture_default_str();
  hqfs_cmd->add_flag("--compare-classical", hqfs_compare,
                     "Attach accuracy/RBO against the classical selector");
  hqfs_cmd->add_option("--rbo-p", hqfs_rbo_p, "RBO persistence")->capture_default_str();
  hqfs_cmd->add_option("--sample-size", hqfs_sample,
                       "Per-trial record sample size (0 = use all records)");
  hqfs_cmd->add_option("--trials", hqfs_trials, "Number of sampled trials")
      ->capture_default_str();

  // qoda
  CLI::App* qoda_cmd = app.add_subcommand("qoda", "Angle-based outlier detection");
  std::string qoda_input;
  std::optional<std::string> qoda_output;
  MethodOptions qoda_opts;
  std::optional<double> qoda_threshold;
  double qoda_contamination = 0.1;
  bool qoda_compare = false;
  double qoda_rbo_p = 0.9;
  qoda_cmd->add_option("-i,--input", qoda_input, "Input CSV")->required();
  qoda_cmd->add_option("-o,--output", qoda_output, "Output JSON path (default: stdout)");
  add_method_options(qoda_cmd, qoda_opts);
  qoda_cmd->add_option("-t,--threshold", qoda_threshold,
                       "Score threshold (flag if <= t); default flags by contamination");
  qoda_cmd->add_option("--contamination", qoda_contamination,
                       "Fraction of records to flag when no threshold is given")
      ->capture_default_str();
  qoda_cmd->add_flag("--compare-classical", qoda_compare,
                     "Attach classical scores, RBO, P@n and bound error stats");
  qoda_cmd->add_option("--rbo-p", qoda_rbo_p, "RBO persistence")->capture_default_str();

  // verify
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the invariant self-checks");
  std::uint64_t verify_seed = 0;
  std::string verify_group;
  verify_cmd->add_option("--seed", verify_seed, "Random seed")->capture_default_str();
  verify_cmd->add_option("--group", verify_group,
                         "Run one group: identity, variance, ae, mlae, bound, qoda, metrics");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_fs_cmd->parsed()) {
      return run_gen_fs(fs_output, fs_records, fs_informative, fs_uninformative, fs_sigma,
                        fs_seed);
    }
    if (gen_od_cmd->parsed()) {
      const std::string labels = od_labels.empty() ? od_output + ".labels" : od_labels;
      return run_gen_od(od_output, labels, od_records, od_dims, od_contamination, od_seed);
    }
    if (qvar_cmd->parsed()) {
      return run_qvar_cmd(qvar_input, qvar_output, qvar_opts, qvar_compare, qvar_rbo_p);
    }
    if (hqfs_cmd->parsed()) {
      return run_hqfs_cmd(hqfs_input, hqfs_output, hqfs_opts, hqfs_threshold, hqfs_compare,
                          hqfs_rbo_p, hqfs_sample, hqfs_trials);
    }
    if (qoda_cmd->parsed()) {
      return run_qoda_cmd(qoda_input, qoda_output, qoda_opts, qoda_threshold,
                          qoda_contamination, qoda_compare, qoda_rbo_p);
    }
    if (verify_cmd->parsed()) {
      return run_verify_cmd(verify_seed, verify_group);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
