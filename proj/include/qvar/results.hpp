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

#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qv {

using json = nlohmann::json;

/// Result document with the stable key set shared by all tasks:
/// task, config, estimates, ranking, metrics, seed.
inline json make_result_document(const std::string& task, json config,
                                 std::vector<double> estimates,
                                 std::vector<std::size_t> ranking, json metrics,
                                 std::uint64_t seed) {
  json doc;
  doc["task"] = task;
  doc["config"] = std::move(config);
  doc["estimates"] = std::move(estimates);
  doc["ranking"] = std::move(ranking);
  doc["metrics"] = std::move(metrics);
  doc["seed"] = seed;
  return doc;
}

inline void validate_result_document(const json& doc) {
  for (const char* key : {"task", "config", "estimates", "ranking", "metrics", "seed"}) {
    if (!doc.contains(key)) {
      throw std::runtime_error(std::string("result document missing key: ") + key);
    }
  }
  const std::string task = doc["task"].get<std::string>();
  if (task != "qvar" && task != "hqfs" && task != "qoda") {
    throw std::runtime_error("result document has unknown task: " + task);
  }
  if (!doc["estimates"].is_array() || !doc["ranking"].is_array() || !doc["metrics"].is_object()) {
    throw std::runtime_error("result document has wrong field types");
  }
}

inline void save_results(const std::string& path, const json& doc) {
  validate_result_document(doc);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline json load_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open results file: " + path);
  json doc = json::parse(in);
  validate_result_document(doc);
  return doc;
}

}  // namespace qv
