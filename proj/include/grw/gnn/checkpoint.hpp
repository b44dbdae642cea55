// Copyright 2026 The grw Authors
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

#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

#include "grw/errors.hpp"
#include "grw/gnn/model.hpp"

namespace grw {

/// Checkpoint = <prefix>.json (shape manifest) + <prefix>.bin (row-major
/// little-endian doubles, weight matrices first, attention vectors after).
inline void save_checkpoint(const ModelParams& p, const std::string& prefix) {
  nlohmann::json manifest;
  manifest["kind"] = to_string(p.arch.kind);
  manifest["hidden_dim"] = p.arch.hidden_dim;
  manifest["heads"] = p.arch.heads;
  manifest["dropout"] = p.arch.dropout;
  manifest["input_dim"] = p.input_dim;
  manifest["num_classes"] = p.num_classes;
  manifest["step"] = p.step;
  nlohmann::json tensors = nlohmann::json::array();
  for (std::size_t i = 0; i < p.w.size(); ++i) {
    tensors.push_back({{"name", "w" + std::to_string(i)}, {"rows", p.w[i].rows()}, {"cols", p.w[i].cols()}});
  }
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    tensors.push_back({{"name", "a" + std::to_string(i)}, {"rows", p.a[i].size()}, {"cols", 1}});
  }
  manifest["tensors"] = tensors;
  std::ofstream mf(prefix + ".json");
  if (!mf) throw IoError("cannot write checkpoint manifest: " + prefix + ".json");
  mf << manifest.dump(2) << '\n';

  std::ofstream bf(prefix + ".bin", std::ios::binary);
  if (!bf) throw IoError("cannot write checkpoint tensors: " + prefix + ".bin");
  auto dump = [&bf](const double* data, std::streamsize count) {
    bf.write(reinterpret_cast<const char*>(data), count * static_cast<std::streamsize>(sizeof(double)));
  };
  for (const auto& mat : p.w) {
    // Write row-major regardless of Eigen's storage order.
    for (Eigen::Index r = 0; r < mat.rows(); ++r) {
      for (Eigen::Index c = 0; c < mat.cols(); ++c) {
        const double v = mat(r, c);
        dump(&v, 1);
      }
    }
  }
  for (const auto& vec : p.a) dump(vec.data(), vec.size());
}

inline ModelParams load_checkpoint(const std::string& prefix) {
  std::ifstream mf(prefix + ".json");
  if (!mf) throw IoError("cannot open checkpoint manifest: " + prefix + ".json");
  nlohmann::json manifest;
  try {
    mf >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(prefix + ".json: " + e.what());
  }
  Architecture arch;
  arch.kind = gnn_kind_from_string(manifest.at("kind").get<std::string>());
  arch.hidden_dim = manifest.at("hidden_dim").get<int>();
  arch.heads = manifest.at("heads").get<int>();
  arch.dropout = manifest.at("dropout").get<double>();
  ModelParams p = init_model(arch, manifest.at("input_dim").get<int>(), manifest.at("num_classes").get<int>(), 0);
  p.step = manifest.at("step").get<std::int64_t>();

  std::ifstream bf(prefix + ".bin", std::ios::binary);
  if (!bf) throw IoError("cannot open checkpoint tensors: " + prefix + ".bin");
  auto fill = [&bf, &prefix](double* data, std::streamsize count) {
    bf.read(reinterpret_cast<char*>(data), count * static_cast<std::streamsize>(sizeof(double)));
    if (!bf) throw ParseError(prefix + ".bin: truncated tensor data");
  };
  for (auto& mat : p.w) {
    for (Eigen::Index r = 0; r < mat.rows(); ++r) {
      for (Eigen::Index c = 0; c < mat.cols(); ++c) {
        double v = 0.0;
        fill(&v, 1);
        mat(r, c) = v;
      }
    }
  }
  for (auto& vec : p.a) fill(vec.data(), vec.size());
  return p;
}

}  // namespace grw
