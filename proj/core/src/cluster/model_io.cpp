/* Copyright 2026 The polsar Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "polsar/cluster/primary.hpp"
#include "polsar/common/error.hpp"

namespace polsar {
namespace {

using json = nlohmann::ordered_json;

constexpr int kModelVersion = 1;

}  // namespace

void WriteClusterModel(const std::filesystem::path& path,
                       const ClusterModel& model) {
  json doc;
  doc["version"] = kModelVersion;
  doc["kind"] = "wishart_cluster_model";
  doc["k"] = model.k;
  doc["regularization"] = model.regularization;
  doc["objective"] = model.objective;
  doc["center_layout"] = "row-major 3x3, each entry as real, imaginary";
  json clusters = json::array();
  for (int c = 0; c < model.k; ++c) {
    json entry;
    entry["index"] = c;
    entry["count"] = model.counts.at(c);
    if (!model.primary_type.empty()) {
      entry["primary_type"] = std::string(PrimaryTypeName(model.primary_type[c]));
    } else {
      entry["primary_type"] = nullptr;
    }
    json center = json::array();
    for (const auto& z : model.centers[c].a) {
      center.push_back(z.real());
      center.push_back(z.imag());
    }
    entry["center"] = center;
    clusters.push_back(entry);
  }
  doc["clusters"] = clusters;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

ClusterModel ReadClusterModel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    const json doc = json::parse(in);
    if (doc.at("version").get<int>() != kModelVersion) {
      throw VersionError("unsupported cluster model version");
    }
    ClusterModel model;
    model.k = doc.at("k").get<int>();
    model.regularization = doc.at("regularization").get<double>();
    model.objective = doc.at("objective").get<double>();
    for (const auto& entry : doc.at("clusters")) {
      model.counts.push_back(entry.at("count").get<std::size_t>());
      const auto& pt = entry.at("primary_type");
      if (!pt.is_null()) {
        const auto type = ParsePrimaryType(pt.get<std::string>());
        if (!type) throw ValidationError("unknown primary type");
        model.primary_type.push_back(*type);
      }
      const auto values = entry.at("center").get<std::vector<double>>();
      if (values.size() != 18) throw ValidationError("center needs 18 values");
      Matrix3c m;
      for (int s = 0; s < 9; ++s) m.a[s] = cdouble(values[2 * s], values[2 * s + 1]);
      if (HermitianDefect(m) > 1e-9 * std::max(1e-300, m.FrobeniusNorm())) {
        throw ValidationError("cluster center is not Hermitian");
      }
      model.centers.push_back(m);
    }
    if (static_cast<int>(model.centers.size()) != model.k) {
      throw ValidationError("cluster count does not match k");
    }
    if (!model.primary_type.empty() &&
        static_cast<int>(model.primary_type.size()) != model.k) {
      throw ValidationError("primary types only partially assigned");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed cluster model " + path.string() + ": " +
                          e.what());
  }
}

}  // namespace polsar
