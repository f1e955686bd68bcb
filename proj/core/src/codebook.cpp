// Copyright 2026 The Botsum Authors.
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

#include "botsum/codebook.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "botsum/error.hpp"
#include "botsum/file_util.hpp"
#include "json.hpp"

namespace botsum {

using json = nlohmann::json;

Codebook::Codebook(PointSet centroids, TrainMeta meta)
    : centroids_(std::move(centroids)), meta_(meta) {
  if (centroids_.dims == 0 || centroids_.size() == 0 ||
      centroids_.data.size() != centroids_.size() * centroids_.dims) {
    throw FormatError("codebook needs at least one centroid of positive dimension");
  }
  for (double v : centroids_.data) {
    if (!std::isfinite(v)) throw FormatError("codebook centroid is not finite");
  }
}

Codebook train_codebook(const FeatureMatrix& features, const TrainOptions& opts) {
  if (opts.codewords < 1) throw InputError("G must be >= 1");
  PointSet points{features.dims, features.data};
  KMeansResult km = kmeans(points, {opts.codewords, opts.seed, opts.max_iter, opts.tol});
  TrainMeta meta{opts.seed, km.iterations, km.inertia, points.size()};
  return Codebook(std::move(km.centroids), meta);
}

Codebook train_codebook(std::span<const FeatureVector> features, const TrainOptions& opts) {
  if (features.empty()) throw TrainingError("no features to train on");
  FeatureMatrix m;
  m.dims = features.front().values.size();
  for (const auto& f : features) {
    if (f.values.size() != m.dims) throw InputError("feature dimensions differ");
    m.append(f.values);
  }
  return train_codebook(m, opts);
}

std::size_t quantize(std::span<const double> x, const Codebook& cb) {
  if (x.size() != cb.dims()) {
    throw InputError("feature has dimension " + std::to_string(x.size()) +
                     ", codebook expects " + std::to_string(cb.dims()));
  }
  return nearest(x, cb.centroids());
}

std::string codebook_to_json(const Codebook& cb, const std::string& extra_json) {
  // Written by hand so centroids carry exactly 17 significant digits.
  std::ostringstream out;
  out << "{\n";
  out << "  \"version\": \"1\",\n";
  out << "  \"G\": " << cb.size() << ",\n";
  out << "  \"D\": " << cb.dims() << ",\n";
  out << "  \"seed\": " << cb.meta().seed << ",\n";
  out << "  \"iterations\": " << cb.meta().iterations << ",\n";
  out << "  \"inertia\": " << format_double(cb.meta().inertia) << ",\n";
  out << "  \"training_points\": " << cb.meta().training_points << ",\n";
  if (!extra_json.empty()) out << "  \"config\": " << extra_json << ",\n";
  out << "  \"centroids\": [\n";
  for (std::size_t g = 0; g < cb.size(); ++g) {
    out << "    [";
    const auto c = cb.centroid(g);
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j) out << ", ";
      out << format_double(c[j]);
    }
    out << (g + 1 < cb.size() ? "],\n" : "]\n");
  }
  out << "  ]\n}\n";
  return out.str();
}

Codebook codebook_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("codebook is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("version")) {
      throw FormatError("codebook has no version tag");
    }
    const json& ver = j.at("version");
    const std::string tag = ver.is_string() ? ver.get<std::string>() : ver.dump();
    if (tag != "1") throw FormatError("unsupported codebook version '" + tag + "'");

    const auto g = j.at("G").get<std::size_t>();
    const auto d = j.at("D").get<std::size_t>();
    const json& rows = j.at("centroids");
    if (!rows.is_array()) throw FormatError("centroids must be an array");
    if (rows.size() != g) {
      throw FormatError("codebook declares G=" + std::to_string(g) + " but has " +
                        std::to_string(rows.size()) + " centroid rows");
    }
    PointSet c;
    c.dims = d;
    c.data.reserve(g * d);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const json& row = rows[k];
      if (!row.is_array() || row.size() != d) {
        throw FormatError("centroid " + std::to_string(k) + " does not have D=" +
                          std::to_string(d) + " values");
      }
      for (const json& v : row) {
        if (!v.is_number()) throw FormatError("centroid value is not a number");
        c.data.push_back(v.get<double>());
      }
    }
    TrainMeta meta;
    meta.seed = j.value("seed", std::uint64_t{0});
    meta.iterations = j.value("iterations", 0);
    meta.inertia = j.value("inertia", 0.0);
    meta.training_points = j.value("training_points", std::size_t{0});
    return Codebook(std::move(c), meta);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed codebook: ") + e.what());
  }
}

void save_codebook(const Codebook& cb, const std::filesystem::path& path,
                   const std::string& extra_json) {
  write_file_atomic(path, codebook_to_json(cb, extra_json));
}

Codebook load_codebook(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw InputError("codebook not found: " + path.string());
  }
  return codebook_from_json(read_text_file(path));
}

}  // namespace botsum
