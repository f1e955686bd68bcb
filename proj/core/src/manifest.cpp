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

#include "botsum/manifest.hpp"

#include "botsum/error.hpp"
#include "botsum/file_util.hpp"
#include "json.hpp"

namespace botsum {

using ojson = nlohmann::ordered_json;

std::string manifest_to_json(const SummaryManifest& m) {
  ojson j;
  j["video_id"] = m.video_id;
  try {
    j["config"] = ojson::parse(m.config_json.empty() ? "{}" : m.config_json);
  } catch (const ojson::exception& e) {
    throw InputError(std::string("manifest config is not JSON: ") + e.what());
  }
  j["source"] = {{"kind", m.source.kind},
                 {"path", m.source.path},
                 {"fps", m.source.fps},
                 {"frame_count", m.source.frame_count},
                 {"duration_s", m.source.duration_s},
                 {"sampled_frames", m.source.sampled_frames},
                 {"informative_frames", m.source.informative_frames}};
  j["K_estimated"] = m.summary.k_estimated;
  j["K_initial"] = m.summary.k_initial;
  j["N_as"] = m.summary.n_as();
  ojson kfs = ojson::array();
  for (const auto& kf : m.summary.keyframes) {
    ojson k;
    k["frame_index"] = kf.frame_index;
    k["timestamp_s"] = kf.timestamp_s;
    k["source_frame_ref"] = kf.source_frame_ref;
    if (m.storyboard) k["display_duration_s"] = kStoryboardSecondsPerKeyframe;
    kfs.push_back(std::move(k));
  }
  j["keyframes"] = std::move(kfs);
  if (m.storyboard) {
    j["storyboard_duration_s"] =
        static_cast<double>(m.summary.n_as()) * kStoryboardSecondsPerKeyframe;
  }
  j["warnings"] = m.summary.warnings;
  return j.dump(2) + "\n";
}

SummaryManifest manifest_from_json(const std::string& text) {
  try {
    const ojson j = ojson::parse(text);
    SummaryManifest m;
    m.video_id = j.at("video_id").get<std::string>();
    m.config_json = j.at("config").dump();
    if (j.contains("source")) {
      const ojson& s = j.at("source");
      m.source.kind = s.value("kind", "");
      m.source.path = s.value("path", "");
      m.source.fps = s.value("fps", 0.0);
      m.source.frame_count = s.value("frame_count", std::size_t{0});
      m.source.duration_s = s.value("duration_s", 0.0);
      m.source.sampled_frames = s.value("sampled_frames", std::size_t{0});
      m.source.informative_frames = s.value("informative_frames", std::size_t{0});
    }
    m.summary.k_initial = j.at("K_initial").get<std::size_t>();
    m.summary.k_estimated = j.value("K_estimated", m.summary.k_initial);
    for (const ojson& k : j.at("keyframes")) {
      m.summary.keyframes.push_back({k.at("frame_index").get<std::size_t>(),
                                     k.at("timestamp_s").get<double>(),
                                     k.value("source_frame_ref", "")});
      if (k.contains("display_duration_s")) m.storyboard = true;
    }
    if (j.contains("warnings")) {
      m.summary.warnings = j.at("warnings").get<std::vector<std::string>>();
    }
    return m;
  } catch (const ojson::exception& e) {
    throw FormatError(std::string("malformed summary manifest: ") + e.what());
  }
}

SummaryManifest load_manifest(const std::filesystem::path& path) {
  return manifest_from_json(read_text_file(path));
}

}  // namespace botsum
