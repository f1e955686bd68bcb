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

#include "botsum/eval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "botsum/error.hpp"
#include "botsum/file_util.hpp"
#include "botsum/manifest.hpp"
#include "json.hpp"

namespace botsum {

using ojson = nlohmann::ordered_json;

MatchResult cus_match(std::span<const FrameSignature> auto_sigs,
                      std::span<const FrameSignature> user_sigs, double delta,
                      const FusionWeights& weights, HueNorm hue_norm) {
  if (!(delta > 0.0)) throw InputError("delta must be positive");
  MatchResult m;
  m.n_as = auto_sigs.size();
  m.n_u = user_sigs.size();
  std::vector<bool> used(user_sigs.size(), false);
  for (std::size_t a = 0; a < auto_sigs.size(); ++a) {
    bool matched = false;
    for (std::size_t u = 0; u < user_sigs.size(); ++u) {
      if (used[u]) continue;
      if (fused_distance(auto_sigs[a], user_sigs[u], weights, hue_norm) < delta) {
        used[u] = true;
        m.pairs.emplace_back(a, u);
        matched = true;
        break;
      }
    }
    if (matched) {
      ++m.n_m;
    } else {
      ++m.n_nm;
    }
  }
  return m;
}

MetricBundle metrics(const MatchResult& m) {
  if (m.n_u == 0) throw InputError("user summary is empty (N_u = 0)");
  if (m.n_as == 0) throw InputError("automatic summary is empty (N_as = 0)");
  MetricBundle b;
  const double nu = static_cast<double>(m.n_u);
  const double nas = static_cast<double>(m.n_as);
  b.acc = static_cast<double>(m.n_m) / nu;
  b.err = static_cast<double>(m.n_nm) / nu;
  b.precision = static_cast<double>(m.n_m) / nas;
  b.recall = b.acc;
  const double denom = b.precision + b.recall;
  b.f = denom > 0.0 ? 2.0 * b.precision * b.recall / denom : 0.0;
  return b;
}

namespace {

MetricBundle mean_of(const std::vector<MetricBundle>& xs) {
  MetricBundle m;
  for (const auto& x : xs) {
    m.acc += x.acc;
    m.err += x.err;
    m.precision += x.precision;
    m.recall += x.recall;
    m.f += x.f;
  }
  const double n = static_cast<double>(xs.size());
  m.acc /= n;
  m.err /= n;
  m.precision /= n;
  m.recall /= n;
  m.f /= n;
  return m;
}

}  // namespace

AggregateScore aggregate(std::vector<VideoScore> videos) {
  if (videos.empty()) throw InputError("nothing to aggregate");
  AggregateScore out;
  std::vector<MetricBundle> video_means;
  for (auto& v : videos) {
    if (v.per_user.empty()) {
      throw InputError("video '" + v.video_id + "' has no user summaries");
    }
    std::vector<MetricBundle> users;
    for (const auto& u : v.per_user) users.push_back(u.metrics);
    v.mean = mean_of(users);
    video_means.push_back(v.mean);
  }
  out.mean = mean_of(video_means);
  out.per_video = std::move(videos);
  return out;
}

AggregateScore aggregate(const std::vector<std::vector<MetricBundle>>& per_video) {
  std::vector<VideoScore> videos;
  for (std::size_t i = 0; i < per_video.size(); ++i) {
    VideoScore v;
    v.video_id = std::to_string(i);
    for (std::size_t u = 0; u < per_video[i].size(); ++u) {
      v.per_user.push_back({std::to_string(u), {}, per_video[i][u]});
    }
    videos.push_back(std::move(v));
  }
  return aggregate(std::move(videos));
}

bool detected(const VideoKeyframeTimes& video, std::span<const GroundTruthWindow> gt) {
  for (const auto& w : gt) {
    if (w.video_id != video.video_id) continue;
    for (double t : video.timestamps_s) {
      if (t >= w.start_s && t <= w.end_s) return true;
    }
  }
  return false;
}

double detection_accuracy(std::span<const VideoKeyframeTimes> videos,
                          std::span<const GroundTruthWindow> gt) {
  if (videos.empty()) throw InputError("no summaries to score");
  std::size_t hits = 0;
  for (const auto& v : videos) {
    const bool has_gt = std::any_of(gt.begin(), gt.end(), [&](const GroundTruthWindow& w) {
      return w.video_id == v.video_id;
    });
    if (!has_gt) throw InputError("no ground truth for video '" + v.video_id + "'");
    if (detected(v, gt)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(videos.size());
}

Compression compression_ratio(double video_duration_s, std::size_t n_keyframes) {
  if (n_keyframes == 0) throw InputError("compression ratio needs at least one keyframe");
  if (!(video_duration_s > 0.0)) throw InputError("video duration must be positive");
  Compression c;
  c.video_duration_s = video_duration_s;
  c.summary_duration_s = static_cast<double>(n_keyframes) * kStoryboardSecondsPerKeyframe;
  c.ratio = 4.0 * video_duration_s / c.summary_duration_s;
  return c;
}

double mean_compression_ratio(std::span<const Compression> ratios) {
  if (ratios.empty()) throw InputError("no compression ratios to average");
  double s = 0.0;
  for (const auto& c : ratios) s += c.ratio;
  return s / static_cast<double>(ratios.size());
}

std::vector<GroundTruthWindow> parse_ground_truth_csv(const std::string& text) {
  std::vector<GroundTruthWindow> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 3) {
      throw FormatError("ground truth line " + std::to_string(lineno) +
                        ": expected video_id,start_s,end_s");
    }
    GroundTruthWindow w;
    w.video_id = cells[0];
    try {
      w.start_s = std::stod(cells[1]);
      w.end_s = std::stod(cells[2]);
    } catch (const std::logic_error&) {
      if (lineno == 1 && out.empty()) continue;  // header
      throw FormatError("ground truth line " + std::to_string(lineno) + ": bad number");
    }
    if (!(w.start_s >= 0.0) || !(w.start_s < w.end_s)) {
      throw FormatError("ground truth line " + std::to_string(lineno) +
                        ": need 0 <= start_s < end_s");
    }
    out.push_back(std::move(w));
  }
  return out;
}

namespace {

ojson bundle_json(const MetricBundle& b) {
  return {{"acc", b.acc},
          {"err", b.err},
          {"precision", b.precision},
          {"recall", b.recall},
          {"F", b.f}};
}

}  // namespace

std::string report_to_json(const EvalReport& r) {
  ojson j;
  try {
    j["config"] = ojson::parse(r.config_json.empty() ? "{}" : r.config_json);
  } catch (const ojson::exception& e) {
    throw InputError(std::string("report config is not JSON: ") + e.what());
  }
  if (r.short_term) {
    ojson videos = ojson::array();
    for (const auto& v : r.short_term->per_video) {
      ojson users = ojson::array();
      for (const auto& u : v.per_user) {
        ojson uj;
        uj["user_id"] = u.user_id;
        uj["N_m"] = u.match.n_m;
        uj["N_nm"] = u.match.n_nm;
        uj["N_as"] = u.match.n_as;
        uj["N_u"] = u.match.n_u;
        const ojson metrics_json = bundle_json(u.metrics);
        for (auto& [k, val] : metrics_json.items()) uj[k] = val;
        users.push_back(std::move(uj));
      }
      videos.push_back({{"video_id", v.video_id},
                        {"per_user", std::move(users)},
                        {"acc_P", v.mean.acc},
                        {"err_P", v.mean.err},
                        {"F_P", v.mean.f}});
    }
    j["per_video"] = std::move(videos);
    const MetricBundle& m = r.short_term->mean;
    j["mean"] = {{"acc", m.acc}, {"err", m.err}, {"F", m.f}};
  }
  if (!r.long_term.empty()) {
    ojson rows = ojson::array();
    for (const auto& row : r.long_term) {
      rows.push_back({{"video_id", row.video_id},
                      {"n_keyframes", row.n_keyframes},
                      {"detected", row.detected},
                      {"video_duration_s", row.compression.video_duration_s},
                      {"summary_duration_s", row.compression.summary_duration_s},
                      {"Rc", row.compression.ratio}});
    }
    j["long_term"] = std::move(rows);
  }
  if (r.detection_accuracy) j["detection_accuracy"] = *r.detection_accuracy;
  if (r.mean_rc) j["mean_Rc"] = *r.mean_rc;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const EvalReport& r) {
  std::ostringstream out;
  if (r.short_term) {
    out << "video_id,user_id,N_m,N_nm,N_as,N_u,acc,err,precision,recall,F\n";
    for (const auto& v : r.short_term->per_video) {
      for (const auto& u : v.per_user) {
        out << v.video_id << ',' << u.user_id << ',' << u.match.n_m << ',' << u.match.n_nm
            << ',' << u.match.n_as << ',' << u.match.n_u << ','
            << format_shortest(u.metrics.acc) << ',' << format_shortest(u.metrics.err) << ','
            << format_shortest(u.metrics.precision) << ','
            << format_shortest(u.metrics.recall) << ',' << format_shortest(u.metrics.f) << '\n';
      }
      out << v.video_id << ",MEAN,,,,," << format_shortest(v.mean.acc) << ','
          << format_shortest(v.mean.err) << ',' << format_shortest(v.mean.precision) << ','
          << format_shortest(v.mean.recall) << ',' << format_shortest(v.mean.f) << '\n';
    }
    const MetricBundle& m = r.short_term->mean;
    out << "MEAN,MEAN,,,,," << format_shortest(m.acc) << ',' << format_shortest(m.err) << ','
        << format_shortest(m.precision) << ',' << format_shortest(m.recall) << ','
        << format_shortest(m.f) << '\n';
  }
  if (!r.long_term.empty()) {
    out << "video_id,n_keyframes,detected,video_duration_s,summary_duration_s,Rc\n";
    for (const auto& row : r.long_term) {
      out << row.video_id << ',' << row.n_keyframes << ',' << (row.detected ? 1 : 0) << ','
          << format_shortest(row.compression.video_duration_s) << ','
          << format_shortest(row.compression.summary_duration_s) << ','
          << format_shortest(row.compression.ratio) << '\n';
    }
    out << "MEAN,,";
    out << (r.detection_accuracy ? format_shortest(*r.detection_accuracy) : "") << ",,,";
    out << (r.mean_rc ? format_shortest(*r.mean_rc) : "") << '\n';
  }
  return out.str();
}

}  // namespace botsum
