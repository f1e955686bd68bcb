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

#include "botsum/summarizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <unordered_map>

#include "botsum/error.hpp"
#include "botsum/kmeans.hpp"

namespace botsum {

void SummaryConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InputError("tau must be positive");
  if (max_iter < 1) throw InputError("max_iter must be >= 1");
  if (!(tol >= 0.0)) throw InputError("tol must be >= 0");
}

std::size_t estimate_k(std::span<const FrameSignature> sigs, const SummaryConfig& cfg) {
  if (sigs.empty()) throw InputError("estimate_k needs at least one signature");
  std::size_t k = 1;
  for (std::size_t i = 0; i + 1 < sigs.size(); ++i) {
    if (fused_distance(sigs[i], sigs[i + 1], cfg.weights, HueNorm::kL2) > cfg.tau) ++k;
  }
  return k;
}

namespace {

PointSet embed(std::span<const FrameSignature> sigs, const FusionWeights& w) {
  const double sa = std::sqrt(w.alpha());
  const double sb = std::sqrt(w.beta());
  const bool use_bot = w.alpha() > 0.0;
  const bool use_hue = w.uses_hue();
  PointSet p;
  p.dims = (use_bot ? sigs.front().bot.size() : 0) +
           (use_hue && sigs.front().hue ? sigs.front().hue->size() : 0);
  if (p.dims == 0) throw InputError("signatures carry no usable histogram");
  p.data.reserve(sigs.size() * p.dims);
  for (const auto& s : sigs) {
    if (use_bot) {
      if (s.bot.size() != sigs.front().bot.size()) throw InputError("BoT sizes differ");
      for (double v : s.bot) p.data.push_back(sa * v);
    }
    if (use_hue) {
      if (!s.hue || s.hue->size() != sigs.front().hue->size()) {
        throw InputError("hue histogram required for every frame when alpha < 1");
      }
      for (double v : *s.hue) p.data.push_back(sb * v);
    }
  }
  return p;
}

std::vector<double> member_mean(std::span<const FrameSignature> sigs,
                                const std::vector<std::size_t>& labels, std::size_t g,
                                bool hue) {
  std::vector<double> mean;
  std::size_t count = 0;
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    if (labels[i] != g) continue;
    const std::vector<double>& v = hue ? *sigs[i].hue : sigs[i].bot;
    if (mean.empty()) mean.assign(v.size(), 0.0);
    for (std::size_t j = 0; j < v.size(); ++j) mean[j] += v[j];
    ++count;
  }
  for (double& m : mean) m /= static_cast<double>(count == 0 ? 1 : count);
  return mean;
}

}  // namespace

FrameClusters cluster_frames(std::span<const FrameSignature> sigs, std::size_t k,
                             const SummaryConfig& cfg) {
  if (sigs.empty()) throw InputError("cannot cluster zero frames");
  if (k < 1) throw InputError("K must be >= 1");
  FrameClusters out;
  if (k > sigs.size()) {
    out.warnings.push_back("K=" + std::to_string(k) + " exceeds frame count " +
                           std::to_string(sigs.size()) + "; clamped");
    k = sigs.size();
  }
  const PointSet points = embed(sigs, cfg.weights);
  const std::size_t distinct = count_distinct(points);
  if (k > distinct) {
    out.warnings.push_back("K=" + std::to_string(k) + " exceeds distinct signature count " +
                           std::to_string(distinct) + "; clamped");
    k = distinct;
  }
  const KMeansResult km = kmeans(points, {k, cfg.seed, cfg.max_iter, cfg.tol});
  out.assignment = km.labels;

  const bool use_bot = cfg.weights.alpha() > 0.0;
  const bool use_hue = cfg.weights.uses_hue();
  const std::size_t gdim = use_bot ? sigs.front().bot.size() : 0;
  const double sa = std::sqrt(cfg.weights.alpha());
  const double sb = std::sqrt(cfg.weights.beta());
  for (std::size_t g = 0; g < k; ++g) {
    const auto c = km.centroids.point(g);
    FrameSignature cs;
    cs.frame_index = g;
    if (use_bot) {
      cs.bot.assign(c.begin(), c.begin() + gdim);
      for (double& v : cs.bot) v /= sa;
    } else {
      cs.bot = member_mean(sigs, km.labels, g, false);
    }
    if (use_hue) {
      cs.hue.emplace(c.begin() + gdim, c.end());
      for (double& v : *cs.hue) v /= sb;
    } else if (sigs.front().hue) {
      cs.hue = member_mean(sigs, km.labels, g, true);
    }
    out.centroids.push_back(std::move(cs));
  }
  return out;
}

std::vector<std::size_t> select_keyframes(std::span<const FrameSignature> sigs,
                                          const FrameClusters& clusters,
                                          const FusionWeights& weights) {
  if (clusters.assignment.size() != sigs.size()) {
    throw Error(ErrorKind::kInternal, "cluster assignment does not cover all frames");
  }
  const std::size_t k = clusters.k();
  std::vector<std::size_t> best(k, sigs.size());
  std::vector<double> best_d(k, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    const std::size_t g = clusters.assignment[i];
    if (g >= k) throw Error(ErrorKind::kInternal, "cluster label out of range");
    const double d = fused_distance(sigs[i], clusters.centroids[g], weights, HueNorm::kL2);
    if (d < best_d[g]) {
      best_d[g] = d;
      best[g] = i;
    }
  }
  for (std::size_t g = 0; g < k; ++g) {
    if (best[g] == sigs.size()) {
      throw Error(ErrorKind::kInternal, "cluster " + std::to_string(g) + " is empty");
    }
  }
  return best;
}

Summary dedup_keyframes(std::span<const std::size_t> positions,
                        std::span<const FrameSignature> sigs, const SummaryConfig& cfg) {
  if (positions.empty()) throw InputError("dedup needs at least one keyframe");
  std::vector<std::size_t> order(positions.begin(), positions.end());
  for (std::size_t p : order) {
    if (p >= sigs.size()) throw InputError("keyframe position out of range");
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sigs[a].frame_index < sigs[b].frame_index;
  });
  order.erase(std::unique(order.begin(), order.end()), order.end());

  std::vector<std::size_t> kept;
  for (std::size_t p : order) {
    const bool redundant = std::any_of(kept.begin(), kept.end(), [&](std::size_t q) {
      return fused_distance(sigs[q], sigs[p], cfg.weights, HueNorm::kL2) < cfg.tau;
    });
    if (!redundant) kept.push_back(p);
  }

  Summary s;
  s.k_initial = positions.size();
  s.k_estimated = positions.size();
  for (std::size_t p : kept) s.keyframes.push_back({sigs[p].frame_index, sigs[p].timestamp_s, {}});
  return s;
}

Summary summarise_signatures(std::span<const FrameSignature> sigs, const SummaryConfig& cfg) {
  cfg.validate();
  auto run = [](const char* stage, auto&& fn) {
    try {
      return fn();
    } catch (const StageError&) {
      throw;
    } catch (const Error& e) {
      throw StageError(stage, -1, e);
    }
  };
  const std::size_t k = run("estimate_k", [&] { return estimate_k(sigs, cfg); });
  const FrameClusters clusters = run("cluster", [&] { return cluster_frames(sigs, k, cfg); });
  const auto picks =
      run("select", [&] { return select_keyframes(sigs, clusters, cfg.weights); });
  Summary s = run("dedup", [&] { return dedup_keyframes(picks, sigs, cfg); });
  s.k_estimated = k;
  s.k_initial = clusters.k();
  s.warnings = clusters.warnings;
  return s;
}

SignatureTrack compute_signatures(const FrameSource& source, const IngestConfig& ingest_cfg,
                                  const Codebook& cb, const FeatureConfig& feature_cfg,
                                  bool with_hue) {
  try {
    ingest_cfg.validate();
    feature_cfg.validate();
  } catch (const Error& e) {
    throw StageError("config", -1, e);
  }
  if (static_cast<std::size_t>(feature_cfg.dims) != cb.dims()) {
    throw StageError("config", -1,
                     InputError("codebook D=" + std::to_string(cb.dims()) +
                                " does not match descriptor D=" +
                                std::to_string(feature_cfg.dims)));
  }

  SignatureTrack track;
  std::unique_ptr<FrameReader> reader;
  try {
    reader = std::make_unique<FrameReader>(source);
  } catch (const Error& e) {
    throw StageError("decode", -1, e);
  }
  track.source_frames = reader->frame_count();
  track.source_fps = reader->fps();
  track.duration_s = reader->duration_s();

  std::size_t next = 0;
  for (std::size_t src : reader->sampled_indices(ingest_cfg.target_fps)) {
    const long idx = static_cast<long>(next);
    Frame frame;
    try {
      frame = reader->read(src);
      frame.index = next++;
    } catch (const Error& e) {
      throw StageError("decode", idx, e);
    }
    GrayFrame gray;
    try {
      gray = preprocess_frame(frame);
    } catch (const Error& e) {
      throw StageError("preprocess", idx, e);
    }
    if (!is_informative(gray, ingest_cfg.sigma_min)) continue;
    FrameSignature sig;
    try {
      const FeatureMatrix feats = frame_features(gray.image, feature_cfg);
      sig.frame_index = frame.index;
      sig.timestamp_s = frame.timestamp_s;
      sig.bot = bot_histogram(feats, cb);
      if (with_hue) sig.hue = hue_histogram(frame.image);
    } catch (const Error& e) {
      throw StageError("features", idx, e);
    }
    track.signatures.push_back(std::move(sig));
    track.source_refs.push_back(frame.source_ref);
  }
  track.sampled_frames = next;
  if (track.signatures.empty()) {
    throw StageError("noise_filter", -1,
                     NoInformativeFramesError("no informative frames among " +
                                              std::to_string(next) + " sampled frames"));
  }
  return track;
}

void attach_source_refs(Summary& summary, const SignatureTrack& track) {
  std::unordered_map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < track.signatures.size(); ++i) {
    pos.emplace(track.signatures[i].frame_index, i);
  }
  for (auto& kf : summary.keyframes) {
    const auto it = pos.find(kf.frame_index);
    if (it != pos.end() && it->second < track.source_refs.size()) {
      kf.source_frame_ref = track.source_refs[it->second];
    }
  }
}

SummaryRun summarise(const FrameSource& source, const IngestConfig& ingest_cfg,
                     const Codebook& cb, const SummaryConfig& summary_cfg,
                     const FeatureConfig& feature_cfg) {
  summary_cfg.validate();
  SummaryRun run;
  run.track = compute_signatures(source, ingest_cfg, cb, feature_cfg,
                                 summary_cfg.weights.uses_hue());
  run.summary = summarise_signatures(run.track.signatures, summary_cfg);
  attach_source_refs(run.summary, run.track);
  return run;
}

}  // namespace botsum
