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

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <system_error>
#include <thread>

#include "CLI11.hpp"
#include "botsum/codebook.hpp"
#include "botsum/error.hpp"
#include "botsum/file_util.hpp"
#include "botsum/histograms.hpp"
#include "botsum/image_io.hpp"
#include "botsum/kmeans.hpp"
#include "botsum/manifest.hpp"
#include "botsum/summarizer.hpp"
#include "json.hpp"

namespace botsum::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

FrameSource SourceArgs::to_source() const {
  std::error_code ec;
  if (frames.empty()) throw InputError("--frames is required");
  if (fs::is_directory(frames, ec)) {
    return ImageDirectorySource{frames, fps, width, height};
  }
  if (fs::is_regular_file(frames, ec)) {
    if (width < 1 || height < 1) {
      throw InputError(frames + " is a file; raw streams need --width and --height");
    }
    return RawStreamSource{frames, width, height, fps};
  }
  throw InputError("frame source not found: " + frames);
}

namespace {

ojson pipeline_json(const PipelineArgs& p) {
  return {{"target_fps", p.target_fps}, {"sigma_min", p.sigma_min},
          {"block_size", p.block_size}, {"overlap", p.overlap},
          {"D", p.dims},                {"hue_bins", kHueBins}};
}

void merge(ojson& into, const ojson& from) {
  for (auto it = from.begin(); it != from.end(); ++it) into[it.key()] = it.value();
}

void check_pipeline(const PipelineArgs& p) {
  IngestConfig ingest = p.ingest();
  ingest.validate();
  if (p.overlap < 0 || p.overlap >= p.block_size) {
    throw InputError("overlap must satisfy 0 <= overlap < block size");
  }
  p.features().validate();
}

void check_codebook_dims(const Codebook& cb, const PipelineArgs& p) {
  if (cb.dims() != static_cast<std::size_t>(p.dims)) {
    throw InputError("codebook has D=" + std::to_string(cb.dims()) + " but --dims is " +
                     std::to_string(p.dims));
  }
}

std::string default_video_id(const std::string& frames) {
  fs::path p = fs::path(frames).lexically_normal();
  if (p.filename().empty()) p = p.parent_path();
  std::string id = p.stem().string();
  return id.empty() ? "video" : id;
}

std::string json_path_to_csv(const std::string& out) {
  fs::path p(out);
  p.replace_extension(".csv");
  return p.string();
}

std::vector<fs::path> sorted_entries(const fs::path& dir, bool want_dirs) {
  std::vector<fs::path> out;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    if (want_dirs ? e.is_directory() : (e.is_regular_file() && is_supported_image(e.path()))) {
      out.push_back(e.path());
    }
  }
  if (ec) throw InputError("cannot list " + dir.string() + ": " + ec.message());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FrameSignature> image_signatures(const std::vector<fs::path>& images,
                                             const Codebook& cb, const FeatureConfig& fcfg,
                                             bool with_hue) {
  std::vector<FrameSignature> sigs;
  for (std::size_t i = 0; i < images.size(); ++i) {
    FrameSignature s = compute_signature(read_image(images[i]), cb, fcfg, with_hue);
    s.frame_index = i;
    sigs.push_back(std::move(s));
  }
  return sigs;
}

// One user's summary as image signatures, users in directory order.
struct UserSummary {
  std::string user_id;
  std::vector<FrameSignature> sigs;
};

std::vector<UserSummary> load_user_summaries(const fs::path& users_root,
                                             const std::string& video_id,
                                             const Codebook& cb, const FeatureConfig& fcfg,
                                             bool with_hue) {
  const fs::path dir = users_root / video_id;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw InputError("no user summaries for video '" + video_id + "' (expected " +
                     dir.string() + ")");
  }
  std::vector<UserSummary> users;
  for (const fs::path& user_dir : sorted_entries(dir, true)) {
    users.push_back({user_dir.filename().string(),
                     image_signatures(sorted_entries(user_dir, false), cb, fcfg, with_hue)});
  }
  if (users.empty()) {
    // Flat layout: the video directory itself is a single user summary.
    users.push_back({"user", image_signatures(sorted_entries(dir, false), cb, fcfg, with_hue)});
  }
  for (const auto& u : users) {
    if (u.sigs.empty()) {
      throw InputError("user summary '" + u.user_id + "' of video '" + video_id +
                       "' has no images");
    }
  }
  return users;
}

VideoScore score_video(const std::string& video_id, std::span<const FrameSignature> auto_sigs,
                       const std::vector<UserSummary>& users, double delta,
                       const FusionWeights& w) {
  VideoScore v;
  v.video_id = video_id;
  for (const auto& u : users) {
    UserScore s;
    s.user_id = u.user_id;
    s.match = cus_match(auto_sigs, u.sigs, delta, w, HueNorm::kL1);
    s.metrics = metrics(s.match);
    v.per_user.push_back(std::move(s));
  }
  return v;
}

std::vector<fs::path> expand_manifests(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(in, ec)) {
        if (e.is_regular_file() && e.path().extension() == ".json") found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(in, ec)) {
      out.emplace_back(in);
    } else {
      throw InputError("manifest not found: " + in);
    }
  }
  if (out.empty()) throw InputError("no summary manifests given");
  return out;
}

double manifest_alpha(const SummaryManifest& m) {
  const ojson cfg = ojson::parse(m.config_json);
  return cfg.value("alpha", 1.0);
}

Codebook require_codebook(const std::string& path) {
  if (path.empty()) throw InputError("--codebook is required");
  return load_codebook(path);
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  auto num = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
      return v;
    } catch (const std::logic_error&) {
      throw InputError("bad grid value '" + s + "' in '" + spec + "'");
    }
  };
  auto tidy = [](double v) { return std::round(v * 1e12) / 1e12; };
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw InputError("grid range must be start:step:stop");
    const double start = num(parts[0]);
    const double step = num(parts[1]);
    const double stop = num(parts[2]);
    if (!(step > 0.0)) throw InputError("grid step must be positive");
    if (stop >= start) {
      const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
      for (std::size_t i = 0; i < n; ++i) out.push_back(tidy(start + step * i));
    }
  } else {
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(num(part));
    }
  }
  if (out.empty()) throw InputError("empty parameter grid '" + spec + "'");
  return out;
}

void cmd_train(const TrainArgs& args, std::ostream& log) {
  if (args.sources.empty()) throw InputError("train needs at least one --frames source");
  if (args.out.empty()) throw InputError("train needs -o/--out");
  if (args.sample < 1) throw InputError("--sample must be >= 1");
  if (args.codewords < 1) throw InputError("--G must be >= 1");
  check_pipeline(args.pipeline);

  struct Candidate {
    GrayFrame gray;
    std::string ref;
  };
  std::vector<Candidate> pool;
  std::size_t seen = 0;
  for (const auto& src : args.sources) {
    FrameReader reader(src.to_source());
    reader.for_each_sampled(args.pipeline.target_fps, [&](Frame&& f) {
      ++seen;
      GrayFrame g = preprocess_frame(f);
      if (is_informative(g, args.pipeline.sigma_min)) pool.push_back({std::move(g), f.source_ref});
    });
  }
  if (pool.size() < args.sample) {
    throw TrainingError("requested " + std::to_string(args.sample) + " training frames but only " +
                        std::to_string(pool.size()) + " of " + std::to_string(seen) +
                        " sampled frames are informative");
  }

  // Seeded partial Fisher-Yates; pooled in source order for reproducibility.
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(args.seed);
  for (std::size_t i = 0; i < args.sample; ++i) {
    std::swap(order[i], order[i + rng.below(order.size() - i)]);
  }
  std::vector<std::size_t> chosen(order.begin(), order.begin() + args.sample);
  std::sort(chosen.begin(), chosen.end());

  const FeatureConfig fcfg = args.pipeline.features();
  FeatureMatrix feats;
  feats.dims = static_cast<std::size_t>(fcfg.dims);
  std::vector<std::string> refs;
  for (std::size_t i : chosen) {
    const FeatureMatrix m = frame_features(pool[i].gray.image, fcfg);
    feats.data.insert(feats.data.end(), m.data.begin(), m.data.end());
    refs.push_back(pool[i].ref);
  }

  TrainOptions topts{args.codewords, args.seed, args.max_iter, args.tol};
  const Codebook cb = train_codebook(feats, topts);

  ojson cfg;
  cfg["command"] = "train";
  ojson frames = ojson::array();
  for (const auto& s : args.sources) {
    frames.push_back({{"frames", s.frames}, {"fps", s.fps}, {"width", s.width},
                      {"height", s.height}});
  }
  cfg["sources"] = std::move(frames);
  cfg["sample"] = args.sample;
  cfg["G"] = args.codewords;
  cfg["seed"] = args.seed;
  cfg["max_iter"] = args.max_iter;
  cfg["tol"] = args.tol;
  merge(cfg, pipeline_json(args.pipeline));
  cfg["training_frames"] = refs;
  save_codebook(cb, args.out, cfg.dump());

  log << "trained G=" << cb.size() << " D=" << cb.dims() << " codebook from "
      << feats.rows() << " blocks of " << chosen.size() << " frames in " << cb.meta().iterations
      << " iterations -> " << args.out << "\n";
}

void cmd_summarise(const SummariseArgs& args, std::ostream& log) {
  if (args.out.empty()) throw InputError("summarise needs -o/--out");
  if (!(args.tau > 0.0)) throw InputError("--tau must be positive");
  if (args.image_format != "png" && args.image_format != "ppm") {
    throw InputError("--image-format must be png or ppm");
  }
  check_pipeline(args.pipeline);
  const Codebook cb = require_codebook(args.codebook);
  check_codebook_dims(cb, args.pipeline);
  const FrameSource source = args.source.to_source();

  SummaryConfig scfg;
  scfg.tau = args.tau;
  scfg.weights = FusionWeights(args.alpha);
  scfg.seed = args.seed;
  const SummaryRun run = summarise(source, args.pipeline.ingest(), cb, scfg,
                                   args.pipeline.features());

  SummaryManifest m;
  m.video_id = args.video_id.empty() ? default_video_id(args.source.frames) : args.video_id;
  ojson cfg;
  cfg["tau"] = args.tau;
  cfg["alpha"] = args.alpha;
  cfg["G"] = cb.size();
  cfg["seed"] = args.seed;
  merge(cfg, pipeline_json(args.pipeline));
  cfg["fps"] = args.source.fps;
  cfg["width"] = args.source.width;
  cfg["height"] = args.source.height;
  cfg["frames"] = args.source.frames;
  cfg["codebook"] = args.codebook;
  m.config_json = cfg.dump();
  m.source.kind = std::holds_alternative<RawStreamSource>(source) ? "raw" : "images";
  m.source.path = args.source.frames;
  m.source.fps = run.track.source_fps;
  m.source.frame_count = run.track.source_frames;
  m.source.duration_s = run.track.duration_s;
  m.source.sampled_frames = run.track.sampled_frames;
  m.source.informative_frames = run.track.signatures.size();
  m.summary = run.summary;
  m.storyboard = args.storyboard;
  write_file_atomic(args.out, manifest_to_json(m));

  if (!args.keyframes_dir.empty()) {
    fs::create_directories(args.keyframes_dir);
    for (const auto& kf : run.summary.keyframes) {
      const RgbImage img = read_frame_ref(kf.source_frame_ref);
      const fs::path p = fs::path(args.keyframes_dir) /
                         ("kf_" + std::to_string(kf.frame_index) + "." + args.image_format);
      if (args.image_format == "png") {
        write_png(p, img);
      } else {
        write_ppm(p, img);
      }
    }
  }
  if (!args.signatures_out.empty()) {
    write_file_atomic(args.signatures_out, signatures_to_jsonl(run.track.signatures));
  }
  for (const auto& w : run.summary.warnings) log << "warning: " << w << "\n";
  log << m.video_id << ": " << run.track.signatures.size() << " informative of "
      << run.track.sampled_frames << " sampled frames, K=" << run.summary.k_initial
      << ", N_as=" << run.summary.n_as() << " -> " << args.out << "\n";
}

EvalReport cmd_evaluate(const EvaluateArgs& args, std::ostream& log) {
  if (args.users.empty() && args.ground_truth.empty()) {
    throw InputError("evaluate needs --users (short-term) and/or --ground-truth (long-term)");
  }
  if (args.alpha && !(*args.alpha >= 0.0 && *args.alpha <= 1.0)) {
    throw InputError("--alpha must lie in [0, 1]");
  }
  const auto paths = expand_manifests(args.manifests);
  std::vector<SummaryManifest> manifests;
  for (const auto& p : paths) manifests.push_back(load_manifest(p));

  EvalReport report;
  ojson cfg;
  cfg["command"] = "evaluate";
  ojson mlist = ojson::array();
  for (const auto& p : paths) mlist.push_back(p.string());
  cfg["manifests"] = std::move(mlist);

  if (!args.users.empty()) {
    if (!args.delta || !(*args.delta > 0.0)) {
      throw InputError("short-term evaluation needs a positive --delta");
    }
    check_pipeline(args.pipeline);
    const Codebook cb = require_codebook(args.codebook);
    check_codebook_dims(cb, args.pipeline);
    const FeatureConfig fcfg = args.pipeline.features();
    std::vector<VideoScore> videos;
    for (const auto& m : manifests) {
      const FusionWeights w(args.alpha ? *args.alpha : manifest_alpha(m));
      std::vector<FrameSignature> auto_sigs;
      for (const auto& kf : m.summary.keyframes) {
        FrameSignature s = compute_signature(read_frame_ref(kf.source_frame_ref), cb, fcfg,
                                             w.uses_hue());
        s.frame_index = kf.frame_index;
        s.timestamp_s = kf.timestamp_s;
        auto_sigs.push_back(std::move(s));
      }
      const auto users = load_user_summaries(args.users, m.video_id, cb, fcfg, w.uses_hue());
      videos.push_back(score_video(m.video_id, auto_sigs, users, *args.delta, w));
    }
    report.short_term = aggregate(std::move(videos));
    cfg["delta"] = *args.delta;
    if (args.alpha) cfg["alpha"] = *args.alpha;
    cfg["codebook"] = args.codebook;
    cfg["users"] = args.users;
    merge(cfg, pipeline_json(args.pipeline));
  }

  if (!args.ground_truth.empty()) {
    const auto gt = parse_ground_truth_csv(read_text_file(args.ground_truth));
    std::vector<VideoKeyframeTimes> times;
    std::vector<Compression> ratios;
    for (const auto& m : manifests) {
      VideoKeyframeTimes t{m.video_id, {}};
      for (const auto& kf : m.summary.keyframes) t.timestamps_s.push_back(kf.timestamp_s);
      times.push_back(t);
      ratios.push_back(compression_ratio(m.source.duration_s, m.summary.n_as()));
    }
    report.detection_accuracy = detection_accuracy(times, gt);
    report.mean_rc = mean_compression_ratio(ratios);
    for (std::size_t i = 0; i < manifests.size(); ++i) {
      report.long_term.push_back(
          {manifests[i].video_id, manifests[i].summary.n_as(), detected(times[i], gt), ratios[i]});
    }
    cfg["ground_truth"] = args.ground_truth;
  }
  report.config_json = cfg.dump();

  const std::string json_text = report_to_json(report);
  if (args.out.empty()) {
    log << json_text;
  } else {
    write_file_atomic(args.out, json_text);
    write_file_atomic(json_path_to_csv(args.out), report_to_csv(report));
  }
  if (report.short_term) {
    log << "short-term: mean acc=" << report.short_term->mean.acc
        << " err=" << report.short_term->mean.err << " F=" << report.short_term->mean.f
        << " over " << report.short_term->per_video.size() << " videos\n";
  }
  if (report.detection_accuracy) {
    log << "long-term: detection accuracy=" << *report.detection_accuracy
        << " mean Rc=" << *report.mean_rc << "\n";
  }
  return report;
}

std::vector<SweepRow> cmd_sweep(const SweepArgs& args, std::ostream& log) {
  if (args.out.empty()) throw InputError("sweep needs -o/--out");
  if (args.users.empty() && args.ground_truth.empty()) {
    throw InputError("sweep needs --users (short-term) or --ground-truth (long-term)");
  }
  if (args.jobs < 1) throw InputError("--jobs must be >= 1");
  const std::vector<double> taus = parse_grid(args.tau_grid);
  const std::vector<double> alphas = parse_grid(args.alpha_grid);
  for (double t : taus) {
    if (!(t > 0.0)) throw InputError("tau grid values must be positive");
  }
  for (double a : alphas) static_cast<void>(FusionWeights(a));
  const bool short_term = !args.users.empty();
  if (short_term && (!args.delta || !(*args.delta > 0.0))) {
    throw InputError("short-term sweep needs a positive --delta");
  }
  check_pipeline(args.pipeline);
  const Codebook cb = require_codebook(args.codebook);
  check_codebook_dims(cb, args.pipeline);
  const FeatureConfig fcfg = args.pipeline.features();
  const bool any_hue = std::any_of(alphas.begin(), alphas.end(), [](double a) { return a < 1.0; });

  struct Video {
    std::string id;
    SignatureTrack track;
    std::vector<UserSummary> users;
  };
  std::vector<Video> videos;
  for (const fs::path& dir : sorted_entries(args.videos, true)) {
    Video v;
    v.id = dir.filename().string();
    v.track = compute_signatures(ImageDirectorySource{dir, args.fps, 0, 0},
                                 args.pipeline.ingest(), cb, fcfg, any_hue);
    if (short_term) v.users = load_user_summaries(args.users, v.id, cb, fcfg, any_hue);
    videos.push_back(std::move(v));
  }
  if (videos.empty()) throw InputError("no video directories under " + args.videos);
  std::vector<GroundTruthWindow> gt;
  if (!short_term) gt = parse_ground_truth_csv(read_text_file(args.ground_truth));

  std::vector<SweepRow> rows;
  for (double a : alphas) {
    for (double t : taus) rows.push_back({t, a, 0.0, 0.0, false});
  }

  auto eval_point = [&](SweepRow& row) {
    SummaryConfig scfg;
    scfg.tau = row.tau;
    scfg.weights = FusionWeights(row.alpha);
    scfg.seed = args.seed;
    std::vector<VideoScore> scores;
    std::vector<VideoKeyframeTimes> times;
    std::vector<Compression> ratios;
    for (const auto& v : videos) {
      const Summary s = summarise_signatures(v.track.signatures, scfg);
      ratios.push_back(compression_ratio(v.track.duration_s, s.n_as()));
      if (short_term) {
        std::vector<FrameSignature> auto_sigs;
        for (const auto& kf : s.keyframes) {
          const auto it = std::find_if(
              v.track.signatures.begin(), v.track.signatures.end(),
              [&](const FrameSignature& sig) { return sig.frame_index == kf.frame_index; });
          auto_sigs.push_back(*it);
        }
        scores.push_back(score_video(v.id, auto_sigs, v.users, *args.delta, scfg.weights));
      } else {
        VideoKeyframeTimes t{v.id, {}};
        for (const auto& kf : s.keyframes) t.timestamps_s.push_back(kf.timestamp_s);
        times.push_back(std::move(t));
      }
    }
    row.metric = short_term ? aggregate(std::move(scores)).mean.f
                            : detection_accuracy(times, gt);
    row.mean_rc = mean_compression_ratio(ratios);
  };

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      try {
        eval_point(rows[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int nthreads = std::min<int>(args.jobs, static_cast<int>(rows.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].metric > rows[best].metric) best = i;
  }
  rows[best].best = true;

  ojson cfg;
  cfg["command"] = "sweep";
  cfg["videos"] = args.videos;
  cfg["fps"] = args.fps;
  cfg["codebook"] = args.codebook;
  cfg["tau_grid"] = args.tau_grid;
  cfg["alpha_grid"] = args.alpha_grid;
  cfg["seed"] = args.seed;
  cfg["G"] = cb.size();
  if (short_term) {
    cfg["users"] = args.users;
    cfg["delta"] = *args.delta;
  } else {
    cfg["ground_truth"] = args.ground_truth;
  }
  merge(cfg, pipeline_json(args.pipeline));

  std::ostringstream csv;
  csv << "# config: " << cfg.dump() << "\n";
  csv << "tau,alpha," << (short_term ? "mean_F" : "detection_accuracy") << ",mean_Rc,best\n";
  for (const auto& r : rows) {
    csv << format_shortest(r.tau) << ',' << format_shortest(r.alpha) << ','
        << format_shortest(r.metric) << ',' << format_shortest(r.mean_rc) << ','
        << (r.best ? 1 : 0) << "\n";
  }
  write_file_atomic(args.out, csv.str());
  log << "sweep: " << rows.size() << " grid points over " << videos.size()
      << " videos; best tau=" << rows[best].tau << " alpha=" << rows[best].alpha
      << " metric=" << rows[best].metric << " -> " << args.out << "\n";
  return rows;
}

namespace {

void add_source_flags(CLI::App* cmd, SourceArgs& s) {
  cmd->add_option("--fps", s.fps, "Source frame rate")->capture_default_str();
  cmd->add_option("--width", s.width, "Frame width (raw streams)");
  cmd->add_option("--height", s.height, "Frame height (raw streams)");
}

void add_pipeline_flags(CLI::App* cmd, PipelineArgs& p) {
  cmd->add_option("--target-fps", p.target_fps, "Sampling rate")->capture_default_str();
  cmd->add_option("--sigma-min", p.sigma_min, "Minimum pixel std-dev of a kept frame")
      ->capture_default_str();
  cmd->add_option("--block-size", p.block_size, "DCT block size")->capture_default_str();
  cmd->add_option("--overlap", p.overlap, "Block overlap in pixels")->capture_default_str();
  cmd->add_option("--dims", p.dims, "Descriptor dimension D")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Keyframe video summaries from bag-of-textures and hue histograms"};
  app.require_subcommand(1);

  TrainArgs train;
  std::vector<std::string> train_frames;
  SourceArgs train_src;
  auto* train_cmd = app.add_subcommand("train", "Train the texture codebook");
  train_cmd->add_option("--frames", train_frames, "Frame directories or raw files")->required();
  add_source_flags(train_cmd, train_src);
  add_pipeline_flags(train_cmd, train.pipeline);
  train_cmd->add_option("--sample", train.sample, "Frames drawn at random")->capture_default_str();
  train_cmd->add_option("--G,--codewords", train.codewords, "Codebook size")
      ->capture_default_str();
  train_cmd->add_option("--seed", train.seed, "RNG seed")->capture_default_str();
  train_cmd->add_option("--max-iter", train.max_iter, "k-means iterations")
      ->capture_default_str();
  train_cmd->add_option("--tol", train.tol, "k-means centroid shift tolerance")
      ->capture_default_str();
  train_cmd->add_option("-o,--out", train.out, "Codebook JSON path")->required();

  SummariseArgs sum;
  auto* sum_cmd = app.add_subcommand("summarise", "Summarise one video");
  sum_cmd->alias("summarize");
  sum_cmd->add_option("--frames", sum.source.frames, "Frame directory or raw file")->required();
  add_source_flags(sum_cmd, sum.source);
  add_pipeline_flags(sum_cmd, sum.pipeline);
  sum_cmd->add_option("--codebook", sum.codebook, "Codebook JSON")->required();
  sum_cmd->add_option("--tau", sum.tau, "Distance threshold")->required();
  sum_cmd->add_option("--alpha", sum.alpha, "Texture weight (1 = texture only)")
      ->capture_default_str();
  sum_cmd->add_option("--seed", sum.seed, "RNG seed")->capture_default_str();
  sum_cmd->add_option("--video-id", sum.video_id, "Identifier written to the manifest");
  sum_cmd->add_option("-o,--out", sum.out, "Manifest JSON path")->required();
  sum_cmd->add_option("--keyframes-dir", sum.keyframes_dir, "Write kf_<index> images here");
  sum_cmd->add_option("--image-format", sum.image_format, "png or ppm")->capture_default_str();
  sum_cmd->add_option("--signatures", sum.signatures_out, "Dump frame signatures (JSONL)");
  sum_cmd->add_flag("--storyboard", sum.storyboard, "Add 0.25 s display durations");

  EvaluateArgs ev;
  double ev_delta = 0.0;
  double ev_alpha = 1.0;
  auto* ev_cmd = app.add_subcommand("evaluate", "Score summaries");
  ev_cmd->add_option("--manifests", ev.manifests, "Manifest files or directories")->required();
  ev_cmd->add_option("--codebook", ev.codebook, "Codebook JSON (short-term)");
  ev_cmd->add_option("--users", ev.users, "User summary root: <video_id>/<user_id>/images");
  ev_cmd->add_option("--ground-truth", ev.ground_truth, "CSV video_id,start_s,end_s");
  auto* ev_delta_opt = ev_cmd->add_option("--delta", ev_delta, "Matching threshold");
  auto* ev_alpha_opt = ev_cmd->add_option("--alpha", ev_alpha, "Override texture weight");
  add_pipeline_flags(ev_cmd, ev.pipeline);
  ev_cmd->add_option("-o,--out", ev.out, "Report JSON path (CSV written alongside)");

  SweepArgs sw;
  double sw_delta = 0.0;
  auto* sw_cmd = app.add_subcommand("sweep", "Grid search over tau and alpha");
  sw_cmd->add_option("--videos", sw.videos, "Root with one frame directory per video")
      ->required();
  sw_cmd->add_option("--fps", sw.fps, "Source frame rate")->capture_default_str();
  add_pipeline_flags(sw_cmd, sw.pipeline);
  sw_cmd->add_option("--codebook", sw.codebook, "Codebook JSON")->required();
  sw_cmd->add_option("--tau", sw.tau_grid, "tau grid: start:step:stop or a,b,c")->required();
  sw_cmd->add_option("--alpha", sw.alpha_grid, "alpha grid")->capture_default_str();
  sw_cmd->add_option("--users", sw.users, "User summary root (short-term)");
  sw_cmd->add_option("--ground-truth", sw.ground_truth, "Ground-truth CSV (long-term)");
  auto* sw_delta_opt = sw_cmd->add_option("--delta", sw_delta, "Matching threshold");
  sw_cmd->add_option("--seed", sw.seed, "RNG seed")->capture_default_str();
  sw_cmd->add_option("--jobs", sw.jobs, "Concurrent grid points")->capture_default_str();
  sw_cmd->add_option("-o,--out", sw.out, "Sweep CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*train_cmd) {
      for (const auto& f : train_frames) {
        SourceArgs s = train_src;
        s.frames = f;
        train.sources.push_back(s);
      }
      cmd_train(train, err);
    } else if (*sum_cmd) {
      cmd_summarise(sum, err);
    } else if (*ev_cmd) {
      if (*ev_delta_opt) ev.delta = ev_delta;
      if (*ev_alpha_opt) ev.alpha = ev_alpha;
      cmd_evaluate(ev, ev.out.empty() ? out : err);
    } else if (*sw_cmd) {
      if (*sw_delta_opt) sw.delta = sw_delta;
      cmd_sweep(sw, err);
    }
  } catch (const Error& e) {
    err << to_string(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::kInput ? 2 : 1;
  } catch (const fs::filesystem_error& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace botsum::cli
