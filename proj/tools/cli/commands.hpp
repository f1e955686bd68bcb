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

#ifndef BOTSUM_TOOLS_CLI_COMMANDS_HPP_
#define BOTSUM_TOOLS_CLI_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "botsum/eval.hpp"
#include "botsum/features.hpp"
#include "botsum/ingest.hpp"

namespace botsum::cli {

// Where frames come from: a directory of images, or a raw RGB file when
// width and height are given.
struct SourceArgs {
  std::string frames;
  double fps = 1.0;
  int width = 0;
  int height = 0;

  FrameSource to_source() const;
};

struct PipelineArgs {
  double target_fps = 1.0;
  double sigma_min = 5.0;
  int block_size = 8;
  int overlap = 6;
  int dims = 15;

  IngestConfig ingest() const { return {target_fps, sigma_min}; }
  FeatureConfig features() const { return {block_size, block_size - overlap, dims}; }
};

struct TrainArgs {
  std::vector<SourceArgs> sources;
  PipelineArgs pipeline;
  std::size_t sample = 10;
  std::size_t codewords = 8;
  std::uint64_t seed = 0;
  int max_iter = 100;
  double tol = 1e-6;
  std::string out;
};

struct SummariseArgs {
  SourceArgs source;
  PipelineArgs pipeline;
  std::string codebook;
  std::string video_id;  // defaults to the frame path's stem
  double tau = 0.0;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string keyframes_dir;
  std::string image_format = "png";
  std::string signatures_out;
  bool storyboard = false;
};

struct EvaluateArgs {
  std::vector<std::string> manifests;  // files or directories of *.json
  std::string codebook;
  std::string users;         // root/<video_id>/<user_id>/<images>
  std::string ground_truth;  // CSV video_id,start_s,end_s
  std::optional<double> delta;
  std::optional<double> alpha;  // defaults to each manifest's alpha
  PipelineArgs pipeline;
  std::string out;
};

struct SweepArgs {
  std::string videos;  // root/<video_id>/<frames>
  double fps = 1.0;
  PipelineArgs pipeline;
  std::string codebook;
  std::string tau_grid;
  std::string alpha_grid = "1.0";
  std::string users;
  std::string ground_truth;
  std::optional<double> delta;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
};

// start:step:stop (inclusive), comma list, or a single value. Throws
// InputError on an empty or malformed grid.
std::vector<double> parse_grid(const std::string& spec);

void cmd_train(const TrainArgs& args, std::ostream& log);
void cmd_summarise(const SummariseArgs& args, std::ostream& log);
EvalReport cmd_evaluate(const EvaluateArgs& args, std::ostream& log);

struct SweepRow {
  double tau = 0.0;
  double alpha = 1.0;
  double metric = 0.0;  // mean F (short-term) or detection accuracy
  double mean_rc = 0.0;
  bool best = false;
};
std::vector<SweepRow> cmd_sweep(const SweepArgs& args, std::ostream& log);

// Parses argv and dispatches. Returns 0 on success, 1 on pipeline or
// domain errors, 2 on usage or input errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace botsum::cli

#endif  // BOTSUM_TOOLS_CLI_COMMANDS_HPP_
