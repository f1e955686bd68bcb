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

// botsum: keyframe video summariser.
//
//   botsum train --frames train_frames/ --sample 10 --G 8 --seed 42 -o cb.json
//   botsum summarise --frames clip/ --fps 30 --codebook cb.json --tau 0.2 -o clip.json
//   botsum evaluate --manifests out/ --users users/ --codebook cb.json --delta 0.5 -o report.json
//   botsum sweep --videos clips/ --codebook cb.json --tau 0.05:0.05:0.5 --alpha 0:0.1:1 ...

#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  return botsum::cli::run(argc, argv, std::cout, std::cerr);
}
