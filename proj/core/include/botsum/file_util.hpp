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

#ifndef BOTSUM_FILE_UTIL_HPP_
#define BOTSUM_FILE_UTIL_HPP_

#include <filesystem>
#include <string>
#include <string_view>

namespace botsum {

// Throws InputError if the file cannot be read.
std::string read_text_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it over `path`, so readers
// never observe a partial artifact. Creates missing parent directories.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// printf("%.17g"): 17 significant digits, round-trips every finite double.
std::string format_double(double v);

// Shortest decimal that round-trips (std::to_chars).
std::string format_shortest(double v);

}  // namespace botsum

#endif  // BOTSUM_FILE_UTIL_HPP_
