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

#ifndef BOTSUM_IMAGE_IO_HPP_
#define BOTSUM_IMAGE_IO_HPP_

#include <filesystem>

#include "botsum/image.hpp"

namespace botsum {

// Reads a PNG or binary PPM/PGM (P6/P5) file, detected by magic bytes.
// Gray, palette, alpha and 16-bit PNGs are converted to 8-bit RGB.
// Throws InputError if the file cannot be opened and FormatError if it
// cannot be decoded.
RgbImage read_image(const std::filesystem::path& path);

void write_ppm(const std::filesystem::path& path, const RgbImage& image);
void write_png(const std::filesystem::path& path, const RgbImage& image);

// True for extensions read_image() accepts (.png, .ppm, .pnm, .pgm),
// case-insensitive.
bool is_supported_image(const std::filesystem::path& path);

}  // namespace botsum

#endif  // BOTSUM_IMAGE_IO_HPP_
