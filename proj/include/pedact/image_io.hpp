/*
 * Copyright 2026 The pedact authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <filesystem>

#include "pedact/patch.hpp"

namespace pedact {

/// Loads an 8-bit PNG, PPM (P6) or PGM (P5) image and converts it to
/// grayscale (luma 0.299/0.587/0.114). Throws DataError on malformed files.
GrayPatch load_image(const std::filesystem::path& path);

/// Writes a binary PGM (P5), quantizing intensities to 8 bits.
void write_pgm(const std::filesystem::path& path, const GrayPatch& image);

}  // namespace pedact
