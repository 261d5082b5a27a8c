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

#include <vector>

#include "pedact/pose_features.hpp"
#include "pedact/types.hpp"

namespace pedact {

/// Row-major grayscale raster with intensities in [0, 1]. Used both for full
/// frames and for the canonical hand patches.
struct GrayPatch {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    GrayPatch() = default;
    GrayPatch(int w, int h, double fill = 0.0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    double& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }

    // nearest pixel with clamped coordinates (edge replication)
    double at_clamped(int x, int y) const {
        x = std::clamp(x, 0, width - 1);
        y = std::clamp(y, 0, height - 1);
        return at(x, y);
    }

    // bilinear sample at pixel-center coordinates, edge replicated
    double sample(double x, double y) const;
};

inline constexpr int kPatchSize = 64;

// HOG geometry: 8x8-pixel cells, 9 unsigned orientation bins, 2x2-cell blocks
// with single-cell stride, L2-hys block normalization.
inline constexpr int kHogCellSize = 8;
inline constexpr int kHogCells = kPatchSize / kHogCellSize;  // 8
inline constexpr int kHogBins = 9;
inline constexpr int kHogBlocksPerSide = kHogCells - 1;  // 7
inline constexpr double kHogEpsilon = 1e-5;
inline constexpr double kHogClip = 0.2;
inline constexpr int kHogDim = kHogBlocksPerSide * kHogBlocksPerSide * 4 * kHogBins;  // 1764

/// Rigid gradient-orientation-histogram template of a canonical patch.
struct HogTemplate {
    int cells_x = kHogCells;
    int cells_y = kHogCells;
    int bins = kHogBins;
    std::vector<double> values;
};

/// Resamples the window contents to the canonical kPatchSize square. Regions
/// outside the frame are edge replicated. Throws DataError when the window
/// does not intersect the frame at all (unobservable hand).
GrayPatch extract_patch(const GrayPatch& frame, const HandWindow& window);

/// Computes the HOG descriptor of a canonical patch. Deterministic; identical
/// patches give identical descriptors.
HogTemplate hog(const GrayPatch& patch);

}  // namespace pedact
