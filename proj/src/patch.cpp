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
#include "pedact/patch.hpp"

#include <cmath>
#include <stdexcept>

#include "pedact/common.hpp"

namespace pedact {

double GrayPatch::sample(double x, double y) const {
    // pixel centers at integer coordinates; replicate beyond the border
    double fx = std::floor(x);
    double fy = std::floor(y);
    int x0 = static_cast<int>(fx);
    int y0 = static_cast<int>(fy);
    double ax = x - fx;
    double ay = y - fy;
    double v00 = at_clamped(x0, y0);
    double v10 = at_clamped(x0 + 1, y0);
    double v01 = at_clamped(x0, y0 + 1);
    double v11 = at_clamped(x0 + 1, y0 + 1);
    return (1 - ax) * (1 - ay) * v00 + ax * (1 - ay) * v10 + (1 - ax) * ay * v01 + ax * ay * v11;
}

GrayPatch extract_patch(const GrayPatch& frame, const HandWindow& window) {
    if (!(window.side > 0.0)) throw std::invalid_argument("extract_patch: window side must be > 0");
    if (frame.width <= 0 || frame.height <= 0) {
        throw std::invalid_argument("extract_patch: empty frame");
    }

    Rect r = window.rect();
    if (r.x1 < 0.0 || r.y1 < 0.0 || r.x0 > frame.width - 1.0 || r.y0 > frame.height - 1.0) {
        throw DataError("extract_patch: hand window entirely outside the frame");
    }

    GrayPatch out(kPatchSize, kPatchSize);
    double step = window.side / kPatchSize;
    for (int v = 0; v < kPatchSize; ++v) {
        double sy = r.y0 + (v + 0.5) * step;
        for (int u = 0; u < kPatchSize; ++u) {
            double sx = r.x0 + (u + 0.5) * step;
            out.at(u, v) = frame.sample(sx, sy);
        }
    }
    return out;
}

HogTemplate hog(const GrayPatch& patch) {
    if (patch.width != kPatchSize || patch.height != kPatchSize) {
        throw std::invalid_argument("hog: patch must be the canonical size");
    }

    // per-cell orientation histograms; hard assignment of pixel to cell/bin
    std::vector<double> hist(kHogCells * kHogCells * kHogBins, 0.0);
    for (int y = 0; y < kPatchSize; ++y) {
        for (int x = 0; x < kPatchSize; ++x) {
            double gx = patch.at_clamped(x + 1, y) - patch.at_clamped(x - 1, y);
            double gy = patch.at_clamped(x, y + 1) - patch.at_clamped(x, y - 1);
            double mag = std::sqrt(gx * gx + gy * gy);
            if (mag == 0.0) continue;
            double theta = std::atan2(gy, gx);
            if (theta < 0.0) theta += M_PI;
            if (theta >= M_PI) theta -= M_PI;
            int bin = std::min(kHogBins - 1, static_cast<int>(theta * kHogBins / M_PI));
            int cx = x / kHogCellSize;
            int cy = y / kHogCellSize;
            hist[(cy * kHogCells + cx) * kHogBins + bin] += mag;
        }
    }

    HogTemplate out;
    out.values.resize(kHogDim);
    std::size_t idx = 0;
    for (int by = 0; by < kHogBlocksPerSide; ++by) {
        for (int bx = 0; bx < kHogBlocksPerSide; ++bx) {
            double* block = &out.values[idx];
            int n = 0;
            for (int dy = 0; dy < 2; ++dy) {
                for (int dx = 0; dx < 2; ++dx) {
                    const double* cell = &hist[((by + dy) * kHogCells + (bx + dx)) * kHogBins];
                    for (int b = 0; b < kHogBins; ++b) block[n++] = cell[b];
                }
            }
            // L2-hys: normalize, clip, renormalize
            double sq = 0.0;
            for (int i = 0; i < n; ++i) sq += block[i] * block[i];
            double norm = std::sqrt(sq + kHogEpsilon * kHogEpsilon);
            for (int i = 0; i < n; ++i) block[i] = std::min(block[i] / norm, kHogClip);
            sq = 0.0;
            for (int i = 0; i < n; ++i) sq += block[i] * block[i];
            norm = std::sqrt(sq + kHogEpsilon * kHogEpsilon);
            for (int i = 0; i < n; ++i) block[i] /= norm;
            idx += n;
        }
    }
    return out;
}

}  // namespace pedact
