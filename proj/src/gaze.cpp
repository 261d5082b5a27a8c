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
#include "pedact/gaze.hpp"

#include <cmath>
#include <stdexcept>

#include "pedact/common.hpp"

namespace pedact {

void validate_gaze(const GazeFeature& gaze, const std::string& context) {
    double sum = 0.0;
    for (double v : gaze.values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw DataError(context + ": gaze values must be finite and non-negative");
        }
        sum += v;
    }
    if (sum == 0.0) throw DataError(context + ": gaze vector is all zero");
}

double cosine_similarity(const GazeFeature& a, const GazeFeature& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (int i = 0; i < kGazeFeatureDim; ++i) {
        dot += a.values[i] * b.values[i];
        na += a.values[i] * a.values[i];
        nb += b.values[i] * b.values[i];
    }
    if (na == 0.0 || nb == 0.0) {
        throw std::invalid_argument("cosine_similarity: zero-norm gaze vector");
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace pedact
