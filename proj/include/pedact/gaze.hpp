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

#include <array>
#include <string>

#include "pedact/types.hpp"

namespace pedact {

inline constexpr int kGazeMapSide = 13;
inline constexpr int kGazeFeatureDim = kGazeMapSide * kGazeMapSide;  // 169

/// Row-major flattening of the 13x13 gaze heat-map. Stored unnormalized; the
/// cosine similarity handles normalization.
struct GazeFeature {
    std::array<double, kGazeFeatureDim> values{};
};

/// Enforces the type invariants (finite, >= 0, not all zero). Throws
/// DataError with `context` in the message.
void validate_gaze(const GazeFeature& gaze, const std::string& context);

/// Cosine of the angle between the two feature vectors. Throws
/// std::invalid_argument on a zero-norm input.
double cosine_similarity(const GazeFeature& a, const GazeFeature& b);

}  // namespace pedact
