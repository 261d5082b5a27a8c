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

#include "pedact/types.hpp"

namespace pedact {

inline constexpr int kCoordFeatureDim = 2 * kJointCount;  // 16
inline constexpr int kAngleFeatureDim = 7;
inline constexpr int kPoseFeatureDim = kCoordFeatureDim + kAngleFeatureDim;  // 23

/// 23-dim pose descriptor: per-joint box-normalized (x, y) pairs followed by
/// the 7 normalized joint angles.
struct PoseFeature {
    std::array<double, kPoseFeatureDim> values{};

    double operator[](int i) const { return values[i]; }
    double& operator[](int i) { return values[i]; }
};

/// Square image window centered on a predicted hand location.
struct HandWindow {
    ImagePoint center;
    double side = 0.0;
    HandSide hand_side = HandSide::kLeft;

    Rect rect() const {
        double r = side / 2.0;
        return {center.x - r, center.y - r, center.x + r, center.y + r};
    }
};

inline constexpr double kDefaultHandRatio = 5.0 / 6.0;
inline constexpr double kDefaultWindowAlpha = 0.1;

/// Joint triplets (i, j, k) whose interior angle at j forms the angle block of
/// the pose feature, in feature order.
inline constexpr std::array<std::array<Joint, 3>, kAngleFeatureDim> kAngleTriplets = {{
    {kHead, kNeck, kRightShoulder},
    {kHead, kNeck, kLeftShoulder},
    {kNeck, kRightShoulder, kRightElbow},
    {kRightShoulder, kRightElbow, kRightWrist},
    {kNeck, kLeftShoulder, kLeftElbow},
    {kLeftShoulder, kLeftElbow, kLeftWrist},
    {kRightShoulder, kNeck, kLeftShoulder},
}};

/// Extrapolates the hand location from the elbow->wrist segment:
/// hand = elbow + (wrist - elbow) / r. Throws std::invalid_argument for r = 0.
ImagePoint locate_hand(const ImagePoint& elbow, const ImagePoint& wrist, double r);

/// Square window of side alpha * box.h centered at the hand point. The window
/// may exceed image bounds; clipping is the patch extractor's job.
HandWindow hand_window(const PedestrianBox& box, const ImagePoint& hand, double alpha,
                       HandSide side = HandSide::kLeft);

/// Interior angle at mid subtended by a and b, in [0, pi]. Degenerate
/// (zero-length) legs yield 0.
double joint_angle(const ImagePoint& a, const ImagePoint& mid, const ImagePoint& b);

/// Builds the 23-dim descriptor: coordinates normalized by the box, then the
/// 7 triplet angles divided by pi.
PoseFeature encode_pose(const PedestrianBox& box, const UpperBodyPose& pose);

/// Inverse of the coordinate block: maps the first 16 feature entries back to
/// image coordinates using the given box. The angle block is ignored.
UpperBodyPose decode_pose(const PedestrianBox& box, const PoseFeature& feature);

}  // namespace pedact
