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
#include "pedact/pose_features.hpp"

#include <cmath>
#include <stdexcept>

namespace pedact {

ImagePoint locate_hand(const ImagePoint& elbow, const ImagePoint& wrist, double r) {
    if (r == 0.0 || !std::isfinite(r)) {
        throw std::invalid_argument("locate_hand: ratio r must be finite and nonzero");
    }
    return {elbow.x + (wrist.x - elbow.x) / r, elbow.y + (wrist.y - elbow.y) / r};
}

HandWindow hand_window(const PedestrianBox& box, const ImagePoint& hand, double alpha,
                       HandSide side) {
    if (!box.valid()) throw std::invalid_argument("hand_window: invalid pedestrian box");
    if (!(alpha > 0.0)) throw std::invalid_argument("hand_window: alpha must be > 0");
    return {hand, alpha * box.h, side};
}

double joint_angle(const ImagePoint& a, const ImagePoint& mid, const ImagePoint& b) {
    double ux = a.x - mid.x, uy = a.y - mid.y;
    double vx = b.x - mid.x, vy = b.y - mid.y;
    double nu = std::sqrt(ux * ux + uy * uy);
    double nv = std::sqrt(vx * vx + vy * vy);
    if (nu == 0.0 || nv == 0.0) return 0.0;
    double c = (ux * vx + uy * vy) / (nu * nv);
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

PoseFeature encode_pose(const PedestrianBox& box, const UpperBodyPose& pose) {
    if (!box.valid()) throw std::invalid_argument("encode_pose: invalid pedestrian box");
    if (!pose.valid()) throw std::invalid_argument("encode_pose: non-finite joint coordinates");

    PoseFeature f;
    for (int i = 0; i < kJointCount; ++i) {
        f[2 * i] = (pose.joints[i].x - box.x) / box.w;
        f[2 * i + 1] = (pose.joints[i].y - box.y) / box.h;
    }
    for (int t = 0; t < kAngleFeatureDim; ++t) {
        const auto& [i, j, k] = kAngleTriplets[t];
        f[kCoordFeatureDim + t] = joint_angle(pose.joints[i], pose.joints[j], pose.joints[k]) / M_PI;
    }
    return f;
}

UpperBodyPose decode_pose(const PedestrianBox& box, const PoseFeature& feature) {
    if (!box.valid()) throw std::invalid_argument("decode_pose: invalid pedestrian box");
    UpperBodyPose pose;
    for (int i = 0; i < kJointCount; ++i) {
        pose.joints[i].x = box.x + feature[2 * i] * box.w;
        pose.joints[i].y = box.y + feature[2 * i + 1] * box.h;
    }
    return pose;
}

}  // namespace pedact
