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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>

namespace pedact {

struct ImagePoint {
    double x = 0.0;
    double y = 0.0;
};

inline bool finite(const ImagePoint& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Pixel-space pedestrian bounding box, (x, y) = top-left corner.
struct PedestrianBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    bool valid() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(w) && std::isfinite(h) &&
               w > 0.0 && h > 0.0;
    }
};

/// Canonical upper-body joint order. All file formats, feature layouts and
/// heatmap channels follow this order.
enum Joint : int {
    kHead = 0,
    kNeck = 1,
    kRightShoulder = 2,
    kRightElbow = 3,
    kRightWrist = 4,
    kLeftShoulder = 5,
    kLeftElbow = 6,
    kLeftWrist = 7,
};

inline constexpr int kJointCount = 8;

inline constexpr std::array<const char*, kJointCount> kJointNames = {
    "head",          "neck",       "right_shoulder", "right_elbow",
    "right_wrist",   "left_shoulder", "left_elbow",  "left_wrist",
};

struct UpperBodyPose {
    std::array<ImagePoint, kJointCount> joints{};

    bool valid() const {
        return std::all_of(joints.begin(), joints.end(),
                           [](const ImagePoint& p) { return finite(p); });
    }
};

enum class ActivityLabel : int {
    kNone = 0,
    kTexting = 1,
    kPhoneCall = 2,
};

inline constexpr int kActivityCount = 3;

/// Object held in a hand. kCellphone = 1 so the stored byte doubles as the
/// cellphone indicator used by the hand-evidence term.
enum class ObjectLabel : int {
    kNone = 0,
    kCellphone = 1,
    kOther = 2,
};

enum class HandSide : int {
    kLeft = 0,
    kRight = 1,
};

inline const char* to_string(ActivityLabel y) {
    switch (y) {
        case ActivityLabel::kNone: return "none";
        case ActivityLabel::kTexting: return "texting";
        case ActivityLabel::kPhoneCall: return "phone_call";
    }
    return "?";
}

inline const char* to_string(ObjectLabel o) {
    switch (o) {
        case ObjectLabel::kNone: return "none";
        case ObjectLabel::kCellphone: return "cellphone";
        case ObjectLabel::kOther: return "other";
    }
    return "?";
}

inline const char* to_string(HandSide s) { return s == HandSide::kLeft ? "left" : "right"; }

/// Axis-aligned rectangle used for window overlap computations.
struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

    double area() const { return std::max(0.0, x1 - x0) * std::max(0.0, y1 - y0); }

    bool contains(const ImagePoint& p) const {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }
};

inline double intersection_over_union(const Rect& a, const Rect& b) {
    double ix = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
    double iy = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
    if (ix <= 0.0 || iy <= 0.0) return 0.0;
    double inter = ix * iy;
    double uni = a.area() + b.area() - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

}  // namespace pedact
