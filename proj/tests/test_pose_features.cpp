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
#include <doctest.h>

#include "pedact/common.hpp"
#include "pedact/pose_features.hpp"

using namespace pedact;

namespace {

UpperBodyPose random_pose(Rng& rng, const PedestrianBox& box) {
    UpperBodyPose pose;
    for (auto& j : pose.joints) {
        j.x = box.x + rng.uniform(-0.2, 1.2) * box.w;
        j.y = box.y + rng.uniform(-0.2, 1.2) * box.h;
    }
    return pose;
}

PedestrianBox random_box(Rng& rng) {
    return {rng.uniform(-50.0, 50.0), rng.uniform(-50.0, 50.0), rng.uniform(20.0, 400.0),
            rng.uniform(40.0, 800.0)};
}

}  // namespace

TEST_CASE("locate_hand basics") {
    // zero-length segment maps to itself
    ImagePoint same = locate_hand({10, 10}, {10, 10}, 5.0 / 6.0);
    CHECK(same.x == doctest::Approx(10.0));
    CHECK(same.y == doctest::Approx(10.0));

    // direct arithmetic: elbow (10,10), wrist (15,20), r = 5/6
    ImagePoint h = locate_hand({10, 10}, {15, 20}, 5.0 / 6.0);
    CHECK(h.x == doctest::Approx(16.0));
    CHECK(h.y == doctest::Approx(22.0));

    CHECK(kDefaultHandRatio == doctest::Approx(5.0 / 6.0));
    CHECK_THROWS_AS(locate_hand({0, 0}, {1, 1}, 0.0), std::invalid_argument);
}

TEST_CASE("locate_hand with r=1 returns the wrist") {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        ImagePoint e{rng.uniform(-100, 100), rng.uniform(-100, 100)};
        ImagePoint w{rng.uniform(-100, 100), rng.uniform(-100, 100)};
        ImagePoint h = locate_hand(e, w, 1.0);
        CHECK(h.x == doctest::Approx(w.x).epsilon(1e-12));
        CHECK(h.y == doctest::Approx(w.y).epsilon(1e-12));
    }
}

TEST_CASE("hand_window scales with the box height") {
    PedestrianBox box{0, 0, 200, 400};
    HandWindow w = hand_window(box, {100, 200}, 0.1);
    CHECK(w.side == doctest::Approx(40.0));

    // alpha = 2 -> side 2h covers the whole box when centered inside it
    HandWindow big = hand_window(box, {100, 200}, 2.0);
    Rect r = big.rect();
    CHECK(r.x0 <= box.x);
    CHECK(r.y0 <= box.y);
    CHECK(r.x1 >= box.x + box.w);
    CHECK(r.y1 >= box.y + box.h);

    CHECK_THROWS_AS(hand_window(box, {0, 0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(hand_window({0, 0, -1, 10}, {0, 0}, 0.1), std::invalid_argument);
}

TEST_CASE("encode_pose corner and center coordinates") {
    PedestrianBox box{0, 0, 100, 200};
    UpperBodyPose pose;
    for (auto& j : pose.joints) j = {50, 100};
    pose.joints[0] = {0, 0};  // head at the top-left corner

    PoseFeature f = encode_pose(box, pose);
    CHECK(f[0] == doctest::Approx(0.0));
    CHECK(f[1] == doctest::Approx(0.0));
    CHECK(f[2] == doctest::Approx(0.5));
    CHECK(f[3] == doctest::Approx(0.5));
}

TEST_CASE("collinear joints give a normalized angle of 1") {
    PedestrianBox box{0, 0, 100, 100};
    UpperBodyPose pose;
    // place every joint on a line so each triplet has its middle joint between
    // the outer two
    for (int i = 0; i < kJointCount; ++i) pose.joints[i] = {10.0 + 7.0 * i, 20.0 + 7.0 * i};
    std::swap(pose.joints[kNeck], pose.joints[kRightShoulder]);  // keep middles interior

    double angle = joint_angle({0, 0}, {1, 1}, {2, 2});
    CHECK(angle == doctest::Approx(M_PI));

    PoseFeature f = encode_pose(box, pose);
    // triplet 3 = (Rshoulder, Relbow, Rwrist): indices 2 < 3 < 4 stay collinear
    CHECK(f[kCoordFeatureDim + 3] == doctest::Approx(1.0));
}

TEST_CASE("degenerate angle legs yield 0") {
    CHECK(joint_angle({5, 5}, {5, 5}, {9, 9}) == doctest::Approx(0.0));
    CHECK(joint_angle({1, 2}, {1, 2}, {1, 2}) == doctest::Approx(0.0));
}

TEST_CASE("angle entries always in [0,1]") {
    Rng rng(42);
    for (int trial = 0; trial < 500; ++trial) {
        PedestrianBox box = random_box(rng);
        PoseFeature f = encode_pose(box, random_pose(rng, box));
        for (int a = 0; a < kAngleFeatureDim; ++a) {
            CHECK(f[kCoordFeatureDim + a] >= 0.0);
            CHECK(f[kCoordFeatureDim + a] <= 1.0);
        }
    }
}

TEST_CASE("encode_pose invariant to translation and uniform scaling") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        PedestrianBox box = random_box(rng);
        UpperBodyPose pose = random_pose(rng, box);
        PoseFeature base = encode_pose(box, pose);

        double tx = rng.uniform(-500, 500), ty = rng.uniform(-500, 500);
        double s = rng.uniform(0.1, 10.0);

        PedestrianBox moved{box.x + tx, box.y + ty, box.w, box.h};
        UpperBodyPose moved_pose = pose;
        for (auto& j : moved_pose.joints) {
            j.x += tx;
            j.y += ty;
        }
        PoseFeature f_moved = encode_pose(moved, moved_pose);

        PedestrianBox scaled{box.x * s, box.y * s, box.w * s, box.h * s};
        UpperBodyPose scaled_pose = pose;
        for (auto& j : scaled_pose.joints) {
            j.x *= s;
            j.y *= s;
        }
        PoseFeature f_scaled = encode_pose(scaled, scaled_pose);

        for (int i = 0; i < kPoseFeatureDim; ++i) {
            CHECK(std::abs(f_moved[i] - base[i]) < 1e-9);
            CHECK(std::abs(f_scaled[i] - base[i]) < 1e-9);
        }
    }
}

TEST_CASE("decode_pose inverts the coordinate block") {
    Rng rng(3);
    PedestrianBox box = random_box(rng);
    UpperBodyPose pose = random_pose(rng, box);
    UpperBodyPose back = decode_pose(box, encode_pose(box, pose));
    for (int j = 0; j < kJointCount; ++j) {
        CHECK(back.joints[j].x == doctest::Approx(pose.joints[j].x).epsilon(1e-10));
        CHECK(back.joints[j].y == doctest::Approx(pose.joints[j].y).epsilon(1e-10));
    }
}
