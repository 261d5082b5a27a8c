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

#include <Eigen/Dense>
#include <filesystem>

#include "pedact/manifest.hpp"
#include "pedact/patch.hpp"
#include "pedact/tracker.hpp"

namespace pedact {

/// Desk-scale dataset generator: class-distinct pose templates, hand-object
/// textures and gaze bumps, plus sinusoidal gait sequences with Gaussian-bump
/// heatmaps. Fully deterministic for a fixed seed.
struct SyntheticSpec {
    int peds_per_class = 40;
    int viewpoints = 2;
    double joint_noise = 2.0;   // px
    double gaze_noise = 0.30;   // additive uniform noise on the 13x13 map
    double patch_noise = 0.10;  // per-pedestrian texture amplitude
    int test_sequences = 4;
    int train_sequence_frames = 90;
    int test_sequence_frames = 300;
    double heatmap_sigma_cells = 1.5;
    double heatmap_center_jitter = 1.5;  // px
    double heatmap_outlier_prob = 0.0;
    bool sequence_images = false;
    std::uint64_t seed = 0;
};

/// Writes manifest.json plus frames/ and heatmaps/ under out_dir and returns
/// the loaded manifest.
DatasetManifest generate_synthetic(const SyntheticSpec& spec,
                                   const std::filesystem::path& out_dir);

// --- building blocks shared with the test suites ---

struct GaitParams {
    int viewpoint = 0;
    double frequency_scale = 1.0;  // relative to the 30-frame base period
    double phase = 0.0;
    double box_height = 200.0;
};

/// Ground-truth walking sequence (fixed box, sinusoidal arm swing).
struct SyntheticSequence {
    PedestrianBox box;
    std::vector<UpperBodyPose> poses;
};

SyntheticSequence make_gait_sequence(int frames, const GaitParams& params);

struct HeatmapNoise {
    double sigma_px = 4.5;
    double center_jitter = 0.0;  // Gaussian displacement of the bump, px
    double outlier_prob = 0.0;   // probability of a gross per-joint failure
    int map_width = 32;
    int map_height = 64;
};

/// Gaussian-bump heatmaps around the true joints.
std::vector<JointHeatmaps> render_heatmaps(const SyntheticSequence& sequence,
                                           const HeatmapNoise& noise, Rng& rng);

/// T x 23 pose-feature matrix of the sequence (GPDM training input).
Eigen::MatrixXd pose_feature_matrix(const SyntheticSequence& sequence);

}  // namespace pedact
