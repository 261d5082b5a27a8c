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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pedact/gaze.hpp"
#include "pedact/types.hpp"

namespace pedact {

/// One annotated pedestrian crop: box, joints, gaze feature, per-hand object
/// labels and the activity label. Paths are resolved against the manifest
/// directory at load time.
struct PedestrianRecord {
    std::uint32_t id = 0;
    std::string image_path;  // empty = no frame available
    PedestrianBox box;
    UpperBodyPose pose;
    GazeFeature gaze;
    ObjectLabel left_object = ObjectLabel::kNone;
    ObjectLabel right_object = ObjectLabel::kNone;
    ActivityLabel activity = ActivityLabel::kNone;
    std::optional<ImagePoint> left_hand_truth;
    std::optional<ImagePoint> right_hand_truth;
};

struct SequenceFrame {
    PedestrianBox box;
    UpperBodyPose pose;  // ground-truth joints
    std::string heatmap_path;
    std::string image_path;  // optional
    ActivityLabel activity = ActivityLabel::kNone;
};

struct SequenceRecord {
    std::uint32_t id = 0;
    std::string tag;  // activity/viewpoint tag for the GPDM bank
    std::string split;  // "train" or "test"
    std::vector<SequenceFrame> frames;
    std::string gaze_path;  // optional: one 169-value row per frame
};

struct DatasetManifest {
    std::filesystem::path root;  // directory of the manifest file
    std::vector<PedestrianRecord> pedestrians;
    std::vector<SequenceRecord> sequences;

    std::filesystem::path resolve(const std::string& relative) const { return root / relative; }
};

/// Parses and fully validates a manifest; schema violations raise DataError
/// naming the record id and field.
DatasetManifest load_manifest(const std::filesystem::path& path);

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

struct SplitResult {
    std::vector<std::uint32_t> train_ids;
    std::vector<std::uint32_t> test_ids;
};

/// Seeded stratified split preserving per-class fractions (75-25 by
/// default). Each class contributes round(train_fraction * n) records to the
/// train side.
SplitResult stratified_split(std::span<const PedestrianRecord> records, double train_fraction,
                             std::uint64_t seed);

/// Per-frame gaze features of a sequence (whitespace-separated text file, one
/// row per frame).
std::vector<GazeFeature> load_sequence_gaze(const std::filesystem::path& path,
                                            std::size_t expected_frames);

void save_sequence_gaze(const std::filesystem::path& path, std::span<const GazeFeature> gaze);

}  // namespace pedact
