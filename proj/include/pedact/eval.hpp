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
#include <filesystem>
#include <span>
#include <vector>

#include "pedact/types.hpp"

namespace pedact {

struct PckConfig {
    double threshold_ratio = 0.1;  // of the bounding-box height
};

/// Per-joint fraction of frames whose predicted joint lies within
/// threshold_ratio * box height of the ground truth. Joint order is the
/// canonical one.
std::array<double, kJointCount> pck(std::span<const UpperBodyPose> predicted,
                                    std::span<const UpperBodyPose> truth,
                                    std::span<const PedestrianBox> boxes,
                                    const PckConfig& config = {});

double mean_pck(const std::array<double, kJointCount>& per_joint);

/// 3x3 counts; rows = ground truth, columns = predicted.
struct ConfusionMatrix {
    std::array<std::array<std::size_t, kActivityCount>, kActivityCount> counts{};

    std::size_t total() const;
    std::size_t row_sum(int y) const;
};

struct AccuracyReport {
    ConfusionMatrix confusion;
    std::array<double, kActivityCount> per_class{};
    double overall = 0.0;
};

AccuracyReport confusion_and_accuracy(std::span<const ActivityLabel> predicted,
                                      std::span<const ActivityLabel> truth);

/// One sweep row: the fraction of ground-truth hand points falling inside the
/// wrist-centered / hand-centered window at the given scale.
struct ContainmentRow {
    double alpha = 0.0;
    double wrist_fraction = 0.0;
    double hand_fraction = 0.0;
};

/// Sample understood as one annotated hand: the elbow/wrist joints that
/// predict it, the owning box and the ground-truth hand point.
struct HandSample {
    PedestrianBox box;
    ImagePoint elbow;
    ImagePoint wrist;
    ImagePoint hand_truth;
};

std::vector<ContainmentRow> window_containment_sweep(std::span<const HandSample> samples,
                                                     std::span<const double> alphas,
                                                     double hand_ratio);

struct TimelineResult {
    std::vector<int> truth;
    std::vector<int> predicted;
    double agreement = 0.0;
};

TimelineResult sequence_timeline(std::span<const ActivityLabel> predicted,
                                 std::span<const ActivityLabel> truth);

void write_timeline_csv(const std::filesystem::path& path, const TimelineResult& timeline);
TimelineResult load_timeline_csv(const std::filesystem::path& path);

/// Convenience step-plot of the timeline; the CSV is the canonical output.
void write_timeline_svg(const std::filesystem::path& path, const TimelineResult& timeline);

}  // namespace pedact
