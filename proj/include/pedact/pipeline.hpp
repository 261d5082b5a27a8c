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

#include <map>
#include <memory>
#include <span>

#include "pedact/esvm.hpp"
#include "pedact/exemplar_index.hpp"
#include "pedact/fusion.hpp"
#include "pedact/image_io.hpp"
#include "pedact/manifest.hpp"

namespace pedact {

struct TrainConfig {
    int k = 25;
    int folds = 5;
    double hand_ratio = kDefaultHandRatio;
    double window_alpha = kDefaultWindowAlpha;
    std::size_t negative_pool = 3000;
    std::size_t calib_negatives = 200;
    MiningConfig mining;
    double fusion_c = 1.0;
    std::uint64_t seed = 0;
};

struct TrainedModels {
    std::vector<Exemplar> exemplars;  // ascending id
    FusionSvm fusion;
    std::vector<FusionExample> fusion_examples;  // the leave-fold-out cue vectors
    TrainConfig config;
};

/// Loads and caches grayscale frames by manifest-relative path.
class FrameCache {
public:
    explicit FrameCache(const DatasetManifest& manifest) : manifest_(&manifest) {}

    /// nullptr for an empty path (record without a frame).
    const GrayPatch* get(const std::string& relative_path);

private:
    const DatasetManifest* manifest_;
    std::map<std::string, std::unique_ptr<GrayPatch>> cache_;
};

/// Nominal hand windows of a record, via the elbow->wrist extrapolation.
HandWindow nominal_hand_window(const PedestrianRecord& record, HandSide side, double hand_ratio,
                               double alpha);

/// Trains per-exemplar ESVMs (hard-negative mining + Platt calibration over a
/// shared pool of random non-hand windows), assembles the exemplar bundles
/// and fits the 5-fold late-fusion SVM.
TrainedModels train_models(const DatasetManifest& manifest,
                           std::span<const std::uint32_t> train_ids, const TrainConfig& config);

/// Per-neighbor calibrated ESVM scores of the record's two hand patches
/// (index-aligned with the neighbor set; 0 where rejected or unobservable).
struct HandScores {
    std::vector<double> left;
    std::vector<double> right;
};

HandScores score_hand_neighbors(const PedestrianRecord& record, const GrayPatch* frame,
                                const NeighborSet& neighbors, const TrainConfig& config);

CueScores compute_cues(const PedestrianRecord& record, const GrayPatch* frame,
                       const NeighborSet& neighbors, const TrainConfig& config);

struct ClassifyOutput {
    std::uint32_t id = 0;
    ActivityLabel truth = ActivityLabel::kNone;
    MapResult map;
    FusionResult fusion;
    CueScores cues;
};

std::vector<ClassifyOutput> classify_records(const DatasetManifest& manifest,
                                             std::span<const PedestrianRecord> records,
                                             const TrainedModels& models, int k);

/// Rebinds persisted ESVMs (keyed by source id and hand side) to the manifest
/// records named by `ids`, reconstructing the exemplar bundles.
std::vector<Exemplar> assemble_exemplars(const DatasetManifest& manifest,
                                         std::span<const std::uint32_t> ids,
                                         std::span<const ExemplarSvm> svms);

/// Exemplar bundles straight from manifest records (test-support path for
/// callers that train the SVMs themselves).
std::vector<const PedestrianRecord*> select_records(const DatasetManifest& manifest,
                                                    std::span<const std::uint32_t> ids);

}  // namespace pedact
