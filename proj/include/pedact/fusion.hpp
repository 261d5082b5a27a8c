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
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pedact/exemplar_index.hpp"
#include "pedact/gaze.hpp"
#include "pedact/types.hpp"

namespace pedact {

/// Per-class cue scores, indexed by activity {0, 1, 2}. The flattened 9-dim
/// layout is [gaze(0..2), hand(0..2), prior(0..2)].
struct CueScores {
    std::array<double, kActivityCount> gaze{};
    std::array<double, kActivityCount> hand{};
    std::array<double, kActivityCount> prior{};

    std::array<double, 9> flatten() const {
        return {gaze[0], gaze[1], gaze[2], hand[0], hand[1], hand[2], prior[0], prior[1], prior[2]};
    }
};

/// Which cue groups participate in fusion (excluded groups are zeroed both at
/// training and at test time).
struct CueMask {
    bool use_gaze = true;
    bool use_hand = true;
    bool use_prior = true;

    std::array<double, 9> apply(const std::array<double, 9>& v) const {
        std::array<double, 9> out = v;
        for (int y = 0; y < kActivityCount; ++y) {
            if (!use_gaze) out[y] = 0.0;
            if (!use_hand) out[kActivityCount + y] = 0.0;
            if (!use_prior) out[2 * kActivityCount + y] = 0.0;
        }
        return out;
    }
};

/// Class-conditional gaze evidence: the best cosine similarity against the
/// neighbors of class y; 0 when no neighbor carries that label.
double gaze_likelihood(const GazeFeature& query, const NeighborSet& neighbors, ActivityLabel y);

/// Fraction of the K neighbors labeled y.
double pose_prior(const NeighborSet& neighbors, ActivityLabel y);

std::array<double, kActivityCount> pose_prior_all(const NeighborSet& neighbors);

/// Hand evidence from the per-neighbor calibrated ESVM scores (index-aligned
/// with `neighbors`; rejected/unobservable matches contribute 0):
/// - y = 0: min over hands of the best class-0 neighbor score,
/// - y in {1, 2}: best cellphone-gated left+right sum among class-y neighbors.
double hand_likelihood(std::span<const double> left_scores, std::span<const double> right_scores,
                       const NeighborSet& neighbors, ActivityLabel y);

struct MapResult {
    ActivityLabel label = ActivityLabel::kNone;
    std::array<double, kActivityCount> posterior{};  // unnormalized
};

/// MAP estimate over the cue product gaze*hand*prior; ties and the all-zero
/// case fall back toward the prior / the smaller label index.
MapResult map_classify(const CueScores& cues);

/// Three one-vs-all linear classifiers over the standardized 9-dim cue
/// vector.
struct FusionSvm {
    std::array<double, 9> mean{};
    std::array<double, 9> scale{};
    struct Ova {
        std::array<double, 9> weights{};
        double bias = 0.0;
    };
    std::array<Ova, kActivityCount> classifiers{};
    CueMask mask;
};

struct FusionExample {
    std::array<double, 9> cues{};
    ActivityLabel label = ActivityLabel::kNone;
    std::uint32_t id = 0;
};

FusionSvm train_fusion(std::span<const FusionExample> examples, const CueMask& mask = {},
                       double c = 1.0);

struct FusionResult {
    ActivityLabel label = ActivityLabel::kNone;
    std::array<double, kActivityCount> margins{};
};

FusionResult fusion_classify(const FusionSvm& svm, const CueScores& cues);

/// Computes cue scores for one target given its fold-restricted neighbor set.
using CueFn = std::function<CueScores(const Exemplar& target, const NeighborSet& neighbors)>;

/// Leave-fold-out cue vectors for fusion training: each exemplar's cues are
/// computed against an index built from the other `folds - 1` folds only.
/// Fold assignment is round-robin over exemplars sorted by id.
std::vector<FusionExample> build_fusion_training(std::span<const Exemplar> exemplars, int k,
                                                 int folds, const CueFn& cue_fn);

/// Fold id of the exemplar at `rank` in ascending-id order (exposed so tests
/// can assert the leave-fold-out property).
int fusion_fold_of(std::size_t rank, int folds);

/// Per-frame classifier for sequences: hand evidence is cached and refreshed
/// only every `refresh_period` frames, gaze and prior are fresh per frame.
class SequentialClassifier {
public:
    using HandFn = std::function<std::array<double, kActivityCount>(int frame)>;

    SequentialClassifier(int refresh_period, HandFn hand_fn, const FusionSvm* fusion = nullptr);

    /// Classifies one frame; frames must be fed in increasing order.
    ActivityLabel classify_frame(int frame, const std::array<double, kActivityCount>& gaze,
                                 const std::array<double, kActivityCount>& prior);

    int hand_invocations() const { return invocations_; }

private:
    int refresh_period_;
    HandFn hand_fn_;
    const FusionSvm* fusion_;
    std::array<double, kActivityCount> cached_hand_{};
    int last_refresh_ = -1;
    int invocations_ = 0;
};

}  // namespace pedact
