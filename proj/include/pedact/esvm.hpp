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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pedact/patch.hpp"
#include "pedact/types.hpp"

namespace pedact {

/// Minimum window overlap for a match to be retained.
inline constexpr double kOverlapThreshold = 0.4;

/// One exemplar's linear classifier plus its Platt calibration and the object
/// label it transfers on a match.
struct ExemplarSvm {
    Eigen::VectorXd weights;
    double bias = 0.0;
    double platt_a = 1.0;
    double platt_b = 0.0;
    ObjectLabel object_label = ObjectLabel::kNone;
    std::uint32_t source_id = 0;
    HandSide hand_side = HandSide::kLeft;

    double raw_score(const HogTemplate& patch) const;
    /// sigmoid(platt_a * raw + platt_b); strictly in (0,1) for finite raw.
    double calibrated_score(double raw) const;
};

struct MatchScore {
    double raw = 0.0;
    double calibrated = 0.0;
    double overlap = 0.0;
};

struct MiningConfig {
    int rounds = 3;
    std::size_t cache_cap = 2000;
    std::size_t initial_cache = 256;
    double c_positive = 50.0;
    double c_negative = 0.01;
    double gap_tolerance = 1e-4;
    int max_sweeps = 200;
};

/// Hard-negative cache size after the initial fill and after each mining
/// round (non-decreasing by construction).
struct MiningTrace {
    std::vector<std::size_t> cache_sizes;
};

/// Trains one exemplar SVM by hard-negative mining over the pool: train,
/// score the pool, add violators (margin > -1) to the cache, retrain. Stops
/// after config.rounds or when no new hard negatives appear.
ExemplarSvm train_exemplar(const HogTemplate& positive, std::span<const HogTemplate> pool,
                           const MiningConfig& config = {}, MiningTrace* trace = nullptr);

/// Fits the Platt sigmoid by maximum likelihood on the SVM's raw scores of
/// the calibration sets (smoothed targets). Requires >= 5 points per side.
void calibrate(ExemplarSvm& svm, std::span<const HogTemplate> calib_positive,
               std::span<const HogTemplate> calib_negative);

/// Raw + calibrated score for one patch; nullopt when the overlap gate
/// (<= 0.4) rejects the match.
std::optional<MatchScore> score_patch(const ExemplarSvm& svm, const HogTemplate& patch,
                                      double overlap);

struct BestMatch {
    std::size_t index = 0;  // position within the restricted ensemble
    std::uint32_t exemplar_id = 0;
    ObjectLabel label = ObjectLabel::kNone;
    MatchScore score;
};

/// Argmax of calibrated score over the non-rejected members; nullopt when
/// every member is rejected (downstream hand evidence 0).
std::optional<BestMatch> best_match(std::span<const ExemplarSvm* const> ensemble,
                                    const HogTemplate& patch, double overlap = 1.0);

/// Precomputed descriptors of the nominal hand window and its +-4 px shifted
/// copies, with each shift's IoU against the nominal window. Scoring many
/// ESVMs against one hand reuses this.
struct HandObservation {
    std::vector<HogTemplate> hogs;
    std::vector<double> overlaps;

    bool empty() const { return hogs.empty(); }

    /// nullopt when the window lies entirely outside the frame.
    static std::optional<HandObservation> make(const GrayPatch& frame, const HandWindow& nominal);
};

/// Best calibrated score of one ESVM over the shifted windows, 0.0 when all
/// shifts are rejected or the hand is unobservable.
double match_score(const ExemplarSvm& svm, const std::optional<HandObservation>& obs);

}  // namespace pedact
