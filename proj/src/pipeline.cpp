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
#include "pedact/pipeline.hpp"

#include <algorithm>

#include "pedact/common.hpp"

namespace pedact {

namespace {

// jitters applied to the positive window for Platt calibration:
// 8 shifts of +-2 px plus two +-5% rescales
struct Jitter {
    double dx, dy, scale;
};

constexpr Jitter kCalibrationJitters[10] = {
    {2, 0, 1.0},  {-2, 0, 1.0}, {0, 2, 1.0},   {0, -2, 1.0},  {2, 2, 1.0},
    {-2, -2, 1.0}, {2, -2, 1.0}, {-2, 2, 1.0}, {0, 0, 0.95}, {0, 0, 1.05},
};

std::vector<HogTemplate> calibration_positives(const GrayPatch& frame, const HandWindow& nominal) {
    std::vector<HogTemplate> out;
    out.reserve(10);
    for (const Jitter& j : kCalibrationJitters) {
        HandWindow w = nominal;
        w.center.x += j.dx;
        w.center.y += j.dy;
        w.side *= j.scale;
        try {
            out.push_back(hog(extract_patch(frame, w)));
        } catch (const DataError&) {
            // off-frame jitter; fall back to the nominal window below
        }
    }
    while (out.size() < 10) out.push_back(hog(extract_patch(frame, nominal)));
    return out;
}

}  // namespace

const GrayPatch* FrameCache::get(const std::string& relative_path) {
    if (relative_path.empty()) return nullptr;
    auto it = cache_.find(relative_path);
    if (it == cache_.end()) {
        auto img = std::make_unique<GrayPatch>(load_image(manifest_->resolve(relative_path)));
        it = cache_.emplace(relative_path, std::move(img)).first;
    }
    return it->second.get();
}

HandWindow nominal_hand_window(const PedestrianRecord& record, HandSide side, double hand_ratio,
                               double alpha) {
    Joint elbow = side == HandSide::kLeft ? kLeftElbow : kRightElbow;
    Joint wrist = side == HandSide::kLeft ? kLeftWrist : kRightWrist;
    ImagePoint hand =
        locate_hand(record.pose.joints[elbow], record.pose.joints[wrist], hand_ratio);
    return hand_window(record.box, hand, alpha, side);
}

std::vector<const PedestrianRecord*> select_records(const DatasetManifest& manifest,
                                                    std::span<const std::uint32_t> ids) {
    std::vector<const PedestrianRecord*> out;
    out.reserve(ids.size());
    for (std::uint32_t id : ids) {
        auto it = std::find_if(manifest.pedestrians.begin(), manifest.pedestrians.end(),
                               [&](const PedestrianRecord& r) { return r.id == id; });
        if (it == manifest.pedestrians.end()) {
            throw DataError("record id " + std::to_string(id) + " not present in the manifest");
        }
        out.push_back(&*it);
    }
    std::sort(out.begin(), out.end(),
              [](const PedestrianRecord* a, const PedestrianRecord* b) { return a->id < b->id; });
    return out;
}

TrainedModels train_models(const DatasetManifest& manifest,
                           std::span<const std::uint32_t> train_ids, const TrainConfig& config) {
    std::vector<const PedestrianRecord*> records = select_records(manifest, train_ids);
    if (records.empty()) throw DataError("train_models: no training records");

    FrameCache frames(manifest);
    for (const PedestrianRecord* r : records) {
        if (r->image_path.empty()) {
            throw DataError("train_models: record " + std::to_string(r->id) + " has no frame");
        }
        frames.get(r->image_path);  // preload: the cache is read-only once training runs
    }

    // shared pool of random non-hand windows from the training frames
    Rng pool_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<HogTemplate> pool;
    pool.reserve(config.negative_pool + config.calib_negatives);
    std::size_t wanted = config.negative_pool + config.calib_negatives;
    std::size_t attempts = 0;
    while (pool.size() < wanted && attempts < wanted * 20) {
        ++attempts;
        const PedestrianRecord* r = records[pool_rng.next() % records.size()];
        const GrayPatch* frame = frames.get(r->image_path);
        double side = config.window_alpha * r->box.h * pool_rng.uniform(0.8, 1.2);
        HandWindow w{{pool_rng.uniform(0.0, frame->width - 1.0),
                      pool_rng.uniform(0.0, frame->height - 1.0)},
                     side,
                     HandSide::kLeft};
        HandWindow left = nominal_hand_window(*r, HandSide::kLeft, config.hand_ratio,
                                              config.window_alpha);
        HandWindow right = nominal_hand_window(*r, HandSide::kRight, config.hand_ratio,
                                               config.window_alpha);
        if (intersection_over_union(w.rect(), left.rect()) >= 0.1 ||
            intersection_over_union(w.rect(), right.rect()) >= 0.1) {
            continue;  // too close to an annotated hand
        }
        try {
            pool.push_back(hog(extract_patch(*frame, w)));
        } catch (const DataError&) {
        }
    }
    if (pool.size() < wanted) throw DataError("train_models: could not fill the negative pool");

    std::span<const HogTemplate> mining_pool(pool.data(), config.negative_pool);
    std::span<const HogTemplate> calib_pool(pool.data() + config.negative_pool,
                                            config.calib_negatives);

    TrainedModels models;
    models.config = config;
    models.exemplars.resize(records.size());

    parallel_for(records.size(), [&](std::size_t i) {
        const PedestrianRecord& rec = *records[i];
        const GrayPatch* frame = frames.get(rec.image_path);
        Exemplar& ex = models.exemplars[i];
        ex.id = rec.id;
        ex.pose_feature = encode_pose(rec.box, rec.pose);
        ex.left_object = rec.left_object;
        ex.right_object = rec.right_object;
        ex.gaze = rec.gaze;
        ex.activity = rec.activity;

        for (HandSide side : {HandSide::kLeft, HandSide::kRight}) {
            HandWindow nominal =
                nominal_hand_window(rec, side, config.hand_ratio, config.window_alpha);
            HogTemplate positive = hog(extract_patch(*frame, nominal));
            ExemplarSvm svm = train_exemplar(positive, mining_pool, config.mining);
            svm.source_id = rec.id;
            svm.hand_side = side;
            svm.object_label = side == HandSide::kLeft ? rec.left_object : rec.right_object;
            auto positives = calibration_positives(*frame, nominal);
            calibrate(svm, positives, calib_pool);
            (side == HandSide::kLeft ? ex.left_svm : ex.right_svm) = std::move(svm);
        }
    });

    // leave-fold-out cue vectors for the late-fusion SVM
    std::map<std::uint32_t, const PedestrianRecord*> by_id;
    for (const PedestrianRecord* r : records) by_id[r->id] = r;
    CueFn cue_fn = [&](const Exemplar& target, const NeighborSet& neighbors) {
        const PedestrianRecord* rec = by_id.at(target.id);
        const GrayPatch* frame = frames.get(rec->image_path);
        return compute_cues(*rec, frame, neighbors, config);
    };
    models.fusion_examples = build_fusion_training(models.exemplars, config.k, config.folds,
                                                   cue_fn);
    models.fusion = train_fusion(models.fusion_examples, CueMask{}, config.fusion_c);
    return models;
}

HandScores score_hand_neighbors(const PedestrianRecord& record, const GrayPatch* frame,
                                const NeighborSet& neighbors, const TrainConfig& config) {
    HandScores scores;
    scores.left.assign(neighbors.size(), 0.0);
    scores.right.assign(neighbors.size(), 0.0);
    if (!frame) return scores;  // no image: hand evidence stays 0

    std::optional<HandObservation> left_obs;
    std::optional<HandObservation> right_obs;
    try {
        left_obs = HandObservation::make(
            *frame, nominal_hand_window(record, HandSide::kLeft, config.hand_ratio,
                                        config.window_alpha));
    } catch (const DataError&) {
    }
    try {
        right_obs = HandObservation::make(
            *frame, nominal_hand_window(record, HandSide::kRight, config.hand_ratio,
                                        config.window_alpha));
    } catch (const DataError&) {
    }

    for (std::size_t i = 0; i < neighbors.size(); ++i) {
        scores.left[i] = match_score(neighbors[i].exemplar->left_svm, left_obs);
        scores.right[i] = match_score(neighbors[i].exemplar->right_svm, right_obs);
    }
    return scores;
}

CueScores compute_cues(const PedestrianRecord& record, const GrayPatch* frame,
                       const NeighborSet& neighbors, const TrainConfig& config) {
    CueScores cues;
    HandScores hands = score_hand_neighbors(record, frame, neighbors, config);
    for (int y = 0; y < kActivityCount; ++y) {
        auto label = static_cast<ActivityLabel>(y);
        cues.gaze[y] = gaze_likelihood(record.gaze, neighbors, label);
        cues.hand[y] = hand_likelihood(hands.left, hands.right, neighbors, label);
    }
    cues.prior = pose_prior_all(neighbors);
    return cues;
}

std::vector<ClassifyOutput> classify_records(const DatasetManifest& manifest,
                                             std::span<const PedestrianRecord> records,
                                             const TrainedModels& models, int k) {
    if (k < 1 || static_cast<std::size_t>(k) > models.exemplars.size()) {
        throw DataError("classify: k must be between 1 and the exemplar count (" +
                        std::to_string(models.exemplars.size()) + ")");
    }
    PoseIndex index = PoseIndex::build(models.exemplars);
    FrameCache frames(manifest);

    std::vector<ClassifyOutput> out(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const PedestrianRecord& rec = records[i];
        PoseFeature feature = encode_pose(rec.box, rec.pose);
        NeighborSet neighbors = index.query(feature, k);
        CueScores cues = compute_cues(rec, frames.get(rec.image_path), neighbors, models.config);
        out[i] = {rec.id, rec.activity, map_classify(cues), fusion_classify(models.fusion, cues),
                  cues};
    }
    return out;
}

std::vector<Exemplar> assemble_exemplars(const DatasetManifest& manifest,
                                         std::span<const std::uint32_t> ids,
                                         std::span<const ExemplarSvm> svms) {
    std::vector<const PedestrianRecord*> records = select_records(manifest, ids);
    std::map<std::pair<std::uint32_t, int>, const ExemplarSvm*> by_key;
    for (const ExemplarSvm& s : svms) {
        by_key[{s.source_id, static_cast<int>(s.hand_side)}] = &s;
    }

    std::vector<Exemplar> out;
    out.reserve(records.size());
    for (const PedestrianRecord* rec : records) {
        auto left = by_key.find({rec->id, static_cast<int>(HandSide::kLeft)});
        auto right = by_key.find({rec->id, static_cast<int>(HandSide::kRight)});
        if (left == by_key.end() || right == by_key.end()) {
            throw DataError("ensemble file lacks SVMs for record " + std::to_string(rec->id));
        }
        Exemplar ex;
        ex.id = rec->id;
        ex.pose_feature = encode_pose(rec->box, rec->pose);
        ex.left_svm = *left->second;
        ex.right_svm = *right->second;
        ex.left_object = rec->left_object;
        ex.right_object = rec->right_object;
        ex.gaze = rec->gaze;
        ex.activity = rec->activity;
        out.push_back(std::move(ex));
    }
    return out;
}

}  // namespace pedact
