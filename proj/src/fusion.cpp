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
#include "pedact/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "pedact/common.hpp"
#include "pedact/linear_svm.hpp"

namespace pedact {

double gaze_likelihood(const GazeFeature& query, const NeighborSet& neighbors, ActivityLabel y) {
    if (neighbors.empty()) throw std::invalid_argument("gaze_likelihood: empty neighbor set");
    bool any = false;
    double best = 0.0;
    for (const Neighbor& n : neighbors) {
        if (n.exemplar->activity != y) continue;
        double c = cosine_similarity(query, n.exemplar->gaze);
        if (!any || c > best) best = c;
        any = true;
    }
    return any ? best : 0.0;  // empty max over the class indicator is 0
}

double pose_prior(const NeighborSet& neighbors, ActivityLabel y) {
    if (neighbors.empty()) throw std::invalid_argument("pose_prior: empty neighbor set");
    std::size_t count = 0;
    for (const Neighbor& n : neighbors) {
        if (n.exemplar->activity == y) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(neighbors.size());
}

std::array<double, kActivityCount> pose_prior_all(const NeighborSet& neighbors) {
    std::array<double, kActivityCount> out{};
    for (int y = 0; y < kActivityCount; ++y) {
        out[y] = pose_prior(neighbors, static_cast<ActivityLabel>(y));
    }
    return out;
}

double hand_likelihood(std::span<const double> left_scores, std::span<const double> right_scores,
                       const NeighborSet& neighbors, ActivityLabel y) {
    if (left_scores.size() != neighbors.size() || right_scores.size() != neighbors.size()) {
        throw std::invalid_argument("hand_likelihood: score/neighbor size mismatch");
    }
    if (y == ActivityLabel::kNone) {
        double best_left = 0.0, best_right = 0.0;
        for (std::size_t i = 0; i < neighbors.size(); ++i) {
            if (neighbors[i].exemplar->activity != ActivityLabel::kNone) continue;
            best_left = std::max(best_left, left_scores[i]);
            best_right = std::max(best_right, right_scores[i]);
        }
        return std::min(best_left, best_right);
    }
    double best = 0.0;
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
        const Exemplar* e = neighbors[i].exemplar;
        if (e->activity != y) continue;
        double s = 0.0;
        if (e->left_object == ObjectLabel::kCellphone) s += left_scores[i];
        if (e->right_object == ObjectLabel::kCellphone) s += right_scores[i];
        best = std::max(best, s);
    }
    return best;
}

MapResult map_classify(const CueScores& cues) {
    MapResult r;
    double total = 0.0;
    for (int y = 0; y < kActivityCount; ++y) {
        r.posterior[y] = cues.gaze[y] * cues.hand[y] * cues.prior[y];
        total += r.posterior[y];
    }
    const auto& basis = total > 0.0 ? r.posterior : cues.prior;
    int best = 0;
    for (int y = 1; y < kActivityCount; ++y) {
        if (basis[y] > basis[best]) best = y;  // ties keep the smaller index
    }
    r.label = static_cast<ActivityLabel>(best);
    return r;
}

FusionSvm train_fusion(std::span<const FusionExample> examples, const CueMask& mask, double c) {
    if (examples.empty()) throw std::invalid_argument("train_fusion: no examples");
    const Eigen::Index n = static_cast<Eigen::Index>(examples.size());

    FusionSvm model;
    model.mask = mask;

    Eigen::MatrixXd X(n, 9);
    for (Eigen::Index i = 0; i < n; ++i) {
        auto v = mask.apply(examples[i].cues);
        for (int j = 0; j < 9; ++j) X(i, j) = v[j];
    }
    for (int j = 0; j < 9; ++j) {
        double mean = X.col(j).mean();
        double var = (X.col(j).array() - mean).square().sum() / n;
        double scale = var > 1e-12 ? std::sqrt(var) : 1.0;
        model.mean[j] = mean;
        model.scale[j] = scale;
        X.col(j) = (X.col(j).array() - mean) / scale;
    }

    Eigen::VectorXd cost = Eigen::VectorXd::Constant(n, c);
    LinearSvmOptions opt;
    opt.max_sweeps = 1000;
    for (int y = 0; y < kActivityCount; ++y) {
        Eigen::VectorXd labels(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            labels[i] = examples[i].label == static_cast<ActivityLabel>(y) ? 1.0 : -1.0;
        }
        LinearSvmResult r = train_linear_svm(X, labels, cost, opt);
        for (int j = 0; j < 9; ++j) model.classifiers[y].weights[j] = r.weights[j];
        model.classifiers[y].bias = r.bias;
    }
    return model;
}

FusionResult fusion_classify(const FusionSvm& svm, const CueScores& cues) {
    auto v = svm.mask.apply(cues.flatten());
    std::array<double, 9> z{};
    for (int j = 0; j < 9; ++j) z[j] = (v[j] - svm.mean[j]) / svm.scale[j];

    FusionResult r;
    for (int y = 0; y < kActivityCount; ++y) {
        double m = svm.classifiers[y].bias;
        for (int j = 0; j < 9; ++j) m += svm.classifiers[y].weights[j] * z[j];
        r.margins[y] = m;
    }
    int best = 0;
    for (int y = 1; y < kActivityCount; ++y) {
        if (r.margins[y] > r.margins[best]) best = y;
    }
    r.label = static_cast<ActivityLabel>(best);
    return r;
}

int fusion_fold_of(std::size_t rank, int folds) {
    return static_cast<int>(rank % static_cast<std::size_t>(folds));
}

std::vector<FusionExample> build_fusion_training(std::span<const Exemplar> exemplars, int k,
                                                 int folds, const CueFn& cue_fn) {
    if (folds < 2) throw std::invalid_argument("build_fusion_training: need at least 2 folds");
    if (exemplars.size() < static_cast<std::size_t>(folds)) {
        throw std::invalid_argument("build_fusion_training: fewer exemplars than folds");
    }

    std::vector<std::size_t> order(exemplars.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return exemplars[a].id < exemplars[b].id;
    });

    std::vector<int> fold_of(exemplars.size());
    std::vector<std::size_t> fold_sizes(folds, 0);
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        int f = fusion_fold_of(rank, folds);
        fold_of[order[rank]] = f;
        fold_sizes[f]++;
    }
    std::size_t smallest_complement = exemplars.size();
    for (int f = 0; f < folds; ++f) {
        smallest_complement = std::min(smallest_complement, exemplars.size() - fold_sizes[f]);
    }
    if (static_cast<std::size_t>(k) > smallest_complement) {
        throw std::invalid_argument("build_fusion_training: k exceeds the smallest fold complement");
    }

    // a fold without one of the classes is tolerable but worth flagging
    for (int f = 0; f < folds; ++f) {
        std::array<bool, kActivityCount> seen{};
        for (std::size_t i = 0; i < exemplars.size(); ++i) {
            if (fold_of[i] == f) seen[static_cast<int>(exemplars[i].activity)] = true;
        }
        for (int y = 0; y < kActivityCount; ++y) {
            if (!seen[y]) {
                std::cerr << "warning: fusion fold " << f << " has no exemplar of class "
                          << to_string(static_cast<ActivityLabel>(y)) << "\n";
            }
        }
    }

    std::vector<FusionExample> out(exemplars.size());
    for (int f = 0; f < folds; ++f) {
        std::vector<Exemplar> complement;
        complement.reserve(exemplars.size() - fold_sizes[f]);
        for (std::size_t i = 0; i < exemplars.size(); ++i) {
            if (fold_of[i] != f) complement.push_back(exemplars[i]);
        }
        PoseIndex index = PoseIndex::build(complement);
        for (std::size_t i = 0; i < exemplars.size(); ++i) {
            if (fold_of[i] != f) continue;
            NeighborSet neighbors = index.query(exemplars[i].pose_feature, k);
            CueScores cues = cue_fn(exemplars[i], neighbors);
            out[i] = {cues.flatten(), exemplars[i].activity, exemplars[i].id};
        }
    }
    return out;
}

SequentialClassifier::SequentialClassifier(int refresh_period, HandFn hand_fn,
                                           const FusionSvm* fusion)
    : refresh_period_(refresh_period), hand_fn_(std::move(hand_fn)), fusion_(fusion) {
    if (refresh_period_ < 1) {
        throw std::invalid_argument("SequentialClassifier: refresh period must be >= 1");
    }
}

ActivityLabel SequentialClassifier::classify_frame(int frame,
                                                   const std::array<double, kActivityCount>& gaze,
                                                   const std::array<double, kActivityCount>& prior) {
    if (last_refresh_ < 0 || frame - last_refresh_ >= refresh_period_) {
        cached_hand_ = hand_fn_(frame);
        last_refresh_ = frame;
        ++invocations_;
    }
    CueScores cues;
    cues.gaze = gaze;
    cues.hand = cached_hand_;
    cues.prior = prior;
    return fusion_ ? fusion_classify(*fusion_, cues).label : map_classify(cues).label;
}

}  // namespace pedact
