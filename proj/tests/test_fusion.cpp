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

#include <algorithm>
#include <set>

#include "pedact/common.hpp"
#include "pedact/fusion.hpp"

using namespace pedact;

namespace {

std::vector<Exemplar> labeled_exemplars(const std::vector<ActivityLabel>& labels) {
    std::vector<Exemplar> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out[i].id = static_cast<std::uint32_t>(i);
        out[i].activity = labels[i];
        out[i].gaze.values[0] = 1.0;
    }
    return out;
}

NeighborSet as_neighbors(const std::vector<Exemplar>& exemplars) {
    NeighborSet n;
    for (const auto& e : exemplars) n.push_back({&e, 0.0});
    return n;
}

}  // namespace

TEST_CASE("pose prior counts labels") {
    auto ex = labeled_exemplars({ActivityLabel::kNone, ActivityLabel::kNone,
                                 ActivityLabel::kTexting, ActivityLabel::kPhoneCall});
    NeighborSet n = as_neighbors(ex);
    CHECK(pose_prior(n, ActivityLabel::kNone) == doctest::Approx(0.5));
    CHECK(pose_prior(n, ActivityLabel::kTexting) == doctest::Approx(0.25));
    CHECK(pose_prior(n, ActivityLabel::kPhoneCall) == doctest::Approx(0.25));
}

TEST_CASE("pose prior is a probability vector for random neighbor sets") {
    Rng rng(55);
    for (int trial = 0; trial < 300; ++trial) {
        int k = rng.uniform_int(1, 40);
        std::vector<ActivityLabel> labels;
        for (int i = 0; i < k; ++i) {
            labels.push_back(static_cast<ActivityLabel>(rng.uniform_int(0, 2)));
        }
        auto ex = labeled_exemplars(labels);
        auto prior = pose_prior_all(as_neighbors(ex));
        double sum = 0.0;
        for (double p : prior) {
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            sum += p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("all neighbors of one class give prior 1") {
    auto ex = labeled_exemplars(std::vector<ActivityLabel>(9, ActivityLabel::kTexting));
    CHECK(pose_prior(as_neighbors(ex), ActivityLabel::kTexting) == doctest::Approx(1.0));
}

TEST_CASE("hand likelihood for the none class takes the min of per-hand maxima") {
    auto ex = labeled_exemplars({ActivityLabel::kNone, ActivityLabel::kNone,
                                 ActivityLabel::kTexting});
    NeighborSet n = as_neighbors(ex);
    std::vector<double> left = {0.9, 0.4, 0.99};
    std::vector<double> right = {0.1, 0.2, 0.99};
    // class-0 maxima: left 0.9, right 0.2 -> min 0.2
    CHECK(hand_likelihood(left, right, n, ActivityLabel::kNone) == doctest::Approx(0.2));
}

TEST_CASE("hand likelihood for phone classes gates on the cellphone object") {
    auto ex = labeled_exemplars({ActivityLabel::kTexting});
    ex[0].left_object = ObjectLabel::kCellphone;
    ex[0].right_object = ObjectLabel::kNone;
    NeighborSet n = as_neighbors(ex);
    std::vector<double> left = {0.7};
    std::vector<double> right = {0.5};
    // right term zeroed by the object indicator
    CHECK(hand_likelihood(left, right, n, ActivityLabel::kTexting) == doctest::Approx(0.7));

    ex[0].right_object = ObjectLabel::kCellphone;
    NeighborSet n2 = as_neighbors(ex);
    CHECK(hand_likelihood(left, right, n2, ActivityLabel::kTexting) == doctest::Approx(1.2));
}

TEST_CASE("hand likelihood with no class member is 0") {
    auto ex = labeled_exemplars({ActivityLabel::kNone});
    NeighborSet n = as_neighbors(ex);
    std::vector<double> scores = {0.9};
    CHECK(hand_likelihood(scores, scores, n, ActivityLabel::kTexting) == doctest::Approx(0.0));
}

TEST_CASE("hand likelihood for none is bounded by the global per-hand maxima") {
    Rng rng(88);
    for (int trial = 0; trial < 200; ++trial) {
        int k = rng.uniform_int(1, 30);
        std::vector<ActivityLabel> labels;
        std::vector<double> left(k), right(k);
        for (int i = 0; i < k; ++i) {
            labels.push_back(static_cast<ActivityLabel>(rng.uniform_int(0, 2)));
            left[i] = rng.uniform();
            right[i] = rng.uniform();
        }
        auto ex = labeled_exemplars(labels);
        NeighborSet n = as_neighbors(ex);

        double max_left = *std::max_element(left.begin(), left.end());
        double max_right = *std::max_element(right.begin(), right.end());
        double bound = std::min(max_left, max_right);
        CHECK(hand_likelihood(left, right, n, ActivityLabel::kNone) <= bound + 1e-15);
    }
}

TEST_CASE("map_classify multiplies cues and falls back to the prior") {
    CueScores cues;
    cues.gaze = {1, 1, 1};
    cues.hand = {1, 1, 1};
    cues.prior = {0.2, 0.5, 0.3};
    CHECK(map_classify(cues).label == ActivityLabel::kTexting);

    // all-zero posterior -> prior argmax
    cues.hand = {0, 0, 0};
    CHECK(map_classify(cues).label == ActivityLabel::kTexting);

    // exact posterior tie -> smaller index
    cues.gaze = {1, 1, 1};
    cues.hand = {1, 1, 1};
    cues.prior = {0.4, 0.4, 0.2};
    CHECK(map_classify(cues).label == ActivityLabel::kNone);
}

TEST_CASE("map_classify equals brute force and is scale invariant") {
    Rng rng(66);
    for (int trial = 0; trial < 2000; ++trial) {
        CueScores cues;
        for (int y = 0; y < 3; ++y) {
            cues.gaze[y] = rng.uniform();
            cues.hand[y] = rng.uniform();
            cues.prior[y] = rng.uniform();
        }
        MapResult got = map_classify(cues);

        int best = 0;
        double best_val = -1;
        for (int y = 0; y < 3; ++y) {
            double v = cues.gaze[y] * cues.hand[y] * cues.prior[y];
            if (v > best_val) {
                best_val = v;
                best = y;
            }
        }
        CHECK(static_cast<int>(got.label) == best);

        CueScores scaled = cues;
        double c = rng.uniform(0.01, 100.0);
        for (int y = 0; y < 3; ++y) scaled.hand[y] *= c;
        CHECK(map_classify(scaled).label == got.label);
    }
}

TEST_CASE("fusion svm with zero weights picks the bias argmax") {
    FusionSvm svm;
    svm.scale.fill(1.0);
    svm.classifiers[0].bias = 1.0;
    svm.classifiers[1].bias = 0.0;
    svm.classifiers[2].bias = 0.0;
    CueScores cues;
    CHECK(fusion_classify(svm, cues).label == ActivityLabel::kNone);
}

TEST_CASE("fusion svm separates linearly separable cue clusters") {
    Rng rng(9);
    std::vector<FusionExample> examples;
    for (int i = 0; i < 90; ++i) {
        int cls = i % 3;
        FusionExample e;
        e.label = static_cast<ActivityLabel>(cls);
        e.id = static_cast<std::uint32_t>(i);
        for (int j = 0; j < 9; ++j) e.cues[j] = 0.05 * rng.uniform();
        e.cues[cls] += 2.0;  // well-separated clusters on the gaze block
        examples.push_back(e);
    }
    FusionSvm svm = train_fusion(examples);

    int correct = 0;
    for (const auto& e : examples) {
        CueScores cues;
        for (int y = 0; y < 3; ++y) {
            cues.gaze[y] = e.cues[y];
            cues.hand[y] = e.cues[3 + y];
            cues.prior[y] = e.cues[6 + y];
        }
        if (fusion_classify(svm, cues).label == e.label) ++correct;
    }
    CHECK(correct == 90);
}

TEST_CASE("cue masks zero the excluded blocks") {
    CueMask pose_only{false, false, true};
    std::array<double, 9> v{1, 2, 3, 4, 5, 6, 7, 8, 9};
    auto masked = pose_only.apply(v);
    for (int i = 0; i < 6; ++i) CHECK(masked[i] == 0.0);
    for (int i = 6; i < 9; ++i) CHECK(masked[i] == v[i]);
}

TEST_CASE("build_fusion_training leaves the target's fold out") {
    Rng rng(10);
    std::vector<Exemplar> exemplars(40);
    for (int i = 0; i < 40; ++i) {
        exemplars[i].id = static_cast<std::uint32_t>(i);
        exemplars[i].activity = static_cast<ActivityLabel>(i % 3);
        for (double& v : exemplars[i].pose_feature.values) v = rng.uniform();
        exemplars[i].gaze.values[0] = 1.0;
    }

    // ids are 0..39 in sorted order, so fold = id % folds
    const int folds = 5, k = 8;
    std::vector<std::set<std::uint32_t>> fold_ids(folds);
    for (int i = 0; i < 40; ++i) fold_ids[fusion_fold_of(i, folds)].insert(exemplars[i].id);

    int checked = 0;
    CueFn cue_fn = [&](const Exemplar& target, const NeighborSet& neighbors) {
        REQUIRE(neighbors.size() == k);
        int target_fold = fusion_fold_of(target.id, folds);
        for (const Neighbor& n : neighbors) {
            CHECK(fold_ids[target_fold].count(n.exemplar->id) == 0);
        }
        ++checked;
        CueScores cues;
        cues.prior = pose_prior_all(neighbors);
        return cues;
    };
    auto examples = build_fusion_training(exemplars, k, folds, cue_fn);
    CHECK(checked == 40);
    CHECK(examples.size() == 40);

    // prior triple sums to 1 in every emitted row, and the layout is
    // [gaze, hand, prior]
    for (const auto& e : examples) {
        CHECK(e.cues[6] + e.cues[7] + e.cues[8] == doctest::Approx(1.0));
    }

    CHECK_THROWS_AS(build_fusion_training(exemplars, 33, folds, cue_fn), std::invalid_argument);
}

TEST_CASE("sequential classifier caches hand evidence for the refresh period") {
    int calls = 0;
    SequentialClassifier seq(50, [&](int) {
        ++calls;
        return std::array<double, 3>{0.1, 0.9, 0.1};
    });

    std::array<double, 3> gaze{1, 1, 1};
    std::array<double, 3> prior{0.4, 0.3, 0.3};
    std::vector<ActivityLabel> labels;
    for (int t = 0; t < 300; ++t) labels.push_back(seq.classify_frame(t, gaze, prior));

    CHECK(calls == 6);  // ceil(300 / 50)
    CHECK(seq.hand_invocations() == 6);
    for (auto l : labels) CHECK(l == labels.front());  // constant cues -> constant label
}

TEST_CASE("sequential classifier flips exactly when the prior flips") {
    SequentialClassifier seq(50, [&](int) { return std::array<double, 3>{1.0, 1.0, 1.0}; });
    std::array<double, 3> gaze{1, 1, 1};
    for (int t = 0; t < 120; ++t) {
        std::array<double, 3> prior =
            t < 60 ? std::array<double, 3>{0.8, 0.1, 0.1} : std::array<double, 3>{0.1, 0.8, 0.1};
        ActivityLabel label = seq.classify_frame(t, gaze, prior);
        CHECK(label == (t < 60 ? ActivityLabel::kNone : ActivityLabel::kTexting));
    }
}
