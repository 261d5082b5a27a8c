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

#include <vector>

#include "pedact/common.hpp"
#include "pedact/esvm.hpp"

using namespace pedact;

namespace {

HogTemplate descriptor_from(const std::vector<double>& v) {
    HogTemplate t;
    t.values = v;
    return t;
}

HogTemplate random_descriptor(Rng& rng, int dim, double scale = 1.0) {
    HogTemplate t;
    t.values.resize(dim);
    for (double& v : t.values) v = scale * std::abs(rng.normal());
    return t;
}

ExemplarSvm make_svm(std::vector<double> w, double b, double pa = 1.0, double pb = 0.0) {
    ExemplarSvm svm;
    svm.weights = Eigen::Map<Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
    svm.bias = b;
    svm.platt_a = pa;
    svm.platt_b = pb;
    return svm;
}

}  // namespace

TEST_CASE("orthogonal positive separates after round 1") {
    // positive on axis 0, pool on the remaining axes
    Rng rng(8);
    const int dim = 16;
    HogTemplate positive = descriptor_from(std::vector<double>(dim, 0.0));
    positive.values[0] = 1.0;

    std::vector<HogTemplate> pool;
    for (int i = 0; i < 60; ++i) {
        HogTemplate t = random_descriptor(rng, dim, 0.5);
        t.values[0] = 0.0;
        pool.push_back(std::move(t));
    }
    ExemplarSvm svm = train_exemplar(positive, pool);
    CHECK(svm.raw_score(positive) > 0.0);
}

TEST_CASE("mining on a 10k pool: cache size is non-decreasing per round") {
    Rng rng(12);
    const int dim = 24;
    HogTemplate positive = random_descriptor(rng, dim);
    std::vector<HogTemplate> pool;
    pool.reserve(10000);
    for (int i = 0; i < 10000; ++i) pool.push_back(random_descriptor(rng, dim, 0.4));

    MiningConfig config;
    config.rounds = 3;
    config.initial_cache = 64;
    MiningTrace trace;
    train_exemplar(positive, pool, config, &trace);

    REQUIRE(!trace.cache_sizes.empty());
    CHECK(trace.cache_sizes.front() == 64);
    for (std::size_t r = 1; r < trace.cache_sizes.size(); ++r) {
        CHECK(trace.cache_sizes[r] >= trace.cache_sizes[r - 1]);
    }
    CHECK(trace.cache_sizes.back() <= config.cache_cap);

    MiningConfig capped;
    capped.cache_cap = 50;
    capped.initial_cache = 10;
    MiningTrace capped_trace;
    train_exemplar(positive, std::span<const HogTemplate>(pool.data(), 400), capped,
                   &capped_trace);
    CHECK(capped_trace.cache_sizes.back() <= 50);

    CHECK_THROWS_AS(train_exemplar(positive, std::span<const HogTemplate>{}, MiningConfig{}),
                    std::invalid_argument);
}

TEST_CASE("platt calibration on separated scores") {
    // logistic fit oracle on a 1-d score line: with 20 points per side the
    // smoothed targets are 21/22 and 1/22
    ExemplarSvm svm = make_svm({1.0}, 0.0);
    std::vector<HogTemplate> pos, neg;
    Rng rng(4);
    for (int i = 0; i < 20; ++i) {
        pos.push_back(descriptor_from({2.0 + 0.05 * i}));
        neg.push_back(descriptor_from({-2.0 - 0.05 * i}));
    }
    calibrate(svm, pos, neg);

    CHECK(svm.platt_a > 0.0);
    for (const auto& p : pos) CHECK(svm.calibrated_score(svm.raw_score(p)) > 0.9);
    for (const auto& n : neg) CHECK(svm.calibrated_score(svm.raw_score(n)) < 0.1);

    // monotone: higher raw -> higher calibrated
    double prev = svm.calibrated_score(-5.0);
    for (double raw = -4.5; raw <= 5.0; raw += 0.5) {
        double cur = svm.calibrated_score(raw);
        CHECK(cur > prev);
        prev = cur;
    }

    // sigmoid midpoint at raw = -b/a
    double mid = -svm.platt_b / svm.platt_a;
    CHECK(svm.calibrated_score(mid) == doctest::Approx(0.5));
}

TEST_CASE("calibrated scores stay strictly inside (0,1)") {
    ExemplarSvm svm = make_svm({1.0}, 0.0, 2.5, -0.3);
    for (double raw : {-1e6, -100.0, 0.0, 100.0, 1e6}) {
        double c = svm.calibrated_score(raw);
        CHECK(c > 0.0);
        CHECK(c < 1.0);
    }
}

TEST_CASE("calibrate input validation") {
    ExemplarSvm svm = make_svm({1.0}, 0.0);
    std::vector<HogTemplate> few = {descriptor_from({1.0})};
    std::vector<HogTemplate> enough;
    for (int i = 0; i < 6; ++i) enough.push_back(descriptor_from({static_cast<double>(i)}));
    CHECK_THROWS_AS(calibrate(svm, few, enough), std::invalid_argument);
    CHECK_THROWS_AS(calibrate(svm, enough, few), std::invalid_argument);
}

TEST_CASE("overlap gate rejects at the 0.4 boundary") {
    ExemplarSvm svm = make_svm({1.0, 0.0}, 0.5);
    HogTemplate patch = descriptor_from({1.0, 1.0});
    CHECK_FALSE(score_patch(svm, patch, 0.39).has_value());
    CHECK_FALSE(score_patch(svm, patch, 0.40).has_value());
    CHECK(score_patch(svm, patch, 0.41).has_value());
}

TEST_CASE("zero-weight svm scores its bias") {
    ExemplarSvm svm = make_svm({0.0, 0.0, 0.0}, -1.25);
    HogTemplate patch = descriptor_from({3.0, 4.0, 5.0});
    auto s = score_patch(svm, patch, 1.0);
    REQUIRE(s.has_value());
    CHECK(s->raw == doctest::Approx(-1.25));
}

TEST_CASE("descriptor length mismatch raises") {
    ExemplarSvm svm = make_svm({1.0, 2.0}, 0.0);
    HogTemplate patch = descriptor_from({1.0});
    CHECK_THROWS_AS(score_patch(svm, patch, 1.0), std::invalid_argument);
}

TEST_CASE("best_match equals the brute-force argmax") {
    Rng rng(77);
    const int dim = 12;
    std::vector<ExemplarSvm> svms;
    for (int i = 0; i < 50; ++i) {
        ExemplarSvm svm;
        svm.weights = Eigen::VectorXd::NullaryExpr(dim, [&](Eigen::Index) { return rng.normal(); });
        svm.bias = rng.normal();
        svm.platt_a = 0.5 + rng.uniform();
        svm.platt_b = rng.normal();
        svm.source_id = static_cast<std::uint32_t>(i);
        svms.push_back(std::move(svm));
    }
    std::vector<const ExemplarSvm*> ptrs;
    for (const auto& s : svms) ptrs.push_back(&s);

    for (int trial = 0; trial < 20; ++trial) {
        HogTemplate patch = random_descriptor(rng, dim);
        auto best = best_match(ptrs, patch);
        REQUIRE(best.has_value());

        double expected = -1.0;
        std::size_t expected_idx = 0;
        for (std::size_t i = 0; i < svms.size(); ++i) {
            double c = svms[i].calibrated_score(svms[i].raw_score(patch));
            if (c > expected) {
                expected = c;
                expected_idx = i;
            }
        }
        CHECK(best->index == expected_idx);
        CHECK(best->score.calibrated == doctest::Approx(expected));
    }
}

TEST_CASE("single-member ensemble wins; all-rejected yields no match") {
    ExemplarSvm only = make_svm({1.0}, 0.0);
    only.source_id = 42;
    only.object_label = ObjectLabel::kCellphone;
    const ExemplarSvm* ptrs[] = {&only};
    HogTemplate patch = descriptor_from({2.0});

    auto best = best_match(ptrs, patch);
    REQUIRE(best.has_value());
    CHECK(best->exemplar_id == 42);
    CHECK(best->label == ObjectLabel::kCellphone);

    auto rejected = best_match(ptrs, patch, 0.2);
    CHECK_FALSE(rejected.has_value());
}

TEST_CASE("subset max never exceeds the full ensemble max") {
    Rng rng(31);
    const int dim = 8;
    std::vector<ExemplarSvm> svms;
    for (int i = 0; i < 20; ++i) {
        ExemplarSvm svm;
        svm.weights = Eigen::VectorXd::NullaryExpr(dim, [&](Eigen::Index) { return rng.normal(); });
        svm.bias = rng.normal();
        svms.push_back(std::move(svm));
    }
    std::vector<const ExemplarSvm*> all;
    for (const auto& s : svms) all.push_back(&s);
    std::vector<const ExemplarSvm*> subset(all.begin(), all.begin() + 7);

    for (int trial = 0; trial < 50; ++trial) {
        HogTemplate patch = random_descriptor(rng, dim);
        auto full = best_match(all, patch);
        auto sub = best_match(subset, patch);
        REQUIRE(full.has_value());
        REQUIRE(sub.has_value());
        CHECK(sub->score.calibrated <= full->score.calibrated + 1e-15);
    }
}

TEST_CASE("label transfer follows the winner only") {
    ExemplarSvm winner = make_svm({1.0}, 1.0);
    winner.object_label = ObjectLabel::kCellphone;
    ExemplarSvm loser = make_svm({1.0}, -1.0);
    loser.object_label = ObjectLabel::kOther;

    const ExemplarSvm* ptrs[] = {&loser, &winner};
    HogTemplate patch = descriptor_from({1.0});
    auto best = best_match(ptrs, patch);
    REQUIRE(best.has_value());
    CHECK(best->label == ObjectLabel::kCellphone);

    // changing the loser's label must not change the output
    loser.object_label = ObjectLabel::kNone;
    auto again = best_match(ptrs, patch);
    REQUIRE(again.has_value());
    CHECK(again->label == ObjectLabel::kCellphone);
}
