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

#include "pedact/common.hpp"
#include "pedact/fusion.hpp"

using namespace pedact;

namespace {

GazeFeature unit_gaze(int hot) {
    GazeFeature g;
    g.values[hot] = 1.0;
    return g;
}

GazeFeature random_gaze(Rng& rng) {
    GazeFeature g;
    for (double& v : g.values) v = rng.uniform();
    return g;
}

std::vector<Exemplar> gaze_exemplars(std::vector<std::pair<GazeFeature, ActivityLabel>> entries) {
    std::vector<Exemplar> out(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        out[i].id = static_cast<std::uint32_t>(i);
        out[i].gaze = entries[i].first;
        out[i].activity = entries[i].second;
    }
    return out;
}

NeighborSet as_neighbors(const std::vector<Exemplar>& exemplars) {
    NeighborSet n;
    for (const auto& e : exemplars) n.push_back({&e, 0.0});
    return n;
}

}  // namespace

TEST_CASE("identical gaze in the same class scores 1") {
    GazeFeature q = unit_gaze(5);
    auto ex = gaze_exemplars({{q, ActivityLabel::kTexting}});
    CHECK(gaze_likelihood(q, as_neighbors(ex), ActivityLabel::kTexting) == doctest::Approx(1.0));
}

TEST_CASE("no neighbor of the class yields 0") {
    GazeFeature q = unit_gaze(0);
    auto ex = gaze_exemplars({{unit_gaze(1), ActivityLabel::kNone}});
    CHECK(gaze_likelihood(q, as_neighbors(ex), ActivityLabel::kPhoneCall) == doctest::Approx(0.0));
}

TEST_CASE("cosine arithmetic on a simple pair") {
    GazeFeature q = unit_gaze(0);
    GazeFeature n;
    n.values[0] = 1.0;
    n.values[1] = 1.0;
    auto ex = gaze_exemplars({{n, ActivityLabel::kNone}});
    CHECK(gaze_likelihood(q, as_neighbors(ex), ActivityLabel::kNone) ==
          doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("scale invariance of the query") {
    Rng rng(6);
    GazeFeature q = random_gaze(rng);
    auto ex = gaze_exemplars({{random_gaze(rng), ActivityLabel::kNone},
                              {random_gaze(rng), ActivityLabel::kTexting},
                              {random_gaze(rng), ActivityLabel::kNone}});
    NeighborSet n = as_neighbors(ex);
    double base = gaze_likelihood(q, n, ActivityLabel::kNone);
    for (double c : {1e-6, 0.5, 3.0, 1e6}) {
        GazeFeature scaled = q;
        for (double& v : scaled.values) v *= c;
        CHECK(std::abs(gaze_likelihood(scaled, n, ActivityLabel::kNone) - base) < 1e-12);
    }
}

TEST_CASE("other-class neighbors never change the score; same-class is monotone") {
    Rng rng(14);
    GazeFeature q = random_gaze(rng);
    std::vector<std::pair<GazeFeature, ActivityLabel>> entries = {
        {random_gaze(rng), ActivityLabel::kTexting}};
    auto ex = gaze_exemplars(entries);
    double base = gaze_likelihood(q, as_neighbors(ex), ActivityLabel::kTexting);

    // adding a different-class neighbor leaves texting untouched
    entries.push_back({random_gaze(rng), ActivityLabel::kPhoneCall});
    ex = gaze_exemplars(entries);
    CHECK(gaze_likelihood(q, as_neighbors(ex), ActivityLabel::kTexting) == doctest::Approx(base));

    // adding same-class neighbors can only raise the max
    double prev = base;
    for (int i = 0; i < 10; ++i) {
        entries.push_back({random_gaze(rng), ActivityLabel::kTexting});
        ex = gaze_exemplars(entries);
        double cur = gaze_likelihood(q, as_neighbors(ex), ActivityLabel::kTexting);
        CHECK(cur >= prev - 1e-15);
        prev = cur;
    }
}

TEST_CASE("zero-norm vectors are rejected") {
    GazeFeature zero;
    GazeFeature ok = unit_gaze(3);
    CHECK_THROWS_AS(cosine_similarity(zero, ok), std::invalid_argument);
    CHECK_THROWS_AS(validate_gaze(zero, "test"), DataError);

    GazeFeature negative = ok;
    negative.values[7] = -0.5;
    CHECK_THROWS_AS(validate_gaze(negative, "test"), DataError);
}

TEST_CASE("empty neighbor set is a precondition violation") {
    GazeFeature q = unit_gaze(0);
    NeighborSet empty;
    CHECK_THROWS_AS(gaze_likelihood(q, empty, ActivityLabel::kNone), std::invalid_argument);
}
