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
#include <span>
#include <vector>

#include "pedact/esvm.hpp"
#include "pedact/gaze.hpp"
#include "pedact/pose_features.hpp"
#include "pedact/types.hpp"

namespace pedact {

/// One training pedestrian's bundle: pose feature, the two hand ESVMs with
/// their object labels, the gaze feature and the activity label.
struct Exemplar {
    std::uint32_t id = 0;
    PoseFeature pose_feature;
    ExemplarSvm left_svm;
    ExemplarSvm right_svm;
    ObjectLabel left_object = ObjectLabel::kNone;
    ObjectLabel right_object = ObjectLabel::kNone;
    GazeFeature gaze;
    ActivityLabel activity = ActivityLabel::kNone;
};

struct Neighbor {
    const Exemplar* exemplar = nullptr;
    double distance = 0.0;
};

/// Neighbors in ascending (distance, id) order.
using NeighborSet = std::vector<Neighbor>;

/// Exact K-d tree over the 23-dim pose features (median split, cycling
/// dimensions, Euclidean distance, distance ties broken by ascending id).
/// Immutable after build; concurrent queries are safe.
class PoseIndex {
public:
    static PoseIndex build(std::span<const Exemplar> exemplars);

    NeighborSet query(const PoseFeature& feature, int k) const;

    std::size_t size() const { return items_.size(); }

private:
    struct Node {
        int axis = -1;          // -1 marks a leaf
        std::int32_t item = -1;
        std::int32_t left = -1;
        std::int32_t right = -1;
    };

    struct Candidate {
        double dist2;
        std::uint32_t id;
        std::int32_t item;
        bool operator<(const Candidate& o) const {
            return dist2 != o.dist2 ? dist2 < o.dist2 : id < o.id;
        }
    };

    void search(std::int32_t node, const PoseFeature& q, std::size_t k,
                std::vector<Candidate>& heap) const;
    std::int32_t build_node(std::span<std::int32_t> items, int depth);

    std::vector<const Exemplar*> items_;
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
};

double feature_distance(const PoseFeature& a, const PoseFeature& b);

}  // namespace pedact
