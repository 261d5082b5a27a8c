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
#include "pedact/exemplar_index.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pedact {

double feature_distance(const PoseFeature& a, const PoseFeature& b) {
    double d2 = 0.0;
    for (int i = 0; i < kPoseFeatureDim; ++i) {
        double d = a[i] - b[i];
        d2 += d * d;
    }
    return std::sqrt(d2);
}

PoseIndex PoseIndex::build(std::span<const Exemplar> exemplars) {
    if (exemplars.empty()) throw std::invalid_argument("PoseIndex: empty exemplar list");
    PoseIndex index;
    index.items_.reserve(exemplars.size());
    for (const Exemplar& e : exemplars) index.items_.push_back(&e);
    index.nodes_.reserve(exemplars.size());
    std::vector<std::int32_t> perm(exemplars.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<std::int32_t>(i);
    index.root_ = index.build_node(perm, 0);
    return index;
}

std::int32_t PoseIndex::build_node(std::span<std::int32_t> items, int depth) {
    if (items.empty()) return -1;
    int axis = depth % kPoseFeatureDim;
    std::size_t mid = items.size() / 2;
    std::nth_element(items.begin(), items.begin() + mid, items.end(),
                     [&](std::int32_t a, std::int32_t b) {
                         double va = items_[a]->pose_feature[axis];
                         double vb = items_[b]->pose_feature[axis];
                         if (va != vb) return va < vb;
                         return items_[a]->id < items_[b]->id;
                     });
    Node node;
    node.axis = axis;
    node.item = items[mid];
    std::int32_t self = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(node);
    std::int32_t left = build_node(items.subspan(0, mid), depth + 1);
    std::int32_t right = build_node(items.subspan(mid + 1), depth + 1);
    nodes_[self].left = left;
    nodes_[self].right = right;
    return self;
}

void PoseIndex::search(std::int32_t node_id, const PoseFeature& q, std::size_t k,
                       std::vector<Candidate>& heap) const {
    if (node_id < 0) return;
    const Node& node = nodes_[node_id];
    const Exemplar* ex = items_[node.item];

    double d2 = 0.0;
    for (int i = 0; i < kPoseFeatureDim; ++i) {
        double d = q[i] - ex->pose_feature[i];
        d2 += d * d;
    }
    Candidate cand{d2, ex->id, node.item};
    if (heap.size() < k) {
        heap.push_back(cand);
        std::push_heap(heap.begin(), heap.end());
    } else if (cand < heap.front()) {
        std::pop_heap(heap.begin(), heap.end());
        heap.back() = cand;
        std::push_heap(heap.begin(), heap.end());
    }

    double diff = q[node.axis] - ex->pose_feature[node.axis];
    std::int32_t near = diff < 0.0 ? node.left : node.right;
    std::int32_t far = diff < 0.0 ? node.right : node.left;
    search(near, q, k, heap);
    if (heap.size() < k || diff * diff <= heap.front().dist2) {
        search(far, q, k, heap);
    }
}

NeighborSet PoseIndex::query(const PoseFeature& feature, int k) const {
    if (k < 1 || static_cast<std::size_t>(k) > items_.size()) {
        throw std::invalid_argument("PoseIndex::query: k out of range");
    }
    std::vector<Candidate> heap;
    heap.reserve(static_cast<std::size_t>(k) + 1);
    search(root_, feature, static_cast<std::size_t>(k), heap);
    std::sort(heap.begin(), heap.end());

    NeighborSet out;
    out.reserve(heap.size());
    for (const Candidate& c : heap) {
        out.push_back({items_[c.item], std::sqrt(c.dist2)});
    }
    return out;
}

}  // namespace pedact
