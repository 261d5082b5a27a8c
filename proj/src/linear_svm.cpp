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
#include "pedact/linear_svm.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

#include "pedact/common.hpp"

namespace pedact {

LinearSvmResult train_linear_svm(const Eigen::MatrixXd& X, const Eigen::VectorXd& labels,
                                 const Eigen::VectorXd& cost, const LinearSvmOptions& opt) {
    const Eigen::Index n = X.rows();
    const Eigen::Index d = X.cols();
    if (n == 0) throw std::invalid_argument("train_linear_svm: no examples");
    if (labels.size() != n || cost.size() != n) {
        throw std::invalid_argument("train_linear_svm: label/cost size mismatch");
    }

    // augmented bias column of ones folded into the norms and the weight vector
    Eigen::VectorXd qdiag(n);
    for (Eigen::Index i = 0; i < n; ++i) qdiag[i] = X.row(i).squaredNorm() + 1.0;

    Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
    double b = 0.0;
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(opt.shuffle_seed);

    auto duality_gap = [&]() {
        // primal: 0.5 w'w + sum C_i ξ_i ; dual: sum α - 0.5 w'w
        double wnorm = w.squaredNorm() + b * b;
        double hinge = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double margin = labels[i] * (X.row(i).dot(w) + b);
            hinge += cost[i] * std::max(0.0, 1.0 - margin);
        }
        double primal = 0.5 * wnorm + hinge;
        double dual = alpha.sum() - 0.5 * wnorm;
        return primal - dual;
    };

    LinearSvmResult result;
    double gap = duality_gap();
    int sweep = 0;
    while (sweep < opt.max_sweeps && gap > opt.gap_tolerance) {
        rng.shuffle(order);
        for (Eigen::Index idx : order) {
            double yi = labels[idx];
            double grad = yi * (X.row(idx).dot(w) + b) - 1.0;
            double pg = grad;
            if (alpha[idx] <= 0.0) pg = std::min(grad, 0.0);
            if (alpha[idx] >= cost[idx]) pg = std::max(grad, 0.0);
            if (std::abs(pg) < 1e-14) continue;
            double a_new = std::clamp(alpha[idx] - grad / qdiag[idx], 0.0, cost[idx]);
            double delta = (a_new - alpha[idx]) * yi;
            if (delta != 0.0) {
                w.noalias() += delta * X.row(idx).transpose();
                b += delta;
                alpha[idx] = a_new;
            }
        }
        ++sweep;
        gap = duality_gap();
    }

    result.weights = std::move(w);
    result.bias = b;
    result.duality_gap = gap;
    result.sweeps = sweep;
    return result;
}

}  // namespace pedact
