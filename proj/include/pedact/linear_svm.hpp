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

namespace pedact {

struct LinearSvmOptions {
    double gap_tolerance = 1e-4;  // absolute duality gap
    int max_sweeps = 200;
    std::uint64_t shuffle_seed = 1;
};

struct LinearSvmResult {
    Eigen::VectorXd weights;  // excludes the bias component
    double bias = 0.0;
    double duality_gap = 0.0;
    int sweeps = 0;
};

/// L1-loss linear SVM trained by dual coordinate descent with per-example box
/// constraints (asymmetric class costs). The bias is handled by feature
/// augmentation with a constant 1.
///
/// rows of X are examples; labels are +-1; cost[i] is the upper bound on the
/// i-th dual variable.
LinearSvmResult train_linear_svm(const Eigen::MatrixXd& X, const Eigen::VectorXd& labels,
                                 const Eigen::VectorXd& cost, const LinearSvmOptions& opt = {});

}  // namespace pedact
