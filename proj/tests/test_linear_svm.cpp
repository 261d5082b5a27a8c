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
#include "pedact/linear_svm.hpp"

using namespace pedact;

TEST_CASE("separable 2-d problem reaches zero hinge loss") {
    // two clusters along the first axis
    Eigen::MatrixXd X(8, 2);
    Eigen::VectorXd y(8);
    for (int i = 0; i < 4; ++i) {
        X.row(i) << 2.0 + 0.2 * i, 0.1 * i;
        y[i] = 1.0;
        X.row(4 + i) << -2.0 - 0.2 * i, -0.1 * i;
        y[4 + i] = -1.0;
    }
    Eigen::VectorXd c = Eigen::VectorXd::Constant(8, 10.0);
    LinearSvmResult r = train_linear_svm(X, y, c);

    for (int i = 0; i < 8; ++i) {
        double margin = y[i] * (X.row(i).dot(r.weights) + r.bias);
        CHECK(margin >= 1.0 - 1e-3);
    }
    CHECK(r.duality_gap <= 1e-4);
}

TEST_CASE("duality gap decreases below tolerance on random data") {
    Rng rng(17);
    Eigen::MatrixXd X(40, 5);
    Eigen::VectorXd y(40), c(40);
    for (int i = 0; i < 40; ++i) {
        y[i] = i < 20 ? 1.0 : -1.0;
        for (int j = 0; j < 5; ++j) X(i, j) = rng.normal() + (i < 20 ? 0.7 : -0.7);
        c[i] = y[i] > 0 ? 5.0 : 0.5;
    }
    LinearSvmOptions opt;
    opt.max_sweeps = 2000;
    LinearSvmResult r = train_linear_svm(X, y, c, opt);
    CHECK(r.duality_gap <= opt.gap_tolerance);
}

TEST_CASE("asymmetric cost pins the single positive") {
    // exemplar-style setup: one positive, many near negatives
    Rng rng(3);
    Eigen::MatrixXd X(21, 10);
    Eigen::VectorXd y(21), c(21);
    for (int j = 0; j < 10; ++j) X(0, j) = rng.normal();
    X.row(0).normalize();
    y[0] = 1.0;
    c[0] = 50.0;
    for (int i = 1; i < 21; ++i) {
        for (int j = 0; j < 10; ++j) X(i, j) = rng.normal() * 0.3;
        y[i] = -1.0;
        c[i] = 0.01;
    }
    LinearSvmResult r = train_linear_svm(X, y, c);
    double pos_margin = X.row(0).dot(r.weights) + r.bias;
    CHECK(pos_margin > 0.0);
}

TEST_CASE("input validation") {
    Eigen::MatrixXd X(0, 3);
    Eigen::VectorXd y(0), c(0);
    CHECK_THROWS_AS(train_linear_svm(X, y, c), std::invalid_argument);

    Eigen::MatrixXd X2(2, 2);
    X2.setOnes();
    Eigen::VectorXd y2(1);
    Eigen::VectorXd c2(2);
    CHECK_THROWS_AS(train_linear_svm(X2, y2, c2), std::invalid_argument);
}
