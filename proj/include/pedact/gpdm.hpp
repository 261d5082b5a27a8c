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
#include <span>
#include <string>

#include "pedact/pose_features.hpp"

namespace pedact {

inline constexpr int kLatentDim = 2;
inline constexpr double kGpdmJitter = 1e-6;

/// RBF + white noise kernel of the latent -> observation map.
struct ObsHypers {
    double signal_var = 1.0;
    double length_scale = 1.0;
    double noise_var = 0.1;
};

/// RBF + linear + white noise kernel of the latent dynamics.
struct DynHypers {
    double signal_var = 1.0;
    double length_scale = 1.0;
    double linear_var = 1.0;
    double noise_var = 0.1;
};

struct GpdmConfig {
    int max_iterations = 500;
    double gradient_tolerance = 1e-5;
    double jitter = kGpdmJitter;
};

/// Latent trajectory, kernel hyperparameters and cached solves for one
/// activity/viewpoint model. Immutable after finalize(); predictions are
/// safe for concurrent use.
struct GpdmModel {
    std::string tag;
    Eigen::MatrixXd latents;       // T x 2
    Eigen::MatrixXd observations;  // T x D, raw (mean derived)
    ObsHypers map_hyper;
    DynHypers dyn_hyper;

    // derived by finalize()
    Eigen::RowVectorXd data_mean;
    Eigen::MatrixXd obs_kinv;
    Eigen::MatrixXd obs_alpha;  // obs_kinv * centered observations
    Eigen::MatrixXd dyn_kinv;
    Eigen::MatrixXd dyn_alpha;  // dyn_kinv * latents[1..T-1]
    double median_step = 0.0;   // median consecutive latent distance

    /// Rebuilds the cached kernel inverses. Throws NumericalError when a
    /// kernel matrix is not positive definite after jitter.
    void finalize(double jitter = kGpdmJitter);
};

struct GpPrediction {
    Eigen::VectorXd mean;
    Eigen::VectorXd var;  // shared scalar replicated per output dim
};

/// Joint MAP optimization of latents and hyperparameters (gradient descent
/// with backtracking line search); latents initialized from the top-2
/// principal components scaled to unit variance.
GpdmModel train_gpdm(const Eigen::MatrixXd& sequence, std::string tag,
                     const GpdmConfig& config = {});

/// GP posterior of the observation map at latent point l.
GpPrediction predict_observation(const GpdmModel& model, const Eigen::Vector2d& l);

/// GP posterior of the latent dynamics at latent point l (predicts the next
/// latent).
GpPrediction predict_dynamics(const GpdmModel& model, const Eigen::Vector2d& l);

/// Negative log posterior of the GPDM and (optionally) its gradient, on the
/// packed parameter vector [latents row-major (T*2) | log obs hypers (3) |
/// log dyn hypers (4)]. Returns +inf when a kernel matrix is not positive
/// definite at these parameters.
double gpdm_objective(const Eigen::MatrixXd& observations, const Eigen::VectorXd& packed,
                      Eigen::VectorXd* gradient, double jitter = kGpdmJitter);

Eigen::VectorXd pack_gpdm_params(const Eigen::MatrixXd& latents, const ObsHypers& obs,
                                 const DynHypers& dyn);

/// Gaussian log density of the pose feature under the shared-variance GP
/// prediction.
double pose_measurement_loglik(const GpPrediction& prediction, const PoseFeature& measurement);

struct LatentInit {
    const GpdmModel* model = nullptr;
    Eigen::Vector2d latent = Eigen::Vector2d::Zero();
    double log_likelihood = 0.0;
};

/// Scans every model's training latents (plus a 5x5 local refinement around
/// the best) for the latent whose projected observation best matches the
/// measurement.
LatentInit init_latent(std::span<const GpdmModel> bank, const PoseFeature& measurement);

/// Same scan against an arbitrary scoring function (used by the heatmap
/// measurement path).
LatentInit init_latent_scored(
    std::span<const GpdmModel> bank,
    const std::function<double(const GpdmModel&, const Eigen::Vector2d&)>& loglik);

}  // namespace pedact
