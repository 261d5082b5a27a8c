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
#include "pedact/gpdm.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pedact/common.hpp"

namespace pedact {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kObsHyperCount = 3;
constexpr int kDynHyperCount = 4;

Eigen::MatrixXd pairwise_sq_dist(const Eigen::MatrixXd& points) {
    const Eigen::Index n = points.rows();
    Eigen::VectorXd sq = points.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = sq.replicate(1, n) + sq.transpose().replicate(n, 1) -
                         2.0 * points * points.transpose();
    return d2.cwiseMax(0.0);
}

double median_of(std::vector<double> values, double fallback) {
    if (values.empty()) return fallback;
    std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    double m = values[mid];
    return m > 1e-6 ? m : fallback;
}

struct KernelEval {
    Eigen::MatrixXd k;     // full kernel incl. noise and jitter
    Eigen::MatrixXd krbf;  // RBF component only
    Eigen::MatrixXd d2;    // pairwise squared distances
};

KernelEval obs_kernel(const Eigen::MatrixXd& latents, const ObsHypers& h, double jitter) {
    KernelEval e;
    e.d2 = pairwise_sq_dist(latents);
    e.krbf = h.signal_var * (-e.d2 / (2.0 * h.length_scale * h.length_scale)).array().exp();
    e.k = e.krbf;
    e.k.diagonal().array() += h.noise_var + jitter;
    return e;
}

KernelEval dyn_kernel(const Eigen::MatrixXd& inputs, const DynHypers& h, double jitter) {
    KernelEval e;
    e.d2 = pairwise_sq_dist(inputs);
    e.krbf = h.signal_var * (-e.d2 / (2.0 * h.length_scale * h.length_scale)).array().exp();
    e.k = e.krbf + h.linear_var * (inputs * inputs.transpose());
    e.k.diagonal().array() += h.noise_var + jitter;
    return e;
}

// 0.5 * (D * logdet K + tr(K^-1 S S') + n D log 2pi) and the matrix
// G = dL/dK. Returns false when the Cholesky factorization fails.
bool gp_block(const Eigen::MatrixXd& k, const Eigen::MatrixXd& data, double& value,
              Eigen::MatrixXd* g_out, Eigen::MatrixXd* alpha_out) {
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success) return false;
    const Eigen::Index n = k.rows();
    const double dims = static_cast<double>(data.cols());
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) logdet += std::log(llt.matrixL()(i, i));
    logdet *= 2.0;
    Eigen::MatrixXd alpha = llt.solve(data);  // K^-1 S
    value = 0.5 * (dims * logdet + (data.array() * alpha.array()).sum() +
                   n * dims * std::log(2.0 * M_PI));
    if (g_out) {
        Eigen::MatrixXd kinv = llt.solve(Eigen::MatrixXd::Identity(n, n));
        *g_out = 0.5 * (dims * kinv - alpha * alpha.transpose());
    }
    if (alpha_out) *alpha_out = std::move(alpha);
    return true;
}

}  // namespace

Eigen::VectorXd pack_gpdm_params(const Eigen::MatrixXd& latents, const ObsHypers& obs,
                                 const DynHypers& dyn) {
    const Eigen::Index t = latents.rows();
    Eigen::VectorXd packed(t * kLatentDim + kObsHyperCount + kDynHyperCount);
    for (Eigen::Index i = 0; i < t; ++i) {
        packed[2 * i] = latents(i, 0);
        packed[2 * i + 1] = latents(i, 1);
    }
    Eigen::Index o = t * kLatentDim;
    packed[o + 0] = std::log(obs.signal_var);
    packed[o + 1] = std::log(obs.length_scale);
    packed[o + 2] = std::log(obs.noise_var);
    packed[o + 3] = std::log(dyn.signal_var);
    packed[o + 4] = std::log(dyn.length_scale);
    packed[o + 5] = std::log(dyn.linear_var);
    packed[o + 6] = std::log(dyn.noise_var);
    return packed;
}

double gpdm_objective(const Eigen::MatrixXd& observations, const Eigen::VectorXd& packed,
                      Eigen::VectorXd* gradient, double jitter) {
    const Eigen::Index t = observations.rows();
    if (packed.size() != t * kLatentDim + kObsHyperCount + kDynHyperCount) {
        throw std::invalid_argument("gpdm_objective: packed parameter size mismatch");
    }

    Eigen::MatrixXd latents(t, kLatentDim);
    for (Eigen::Index i = 0; i < t; ++i) {
        latents(i, 0) = packed[2 * i];
        latents(i, 1) = packed[2 * i + 1];
    }
    const Eigen::Index o = t * kLatentDim;
    ObsHypers oh{std::exp(packed[o + 0]), std::exp(packed[o + 1]), std::exp(packed[o + 2])};
    DynHypers dh{std::exp(packed[o + 3]), std::exp(packed[o + 4]), std::exp(packed[o + 5]),
                 std::exp(packed[o + 6])};

    Eigen::RowVectorXd mean = observations.colwise().mean();
    Eigen::MatrixXd centered = observations.rowwise() - mean;

    if (gradient) gradient->setZero(packed.size());

    // reconstruction GP over the latents
    KernelEval ko = obs_kernel(latents, oh, jitter);
    double obs_value = 0.0;
    Eigen::MatrixXd g_obs;
    if (!gp_block(ko.k, centered, obs_value, gradient ? &g_obs : nullptr, nullptr)) return kInf;

    // dynamics GP over consecutive latent pairs
    const Eigen::Index m = t - 1;
    Eigen::MatrixXd inputs = latents.topRows(m);
    Eigen::MatrixXd outputs = latents.bottomRows(m);
    KernelEval kd = dyn_kernel(inputs, dh, jitter);
    double dyn_value = 0.0;
    Eigen::MatrixXd g_dyn, alpha_dyn;
    if (!gp_block(kd.k, outputs, dyn_value, gradient ? &g_dyn : nullptr,
                  gradient ? &alpha_dyn : nullptr)) {
        return kInf;
    }

    double hyper_prior = packed.segment(o, kObsHyperCount + kDynHyperCount).sum();
    double first_latent_prior = 0.5 * latents.row(0).squaredNorm();
    double value = obs_value + dyn_value + hyper_prior + first_latent_prior;
    if (!std::isfinite(value)) return kInf;
    if (!gradient) return value;

    Eigen::MatrixXd grad_latents = Eigen::MatrixXd::Zero(t, kLatentDim);

    // observation kernel: RBF pulls through every latent
    {
        Eigen::MatrixXd w = g_obs.cwiseProduct(ko.krbf);
        double inv_ls2 = 1.0 / (oh.length_scale * oh.length_scale);
        Eigen::VectorXd row_sum = w.rowwise().sum();
        grad_latents.noalias() +=
            (-2.0 * inv_ls2) * (row_sum.asDiagonal() * latents - w * latents);
        (*gradient)[o + 0] += w.sum();
        (*gradient)[o + 1] += (w.cwiseProduct(ko.d2)).sum() * inv_ls2;
        (*gradient)[o + 2] += g_obs.trace() * oh.noise_var;
    }

    // dynamics kernel: latents appear as inputs (rows 0..T-2) and outputs
    // (rows 1..T-1)
    {
        Eigen::MatrixXd w = g_dyn.cwiseProduct(kd.krbf);
        double inv_ls2 = 1.0 / (dh.length_scale * dh.length_scale);
        Eigen::VectorXd row_sum = w.rowwise().sum();
        Eigen::MatrixXd g_in = (-2.0 * inv_ls2) * (row_sum.asDiagonal() * inputs - w * inputs);
        g_in.noalias() += 2.0 * dh.linear_var * (g_dyn * inputs);
        grad_latents.topRows(m) += g_in;
        grad_latents.bottomRows(m) += alpha_dyn;

        (*gradient)[o + 3] += w.sum();
        (*gradient)[o + 4] += (w.cwiseProduct(kd.d2)).sum() * inv_ls2;
        (*gradient)[o + 5] += dh.linear_var *
                              (g_dyn.cwiseProduct(inputs * inputs.transpose())).sum();
        (*gradient)[o + 6] += g_dyn.trace() * dh.noise_var;
    }

    grad_latents.row(0) += latents.row(0);

    for (Eigen::Index i = 0; i < t; ++i) {
        (*gradient)[2 * i] += grad_latents(i, 0);
        (*gradient)[2 * i + 1] += grad_latents(i, 1);
    }
    // 1/theta hyperprior contributes +1 in log space
    for (int h = 0; h < kObsHyperCount + kDynHyperCount; ++h) (*gradient)[o + h] += 1.0;
    return value;
}

void GpdmModel::finalize(double jitter) {
    const Eigen::Index t = latents.rows();
    if (t < 3) throw std::invalid_argument("GpdmModel: need at least 3 frames");
    data_mean = observations.colwise().mean();
    Eigen::MatrixXd centered = observations.rowwise() - data_mean;

    auto invert_checked = [&](const Eigen::MatrixXd& k, const char* what) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k);
        if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
            throw NumericalError(std::string("GpdmModel: ") + what +
                                 " kernel not positive definite after jitter");
        }
        Eigen::LLT<Eigen::MatrixXd> llt(k);
        if (llt.info() != Eigen::Success) {
            throw NumericalError(std::string("GpdmModel: ") + what +
                                 " kernel Cholesky factorization failed");
        }
        return llt;
    };

    KernelEval ko = obs_kernel(latents, map_hyper, jitter);
    auto llt_o = invert_checked(ko.k, "observation");
    obs_kinv = llt_o.solve(Eigen::MatrixXd::Identity(t, t));
    obs_alpha = llt_o.solve(centered);

    const Eigen::Index m = t - 1;
    KernelEval kd = dyn_kernel(latents.topRows(m), dyn_hyper, jitter);
    auto llt_d = invert_checked(kd.k, "dynamics");
    dyn_kinv = llt_d.solve(Eigen::MatrixXd::Identity(m, m));
    dyn_alpha = llt_d.solve(latents.bottomRows(m));

    std::vector<double> steps;
    steps.reserve(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        steps.push_back((latents.row(i + 1) - latents.row(i)).norm());
    }
    median_step = median_of(std::move(steps), 1e-3);
}

GpdmModel train_gpdm(const Eigen::MatrixXd& sequence, std::string tag, const GpdmConfig& config) {
    const Eigen::Index t = sequence.rows();
    if (t < 3) throw std::invalid_argument("train_gpdm: need at least 3 frames");
    if (sequence.cols() < 2) throw std::invalid_argument("train_gpdm: need at least 2 dims");
    if (!sequence.allFinite()) throw std::invalid_argument("train_gpdm: non-finite observations");

    // PCA init of the latents, scaled to unit variance per dim
    Eigen::RowVectorXd mean = sequence.colwise().mean();
    Eigen::MatrixXd centered = sequence.rowwise() - mean;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    Eigen::MatrixXd latents = centered * svd.matrixV().leftCols(kLatentDim);
    for (int j = 0; j < kLatentDim; ++j) {
        double sd = std::sqrt(latents.col(j).squaredNorm() / static_cast<double>(t));
        if (sd > 1e-9) latents.col(j) /= sd;
    }

    std::vector<double> dists;
    dists.reserve(static_cast<std::size_t>(t) * (t - 1) / 2);
    for (Eigen::Index i = 0; i < t; ++i) {
        for (Eigen::Index j = i + 1; j < t; ++j) {
            dists.push_back((latents.row(i) - latents.row(j)).norm());
        }
    }
    double med = median_of(std::move(dists), 1.0);

    ObsHypers oh{1.0, med, 0.1};
    DynHypers dh{1.0, med, 1.0, 0.1};
    Eigen::VectorXd x = pack_gpdm_params(latents, oh, dh);

    Eigen::VectorXd grad(x.size());
    double value = gpdm_objective(sequence, x, &grad, config.jitter);
    if (!std::isfinite(value)) {
        throw NumericalError("train_gpdm: objective not finite at initialization");
    }

    double step = 1.0;
    for (int iter = 0; iter < config.max_iterations; ++iter) {
        double gnorm = grad.norm();
        if (gnorm < config.gradient_tolerance) break;

        double slope = grad.squaredNorm();
        double tstep = step;
        bool accepted = false;
        while (tstep >= 1e-14) {
            Eigen::VectorXd x_new = x - tstep * grad;
            double v_new = gpdm_objective(sequence, x_new, nullptr, config.jitter);
            if (v_new <= value - 1e-4 * tstep * slope) {
                x = std::move(x_new);
                value = v_new;
                accepted = true;
                break;
            }
            tstep *= 0.5;
        }
        if (!accepted) break;  // no further descent possible
        step = std::min(tstep * 2.0, 1e3);
        value = gpdm_objective(sequence, x, &grad, config.jitter);
        if (!std::isfinite(value)) {
            throw NumericalError("train_gpdm: objective became non-finite at iteration " +
                                 std::to_string(iter));
        }
    }

    GpdmModel model;
    model.tag = std::move(tag);
    model.observations = sequence;
    model.latents.resize(t, kLatentDim);
    for (Eigen::Index i = 0; i < t; ++i) {
        model.latents(i, 0) = x[2 * i];
        model.latents(i, 1) = x[2 * i + 1];
    }
    const Eigen::Index o = t * kLatentDim;
    model.map_hyper = {std::exp(x[o + 0]), std::exp(x[o + 1]), std::exp(x[o + 2])};
    model.dyn_hyper = {std::exp(x[o + 3]), std::exp(x[o + 4]), std::exp(x[o + 5]),
                       std::exp(x[o + 6])};
    model.finalize(config.jitter);
    return model;
}

GpPrediction predict_observation(const GpdmModel& model, const Eigen::Vector2d& l) {
    const Eigen::Index t = model.latents.rows();
    Eigen::VectorXd kstar(t);
    double inv2ls2 = 1.0 / (2.0 * model.map_hyper.length_scale * model.map_hyper.length_scale);
    for (Eigen::Index i = 0; i < t; ++i) {
        double dx = model.latents(i, 0) - l.x();
        double dy = model.latents(i, 1) - l.y();
        kstar[i] = model.map_hyper.signal_var * std::exp(-(dx * dx + dy * dy) * inv2ls2);
    }
    GpPrediction p;
    p.mean = model.data_mean.transpose() + model.obs_alpha.transpose() * kstar;
    double var = model.map_hyper.signal_var + model.map_hyper.noise_var -
                 kstar.dot(model.obs_kinv * kstar);
    p.var = Eigen::VectorXd::Constant(model.observations.cols(), std::max(var, 1e-12));
    return p;
}

GpPrediction predict_dynamics(const GpdmModel& model, const Eigen::Vector2d& l) {
    const Eigen::Index m = model.latents.rows() - 1;
    Eigen::VectorXd kstar(m);
    double inv2ls2 = 1.0 / (2.0 * model.dyn_hyper.length_scale * model.dyn_hyper.length_scale);
    for (Eigen::Index i = 0; i < m; ++i) {
        double dx = model.latents(i, 0) - l.x();
        double dy = model.latents(i, 1) - l.y();
        kstar[i] = model.dyn_hyper.signal_var * std::exp(-(dx * dx + dy * dy) * inv2ls2) +
                   model.dyn_hyper.linear_var *
                       (model.latents(i, 0) * l.x() + model.latents(i, 1) * l.y());
    }
    GpPrediction p;
    p.mean = model.dyn_alpha.transpose() * kstar;
    double prior = model.dyn_hyper.signal_var + model.dyn_hyper.linear_var * l.squaredNorm() +
                   model.dyn_hyper.noise_var;
    double var = prior - kstar.dot(model.dyn_kinv * kstar);
    p.var = Eigen::VectorXd::Constant(kLatentDim, std::max(var, 1e-12));
    return p;
}

double pose_measurement_loglik(const GpPrediction& prediction, const PoseFeature& measurement) {
    const double var = prediction.var[0];
    double quad = 0.0;
    for (int i = 0; i < kPoseFeatureDim; ++i) {
        double d = measurement[i] - prediction.mean[i];
        quad += d * d;
    }
    return -0.5 * (quad / var + kPoseFeatureDim * std::log(2.0 * M_PI * var));
}

LatentInit init_latent_scored(
    std::span<const GpdmModel> bank,
    const std::function<double(const GpdmModel&, const Eigen::Vector2d&)>& loglik) {
    if (bank.empty()) throw std::invalid_argument("init_latent: empty model bank");

    LatentInit best;
    best.log_likelihood = -kInf;
    for (const GpdmModel& model : bank) {
        for (Eigen::Index i = 0; i < model.latents.rows(); ++i) {
            Eigen::Vector2d l = model.latents.row(i).transpose();
            double ll = loglik(model, l);
            if (ll > best.log_likelihood) best = {&model, l, ll};
        }
    }

    // 5x5 refinement grid around the best training latent
    double h = best.model->median_step / 2.0;
    Eigen::Vector2d center = best.latent;
    for (int dy = -2; dy <= 2; ++dy) {
        for (int dx = -2; dx <= 2; ++dx) {
            Eigen::Vector2d l = center + Eigen::Vector2d(dx * h, dy * h);
            double ll = loglik(*best.model, l);
            if (ll > best.log_likelihood) {
                best.latent = l;
                best.log_likelihood = ll;
            }
        }
    }
    return best;
}

LatentInit init_latent(std::span<const GpdmModel> bank, const PoseFeature& measurement) {
    return init_latent_scored(bank, [&](const GpdmModel& m, const Eigen::Vector2d& l) {
        return pose_measurement_loglik(predict_observation(m, l), measurement);
    });
}

}  // namespace pedact
