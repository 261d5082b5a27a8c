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
#include "pedact/tracker.hpp"

#include <cmath>
#include <stdexcept>

namespace pedact {

namespace {

// image -> map coordinates (pixel centers)
inline double to_map_u(const JointHeatmaps& hm, double img_x) {
    return (img_x - hm.box.x) * hm.width / hm.box.w - 0.5;
}
inline double to_map_v(const JointHeatmaps& hm, double img_y) {
    return (img_y - hm.box.y) * hm.height / hm.box.h - 0.5;
}

UpperBodyPose pose_from_prediction(const GpPrediction& pred, const PedestrianBox& box) {
    PoseFeature f;
    for (int i = 0; i < kPoseFeatureDim; ++i) {
        f[i] = i < static_cast<int>(pred.mean.size()) ? pred.mean[i] : 0.0;
    }
    return decode_pose(box, f);
}

int model_index_of(std::span<const GpdmModel> bank, const GpdmModel* model) {
    for (std::size_t i = 0; i < bank.size(); ++i) {
        if (&bank[i] == model) return static_cast<int>(i);
    }
    throw std::logic_error("model not part of the bank");
}

void init_particles(ParticleSet& set, std::span<const GpdmModel> bank, const LatentInit& init,
                    std::size_t count, Rng& rng, double spread) {
    int index = model_index_of(bank, init.model);
    set.particles.assign(count, {});
    for (auto& p : set.particles) {
        p.latent = init.latent;
        if (spread > 0.0) {
            p.latent.x() += rng.normal(0.0, spread);
            p.latent.y() += rng.normal(0.0, spread);
        }
        p.model_index = index;
        p.weight = 1.0 / static_cast<double>(count);
    }
}

}  // namespace

std::optional<double> JointHeatmaps::sample(int j, double img_x, double img_y) const {
    double u = to_map_u(*this, img_x);
    double v = to_map_v(*this, img_y);
    if (u < 0.0 || v < 0.0 || u > width - 1.0 || v > height - 1.0) return std::nullopt;
    int x0 = std::min(static_cast<int>(u), width - 2);
    int y0 = std::min(static_cast<int>(v), height - 2);
    if (width == 1) x0 = 0;
    if (height == 1) y0 = 0;
    double ax = u - x0;
    double ay = v - y0;
    const std::vector<float>& m = maps[j];
    auto at = [&](int x, int y) {
        return static_cast<double>(m[static_cast<std::size_t>(y) * width + x]);
    };
    int x1 = std::min(x0 + 1, width - 1);
    int y1 = std::min(y0 + 1, height - 1);
    return (1 - ax) * (1 - ay) * at(x0, y0) + ax * (1 - ay) * at(x1, y0) +
           (1 - ax) * ay * at(x0, y1) + ax * ay * at(x1, y1);
}

ImagePoint JointHeatmaps::argmax(int j) const {
    const std::vector<float>& m = maps[j];
    std::size_t best = 0;
    for (std::size_t i = 1; i < m.size(); ++i) {
        if (m[i] > m[best]) best = i;
    }
    double u = static_cast<double>(best % width);
    double v = static_cast<double>(best / width);
    return {box.x + (u + 0.5) * box.w / width, box.y + (v + 0.5) * box.h / height};
}

void ParticleSet::normalize_weights() {
    double sum = 0.0;
    for (const auto& p : particles) sum += p.weight;
    if (sum <= 0.0) throw NumericalError("ParticleSet: weight sum is not positive");
    for (auto& p : particles) p.weight /= sum;
}

Eigen::Vector2d ParticleSet::weighted_mean_latent() const {
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    for (const auto& p : particles) mean += p.weight * p.latent;
    return mean;
}

double effective_sample_size(const ParticleSet& set) {
    double sq = 0.0;
    for (const auto& p : set.particles) sq += p.weight * p.weight;
    return sq > 0.0 ? 1.0 / sq : 0.0;
}

void systematic_resample(ParticleSet& set, Rng& rng) {
    const std::size_t n = set.particles.size();
    std::vector<Particle> resampled;
    resampled.reserve(n);
    double step = 1.0 / static_cast<double>(n);
    double u = rng.uniform() * step;
    double cumulative = set.particles[0].weight;
    std::size_t i = 0;
    for (std::size_t m = 0; m < n; ++m) {
        double target = u + m * step;
        while (target > cumulative && i + 1 < n) {
            ++i;
            cumulative += set.particles[i].weight;
        }
        Particle p = set.particles[i];
        p.weight = step;
        resampled.push_back(p);
    }
    set.particles = std::move(resampled);
}

void propagate(ParticleSet& set, std::span<const GpdmModel> bank, Rng& rng, double noise_scale) {
    for (auto& p : set.particles) {
        GpPrediction pred = predict_dynamics(bank[p.model_index], p.latent);
        double sd = std::sqrt(pred.var[0]);
        p.latent.x() = pred.mean[0] + noise_scale * sd * rng.normal();
        p.latent.y() = pred.mean[1] + noise_scale * sd * rng.normal();
    }
}

double likelihood(const Particle& particle, std::span<const GpdmModel> bank,
                  const JointHeatmaps& heatmaps, double floor_eps) {
    GpPrediction pred = predict_observation(bank[particle.model_index], particle.latent);
    double product = 1.0;
    for (int j = 0; j < kJointCount; ++j) {
        double x = heatmaps.box.x + pred.mean[2 * j] * heatmaps.box.w;
        double y = heatmaps.box.y + pred.mean[2 * j + 1] * heatmaps.box.h;
        auto s = heatmaps.sample(j, x, y);
        product *= s ? std::max(*s, floor_eps) : floor_eps;
    }
    return product;
}

LatentInit init_latent(std::span<const GpdmModel> bank, const JointHeatmaps& measurement) {
    return init_latent_scored(bank, [&](const GpdmModel& m, const Eigen::Vector2d& l) {
        GpPrediction pred = predict_observation(m, l);
        double ll = 0.0;
        for (int j = 0; j < kJointCount; ++j) {
            double x = measurement.box.x + pred.mean[2 * j] * measurement.box.w;
            double y = measurement.box.y + pred.mean[2 * j + 1] * measurement.box.h;
            auto s = measurement.sample(j, x, y);
            ll += std::log(s ? std::max(*s, kLikelihoodFloor) : kLikelihoodFloor);
        }
        return ll;
    });
}

bool update_and_resample(ParticleSet& set, std::span<const GpdmModel> bank,
                         const JointHeatmaps& heatmaps, Rng& rng, double floor_eps,
                         double init_spread) {
    const std::size_t n = set.particles.size();
    std::vector<double> lik(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        lik[i] = likelihood(set.particles[i], bank, heatmaps, floor_eps);
        sum += lik[i];
    }

    double floor_product = std::pow(floor_eps, kJointCount);
    if (sum <= static_cast<double>(n) * floor_product * (1.0 + 1e-9)) {
        // every particle has fallen off the measurement: re-initialize
        LatentInit init = pedact::init_latent(bank, heatmaps);
        init_particles(set, bank, init, n, rng, init_spread);
        return true;
    }

    for (std::size_t i = 0; i < n; ++i) set.particles[i].weight *= lik[i];
    set.normalize_weights();
    if (effective_sample_size(set) < static_cast<double>(n) / 2.0) {
        systematic_resample(set, rng);
    }
    return false;
}

std::vector<UpperBodyPose> track_sequence(std::span<const TrackFrame> frames,
                                          std::span<const GpdmModel> bank,
                                          const TrackConfig& config) {
    if (frames.empty()) throw std::invalid_argument("track_sequence: empty sequence");
    if (!frames[0].heatmaps) {
        throw std::invalid_argument("track_sequence: first frame must carry a measurement");
    }
    if (config.particle_count < 1 || config.measurement_period < 1) {
        throw std::invalid_argument("track_sequence: bad particle count or measurement period");
    }

    Rng rng(config.seed);
    LatentInit init = init_latent(bank, *frames[0].heatmaps);
    double spread = config.process_noise * init.model->median_step / 2.0;

    ParticleSet set;
    init_particles(set, bank, init, static_cast<std::size_t>(config.particle_count), rng, spread);

    std::vector<UpperBodyPose> out;
    out.reserve(frames.size());
    for (std::size_t t = 0; t < frames.size(); ++t) {
        if (t > 0) {
            propagate(set, bank, rng, config.process_noise);
            bool scheduled = (t % static_cast<std::size_t>(config.measurement_period)) == 0;
            if (scheduled && frames[t].heatmaps) {
                update_and_resample(set, bank, *frames[t].heatmaps, rng,
                                    config.likelihood_floor, spread);
            }
        }
        const GpdmModel& model = bank[set.particles.front().model_index];
        GpPrediction pred = predict_observation(model, set.weighted_mean_latent());
        out.push_back(pose_from_prediction(pred, frames[t].box));
    }
    return out;
}

UpperBodyPose pose_from_heatmap_peaks(const JointHeatmaps& heatmaps) {
    UpperBodyPose pose;
    for (int j = 0; j < kJointCount; ++j) pose.joints[j] = heatmaps.argmax(j);
    return pose;
}

}  // namespace pedact
