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

#include <optional>
#include <span>
#include <vector>

#include "pedact/common.hpp"
#include "pedact/gpdm.hpp"
#include "pedact/types.hpp"

namespace pedact {

inline constexpr double kLikelihoodFloor = 1e-6;

/// Per-joint probabilistic score maps in canonical joint order. The maps
/// cover the owning pedestrian box; image coordinates are mapped through the
/// box transform before sampling.
struct JointHeatmaps {
    int width = 0;
    int height = 0;
    std::array<std::vector<float>, kJointCount> maps;
    PedestrianBox box;

    /// Bilinear sample of channel j at an image-plane point; nullopt outside
    /// the map.
    std::optional<double> sample(int j, double img_x, double img_y) const;

    /// Image coordinates of the peak of channel j (ties to the first cell in
    /// row-major order).
    ImagePoint argmax(int j) const;
};

struct Particle {
    Eigen::Vector2d latent = Eigen::Vector2d::Zero();
    int model_index = 0;
    double weight = 0.0;
};

struct ParticleSet {
    std::vector<Particle> particles;

    std::size_t size() const { return particles.size(); }
    void normalize_weights();
    Eigen::Vector2d weighted_mean_latent() const;
};

double effective_sample_size(const ParticleSet& set);

/// Systematic (low-variance) resampling; afterwards all weights are 1/N.
void systematic_resample(ParticleSet& set, Rng& rng);

/// Moves each particle to its dynamics-GP mean plus noise_scale * predictive
/// std Gaussian noise. Weights are unchanged.
void propagate(ParticleSet& set, std::span<const GpdmModel> bank, Rng& rng,
               double noise_scale = 1.0);

/// Product of the 8 per-joint heatmap samples at the particle's projected
/// pose; each factor is floored at `floor_eps`, out-of-map joints contribute
/// exactly the floor.
double likelihood(const Particle& particle, std::span<const GpdmModel> bank,
                  const JointHeatmaps& heatmaps, double floor_eps = kLikelihoodFloor);

/// Heatmap flavor of the latent (re-)initialization scan.
LatentInit init_latent(std::span<const GpdmModel> bank, const JointHeatmaps& measurement);

/// Reweights by the measurement likelihood and resamples when the effective
/// sample size drops below half the particle count. When every particle is at
/// the likelihood floor the set is re-initialized from the measurement;
/// returns true in that case.
bool update_and_resample(ParticleSet& set, std::span<const GpdmModel> bank,
                         const JointHeatmaps& heatmaps, Rng& rng,
                         double floor_eps = kLikelihoodFloor, double init_spread = 0.0);

struct TrackFrame {
    PedestrianBox box;
    const JointHeatmaps* heatmaps = nullptr;
};

struct TrackConfig {
    int particle_count = 200;
    int measurement_period = 1;  // use a measurement every m frames
    std::uint64_t seed = 0;
    double process_noise = 1.0;  // 0 = deterministic test mode
    double likelihood_floor = kLikelihoodFloor;
};

/// Runs the full filter over a sequence: initialization from the first
/// frame's measurement, per-frame propagation, scheduled measurement updates,
/// and pose output from the weighted-mean latent.
std::vector<UpperBodyPose> track_sequence(std::span<const TrackFrame> frames,
                                          std::span<const GpdmModel> bank,
                                          const TrackConfig& config);

/// Per-frame measurement passthrough baseline: each joint at its heatmap
/// peak.
UpperBodyPose pose_from_heatmap_peaks(const JointHeatmaps& heatmaps);

}  // namespace pedact
