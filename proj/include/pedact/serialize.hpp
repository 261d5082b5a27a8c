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

#include <filesystem>
#include <span>
#include <vector>

#include "pedact/esvm.hpp"
#include "pedact/exemplar_index.hpp"
#include "pedact/fusion.hpp"
#include "pedact/gpdm.hpp"
#include "pedact/tracker.hpp"

namespace pedact {

// All four formats are little-endian and start with a 5-byte magic:
//   ESVM1  ensemble of exemplar SVMs
//   FUSE1  fusion SVM with its standardization vectors
//   GPDM1  one dynamical model (tag, T, latents, observations, hypers)
//   HMAP1  per-joint heatmaps (H, W, J=8, then J*H*W float32)

void write_ensemble(const std::filesystem::path& path, std::span<const ExemplarSvm> svms);
std::vector<ExemplarSvm> load_ensemble(const std::filesystem::path& path);

void write_fusion(const std::filesystem::path& path, const FusionSvm& svm);
FusionSvm load_fusion(const std::filesystem::path& path);

void write_gpdm(const std::filesystem::path& path, const GpdmModel& model);
/// Rebuilds the cached kernel inverses after reading.
GpdmModel load_gpdm(const std::filesystem::path& path);

/// The box is not part of the file; it comes from the manifest.
void write_heatmaps(const std::filesystem::path& path, const JointHeatmaps& heatmaps);
JointHeatmaps load_heatmaps(const std::filesystem::path& path);

}  // namespace pedact
