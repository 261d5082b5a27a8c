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
#include "pedact/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "pedact/common.hpp"

namespace pedact {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary codecs assume a little-endian host");

class Writer {
public:
    explicit Writer(const std::filesystem::path& path) : out_(path, std::ios::binary) {
        if (!out_) throw DataError("cannot write: " + path.string());
        path_ = path.string();
    }
    ~Writer() {
        out_.flush();
    }

    void magic(const char* m) { out_.write(m, 5); }
    void u8(std::uint8_t v) { out_.write(reinterpret_cast<const char*>(&v), 1); }
    void u32(std::uint32_t v) { out_.write(reinterpret_cast<const char*>(&v), 4); }
    void f32(float v) { out_.write(reinterpret_cast<const char*>(&v), 4); }
    void f64(double v) { out_.write(reinterpret_cast<const char*>(&v), 8); }
    void bytes(const void* data, std::size_t n) {
        out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
    }
    void check() {
        if (!out_) throw DataError("short write: " + path_);
    }

private:
    std::ofstream out_;
    std::string path_;
};

class Reader {
public:
    explicit Reader(const std::filesystem::path& path) : in_(path, std::ios::binary) {
        if (!in_) throw DataError("cannot open: " + path.string());
        path_ = path.string();
    }

    void magic(const char* expected) {
        char m[5];
        read(m, 5);
        if (std::memcmp(m, expected, 5) != 0) {
            throw DataError("bad magic in " + path_ + " (expected " + expected + ")");
        }
    }
    std::uint8_t u8() {
        std::uint8_t v;
        read(&v, 1);
        return v;
    }
    std::uint32_t u32() {
        std::uint32_t v;
        read(&v, 4);
        return v;
    }
    float f32() {
        float v;
        read(&v, 4);
        return v;
    }
    double f64() {
        double v;
        read(&v, 8);
        return v;
    }
    void read(void* dst, std::size_t n) {
        in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in_.gcount()) != n) {
            throw DataError("truncated file: " + path_);
        }
    }

private:
    std::ifstream in_;
    std::string path_;
};

}  // namespace

void write_ensemble(const std::filesystem::path& path, std::span<const ExemplarSvm> svms) {
    Writer w(path);
    w.magic("ESVM1");
    w.u32(static_cast<std::uint32_t>(svms.size()));
    for (const ExemplarSvm& s : svms) {
        w.u32(s.source_id);
        w.u8(static_cast<std::uint8_t>(s.hand_side));
        w.u8(static_cast<std::uint8_t>(s.object_label));
        w.u32(static_cast<std::uint32_t>(s.weights.size()));
        w.bytes(s.weights.data(), sizeof(double) * s.weights.size());
        w.f64(s.bias);
        w.f64(s.platt_a);
        w.f64(s.platt_b);
    }
    w.check();
}

std::vector<ExemplarSvm> load_ensemble(const std::filesystem::path& path) {
    Reader r(path);
    r.magic("ESVM1");
    std::uint32_t count = r.u32();
    std::vector<ExemplarSvm> out(count);
    for (ExemplarSvm& s : out) {
        s.source_id = r.u32();
        std::uint8_t side = r.u8();
        std::uint8_t label = r.u8();
        if (side > 1 || label > 2) throw DataError("ensemble: bad side/label byte");
        s.hand_side = static_cast<HandSide>(side);
        s.object_label = static_cast<ObjectLabel>(label);
        std::uint32_t dim = r.u32();
        s.weights.resize(dim);
        r.read(s.weights.data(), sizeof(double) * dim);
        s.bias = r.f64();
        s.platt_a = r.f64();
        s.platt_b = r.f64();
    }
    return out;
}

void write_fusion(const std::filesystem::path& path, const FusionSvm& svm) {
    // only full-cue models are persisted; masked variants are an in-memory
    // ablation device
    if (!svm.mask.use_gaze || !svm.mask.use_hand || !svm.mask.use_prior) {
        throw DataError("write_fusion: refusing to persist an ablation-masked fusion model");
    }
    Writer w(path);
    w.magic("FUSE1");
    for (double v : svm.mean) w.f64(v);
    for (double v : svm.scale) w.f64(v);
    for (const auto& c : svm.classifiers) {
        for (double v : c.weights) w.f64(v);
        w.f64(c.bias);
    }
    w.check();
}

FusionSvm load_fusion(const std::filesystem::path& path) {
    Reader r(path);
    r.magic("FUSE1");
    FusionSvm svm;
    for (double& v : svm.mean) v = r.f64();
    for (double& v : svm.scale) v = r.f64();
    for (auto& c : svm.classifiers) {
        for (double& v : c.weights) v = r.f64();
        c.bias = r.f64();
    }
    return svm;
}

void write_gpdm(const std::filesystem::path& path, const GpdmModel& model) {
    Writer w(path);
    w.magic("GPDM1");
    w.u32(static_cast<std::uint32_t>(model.tag.size()));
    w.bytes(model.tag.data(), model.tag.size());
    w.u32(static_cast<std::uint32_t>(model.latents.rows()));
    w.u32(static_cast<std::uint32_t>(model.observations.cols()));
    for (Eigen::Index i = 0; i < model.latents.rows(); ++i) {
        for (Eigen::Index j = 0; j < kLatentDim; ++j) w.f64(model.latents(i, j));
    }
    for (Eigen::Index i = 0; i < model.observations.rows(); ++i) {
        for (Eigen::Index j = 0; j < model.observations.cols(); ++j) {
            w.f64(model.observations(i, j));
        }
    }
    w.f64(model.map_hyper.signal_var);
    w.f64(model.map_hyper.length_scale);
    w.f64(model.map_hyper.noise_var);
    w.f64(model.dyn_hyper.signal_var);
    w.f64(model.dyn_hyper.length_scale);
    w.f64(model.dyn_hyper.linear_var);
    w.f64(model.dyn_hyper.noise_var);
    w.check();
}

GpdmModel load_gpdm(const std::filesystem::path& path) {
    Reader r(path);
    r.magic("GPDM1");
    GpdmModel model;
    std::uint32_t tag_len = r.u32();
    model.tag.resize(tag_len);
    if (tag_len > 0) r.read(model.tag.data(), tag_len);
    std::uint32_t t = r.u32();
    std::uint32_t d = r.u32();
    if (t < 3 || d < 1) throw DataError("gpdm: bad dimensions in " + path.string());
    model.latents.resize(t, kLatentDim);
    for (std::uint32_t i = 0; i < t; ++i) {
        for (int j = 0; j < kLatentDim; ++j) model.latents(i, j) = r.f64();
    }
    model.observations.resize(t, d);
    for (std::uint32_t i = 0; i < t; ++i) {
        for (std::uint32_t j = 0; j < d; ++j) model.observations(i, j) = r.f64();
    }
    model.map_hyper.signal_var = r.f64();
    model.map_hyper.length_scale = r.f64();
    model.map_hyper.noise_var = r.f64();
    model.dyn_hyper.signal_var = r.f64();
    model.dyn_hyper.length_scale = r.f64();
    model.dyn_hyper.linear_var = r.f64();
    model.dyn_hyper.noise_var = r.f64();
    model.finalize();
    return model;
}

void write_heatmaps(const std::filesystem::path& path, const JointHeatmaps& heatmaps) {
    Writer w(path);
    w.magic("HMAP1");
    w.u32(static_cast<std::uint32_t>(heatmaps.height));
    w.u32(static_cast<std::uint32_t>(heatmaps.width));
    w.u32(kJointCount);
    for (const auto& m : heatmaps.maps) {
        w.bytes(m.data(), sizeof(float) * m.size());
    }
    w.check();
}

JointHeatmaps load_heatmaps(const std::filesystem::path& path) {
    Reader r(path);
    r.magic("HMAP1");
    JointHeatmaps hm;
    hm.height = static_cast<int>(r.u32());
    hm.width = static_cast<int>(r.u32());
    std::uint32_t joints = r.u32();
    if (joints != kJointCount) throw DataError("heatmaps: channel count must be 8");
    if (hm.width < 1 || hm.height < 1) throw DataError("heatmaps: bad dimensions");
    std::size_t n = static_cast<std::size_t>(hm.width) * hm.height;
    for (auto& m : hm.maps) {
        m.resize(n);
        r.read(m.data(), sizeof(float) * n);
        for (float v : m) {
            if (!std::isfinite(v) || v < 0.f) {
                throw DataError("heatmaps: scores must be finite and non-negative");
            }
        }
    }
    return hm;
}

}  // namespace pedact
