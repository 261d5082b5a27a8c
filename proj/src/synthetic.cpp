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
#include "pedact/synthetic.hpp"

#include <cmath>

#include "pedact/image_io.hpp"
#include "pedact/serialize.hpp"

namespace pedact {

namespace {

constexpr int kFrameWidth = 192;
constexpr int kFrameHeight = 256;
constexpr double kGaitPeriod = 30.0;  // frames per arm-swing cycle

double hash01(std::uint64_t a) {
    a ^= a >> 33;
    a *= 0xff51afd7ed558ccdULL;
    a ^= a >> 33;
    a *= 0xc4ceb9fe1a85ec53ULL;
    a ^= a >> 33;
    return static_cast<double>(a >> 11) * 0x1.0p-53;
}

double viewpoint_compression(int viewpoint) {
    static constexpr double kFactors[4] = {1.0, 0.65, 0.85, 0.5};
    return kFactors[viewpoint % 4];
}

// normalized (0..1, 0..1) joint templates per activity
using PoseTemplate = std::array<ImagePoint, kJointCount>;

PoseTemplate base_template(ActivityLabel activity) {
    PoseTemplate t{};
    t[kHead] = {0.50, 0.08};
    t[kNeck] = {0.50, 0.20};
    t[kRightShoulder] = {0.38, 0.24};
    t[kLeftShoulder] = {0.62, 0.24};
    switch (activity) {
        case ActivityLabel::kNone:
            t[kRightElbow] = {0.355, 0.42};
            t[kRightWrist] = {0.345, 0.58};
            t[kLeftElbow] = {0.645, 0.42};
            t[kLeftWrist] = {0.655, 0.58};
            break;
        case ActivityLabel::kTexting:
            t[kRightElbow] = {0.36, 0.42};
            t[kRightWrist] = {0.46, 0.46};
            t[kLeftElbow] = {0.64, 0.42};
            t[kLeftWrist] = {0.54, 0.46};
            break;
        case ActivityLabel::kPhoneCall:
            t[kRightElbow] = {0.33, 0.36};
            t[kRightWrist] = {0.42, 0.16};
            t[kLeftElbow] = {0.645, 0.42};
            t[kLeftWrist] = {0.655, 0.58};
            break;
    }
    return t;
}

PoseTemplate mirror_template(const PoseTemplate& t) {
    PoseTemplate m = t;
    auto flip = [](ImagePoint p) { return ImagePoint{1.0 - p.x, p.y}; };
    m[kHead] = flip(t[kHead]);
    m[kNeck] = flip(t[kNeck]);
    m[kRightShoulder] = flip(t[kLeftShoulder]);
    m[kRightElbow] = flip(t[kLeftElbow]);
    m[kRightWrist] = flip(t[kLeftWrist]);
    m[kLeftShoulder] = flip(t[kRightShoulder]);
    m[kLeftElbow] = flip(t[kRightElbow]);
    m[kLeftWrist] = flip(t[kRightWrist]);
    return m;
}

PoseTemplate lerp_template(const PoseTemplate& a, const PoseTemplate& b, double t) {
    PoseTemplate out;
    for (int i = 0; i < kJointCount; ++i) {
        out[i] = {a[i].x + t * (b[i].x - a[i].x), a[i].y + t * (b[i].y - a[i].y)};
    }
    return out;
}

PoseTemplate compress_template(const PoseTemplate& t, double factor) {
    PoseTemplate out = t;
    for (auto& p : out) p.x = 0.5 + (p.x - 0.5) * factor;
    return out;
}

UpperBodyPose template_to_pose(const PoseTemplate& t, const PedestrianBox& box) {
    UpperBodyPose pose;
    for (int i = 0; i < kJointCount; ++i) {
        pose.joints[i] = {box.x + t[i].x * box.w, box.y + t[i].y * box.h};
    }
    return pose;
}

void draw_disc(GrayPatch& img, double cx, double cy, double radius, double value) {
    int x0 = std::max(0, static_cast<int>(cx - radius - 1));
    int x1 = std::min(img.width - 1, static_cast<int>(cx + radius + 1));
    int y0 = std::max(0, static_cast<int>(cy - radius - 1));
    int y1 = std::min(img.height - 1, static_cast<int>(cy + radius + 1));
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            double dx = x - cx, dy = y - cy;
            if (dx * dx + dy * dy <= radius * radius) img.at(x, y) = value;
        }
    }
}

void draw_segment(GrayPatch& img, ImagePoint a, ImagePoint b, double half_width, double value) {
    double len = std::hypot(b.x - a.x, b.y - a.y);
    int steps = std::max(2, static_cast<int>(len * 2));
    for (int s = 0; s <= steps; ++s) {
        double t = static_cast<double>(s) / steps;
        draw_disc(img, a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), half_width, value);
    }
}

void draw_rect(GrayPatch& img, double cx, double cy, double hx, double hy, double value,
               double border_value) {
    int x0 = std::max(0, static_cast<int>(cx - hx));
    int x1 = std::min(img.width - 1, static_cast<int>(cx + hx));
    int y0 = std::max(0, static_cast<int>(cy - hy));
    int y1 = std::min(img.height - 1, static_cast<int>(cy + hy));
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            bool border = (x - x0 < 2) || (x1 - x < 2) || (y - y0 < 2) || (y1 - y < 2);
            img.at(x, y) = border ? border_value : value;
        }
    }
}

// per-pedestrian texture inside the object footprint; this is what makes an
// exemplar recognizably itself
void salt_region(GrayPatch& img, double cx, double cy, double half, double amplitude,
                 std::uint64_t salt) {
    int x0 = std::max(0, static_cast<int>(cx - half));
    int x1 = std::min(img.width - 1, static_cast<int>(cx + half));
    int y0 = std::max(0, static_cast<int>(cy - half));
    int y1 = std::min(img.height - 1, static_cast<int>(cy + half));
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            double n = hash01(salt * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(y) * 8192 +
                              static_cast<std::uint64_t>(x));
            double v = img.at(x, y) + amplitude * (2.0 * n - 1.0);
            img.at(x, y) = std::clamp(v, 0.0, 1.0);
        }
    }
}

struct HandSpec {
    ImagePoint center;
    ObjectLabel object;
    bool texting_orientation = false;
};

void draw_pedestrian(GrayPatch& img, const PedestrianBox& box, const UpperBodyPose& pose,
                     std::span<const HandSpec> hands, double patch_noise, std::uint64_t salt) {
    double stroke = std::max(1.5, 0.012 * box.h);
    draw_segment(img, pose.joints[kHead], pose.joints[kNeck], stroke, 0.2);
    draw_segment(img, pose.joints[kNeck], pose.joints[kRightShoulder], stroke, 0.2);
    draw_segment(img, pose.joints[kNeck], pose.joints[kLeftShoulder], stroke, 0.2);
    draw_segment(img, pose.joints[kRightShoulder], pose.joints[kRightElbow], stroke, 0.2);
    draw_segment(img, pose.joints[kRightElbow], pose.joints[kRightWrist], stroke, 0.2);
    draw_segment(img, pose.joints[kLeftShoulder], pose.joints[kLeftElbow], stroke, 0.2);
    draw_segment(img, pose.joints[kLeftElbow], pose.joints[kLeftWrist], stroke, 0.2);
    draw_disc(img, pose.joints[kHead].x, pose.joints[kHead].y, 0.06 * box.h, 0.25);

    int hand_index = 0;
    for (const HandSpec& hand : hands) {
        draw_disc(img, hand.center.x, hand.center.y, 0.018 * box.h, 0.6);
        double half = 0.035 * box.h;
        switch (hand.object) {
            case ObjectLabel::kCellphone:
                if (hand.texting_orientation) {
                    draw_rect(img, hand.center.x, hand.center.y, half, 0.55 * half, 0.88, 0.1);
                } else {
                    draw_rect(img, hand.center.x, hand.center.y, 0.55 * half, half, 0.88, 0.1);
                }
                break;
            case ObjectLabel::kOther:
                draw_disc(img, hand.center.x, hand.center.y, 0.8 * half, 0.72);
                break;
            case ObjectLabel::kNone:
                break;
        }
        salt_region(img, hand.center.x, hand.center.y, half, patch_noise,
                    salt * 2 + static_cast<std::uint64_t>(hand_index));
        ++hand_index;
    }
}

GrayPatch background_frame(std::uint64_t salt) {
    GrayPatch img(kFrameWidth, kFrameHeight);
    for (int y = 0; y < kFrameHeight; ++y) {
        for (int x = 0; x < kFrameWidth; ++x) {
            img.at(x, y) = 0.42 + 0.12 * hash01(salt * 131071 + static_cast<std::uint64_t>(y) *
                                                                    4096 +
                                                static_cast<std::uint64_t>(x));
        }
    }
    return img;
}

GazeFeature class_gaze(ActivityLabel activity, bool mirrored, int viewpoint, double noise,
                       Rng& rng) {
    double cx = 6.0, cy = 4.0;  // forward/horizon for "none"
    if (activity == ActivityLabel::kTexting) {
        cx = 6.0;
        cy = 10.0;  // looking down at the phone
    } else if (activity == ActivityLabel::kPhoneCall) {
        cx = mirrored ? 9.0 : 3.0;
        cy = 6.0;
    }
    cx += (viewpoint % 3 - 1) * 0.5;

    GazeFeature g;
    const double sigma = 1.3;
    for (int row = 0; row < kGazeMapSide; ++row) {
        for (int col = 0; col < kGazeMapSide; ++col) {
            double d2 = (col - cx) * (col - cx) + (row - cy) * (row - cy);
            double v = std::exp(-d2 / (2.0 * sigma * sigma)) + noise * rng.uniform();
            g.values[row * kGazeMapSide + col] = v;
        }
    }
    return g;
}

}  // namespace

SyntheticSequence make_gait_sequence(int frames, const GaitParams& params) {
    if (frames < 3) throw std::invalid_argument("make_gait_sequence: need at least 3 frames");
    SyntheticSequence seq;
    double h = params.box_height;
    double w = h / 2.0;
    seq.box = {kFrameWidth / 2.0 - w / 2.0, kFrameHeight / 2.0 - h / 2.0, w, h};

    PoseTemplate walk = base_template(ActivityLabel::kNone);
    double compress = viewpoint_compression(params.viewpoint);
    double omega = 2.0 * M_PI * params.frequency_scale / kGaitPeriod;

    seq.poses.reserve(frames);
    for (int t = 0; t < frames; ++t) {
        double swing = std::sin(omega * t + params.phase);
        double bob = 0.012 * std::sin(2.0 * omega * t + params.phase);
        PoseTemplate frame = walk;
        // anti-phase arm swing, larger at the wrists; amplitudes are a
        // sizeable fraction of the box so keypoint metrics have signal
        frame[kRightElbow].x += 0.080 * swing;
        frame[kRightWrist].x += 0.170 * swing;
        frame[kRightWrist].y += 0.045 * swing;
        frame[kLeftElbow].x -= 0.080 * swing;
        frame[kLeftWrist].x -= 0.170 * swing;
        frame[kLeftWrist].y -= 0.045 * swing;
        for (auto& p : frame) p.y += bob;
        frame = compress_template(frame, compress);
        seq.poses.push_back(template_to_pose(frame, seq.box));
    }
    return seq;
}

std::vector<JointHeatmaps> render_heatmaps(const SyntheticSequence& sequence,
                                           const HeatmapNoise& noise, Rng& rng) {
    std::vector<JointHeatmaps> out;
    out.reserve(sequence.poses.size());
    const double cell_w = sequence.box.w / noise.map_width;
    const double cell_h = sequence.box.h / noise.map_height;

    for (const UpperBodyPose& pose : sequence.poses) {
        JointHeatmaps hm;
        hm.width = noise.map_width;
        hm.height = noise.map_height;
        hm.box = sequence.box;
        for (int j = 0; j < kJointCount; ++j) {
            double cx = pose.joints[j].x + noise.center_jitter * rng.normal();
            double cy = pose.joints[j].y + noise.center_jitter * rng.normal();
            if (noise.outlier_prob > 0.0 && rng.uniform() < noise.outlier_prob) {
                double angle = rng.uniform(0.0, 2.0 * M_PI);
                double dist = 30.0 + 20.0 * rng.uniform();
                cx += dist * std::cos(angle);
                cy += dist * std::sin(angle);
            }
            hm.maps[j].resize(static_cast<std::size_t>(hm.width) * hm.height);
            for (int v = 0; v < hm.height; ++v) {
                double py = sequence.box.y + (v + 0.5) * cell_h;
                for (int u = 0; u < hm.width; ++u) {
                    double px = sequence.box.x + (u + 0.5) * cell_w;
                    double d2 = (px - cx) * (px - cx) + (py - cy) * (py - cy);
                    hm.maps[j][static_cast<std::size_t>(v) * hm.width + u] = static_cast<float>(
                        std::exp(-d2 / (2.0 * noise.sigma_px * noise.sigma_px)));
                }
            }
        }
        out.push_back(std::move(hm));
    }
    return out;
}

Eigen::MatrixXd pose_feature_matrix(const SyntheticSequence& sequence) {
    Eigen::MatrixXd features(sequence.poses.size(), kPoseFeatureDim);
    for (std::size_t t = 0; t < sequence.poses.size(); ++t) {
        PoseFeature f = encode_pose(sequence.box, sequence.poses[t]);
        for (int i = 0; i < kPoseFeatureDim; ++i) features(t, i) = f[i];
    }
    return features;
}

DatasetManifest generate_synthetic(const SyntheticSpec& spec,
                                   const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    if (spec.peds_per_class < 1 || spec.viewpoints < 1 || spec.test_sequences < 0 ||
        spec.train_sequence_frames < 3 || spec.test_sequence_frames < 3) {
        throw std::invalid_argument("generate_synthetic: counts must be positive"
                                    " (and sequences at least 3 frames)");
    }
    fs::create_directories(out_dir / "frames");
    fs::create_directories(out_dir / "heatmaps");

    DatasetManifest manifest;
    manifest.root = out_dir;
    Rng rng(spec.seed);

    // --- single-frame pedestrians ---
    std::uint32_t next_id = 1;
    for (int cls = 0; cls < kActivityCount; ++cls) {
        auto activity = static_cast<ActivityLabel>(cls);
        for (int p = 0; p < spec.peds_per_class; ++p) {
            PedestrianRecord rec;
            rec.id = next_id++;
            rec.activity = activity;

            bool mirrored = activity == ActivityLabel::kPhoneCall && (p % 2 == 1);
            int viewpoint = p % std::max(1, spec.viewpoints);

            double h = 170.0 + 40.0 * rng.uniform();
            double w = h / 2.0;
            rec.box = {kFrameWidth / 2.0 - w / 2.0 + rng.uniform(-8.0, 8.0),
                       kFrameHeight / 2.0 - h / 2.0 + rng.uniform(-6.0, 6.0), w, h};

            PoseTemplate tmpl = base_template(activity);
            if (mirrored) tmpl = mirror_template(tmpl);
            // a quarter of each class strikes a pose borrowed from another
            // class; hands and gaze still reflect the true activity
            if (p % 4 == 3) {
                auto other = static_cast<ActivityLabel>((cls + 1 + p % 2) % kActivityCount);
                PoseTemplate confusing = base_template(other);
                if (mirrored) confusing = mirror_template(confusing);
                tmpl = lerp_template(tmpl, confusing, 0.65);
            }
            tmpl = compress_template(tmpl, viewpoint_compression(viewpoint));

            UpperBodyPose clean = template_to_pose(tmpl, rec.box);
            rec.pose = clean;
            for (auto& joint : rec.pose.joints) {
                joint.x += spec.joint_noise * rng.normal();
                joint.y += spec.joint_noise * rng.normal();
            }

            // objects: the phone sits in one hand; some "none" pedestrians
            // hold an unrelated object
            switch (activity) {
                case ActivityLabel::kNone:
                    rec.left_object = ObjectLabel::kNone;
                    rec.right_object = (p % 3 == 0) ? ObjectLabel::kOther : ObjectLabel::kNone;
                    break;
                case ActivityLabel::kTexting:
                    if (p % 2 == 0) {
                        rec.right_object = ObjectLabel::kCellphone;
                        rec.left_object = ObjectLabel::kNone;
                    } else {
                        rec.left_object = ObjectLabel::kCellphone;
                        rec.right_object = ObjectLabel::kNone;
                    }
                    break;
                case ActivityLabel::kPhoneCall:
                    if (mirrored) {
                        rec.left_object = ObjectLabel::kCellphone;
                        rec.right_object = ObjectLabel::kNone;
                    } else {
                        rec.right_object = ObjectLabel::kCellphone;
                        rec.left_object = ObjectLabel::kNone;
                    }
                    break;
            }

            ImagePoint left_hand = locate_hand(clean.joints[kLeftElbow], clean.joints[kLeftWrist],
                                               kDefaultHandRatio);
            ImagePoint right_hand = locate_hand(clean.joints[kRightElbow],
                                                clean.joints[kRightWrist], kDefaultHandRatio);
            left_hand.x += rng.normal();
            left_hand.y += rng.normal();
            right_hand.x += rng.normal();
            right_hand.y += rng.normal();
            rec.left_hand_truth = left_hand;
            rec.right_hand_truth = right_hand;

            GrayPatch frame = background_frame(spec.seed * 1009 + rec.id);
            HandSpec hands[2] = {
                {left_hand, rec.left_object, activity == ActivityLabel::kTexting},
                {right_hand, rec.right_object, activity == ActivityLabel::kTexting},
            };
            draw_pedestrian(frame, rec.box, clean, hands, spec.patch_noise,
                            spec.seed * 7919 + rec.id);

            rec.gaze = class_gaze(activity, mirrored, viewpoint, spec.gaze_noise, rng);

            rec.image_path = "frames/ped" + std::to_string(rec.id) + ".pgm";
            write_pgm(out_dir / rec.image_path, frame);
            manifest.pedestrians.push_back(std::move(rec));
        }
    }

    // --- sequences ---
    // training: one clean gait per (activity x viewpoint) for the GPDM bank;
    // arms holding a phone barely swing
    auto activity_pose = [](ActivityLabel act, int viewpoint, double omega, double phase,
                            int t) {
        PoseTemplate tmpl = base_template(act);
        double swing = std::sin(omega * t + phase);
        double bob = 0.012 * std::sin(2.0 * omega * t + phase);
        double amp_right = 1.0, amp_left = 1.0;
        if (act == ActivityLabel::kTexting) amp_right = amp_left = 0.10;
        if (act == ActivityLabel::kPhoneCall) {
            amp_right = 0.05;  // phone hand
            amp_left = 1.0;
        }
        tmpl[kRightElbow].x += 0.080 * amp_right * swing;
        tmpl[kRightWrist].x += 0.170 * amp_right * swing;
        tmpl[kRightWrist].y += 0.045 * amp_right * swing;
        tmpl[kLeftElbow].x -= 0.080 * amp_left * swing;
        tmpl[kLeftWrist].x -= 0.170 * amp_left * swing;
        tmpl[kLeftWrist].y -= 0.045 * amp_left * swing;
        for (auto& p : tmpl) p.y += bob;
        return compress_template(tmpl, viewpoint_compression(viewpoint));
    };

    std::uint32_t seq_id = 100000;
    PedestrianBox seq_box{kFrameWidth / 2.0 - 50.0, kFrameHeight / 2.0 - 100.0, 100.0, 200.0};

    HeatmapNoise train_noise;
    train_noise.sigma_px = spec.heatmap_sigma_cells * 200.0 / 64.0;
    for (int cls = 0; cls < kActivityCount; ++cls) {
        auto activity = static_cast<ActivityLabel>(cls);
        for (int v = 0; v < spec.viewpoints; ++v) {
            SequenceRecord rec;
            rec.id = seq_id++;
            rec.tag = std::string(to_string(activity)) + "_v" + std::to_string(v);
            rec.split = "train";
            SyntheticSequence seq;
            seq.box = seq_box;
            double omega = 2.0 * M_PI / kGaitPeriod;
            for (int t = 0; t < spec.train_sequence_frames; ++t) {
                seq.poses.push_back(
                    template_to_pose(activity_pose(activity, v, omega, 0.0, t), seq_box));
            }
            auto heatmaps = render_heatmaps(seq, train_noise, rng);
            for (std::size_t t = 0; t < seq.poses.size(); ++t) {
                SequenceFrame f;
                f.box = seq.box;
                f.pose = seq.poses[t];
                f.activity = activity;
                f.heatmap_path = "heatmaps/seq" + std::to_string(rec.id) + "_f" +
                                 std::to_string(t) + ".hmap";
                write_heatmaps(out_dir / f.heatmap_path, heatmaps[t]);
                rec.frames.push_back(std::move(f));
            }
            manifest.sequences.push_back(std::move(rec));
        }
    }

    // test sequences: the activity steps through all three classes over the
    // run (timeline-style); frames and per-frame gaze only when requested
    HeatmapNoise test_noise = train_noise;
    test_noise.center_jitter = spec.heatmap_center_jitter;
    test_noise.outlier_prob = spec.heatmap_outlier_prob;
    for (int s = 0; s < spec.test_sequences; ++s) {
        SequenceRecord rec;
        rec.id = seq_id++;
        rec.tag = "test_" + std::to_string(s);
        rec.split = "test";
        int viewpoint = s % std::max(1, spec.viewpoints);
        double omega = 2.0 * M_PI * (1.0 + 0.06 * (rng.uniform() - 0.5)) / kGaitPeriod;
        double phase = rng.uniform(0.0, 2.0 * M_PI);
        const int frames = spec.test_sequence_frames;

        auto activity_at = [&](int t) {
            int segment = std::min(2, 3 * t / std::max(1, frames));
            return static_cast<ActivityLabel>((segment + s) % kActivityCount);
        };

        SyntheticSequence seq;
        seq.box = seq_box;
        std::vector<GazeFeature> gaze;
        for (int t = 0; t < frames; ++t) {
            ActivityLabel act = spec.sequence_images ? activity_at(t) : ActivityLabel::kNone;
            seq.poses.push_back(
                template_to_pose(activity_pose(act, viewpoint, omega, phase, t), seq_box));
            if (spec.sequence_images) {
                gaze.push_back(class_gaze(act, false, viewpoint, spec.gaze_noise, rng));
            }
        }
        auto heatmaps = render_heatmaps(seq, test_noise, rng);

        for (int t = 0; t < frames; ++t) {
            SequenceFrame f;
            f.box = seq.box;
            f.pose = seq.poses[t];
            f.activity = spec.sequence_images ? activity_at(t) : ActivityLabel::kNone;
            f.heatmap_path = "heatmaps/seq" + std::to_string(rec.id) + "_f" + std::to_string(t) +
                             ".hmap";
            write_heatmaps(out_dir / f.heatmap_path, heatmaps[t]);

            if (spec.sequence_images) {
                ImagePoint left = locate_hand(seq.poses[t].joints[kLeftElbow],
                                              seq.poses[t].joints[kLeftWrist], kDefaultHandRatio);
                ImagePoint right = locate_hand(seq.poses[t].joints[kRightElbow],
                                               seq.poses[t].joints[kRightWrist],
                                               kDefaultHandRatio);
                ObjectLabel right_obj = f.activity == ActivityLabel::kNone
                                            ? ObjectLabel::kNone
                                            : ObjectLabel::kCellphone;
                GrayPatch frame = background_frame(spec.seed * 523 + rec.id * 1000 +
                                                   static_cast<std::uint64_t>(t));
                HandSpec hands[2] = {
                    {left, ObjectLabel::kNone, f.activity == ActivityLabel::kTexting},
                    {right, right_obj, f.activity == ActivityLabel::kTexting},
                };
                draw_pedestrian(frame, seq.box, seq.poses[t], hands, spec.patch_noise,
                                spec.seed * 31 + rec.id * 1000 + static_cast<std::uint64_t>(t));
                f.image_path = "frames/seq" + std::to_string(rec.id) + "_f" + std::to_string(t) +
                               ".pgm";
                write_pgm(out_dir / f.image_path, frame);
            }
            rec.frames.push_back(std::move(f));
        }
        if (spec.sequence_images) {
            rec.gaze_path = "frames/seq" + std::to_string(rec.id) + ".gaze";
            save_sequence_gaze(out_dir / rec.gaze_path, gaze);
        }
        manifest.sequences.push_back(std::move(rec));
    }

    save_manifest(manifest, out_dir / "manifest.json");
    return load_manifest(out_dir / "manifest.json");
}

}  // namespace pedact
