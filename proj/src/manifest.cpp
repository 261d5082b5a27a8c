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
#include "pedact/manifest.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "pedact/common.hpp"

namespace pedact {

using nlohmann::json;

namespace {

std::string record_context(std::uint32_t id, const char* field) {
    return "record " + std::to_string(id) + ", field '" + field + "'";
}

ActivityLabel parse_activity(const json& j, std::uint32_t id, const char* field) {
    if (!j.is_number_integer() || j.get<int>() < 0 || j.get<int>() >= kActivityCount) {
        throw DataError(record_context(id, field) + ": activity must be 0, 1 or 2");
    }
    return static_cast<ActivityLabel>(j.get<int>());
}

ObjectLabel parse_object(const json& j, std::uint32_t id, const char* field) {
    if (!j.is_string()) throw DataError(record_context(id, field) + ": expected a string");
    auto s = j.get<std::string>();
    if (s == "none") return ObjectLabel::kNone;
    if (s == "cellphone") return ObjectLabel::kCellphone;
    if (s == "other") return ObjectLabel::kOther;
    throw DataError(record_context(id, field) + ": unknown object label '" + s + "'");
}

PedestrianBox parse_box(const json& j, std::uint32_t id, const char* field) {
    if (!j.is_array() || j.size() != 4) {
        throw DataError(record_context(id, field) + ": box must be [x, y, w, h]");
    }
    PedestrianBox box{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
                      j[3].get<double>()};
    if (!box.valid()) throw DataError(record_context(id, field) + ": box needs w > 0 and h > 0");
    return box;
}

UpperBodyPose parse_pose(const json& j, std::uint32_t id, const char* field) {
    if (!j.is_array() || j.size() != kJointCount) {
        throw DataError(record_context(id, field) + ": pose must list the 8 upper-body joints");
    }
    UpperBodyPose pose;
    for (int i = 0; i < kJointCount; ++i) {
        if (!j[i].is_array() || j[i].size() != 2) {
            throw DataError(record_context(id, field) + ": joint must be [x, y]");
        }
        pose.joints[i] = {j[i][0].get<double>(), j[i][1].get<double>()};
    }
    if (!pose.valid()) throw DataError(record_context(id, field) + ": non-finite joint");
    return pose;
}

GazeFeature parse_gaze_inline(const json& j, std::uint32_t id, const char* field) {
    if (!j.is_array() || j.size() != kGazeFeatureDim) {
        throw DataError(record_context(id, field) + ": gaze must hold 169 values");
    }
    GazeFeature gaze;
    for (int i = 0; i < kGazeFeatureDim; ++i) gaze.values[i] = j[i].get<double>();
    validate_gaze(gaze, record_context(id, field));
    return gaze;
}

GazeFeature load_gaze_file(const std::filesystem::path& path, std::uint32_t id,
                           const char* field) {
    std::ifstream in(path);
    if (!in) throw DataError(record_context(id, field) + ": cannot open " + path.string());
    GazeFeature gaze;
    for (int i = 0; i < kGazeFeatureDim; ++i) {
        if (!(in >> gaze.values[i])) {
            throw DataError(record_context(id, field) + ": short gaze file " + path.string());
        }
    }
    validate_gaze(gaze, record_context(id, field));
    return gaze;
}

void require_file(const std::filesystem::path& path, std::uint32_t id, const char* field) {
    if (!std::filesystem::exists(path)) {
        throw DataError(record_context(id, field) + ": referenced file missing: " + path.string());
    }
}

json box_to_json(const PedestrianBox& b) { return json::array({b.x, b.y, b.w, b.h}); }

json pose_to_json(const UpperBodyPose& p) {
    json arr = json::array();
    for (const auto& pt : p.joints) arr.push_back(json::array({pt.x, pt.y}));
    return arr;
}

}  // namespace

DatasetManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open manifest: " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw DataError("manifest is not valid JSON: " + std::string(e.what()));
    }

    DatasetManifest manifest;
    manifest.root = path.parent_path();
    std::set<std::uint32_t> seen_ids;

    auto check_unique = [&](std::uint32_t id) {
        if (!seen_ids.insert(id).second) {
            throw DataError("duplicate record id " + std::to_string(id));
        }
    };

    for (const json& rec : doc.value("pedestrians", json::array())) {
        PedestrianRecord r;
        if (!rec.contains("id") || !rec["id"].is_number_unsigned()) {
            throw DataError("pedestrian record without a valid 'id'");
        }
        r.id = rec["id"].get<std::uint32_t>();
        check_unique(r.id);
        r.box = parse_box(rec.at("box"), r.id, "box");
        r.pose = parse_pose(rec.at("pose"), r.id, "pose");
        r.activity = parse_activity(rec.at("activity"), r.id, "activity");
        r.left_object = parse_object(rec.at("left_object"), r.id, "left_object");
        r.right_object = parse_object(rec.at("right_object"), r.id, "right_object");

        if (rec.contains("gaze")) {
            r.gaze = parse_gaze_inline(rec["gaze"], r.id, "gaze");
        } else if (rec.contains("gaze_path")) {
            auto p = manifest.resolve(rec["gaze_path"].get<std::string>());
            require_file(p, r.id, "gaze_path");
            r.gaze = load_gaze_file(p, r.id, "gaze_path");
        } else {
            throw DataError(record_context(r.id, "gaze") + ": missing (inline or gaze_path)");
        }

        if (rec.contains("image")) {
            r.image_path = rec["image"].get<std::string>();
            require_file(manifest.resolve(r.image_path), r.id, "image");
        }
        if (rec.contains("left_hand")) {
            r.left_hand_truth =
                ImagePoint{rec["left_hand"][0].get<double>(), rec["left_hand"][1].get<double>()};
        }
        if (rec.contains("right_hand")) {
            r.right_hand_truth =
                ImagePoint{rec["right_hand"][0].get<double>(), rec["right_hand"][1].get<double>()};
        }
        manifest.pedestrians.push_back(std::move(r));
    }

    for (const json& rec : doc.value("sequences", json::array())) {
        SequenceRecord r;
        if (!rec.contains("id") || !rec["id"].is_number_unsigned()) {
            throw DataError("sequence record without a valid 'id'");
        }
        r.id = rec["id"].get<std::uint32_t>();
        check_unique(r.id);
        r.tag = rec.value("tag", std::string{});
        r.split = rec.value("split", std::string{"test"});
        if (r.split != "train" && r.split != "test") {
            throw DataError(record_context(r.id, "split") + ": must be 'train' or 'test'");
        }
        if (!rec.contains("frames") || !rec["frames"].is_array() || rec["frames"].empty()) {
            throw DataError(record_context(r.id, "frames") + ": sequence needs frames");
        }
        for (const json& fj : rec["frames"]) {
            SequenceFrame f;
            f.box = parse_box(fj.at("box"), r.id, "frames.box");
            f.pose = parse_pose(fj.at("pose"), r.id, "frames.pose");
            f.activity = parse_activity(fj.value("activity", json(0)), r.id, "frames.activity");
            if (fj.contains("heatmap")) {
                f.heatmap_path = fj["heatmap"].get<std::string>();
                require_file(manifest.resolve(f.heatmap_path), r.id, "frames.heatmap");
            }
            if (fj.contains("image")) {
                f.image_path = fj["image"].get<std::string>();
                require_file(manifest.resolve(f.image_path), r.id, "frames.image");
            }
            r.frames.push_back(std::move(f));
        }
        if (rec.contains("gaze_path")) {
            r.gaze_path = rec["gaze_path"].get<std::string>();
            require_file(manifest.resolve(r.gaze_path), r.id, "gaze_path");
        }
        manifest.sequences.push_back(std::move(r));
    }
    return manifest;
}

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
    json doc;
    doc["pedestrians"] = json::array();
    for (const PedestrianRecord& r : manifest.pedestrians) {
        json rec;
        rec["id"] = r.id;
        rec["box"] = box_to_json(r.box);
        rec["pose"] = pose_to_json(r.pose);
        rec["activity"] = static_cast<int>(r.activity);
        rec["left_object"] = to_string(r.left_object);
        rec["right_object"] = to_string(r.right_object);
        rec["gaze"] = r.gaze.values;
        if (!r.image_path.empty()) rec["image"] = r.image_path;
        if (r.left_hand_truth) {
            rec["left_hand"] = json::array({r.left_hand_truth->x, r.left_hand_truth->y});
        }
        if (r.right_hand_truth) {
            rec["right_hand"] = json::array({r.right_hand_truth->x, r.right_hand_truth->y});
        }
        doc["pedestrians"].push_back(std::move(rec));
    }
    doc["sequences"] = json::array();
    for (const SequenceRecord& r : manifest.sequences) {
        json rec;
        rec["id"] = r.id;
        rec["tag"] = r.tag;
        rec["split"] = r.split;
        rec["frames"] = json::array();
        for (const SequenceFrame& f : r.frames) {
            json fj;
            fj["box"] = box_to_json(f.box);
            fj["pose"] = pose_to_json(f.pose);
            fj["activity"] = static_cast<int>(f.activity);
            if (!f.heatmap_path.empty()) fj["heatmap"] = f.heatmap_path;
            if (!f.image_path.empty()) fj["image"] = f.image_path;
            rec["frames"].push_back(std::move(fj));
        }
        if (!r.gaze_path.empty()) rec["gaze_path"] = r.gaze_path;
        doc["sequences"].push_back(std::move(rec));
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write manifest: " + path.string());
    out << doc.dump(1) << "\n";
}

SplitResult stratified_split(std::span<const PedestrianRecord> records, double train_fraction,
                             std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw std::invalid_argument("stratified_split: fraction must be in (0,1)");
    }
    std::array<std::vector<std::uint32_t>, kActivityCount> by_class;
    for (const PedestrianRecord& r : records) {
        by_class[static_cast<int>(r.activity)].push_back(r.id);
    }

    SplitResult out;
    Rng rng(seed);
    for (auto& ids : by_class) {
        std::sort(ids.begin(), ids.end());
        rng.shuffle(ids);
        std::size_t n_train =
            static_cast<std::size_t>(std::floor(train_fraction * ids.size() + 0.5));
        n_train = std::min(n_train, ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i) {
            (i < n_train ? out.train_ids : out.test_ids).push_back(ids[i]);
        }
    }
    std::sort(out.train_ids.begin(), out.train_ids.end());
    std::sort(out.test_ids.begin(), out.test_ids.end());
    return out;
}

std::vector<GazeFeature> load_sequence_gaze(const std::filesystem::path& path,
                                            std::size_t expected_frames) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open gaze file: " + path.string());
    std::vector<GazeFeature> out(expected_frames);
    for (std::size_t t = 0; t < expected_frames; ++t) {
        for (int i = 0; i < kGazeFeatureDim; ++i) {
            if (!(in >> out[t].values[i])) {
                throw DataError("gaze file too short: " + path.string());
            }
        }
        validate_gaze(out[t], "sequence gaze frame " + std::to_string(t));
    }
    return out;
}

void save_sequence_gaze(const std::filesystem::path& path, std::span<const GazeFeature> gaze) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write gaze file: " + path.string());
    out.precision(17);
    for (const GazeFeature& g : gaze) {
        for (int i = 0; i < kGazeFeatureDim; ++i) {
            out << g.values[i] << (i + 1 == kGazeFeatureDim ? '\n' : ' ');
        }
    }
}

}  // namespace pedact
