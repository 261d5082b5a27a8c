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
#include "pedact/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "pedact/eval.hpp"
#include "pedact/pipeline.hpp"
#include "pedact/serialize.hpp"
#include "pedact/synthetic.hpp"

namespace pedact {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path resolve_run_dir(const std::string& out) {
    fs::path p(out);
    if (p.is_relative()) {
        if (const char* root = std::getenv("PEDACT_RUN_ROOT")) p = fs::path(root) / p;
    }
    fs::create_directories(p);
    return p;
}

// every run directory records its command, options and seed; `created` is the
// only field allowed to differ between identical runs
void write_metadata(const fs::path& dir, const std::string& command, const json& options) {
    json meta;
    meta["command"] = command;
    meta["options"] = options;
    meta["created"] = std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::system_clock::now().time_since_epoch())
                          .count();
    std::ofstream out(dir / "metadata.json", std::ios::binary);
    if (!out) throw DataError("cannot write metadata in " + dir.string());
    out << meta.dump(1) << "\n";
}

std::vector<std::uint32_t> split_ids(const DatasetManifest& manifest, const std::string& split,
                                     std::uint64_t split_seed) {
    std::vector<std::uint32_t> ids;
    if (split == "all") {
        for (const auto& r : manifest.pedestrians) ids.push_back(r.id);
        return ids;
    }
    SplitResult s = stratified_split(manifest.pedestrians, 0.75, split_seed);
    return split == "train" ? s.train_ids : s.test_ids;
}

void write_poses_csv(const fs::path& path, std::span<const UpperBodyPose> poses) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << "frame";
    for (const char* name : kJointNames) out << "," << name << "_x," << name << "_y";
    out << "\n";
    out.precision(17);
    for (std::size_t t = 0; t < poses.size(); ++t) {
        out << t;
        for (const auto& j : poses[t].joints) out << "," << j.x << "," << j.y;
        out << "\n";
    }
}

std::vector<UpperBodyPose> load_poses_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty poses file: " + path.string());
    std::vector<UpperBodyPose> poses;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        UpperBodyPose pose;
        std::istringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');  // frame index
        for (int j = 0; j < kJointCount; ++j) {
            if (!std::getline(ss, cell, ',')) throw DataError("short row in " + path.string());
            pose.joints[j].x = std::stod(cell);
            if (!std::getline(ss, cell, ',')) throw DataError("short row in " + path.string());
            pose.joints[j].y = std::stod(cell);
        }
        poses.push_back(pose);
    }
    return poses;
}

struct LabelRow {
    std::uint32_t id;
    int truth;
    int pred;
};

void write_labels_csv(const fs::path& path, std::span<const LabelRow> rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << "id,truth,pred\n";
    for (const auto& r : rows) out << r.id << "," << r.truth << "," << r.pred << "\n";
}

std::vector<LabelRow> load_labels_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "id,truth,pred") {
        throw DataError("bad header in " + path.string());
    }
    std::vector<LabelRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string id, truth, pred;
        std::getline(ss, id, ',');
        std::getline(ss, truth, ',');
        std::getline(ss, pred, ',');
        rows.push_back({static_cast<std::uint32_t>(std::stoul(id)), std::stoi(truth),
                        std::stoi(pred)});
    }
    if (rows.empty()) throw DataError("no rows in " + path.string());
    return rows;
}

std::vector<GpdmModel> load_bank(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".gpdm1") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw DataError("no .gpdm1 models in " + dir.string());
    std::vector<GpdmModel> bank;
    bank.reserve(files.size());
    for (const auto& f : files) bank.push_back(load_gpdm(f));
    return bank;
}

struct LoadedModels {
    DatasetManifest manifest;
    TrainedModels models;
};

LoadedModels load_models(const fs::path& dir) {
    std::ifstream in(dir / "models.json");
    if (!in) throw DataError("cannot open " + (dir / "models.json").string());
    json doc = json::parse(in);

    LoadedModels out;
    out.manifest = load_manifest(fs::path(doc.at("train_manifest").get<std::string>()));
    std::vector<std::uint32_t> ids = doc.at("train_ids").get<std::vector<std::uint32_t>>();
    auto svms = load_ensemble(dir / "ensemble.esvm1");
    out.models.exemplars = assemble_exemplars(out.manifest, ids, svms);
    out.models.fusion = load_fusion(dir / "fusion.fuse1");
    out.models.config.k = doc.value("k", 25);
    out.models.config.hand_ratio = doc.value("hand_ratio", kDefaultHandRatio);
    out.models.config.window_alpha = doc.value("window_alpha", kDefaultWindowAlpha);
    return out;
}

int cmd_synth(const SyntheticSpec& spec, const std::string& out) {
    fs::path dir = resolve_run_dir(out);
    generate_synthetic(spec, dir);
    json options;
    options["seed"] = spec.seed;
    options["peds_per_class"] = spec.peds_per_class;
    options["viewpoints"] = spec.viewpoints;
    options["joint_noise"] = spec.joint_noise;
    options["gaze_noise"] = spec.gaze_noise;
    options["patch_noise"] = spec.patch_noise;
    options["test_sequences"] = spec.test_sequences;
    options["train_sequence_frames"] = spec.train_sequence_frames;
    options["test_sequence_frames"] = spec.test_sequence_frames;
    options["heatmap_center_jitter"] = spec.heatmap_center_jitter;
    options["heatmap_outlier_prob"] = spec.heatmap_outlier_prob;
    options["sequence_images"] = spec.sequence_images;
    write_metadata(dir, "synth", options);
    std::cout << "synthetic dataset written to " << dir << "\n";
    return 0;
}

int cmd_train(const std::string& manifest_path, const std::string& out, TrainConfig config,
              std::uint64_t split_seed) {
    DatasetManifest manifest = load_manifest(manifest_path);
    std::vector<std::uint32_t> train_ids = split_ids(manifest, "train", split_seed);
    TrainedModels models = train_models(manifest, train_ids, config);

    fs::path dir = resolve_run_dir(out);
    std::vector<ExemplarSvm> svms;
    svms.reserve(models.exemplars.size() * 2);
    for (const Exemplar& e : models.exemplars) {
        svms.push_back(e.left_svm);
        svms.push_back(e.right_svm);
    }
    write_ensemble(dir / "ensemble.esvm1", svms);
    write_fusion(dir / "fusion.fuse1", models.fusion);

    json doc;
    doc["train_manifest"] = fs::absolute(manifest_path).string();
    doc["train_ids"] = train_ids;
    doc["split_seed"] = split_seed;
    doc["k"] = config.k;
    doc["hand_ratio"] = config.hand_ratio;
    doc["window_alpha"] = config.window_alpha;
    std::ofstream mout(dir / "models.json", std::ios::binary);
    mout << doc.dump(1) << "\n";

    json options;
    options["manifest"] = manifest_path;
    options["k"] = config.k;
    options["folds"] = config.folds;
    options["negative_pool"] = config.negative_pool;
    options["mining_rounds"] = config.mining.rounds;
    options["seed"] = config.seed;
    options["split_seed"] = split_seed;
    write_metadata(dir, "train", options);
    std::cout << "trained " << models.exemplars.size() << " exemplars ("
              << svms.size() << " ESVMs) -> " << dir << "\n";
    return 0;
}

int cmd_classify(const std::string& manifest_path, const std::string& models_dir,
                 const std::string& out, int k, const std::string& fusion_mode,
                 const std::string& split, std::uint64_t split_seed) {
    LoadedModels loaded = load_models(models_dir);
    if (k == 0) k = loaded.models.config.k;  // match the K the cues were trained with
    DatasetManifest manifest =
        manifest_path.empty() ? std::move(loaded.manifest) : load_manifest(manifest_path);

    std::vector<std::uint32_t> ids = split_ids(manifest, split, split_seed);
    std::vector<const PedestrianRecord*> selected = select_records(manifest, ids);
    std::vector<PedestrianRecord> records;
    records.reserve(selected.size());
    for (const auto* r : selected) records.push_back(*r);

    auto results = classify_records(manifest, records, loaded.models, k);

    fs::path dir = resolve_run_dir(out);
    std::vector<LabelRow> rows;
    rows.reserve(results.size());
    std::ofstream cues(dir / "cues.csv", std::ios::binary);
    cues << "id,gaze0,gaze1,gaze2,hand0,hand1,hand2,prior0,prior1,prior2\n";
    cues.precision(17);
    for (const auto& r : results) {
        int pred = static_cast<int>(fusion_mode == "map" ? r.map.label : r.fusion.label);
        rows.push_back({r.id, static_cast<int>(r.truth), pred});
        cues << r.id;
        for (double v : r.cues.flatten()) cues << "," << v;
        cues << "\n";
    }
    write_labels_csv(dir / "labels.csv", rows);

    std::vector<ActivityLabel> pred, truth;
    for (const auto& row : rows) {
        pred.push_back(static_cast<ActivityLabel>(row.pred));
        truth.push_back(static_cast<ActivityLabel>(row.truth));
    }
    AccuracyReport report = confusion_and_accuracy(pred, truth);
    std::cout << "classified " << rows.size() << " pedestrians (k=" << k << ", fusion="
              << fusion_mode << "): overall accuracy " << report.overall << "\n";

    json options;
    options["manifest"] = manifest_path;
    options["models"] = models_dir;
    options["k"] = k;
    options["fusion"] = fusion_mode;
    options["split"] = split;
    options["split_seed"] = split_seed;
    write_metadata(dir, "classify", options);
    return 0;
}

int cmd_train_gpdm(const std::string& manifest_path, const std::string& out) {
    DatasetManifest manifest = load_manifest(manifest_path);
    fs::path dir = resolve_run_dir(out);
    std::set<std::string> tags;
    int trained = 0;
    for (const SequenceRecord& seq : manifest.sequences) {
        if (seq.split != "train") continue;
        if (seq.tag.empty()) throw DataError("sequence " + std::to_string(seq.id) + " lacks a tag");
        if (!tags.insert(seq.tag).second) {
            throw DataError("duplicate training sequence tag '" + seq.tag + "'");
        }
        Eigen::MatrixXd features(seq.frames.size(), kPoseFeatureDim);
        for (std::size_t t = 0; t < seq.frames.size(); ++t) {
            PoseFeature f = encode_pose(seq.frames[t].box, seq.frames[t].pose);
            for (int i = 0; i < kPoseFeatureDim; ++i) features(t, i) = f[i];
        }
        GpdmModel model = train_gpdm(features, seq.tag);
        write_gpdm(dir / (seq.tag + ".gpdm1"), model);
        ++trained;
    }
    if (trained == 0) throw DataError("no training sequences in the manifest");

    json options;
    options["manifest"] = manifest_path;
    write_metadata(dir, "train-gpdm", options);
    std::cout << "trained " << trained << " GPDM models -> " << dir << "\n";
    return 0;
}

int cmd_track(const std::string& manifest_path, const std::string& bank_dir,
              const std::string& out, int rate_hz, int particles, std::uint64_t seed,
              int esvm_period, const std::string& models_dir, const std::string& split) {
    DatasetManifest manifest = load_manifest(manifest_path);
    std::vector<GpdmModel> bank = load_bank(bank_dir);

    std::optional<LoadedModels> models;
    std::optional<PoseIndex> index;
    if (!models_dir.empty()) {
        models = load_models(models_dir);
        index.emplace(PoseIndex::build(models->models.exemplars));
    }

    fs::path dir = resolve_run_dir(out);
    TrackConfig config;
    config.particle_count = particles;
    config.measurement_period = 30 / rate_hz;
    config.seed = seed;

    int tracked = 0;
    for (const SequenceRecord& seq : manifest.sequences) {
        if (split != "all" && seq.split != split) continue;

        std::vector<JointHeatmaps> heatmaps(seq.frames.size());
        std::vector<TrackFrame> frames(seq.frames.size());
        for (std::size_t t = 0; t < seq.frames.size(); ++t) {
            if (seq.frames[t].heatmap_path.empty()) {
                throw DataError("sequence " + std::to_string(seq.id) + " frame " +
                                std::to_string(t) + " lacks a heatmap");
            }
            heatmaps[t] = load_heatmaps(manifest.resolve(seq.frames[t].heatmap_path));
            heatmaps[t].box = seq.frames[t].box;
            frames[t] = {seq.frames[t].box, &heatmaps[t]};
        }

        auto poses = track_sequence(frames, bank, config);
        write_poses_csv(dir / ("seq" + std::to_string(seq.id) + "_poses.csv"), poses);
        ++tracked;

        // per-frame activity output with cached hand evidence
        if (models) {
            FrameCache frame_cache(manifest);
            std::vector<GazeFeature> gaze;
            if (!seq.gaze_path.empty()) {
                gaze = load_sequence_gaze(manifest.resolve(seq.gaze_path), seq.frames.size());
            }

            const TrainConfig& tc = models->models.config;
            auto record_for_frame = [&](int t) {
                PedestrianRecord rec;
                rec.box = seq.frames[t].box;
                rec.pose = poses[t];
                rec.image_path = seq.frames[t].image_path;
                if (!gaze.empty()) rec.gaze = gaze[t];
                return rec;
            };

            SequentialClassifier classifier(
                esvm_period,
                [&](int t) {
                    PedestrianRecord rec = record_for_frame(t);
                    NeighborSet neighbors = index->query(encode_pose(rec.box, rec.pose),
                                                         models->models.config.k);
                    HandScores hs = score_hand_neighbors(
                        rec, frame_cache.get(rec.image_path), neighbors, tc);
                    std::array<double, kActivityCount> hand{};
                    for (int y = 0; y < kActivityCount; ++y) {
                        hand[y] = hand_likelihood(hs.left, hs.right, neighbors,
                                                  static_cast<ActivityLabel>(y));
                    }
                    return hand;
                },
                &models->models.fusion);

            std::vector<ActivityLabel> pred, truth;
            for (std::size_t t = 0; t < seq.frames.size(); ++t) {
                PedestrianRecord rec = record_for_frame(static_cast<int>(t));
                NeighborSet neighbors =
                    index->query(encode_pose(rec.box, rec.pose), models->models.config.k);
                std::array<double, kActivityCount> gaze_cue{};
                if (!gaze.empty()) {
                    for (int y = 0; y < kActivityCount; ++y) {
                        gaze_cue[y] =
                            gaze_likelihood(rec.gaze, neighbors, static_cast<ActivityLabel>(y));
                    }
                }
                pred.push_back(classifier.classify_frame(static_cast<int>(t), gaze_cue,
                                                         pose_prior_all(neighbors)));
                truth.push_back(seq.frames[t].activity);
            }
            TimelineResult timeline = sequence_timeline(pred, truth);
            write_timeline_csv(dir / ("seq" + std::to_string(seq.id) + "_labels.csv"), timeline);
        }
    }
    if (tracked == 0) throw DataError("no sequences matched split '" + split + "'");

    json options;
    options["manifest"] = manifest_path;
    options["bank"] = bank_dir;
    options["rate_hz"] = rate_hz;
    options["particles"] = particles;
    options["seed"] = seed;
    options["esvm_period"] = esvm_period;
    options["split"] = split;
    write_metadata(dir, "track", options);
    std::cout << "tracked " << tracked << " sequences -> " << dir << "\n";
    return 0;
}

int cmd_eval_pck(const std::string& manifest_path, const std::string& poses_dir,
                 const std::string& out, double threshold, const std::string& split) {
    DatasetManifest manifest = load_manifest(manifest_path);
    fs::path dir = resolve_run_dir(out);
    std::ofstream csv(dir / "pck.csv", std::ios::binary);
    csv << "sequence";
    for (const char* name : kJointNames) csv << "," << name;
    csv << ",mean\n";

    int evaluated = 0;
    for (const SequenceRecord& seq : manifest.sequences) {
        if (split != "all" && seq.split != split) continue;
        fs::path poses_path = fs::path(poses_dir) / ("seq" + std::to_string(seq.id) + "_poses.csv");
        if (!fs::exists(poses_path)) continue;
        auto predicted = load_poses_csv(poses_path);
        std::vector<UpperBodyPose> truth;
        std::vector<PedestrianBox> boxes;
        for (const auto& f : seq.frames) {
            truth.push_back(f.pose);
            boxes.push_back(f.box);
        }
        auto scores = pck(predicted, truth, boxes, {threshold});
        csv << seq.id;
        for (double s : scores) csv << "," << s;
        csv << "," << mean_pck(scores) << "\n";
        ++evaluated;
    }
    if (evaluated == 0) throw DataError("no sequences with tracked poses found");

    json options;
    options["manifest"] = manifest_path;
    options["poses"] = poses_dir;
    options["threshold"] = threshold;
    write_metadata(dir, "evaluate pck", options);
    std::cout << "pck written for " << evaluated << " sequences -> " << dir << "\n";
    return 0;
}

int cmd_eval_confusion(const std::string& labels_path, const std::string& out) {
    auto rows = load_labels_csv(labels_path);
    std::vector<ActivityLabel> pred, truth;
    for (const auto& r : rows) {
        pred.push_back(static_cast<ActivityLabel>(r.pred));
        truth.push_back(static_cast<ActivityLabel>(r.truth));
    }
    AccuracyReport report = confusion_and_accuracy(pred, truth);

    fs::path dir = resolve_run_dir(out);
    std::ofstream csv(dir / "confusion.csv", std::ios::binary);
    csv << "truth\\pred,none,texting,phone_call\n";
    for (int y = 0; y < kActivityCount; ++y) {
        csv << to_string(static_cast<ActivityLabel>(y));
        for (int p = 0; p < kActivityCount; ++p) csv << "," << report.confusion.counts[y][p];
        csv << "\n";
    }
    std::ofstream acc(dir / "accuracy.csv", std::ios::binary);
    acc << "class,accuracy\n";
    for (int y = 0; y < kActivityCount; ++y) {
        acc << to_string(static_cast<ActivityLabel>(y)) << "," << report.per_class[y] << "\n";
    }
    acc << "overall," << report.overall << "\n";

    json options;
    options["labels"] = labels_path;
    write_metadata(dir, "evaluate confusion", options);
    std::cout << "overall accuracy " << report.overall << " -> " << dir << "\n";
    return 0;
}

int cmd_eval_sweep(const std::string& manifest_path, const std::string& out,
                   std::vector<double> alphas, double hand_ratio) {
    DatasetManifest manifest = load_manifest(manifest_path);
    std::vector<HandSample> samples;
    for (const PedestrianRecord& r : manifest.pedestrians) {
        if (r.left_hand_truth) {
            samples.push_back({r.box, r.pose.joints[kLeftElbow], r.pose.joints[kLeftWrist],
                               *r.left_hand_truth});
        }
        if (r.right_hand_truth) {
            samples.push_back({r.box, r.pose.joints[kRightElbow], r.pose.joints[kRightWrist],
                               *r.right_hand_truth});
        }
    }
    if (samples.empty()) throw DataError("no hand ground-truth points in the manifest");

    auto rows = window_containment_sweep(samples, alphas, hand_ratio);
    fs::path dir = resolve_run_dir(out);
    std::ofstream csv(dir / "sweep.csv", std::ios::binary);
    csv << "alpha,wrist_centered,hand_centered\n";
    for (const auto& row : rows) {
        csv << row.alpha << "," << row.wrist_fraction << "," << row.hand_fraction << "\n";
    }

    json options;
    options["manifest"] = manifest_path;
    options["alphas"] = alphas;
    options["hand_ratio"] = hand_ratio;
    write_metadata(dir, "evaluate sweep", options);
    std::cout << "containment sweep over " << samples.size() << " hands -> " << dir << "\n";
    return 0;
}

int cmd_eval_timeline(const std::string& labels_path, const std::string& out, bool svg) {
    TimelineResult timeline = load_timeline_csv(labels_path);
    fs::path dir = resolve_run_dir(out);
    write_timeline_csv(dir / "timeline.csv", timeline);
    if (svg) write_timeline_svg(dir / "timeline.svg", timeline);
    std::ofstream agree(dir / "agreement.txt", std::ios::binary);
    agree << timeline.agreement << "\n";

    json options;
    options["labels"] = labels_path;
    write_metadata(dir, "evaluate timeline", options);
    std::cout << "frame agreement " << timeline.agreement << " -> " << dir << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"pedestrian phone-activity recognition pipeline"};
    app.name("pedact");
    app.require_subcommand(1);

    // synth
    SyntheticSpec spec;
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "generate a seeded synthetic dataset");
    synth->add_option("--out", synth_out)->required();
    synth->add_option("--seed", spec.seed);
    synth->add_option("--peds-per-class", spec.peds_per_class);
    synth->add_option("--viewpoints", spec.viewpoints);
    synth->add_option("--joint-noise", spec.joint_noise);
    synth->add_option("--gaze-noise", spec.gaze_noise);
    synth->add_option("--patch-noise", spec.patch_noise);
    synth->add_option("--test-sequences", spec.test_sequences);
    synth->add_option("--train-frames", spec.train_sequence_frames);
    synth->add_option("--test-frames", spec.test_sequence_frames);
    synth->add_option("--heatmap-jitter", spec.heatmap_center_jitter);
    synth->add_option("--outlier-prob", spec.heatmap_outlier_prob);
    synth->add_flag("--sequence-images", spec.sequence_images);

    // train
    std::string train_manifest, train_out;
    TrainConfig tconfig;
    std::uint64_t split_seed = 0;
    auto* train = app.add_subcommand("train", "train ESVMs, exemplar index and fusion SVM");
    train->add_option("--manifest", train_manifest)->required();
    train->add_option("--out", train_out)->required();
    train->add_option("--k", tconfig.k);
    train->add_option("--folds", tconfig.folds);
    train->add_option("--pool", tconfig.negative_pool);
    train->add_option("--rounds", tconfig.mining.rounds);
    train->add_option("--cache-cap", tconfig.mining.cache_cap);
    train->add_option("--alpha", tconfig.window_alpha);
    train->add_option("--hand-ratio", tconfig.hand_ratio);
    train->add_option("--seed", tconfig.seed);
    train->add_option("--split-seed", split_seed);

    // classify
    std::string cls_manifest, cls_models, cls_out, cls_fusion = "svm", cls_split = "test";
    int cls_k = 0;  // 0 = reuse the trained k
    std::uint64_t cls_split_seed = 0;
    auto* classify = app.add_subcommand("classify", "per-pedestrian activity classification");
    classify->add_option("--manifest", cls_manifest);
    classify->add_option("--models", cls_models)->required();
    classify->add_option("--out", cls_out)->required();
    classify->add_option("--k", cls_k)->check(CLI::IsMember({25, 50, 100, 200}));
    classify->add_option("--fusion", cls_fusion)->check(CLI::IsMember({"map", "svm"}));
    classify->add_option("--split", cls_split)->check(CLI::IsMember({"train", "test", "all"}));
    classify->add_option("--split-seed", cls_split_seed);

    // train-gpdm
    std::string gpdm_manifest, gpdm_out;
    auto* train_gpdm_cmd = app.add_subcommand("train-gpdm", "train the GPDM bank");
    train_gpdm_cmd->add_option("--manifest", gpdm_manifest)->required();
    train_gpdm_cmd->add_option("--out", gpdm_out)->required();

    // track
    std::string trk_manifest, trk_bank, trk_out, trk_models, trk_split = "test";
    int trk_rate = 30, trk_particles = 200, trk_period = 50;
    std::uint64_t trk_seed = 0;
    auto* track = app.add_subcommand("track", "particle-filter pose tracking over sequences");
    track->add_option("--manifest", trk_manifest)->required();
    track->add_option("--bank", trk_bank)->required();
    track->add_option("--out", trk_out)->required();
    track->add_option("--rate-hz", trk_rate)->check(CLI::IsMember({30, 15, 10, 5}));
    track->add_option("--particles", trk_particles)->check(CLI::PositiveNumber);
    track->add_option("--seed", trk_seed);
    track->add_option("--esvm-period", trk_period)->check(CLI::PositiveNumber);
    track->add_option("--models", trk_models);
    track->add_option("--split", trk_split)->check(CLI::IsMember({"train", "test", "all"}));

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "evaluation reports");
    evaluate->require_subcommand(1);

    std::string pck_manifest, pck_poses, pck_out, pck_split = "test";
    double pck_threshold = 0.1;
    auto* eval_pck = evaluate->add_subcommand("pck", "keypoint scores of tracked sequences");
    eval_pck->add_option("--manifest", pck_manifest)->required();
    eval_pck->add_option("--poses", pck_poses)->required();
    eval_pck->add_option("--out", pck_out)->required();
    eval_pck->add_option("--threshold", pck_threshold);
    eval_pck->add_option("--split", pck_split)->check(CLI::IsMember({"train", "test", "all"}));

    std::string conf_labels, conf_out;
    auto* eval_conf = evaluate->add_subcommand("confusion", "confusion matrix and accuracies");
    eval_conf->add_option("--labels", conf_labels)->required();
    eval_conf->add_option("--out", conf_out)->required();

    std::string sweep_manifest, sweep_out;
    std::vector<double> sweep_alphas = {0.05, 0.07, 0.10, 0.12, 0.15, 0.20};
    double sweep_ratio = kDefaultHandRatio;
    auto* eval_sweep = evaluate->add_subcommand("sweep", "hand-window containment sweep");
    eval_sweep->add_option("--manifest", sweep_manifest)->required();
    eval_sweep->add_option("--out", sweep_out)->required();
    eval_sweep->add_option("--alphas", sweep_alphas);
    eval_sweep->add_option("--hand-ratio", sweep_ratio);

    std::string tl_labels, tl_out;
    bool tl_svg = false;
    auto* eval_tl = evaluate->add_subcommand("timeline", "per-frame label timeline");
    eval_tl->add_option("--labels", tl_labels)->required();
    eval_tl->add_option("--out", tl_out)->required();
    eval_tl->add_flag("--svg", tl_svg);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (synth->parsed()) return cmd_synth(spec, synth_out);
        if (train->parsed()) return cmd_train(train_manifest, train_out, tconfig, split_seed);
        if (classify->parsed()) {
            return cmd_classify(cls_manifest, cls_models, cls_out, cls_k, cls_fusion, cls_split,
                                cls_split_seed);
        }
        if (train_gpdm_cmd->parsed()) return cmd_train_gpdm(gpdm_manifest, gpdm_out);
        if (track->parsed()) {
            return cmd_track(trk_manifest, trk_bank, trk_out, trk_rate, trk_particles, trk_seed,
                             trk_period, trk_models, trk_split);
        }
        if (evaluate->parsed()) {
            if (eval_pck->parsed()) {
                return cmd_eval_pck(pck_manifest, pck_poses, pck_out, pck_threshold, pck_split);
            }
            if (eval_conf->parsed()) return cmd_eval_confusion(conf_labels, conf_out);
            if (eval_sweep->parsed()) {
                return cmd_eval_sweep(sweep_manifest, sweep_out, sweep_alphas, sweep_ratio);
            }
            if (eval_tl->parsed()) return cmd_eval_timeline(tl_labels, tl_out, tl_svg);
        }
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace pedact
