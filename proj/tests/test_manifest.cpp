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

#include <filesystem>
#include <fstream>

#include "pedact/common.hpp"
#include "pedact/manifest.hpp"

using namespace pedact;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* name) {
    fs::path dir = fs::temp_directory_path() / "pedact_manifest_test" / name;
    fs::create_directories(dir);
    return dir;
}

DatasetManifest minimal_manifest() {
    DatasetManifest m;
    PedestrianRecord r;
    r.id = 1;
    r.box = {10, 20, 100, 200};
    for (int j = 0; j < kJointCount; ++j) r.pose.joints[j] = {20.0 + j, 40.0 + 2.0 * j};
    r.gaze.values[0] = 1.0;
    r.activity = ActivityLabel::kTexting;
    r.left_object = ObjectLabel::kCellphone;
    r.right_object = ObjectLabel::kNone;
    m.pedestrians.push_back(r);
    return m;
}

}  // namespace

TEST_CASE("minimal manifest round trips and splits into train") {
    fs::path dir = temp_dir("minimal");
    DatasetManifest m = minimal_manifest();
    save_manifest(m, dir / "manifest.json");
    DatasetManifest back = load_manifest(dir / "manifest.json");

    REQUIRE(back.pedestrians.size() == 1);
    const auto& r = back.pedestrians[0];
    CHECK(r.id == 1);
    CHECK(r.activity == ActivityLabel::kTexting);
    CHECK(r.left_object == ObjectLabel::kCellphone);
    CHECK(r.box.w == doctest::Approx(100));
    CHECK(r.pose.joints[3].y == doctest::Approx(46));

    // a 1-record class lands in train (round(0.75 * 1) = 1)
    SplitResult split = stratified_split(back.pedestrians, 0.75, 0);
    CHECK(split.train_ids.size() == 1);
    CHECK(split.test_ids.empty());
}

TEST_CASE("duplicate ids are rejected") {
    fs::path dir = temp_dir("dup");
    DatasetManifest m = minimal_manifest();
    m.pedestrians.push_back(m.pedestrians[0]);
    save_manifest(m, dir / "manifest.json");
    CHECK_THROWS_AS(load_manifest(dir / "manifest.json"), DataError);
}

TEST_CASE("schema violations name the record and field") {
    fs::path dir = temp_dir("schema");
    {
        std::ofstream out(dir / "bad.json");
        out << R"({"pedestrians":[{"id":7,"box":[0,0,-5,10],)"
            << R"("pose":[[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]],)"
            << R"("activity":0,"left_object":"none","right_object":"none",)"
            << R"("gaze":[1)";
        for (int i = 1; i < kGazeFeatureDim; ++i) out << ",0";
        out << "]}]}";
    }
    try {
        load_manifest(dir / "bad.json");
        FAIL("expected DataError");
    } catch (const DataError& e) {
        std::string msg = e.what();
        CHECK(msg.find("record 7") != std::string::npos);
        CHECK(msg.find("box") != std::string::npos);
    }
}

TEST_CASE("missing referenced files are reported") {
    fs::path dir = temp_dir("missing");
    DatasetManifest m = minimal_manifest();
    m.pedestrians[0].image_path = "frames/nonexistent.pgm";
    save_manifest(m, dir / "manifest.json");
    CHECK_THROWS_AS(load_manifest(dir / "manifest.json"), DataError);
}

TEST_CASE("stratified split preserves class fractions within one record") {
    Rng rng(50);
    std::vector<PedestrianRecord> records;
    // class fractions 0.7 / 0.2 / 0.1 over 100 records
    for (int i = 0; i < 100; ++i) {
        PedestrianRecord r = minimal_manifest().pedestrians[0];
        r.id = static_cast<std::uint32_t>(i);
        r.activity = i < 70 ? ActivityLabel::kNone
                            : (i < 90 ? ActivityLabel::kTexting : ActivityLabel::kPhoneCall);
        records.push_back(r);
    }
    SplitResult split = stratified_split(records, 0.75, 1234);
    CHECK(split.train_ids.size() + split.test_ids.size() == 100);

    auto class_counts = [&](const std::vector<std::uint32_t>& ids) {
        std::array<int, 3> counts{};
        for (auto id : ids) counts[static_cast<int>(records[id].activity)]++;
        return counts;
    };
    auto train_counts = class_counts(split.train_ids);
    auto test_counts = class_counts(split.test_ids);
    // per-class: round(0.75*70)=53/17, round(0.75*20)=15/5, round(0.75*10)=8/2
    CHECK(train_counts[0] == 53);
    CHECK(test_counts[0] == 17);
    CHECK(train_counts[1] == 15);
    CHECK(test_counts[1] == 5);
    CHECK(train_counts[2] == 8);
    CHECK(test_counts[2] == 2);

    // per-class test fraction within one record of the train fraction target
    for (int c = 0; c < 3; ++c) {
        double total = train_counts[c] + test_counts[c];
        CHECK(std::abs(train_counts[c] - 0.75 * total) <= 1.0);
    }

    // deterministic for a fixed seed
    SplitResult again = stratified_split(records, 0.75, 1234);
    CHECK(again.train_ids == split.train_ids);
}

TEST_CASE("sequence gaze file round trip") {
    fs::path dir = temp_dir("gaze");
    Rng rng(5);
    std::vector<GazeFeature> gaze(7);
    for (auto& g : gaze) {
        for (double& v : g.values) v = rng.uniform();
    }
    save_sequence_gaze(dir / "seq.gaze", gaze);
    auto back = load_sequence_gaze(dir / "seq.gaze", 7);
    REQUIRE(back.size() == 7);
    for (int t = 0; t < 7; ++t) {
        for (int i = 0; i < kGazeFeatureDim; ++i) {
            CHECK(back[t].values[i] == doctest::Approx(gaze[t].values[i]).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(load_sequence_gaze(dir / "seq.gaze", 9), DataError);
}
