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
#include "pedact/eval.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pedact/common.hpp"
#include "pedact/pose_features.hpp"

namespace pedact {

std::array<double, kJointCount> pck(std::span<const UpperBodyPose> predicted,
                                    std::span<const UpperBodyPose> truth,
                                    std::span<const PedestrianBox> boxes,
                                    const PckConfig& config) {
    if (predicted.size() != truth.size() || predicted.size() != boxes.size()) {
        throw std::invalid_argument("pck: sequence length mismatch");
    }
    if (predicted.empty()) throw std::invalid_argument("pck: empty sequences");
    if (!(config.threshold_ratio > 0.0)) throw std::invalid_argument("pck: threshold must be > 0");

    std::array<double, kJointCount> scores{};
    for (std::size_t t = 0; t < predicted.size(); ++t) {
        double threshold = config.threshold_ratio * boxes[t].h;
        for (int j = 0; j < kJointCount; ++j) {
            double dx = predicted[t].joints[j].x - truth[t].joints[j].x;
            double dy = predicted[t].joints[j].y - truth[t].joints[j].y;
            if (std::sqrt(dx * dx + dy * dy) <= threshold) scores[j] += 1.0;
        }
    }
    for (double& s : scores) s /= static_cast<double>(predicted.size());
    return scores;
}

double mean_pck(const std::array<double, kJointCount>& per_joint) {
    double sum = 0.0;
    for (double s : per_joint) sum += s;
    return sum / kJointCount;
}

std::size_t ConfusionMatrix::total() const {
    std::size_t n = 0;
    for (const auto& row : counts) {
        for (std::size_t c : row) n += c;
    }
    return n;
}

std::size_t ConfusionMatrix::row_sum(int y) const {
    std::size_t n = 0;
    for (std::size_t c : counts[y]) n += c;
    return n;
}

AccuracyReport confusion_and_accuracy(std::span<const ActivityLabel> predicted,
                                      std::span<const ActivityLabel> truth) {
    if (predicted.size() != truth.size()) {
        throw std::invalid_argument("confusion_and_accuracy: length mismatch");
    }
    if (predicted.empty()) throw std::invalid_argument("confusion_and_accuracy: empty input");

    AccuracyReport report;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        report.confusion.counts[static_cast<int>(truth[i])][static_cast<int>(predicted[i])]++;
    }
    std::size_t correct = 0;
    for (int y = 0; y < kActivityCount; ++y) {
        std::size_t support = report.confusion.row_sum(y);
        std::size_t diag = report.confusion.counts[y][y];
        report.per_class[y] = support ? static_cast<double>(diag) / support : 0.0;
        correct += diag;
    }
    report.overall = static_cast<double>(correct) / static_cast<double>(predicted.size());
    return report;
}

std::vector<ContainmentRow> window_containment_sweep(std::span<const HandSample> samples,
                                                     std::span<const double> alphas,
                                                     double hand_ratio) {
    if (samples.empty()) throw std::invalid_argument("window_containment_sweep: no samples");
    std::vector<ContainmentRow> rows;
    rows.reserve(alphas.size());
    for (double alpha : alphas) {
        ContainmentRow row;
        row.alpha = alpha;
        std::size_t wrist_in = 0, hand_in = 0;
        for (const HandSample& s : samples) {
            HandWindow ww = hand_window(s.box, s.wrist, alpha);
            ImagePoint predicted_hand = locate_hand(s.elbow, s.wrist, hand_ratio);
            HandWindow hw = hand_window(s.box, predicted_hand, alpha);
            if (ww.rect().contains(s.hand_truth)) ++wrist_in;
            if (hw.rect().contains(s.hand_truth)) ++hand_in;
        }
        row.wrist_fraction = static_cast<double>(wrist_in) / samples.size();
        row.hand_fraction = static_cast<double>(hand_in) / samples.size();
        rows.push_back(row);
    }
    return rows;
}

TimelineResult sequence_timeline(std::span<const ActivityLabel> predicted,
                                 std::span<const ActivityLabel> truth) {
    if (predicted.size() != truth.size()) {
        throw std::invalid_argument("sequence_timeline: length mismatch");
    }
    if (predicted.empty()) throw std::invalid_argument("sequence_timeline: empty input");
    TimelineResult result;
    result.truth.reserve(truth.size());
    result.predicted.reserve(predicted.size());
    std::size_t agree = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        result.truth.push_back(static_cast<int>(truth[i]));
        result.predicted.push_back(static_cast<int>(predicted[i]));
        if (predicted[i] == truth[i]) ++agree;
    }
    result.agreement = static_cast<double>(agree) / static_cast<double>(predicted.size());
    return result;
}

void write_timeline_csv(const std::filesystem::path& path, const TimelineResult& timeline) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write timeline: " + path.string());
    out << "frame,truth,pred\n";
    for (std::size_t i = 0; i < timeline.truth.size(); ++i) {
        out << i << "," << timeline.truth[i] << "," << timeline.predicted[i] << "\n";
    }
}

TimelineResult load_timeline_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open timeline: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "frame,truth,pred") {
        throw DataError("timeline: bad header in " + path.string());
    }
    TimelineResult result;
    std::size_t agree = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string frame, truth, pred;
        if (!std::getline(ss, frame, ',') || !std::getline(ss, truth, ',') ||
            !std::getline(ss, pred, ',')) {
            throw DataError("timeline: malformed row in " + path.string());
        }
        result.truth.push_back(std::stoi(truth));
        result.predicted.push_back(std::stoi(pred));
        if (result.truth.back() == result.predicted.back()) ++agree;
    }
    if (result.truth.empty()) throw DataError("timeline: no rows in " + path.string());
    result.agreement = static_cast<double>(agree) / static_cast<double>(result.truth.size());
    return result;
}

void write_timeline_svg(const std::filesystem::path& path, const TimelineResult& timeline) {
    const int w = 800, h = 160, pad = 20;
    const std::size_t n = timeline.truth.size();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write svg: " + path.string());

    auto polyline = [&](const std::vector<int>& series, const char* color) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < n; ++i) {
            double x = pad + (w - 2.0 * pad) * i / std::max<std::size_t>(1, n - 1);
            double y = h - pad - (h - 2.0 * pad) * series[i] / (kActivityCount - 1);
            out << x << "," << y << " ";
            if (i + 1 < n) {
                double x2 = pad + (w - 2.0 * pad) * (i + 1) / std::max<std::size_t>(1, n - 1);
                out << x2 << "," << y << " ";
            }
        }
        out << "\"/>\n";
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\">\n";
    polyline(timeline.truth, "#444444");
    polyline(timeline.predicted, "#d62728");
    out << "</svg>\n";
}

}  // namespace pedact
