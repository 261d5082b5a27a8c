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
#include "pedact/esvm.hpp"

#include <cmath>
#include <stdexcept>

#include "pedact/common.hpp"
#include "pedact/linear_svm.hpp"

namespace pedact {

namespace {

Eigen::Map<const Eigen::VectorXd> as_vector(const HogTemplate& t) {
    return {t.values.data(), static_cast<Eigen::Index>(t.values.size())};
}

// Newton fit of the two-parameter sigmoid on (score, target) pairs, after
// Platt with the Lin/Weng smoothed targets. Returns (a, b) in the orientation
// p = 1 / (1 + exp(-(a*s + b))).
std::pair<double, double> fit_sigmoid(const std::vector<double>& scores,
                                      const std::vector<int>& labels) {
    int n_pos = 0, n_neg = 0;
    for (int l : labels) (l > 0 ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0) {
        throw DataError("calibrate: calibration set must contain both labels");
    }
    const double t_pos = (n_pos + 1.0) / (n_pos + 2.0);
    const double t_neg = 1.0 / (n_neg + 2.0);
    const std::size_t n = scores.size();

    double a = 0.0;
    double b = std::log((n_pos + 1.0) / (n_neg + 1.0));

    auto objective = [&](double pa, double pb) {
        double f = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double t = labels[i] > 0 ? t_pos : t_neg;
            double z = pa * scores[i] + pb;
            // stable -log-likelihood of a Bernoulli with logit z
            if (z >= 0.0) {
                f += (1.0 - t) * z + std::log1p(std::exp(-z));
            } else {
                f += -t * z + std::log1p(std::exp(z));
            }
        }
        return f;
    };

    double fval = objective(a, b);
    for (int iter = 0; iter < 100; ++iter) {
        double g_a = 0.0, g_b = 0.0, h_aa = 1e-12, h_ab = 0.0, h_bb = 1e-12;
        for (std::size_t i = 0; i < n; ++i) {
            double t = labels[i] > 0 ? t_pos : t_neg;
            double z = a * scores[i] + b;
            double p = 1.0 / (1.0 + std::exp(-z));
            double d1 = p - t;
            double d2 = std::max(p * (1.0 - p), 1e-12);
            g_a += scores[i] * d1;
            g_b += d1;
            h_aa += scores[i] * scores[i] * d2;
            h_ab += scores[i] * d2;
            h_bb += d2;
        }
        if (std::abs(g_a) < 1e-10 && std::abs(g_b) < 1e-10) break;
        double det = h_aa * h_bb - h_ab * h_ab;
        double da = -(h_bb * g_a - h_ab * g_b) / det;
        double db = -(-h_ab * g_a + h_aa * g_b) / det;
        // backtracking on the Newton step
        double step = 1.0;
        while (step >= 1e-10) {
            double f_new = objective(a + step * da, b + step * db);
            if (f_new < fval + 1e-12) {
                a += step * da;
                b += step * db;
                fval = f_new;
                break;
            }
            step *= 0.5;
        }
        if (step < 1e-10) break;
    }
    return {a, b};
}

}  // namespace

double ExemplarSvm::raw_score(const HogTemplate& patch) const {
    if (static_cast<Eigen::Index>(patch.values.size()) != weights.size()) {
        throw std::invalid_argument("ExemplarSvm: descriptor length mismatch");
    }
    return weights.dot(as_vector(patch)) + bias;
}

double ExemplarSvm::calibrated_score(double raw) const {
    double p = 1.0 / (1.0 + std::exp(-(platt_a * raw + platt_b)));
    // the exact sigmoid is strictly inside (0,1); keep it there when the
    // exponential saturates
    return std::clamp(p, 1e-12, 1.0 - 1e-12);
}

ExemplarSvm train_exemplar(const HogTemplate& positive, std::span<const HogTemplate> pool,
                           const MiningConfig& config, MiningTrace* trace) {
    if (pool.empty()) throw std::invalid_argument("train_exemplar: empty negative pool");
    const Eigen::Index dim = static_cast<Eigen::Index>(positive.values.size());

    std::vector<std::size_t> cache;
    cache.reserve(config.cache_cap);
    std::vector<char> in_cache(pool.size(), 0);
    for (std::size_t i = 0; i < std::min(config.initial_cache, pool.size()); ++i) {
        cache.push_back(i);
        in_cache[i] = 1;
    }

    ExemplarSvm svm;
    LinearSvmOptions opt;
    opt.gap_tolerance = config.gap_tolerance;
    opt.max_sweeps = config.max_sweeps;

    auto retrain = [&]() {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(cache.size());
        Eigen::MatrixXd X(n, dim);
        Eigen::VectorXd y(n), c(n);
        X.row(0) = as_vector(positive);
        y[0] = 1.0;
        c[0] = config.c_positive;
        for (Eigen::Index i = 1; i < n; ++i) {
            X.row(i) = as_vector(pool[cache[i - 1]]);
            y[i] = -1.0;
            c[i] = config.c_negative;
        }
        LinearSvmResult r = train_linear_svm(X, y, c, opt);
        svm.weights = std::move(r.weights);
        svm.bias = r.bias;
    };

    retrain();
    if (trace) trace->cache_sizes.push_back(cache.size());
    for (int round = 0; round < config.rounds; ++round) {
        if (cache.size() >= config.cache_cap) break;
        std::size_t added = 0;
        for (std::size_t i = 0; i < pool.size() && cache.size() < config.cache_cap; ++i) {
            if (in_cache[i]) continue;
            double margin = svm.weights.dot(as_vector(pool[i])) + svm.bias;
            if (margin > -1.0) {  // violates the negative margin
                cache.push_back(i);
                in_cache[i] = 1;
                ++added;
            }
        }
        if (added == 0) break;
        if (trace) trace->cache_sizes.push_back(cache.size());
        retrain();
    }
    return svm;
}

void calibrate(ExemplarSvm& svm, std::span<const HogTemplate> calib_positive,
               std::span<const HogTemplate> calib_negative) {
    if (calib_positive.size() < 5 || calib_negative.size() < 5) {
        throw std::invalid_argument("calibrate: need at least 5 calibration points per side");
    }
    std::vector<double> scores;
    std::vector<int> labels;
    scores.reserve(calib_positive.size() + calib_negative.size());
    for (const auto& p : calib_positive) {
        scores.push_back(svm.raw_score(p));
        labels.push_back(1);
    }
    for (const auto& p : calib_negative) {
        scores.push_back(svm.raw_score(p));
        labels.push_back(-1);
    }
    auto [a, b] = fit_sigmoid(scores, labels);
    svm.platt_a = a;
    svm.platt_b = b;
}

std::optional<MatchScore> score_patch(const ExemplarSvm& svm, const HogTemplate& patch,
                                      double overlap) {
    if (overlap <= kOverlapThreshold) return std::nullopt;
    MatchScore s;
    s.raw = svm.raw_score(patch);
    s.calibrated = svm.calibrated_score(s.raw);
    s.overlap = overlap;
    return s;
}

std::optional<BestMatch> best_match(std::span<const ExemplarSvm* const> ensemble,
                                    const HogTemplate& patch, double overlap) {
    if (ensemble.empty()) throw std::invalid_argument("best_match: empty ensemble");
    std::optional<BestMatch> best;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        auto s = score_patch(*ensemble[i], patch, overlap);
        if (!s) continue;
        if (!best || s->calibrated > best->score.calibrated) {
            best = BestMatch{i, ensemble[i]->source_id, ensemble[i]->object_label, *s};
        }
    }
    return best;
}

std::optional<HandObservation> HandObservation::make(const GrayPatch& frame,
                                                     const HandWindow& nominal) {
    static constexpr int kShifts[3] = {-4, 0, 4};
    HandObservation obs;
    Rect base = nominal.rect();
    for (int dy : kShifts) {
        for (int dx : kShifts) {
            HandWindow shifted = nominal;
            shifted.center.x += dx;
            shifted.center.y += dy;
            GrayPatch patch;
            try {
                patch = extract_patch(frame, shifted);
            } catch (const DataError&) {
                continue;  // this shift is off-frame
            }
            obs.hogs.push_back(hog(patch));
            obs.overlaps.push_back(intersection_over_union(base, shifted.rect()));
        }
    }
    if (obs.empty()) return std::nullopt;
    return obs;
}

double match_score(const ExemplarSvm& svm, const std::optional<HandObservation>& obs) {
    if (!obs) return 0.0;
    double best = 0.0;
    for (std::size_t i = 0; i < obs->hogs.size(); ++i) {
        auto s = score_patch(svm, obs->hogs[i], obs->overlaps[i]);
        if (s && s->calibrated > best) best = s->calibrated;
    }
    return best;
}

}  // namespace pedact
