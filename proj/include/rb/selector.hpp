#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rb/descriptors.hpp"
#include "rb/forecaster.hpp"

namespace rb {

enum class SelectorMode { Rule, Linear, Logistic, Distance };

inline const char* to_string(SelectorMode mode) {
    switch (mode) {
    case SelectorMode::Rule: return "rule";
    case SelectorMode::Linear: return "linear";
    case SelectorMode::Logistic: return "logistic";
    case SelectorMode::Distance: return "distance";
    }
    return "unknown";
}

inline SelectorMode parse_selector_mode(const std::string& name) {
    for (SelectorMode m : {SelectorMode::Rule, SelectorMode::Linear, SelectorMode::Logistic,
                           SelectorMode::Distance})
        if (name == to_string(m)) return m;
    fail(ErrorCode::InvalidArgument, "unknown selector mode '" + name + "'");
}

/// Per-model scoring parameters: weights drive the linear/logistic scores,
/// the prototype drives the distance score.
struct CompatibilityProfile {
    ModelId model_id = ModelId::Naive;
    std::array<double, kDescriptorDim> weights{};
    std::array<double, kDescriptorDim> prototype{};
};

struct ScoredModel {
    ModelId model_id;
    double score;
};

struct SelectionResult {
    ModelId chosen = ModelId::Naive;
    std::vector<ScoredModel> scores; // ascending model id; empty in rule mode
    SelectorMode mode = SelectorMode::Rule;
    std::string rationale;
};

struct RuleThresholds {
    double noise_low = 0.10;
    double noise_high = 0.50;
    double acf_high = 0.80;
    double seasonality_high = 0.40;
    // Regime bounds operate on the unnormalized noise scale.
    double noise_low_regime = 0.15;
    double noise_high_regime = 1.0;
};

enum class RegimeLabel { LowNoise, HighNoise, Mixed };

inline const char* to_string(RegimeLabel label) {
    switch (label) {
    case RegimeLabel::LowNoise: return "LowNoise";
    case RegimeLabel::HighNoise: return "HighNoise";
    case RegimeLabel::Mixed: return "Mixed";
    }
    return "Unknown";
}

inline RegimeLabel parse_regime_label(const std::string& name) {
    for (RegimeLabel l : {RegimeLabel::LowNoise, RegimeLabel::HighNoise, RegimeLabel::Mixed})
        if (name == to_string(l)) return l;
    fail(ErrorCode::InvalidArgument, "unknown regime label '" + name + "'");
}

// ---------------------------------------------------------------------------
// compatibility scores

inline double linear_compat(const DescriptorVector& r,
                            const std::array<double, kDescriptorDim>& w) {
    const auto c = r.components();
    double dot = 0.0;
    for (std::size_t i = 0; i < kDescriptorDim; ++i) dot += w[i] * c[i];
    return dot;
}

inline double logistic_compat(const DescriptorVector& r,
                              const std::array<double, kDescriptorDim>& w) {
    return 1.0 / (1.0 + std::exp(-linear_compat(r, w)));
}

inline double distance_compat(const DescriptorVector& r,
                              const std::array<double, kDescriptorDim>& mu) {
    const auto c = r.components();
    double ss = 0.0;
    for (std::size_t i = 0; i < kDescriptorDim; ++i) {
        const double d = c[i] - mu[i];
        ss += d * d;
    }
    return -std::sqrt(ss);
}

inline double profile_score(const DescriptorVector& r, const CompatibilityProfile& p,
                            SelectorMode mode) {
    switch (mode) {
    case SelectorMode::Linear: return linear_compat(r, p.weights);
    case SelectorMode::Logistic: return logistic_compat(r, p.weights);
    case SelectorMode::Distance: return distance_compat(r, p.prototype);
    case SelectorMode::Rule: break;
    }
    fail(ErrorCode::InvalidArgument, "rule mode has no per-profile score");
}

// ---------------------------------------------------------------------------
// selection

/// Argmax with the documented tie-break: among equal scores, the smallest
/// model id wins.
inline ModelId argmax_model(const std::vector<ScoredModel>& scores) {
    if (scores.empty()) fail(ErrorCode::EmptyCatalog, "no scores to select from");
    const ScoredModel* best = &scores[0];
    for (const auto& s : scores) {
        if (s.score > best->score ||
            (s.score == best->score && static_cast<int>(s.model_id) < static_cast<int>(best->model_id)))
            best = &s;
    }
    return best->model_id;
}

inline SelectionResult select_model(const DescriptorVector& r,
                                    const std::vector<CompatibilityProfile>& profiles,
                                    SelectorMode mode) {
    if (profiles.empty()) fail(ErrorCode::EmptyCatalog, "no compatibility profiles configured");
    SelectionResult result;
    result.mode = mode;
    result.scores.reserve(profiles.size());
    for (const auto& p : profiles)
        result.scores.push_back({p.model_id, profile_score(r, p, mode)});
    std::sort(result.scores.begin(), result.scores.end(),
              [](const ScoredModel& a, const ScoredModel& b) {
                  return static_cast<int>(a.model_id) < static_cast<int>(b.model_id);
              });
    result.chosen = argmax_model(result.scores);

    if (result.scores.size() == 1) {
        result.rationale = "single profile";
    } else {
        double best = -std::numeric_limits<double>::infinity();
        double runner = best;
        ModelId runner_id = result.chosen;
        for (const auto& s : result.scores) {
            if (s.model_id == result.chosen) {
                best = s.score;
            } else if (s.score > runner) {
                runner = s.score;
                runner_id = s.model_id;
            }
        }
        std::ostringstream os;
        os << "score margin " << (best - runner) << " over " << to_string(runner_id);
        result.rationale = os.str();
    }
    return result;
}

/**
 * Practitioner rule ladder: the first matching branch decides. Noise and
 * the auxiliary lag-1 autocorrelation are read on their natural scales.
 */
inline SelectionResult rule_based_select(const DescriptorVector& r,
                                         const RuleThresholds& t = {}) {
    SelectionResult result;
    result.mode = SelectorMode::Rule;
    if (r.r3_noise <= t.noise_low && r.acf1 >= t.acf_high) {
        result.chosen = ModelId::Arima;
        result.rationale = "low noise and persistent autocorrelation";
    } else if (r.r3_noise >= t.noise_high) {
        result.chosen = ModelId::RandomForest;
        result.rationale = "high noise";
    } else if (r.r2_seasonality >= t.seasonality_high) {
        result.chosen = ModelId::Ets;
        result.rationale = "strong seasonality";
    } else {
        result.chosen = ModelId::Naive;
        result.rationale = "fallback";
    }
    return result;
}

inline RegimeLabel classify_regime(double noise, const RuleThresholds& t = {}) {
    if (noise < t.noise_low_regime) return RegimeLabel::LowNoise;
    if (noise > t.noise_high_regime) return RegimeLabel::HighNoise;
    return RegimeLabel::Mixed;
}

// ---------------------------------------------------------------------------
// sensitivity

/// Gradient of the compatibility score with respect to the descriptor
/// components, evaluated analytically.
inline std::array<double, kDescriptorDim> sensitivity(const DescriptorVector& r,
                                                      const CompatibilityProfile& p,
                                                      SelectorMode mode) {
    std::array<double, kDescriptorDim> grad{};
    switch (mode) {
    case SelectorMode::Linear:
        return p.weights;
    case SelectorMode::Logistic: {
        const double s = logistic_compat(r, p.weights);
        for (std::size_t i = 0; i < kDescriptorDim; ++i) grad[i] = s * (1.0 - s) * p.weights[i];
        return grad;
    }
    case SelectorMode::Distance: {
        const double norm = -distance_compat(r, p.prototype);
        if (norm <= 1e-12)
            fail(ErrorCode::UndifferentiableAtPrototype,
                 "distance score is not differentiable at the prototype");
        const auto c = r.components();
        for (std::size_t i = 0; i < kDescriptorDim; ++i)
            grad[i] = -(c[i] - p.prototype[i]) / norm;
        return grad;
    }
    case SelectorMode::Rule: break;
    }
    fail(ErrorCode::InvalidArgument, "rule mode has no gradient");
}

// ---------------------------------------------------------------------------
// profile calibration

struct HistoryEntry {
    DescriptorVector descriptors;
    ModelId best_model;
};

/**
 * Calibrates per-model profiles from labelled history. Distance mode takes
 * class means and requires at least one example for every model in the zoo;
 * logistic mode trains one-vs-rest regressions (no bias) by full-batch
 * gradient descent over the classes present.
 */
inline std::vector<CompatibilityProfile> fit_profiles(const std::vector<HistoryEntry>& history,
                                                      SelectorMode mode) {
    if (history.empty()) fail(ErrorCode::InsufficientHistory, "empty selection history");

    std::map<ModelId, std::vector<const DescriptorVector*>> by_model;
    for (const auto& h : history) by_model[h.best_model].push_back(&h.descriptors);

    if (mode == SelectorMode::Distance) {
        for (ModelId id : kAllModels)
            if (!by_model.count(id))
                fail(ErrorCode::InsufficientHistory,
                     std::string("no history for ") + to_string(id));
        std::vector<CompatibilityProfile> profiles;
        for (ModelId id : kAllModels) {
            CompatibilityProfile p;
            p.model_id = id;
            const auto& members = by_model[id];
            for (const DescriptorVector* v : members) {
                const auto c = v->components();
                for (std::size_t i = 0; i < kDescriptorDim; ++i) p.prototype[i] += c[i];
            }
            for (auto& m : p.prototype) m /= static_cast<double>(members.size());
            profiles.push_back(p);
        }
        return profiles;
    }

    if (mode == SelectorMode::Logistic || mode == SelectorMode::Linear) {
        if (by_model.size() < 2)
            fail(ErrorCode::InsufficientHistory, "logistic calibration needs at least 2 classes");
        constexpr double kLearningRate = 0.1;
        constexpr double kL2 = 1e-3;
        constexpr int kEpochs = 500;

        std::vector<CompatibilityProfile> profiles;
        for (const auto& [id, members] : by_model) {
            (void)members;
            CompatibilityProfile p;
            p.model_id = id;
            for (int epoch = 0; epoch < kEpochs; ++epoch) {
                std::array<double, kDescriptorDim> grad{};
                for (const auto& h : history) {
                    const double y = h.best_model == id ? 1.0 : 0.0;
                    const double s = logistic_compat(h.descriptors, p.weights);
                    const auto c = h.descriptors.components();
                    for (std::size_t i = 0; i < kDescriptorDim; ++i)
                        grad[i] += (s - y) * c[i];
                }
                for (std::size_t i = 0; i < kDescriptorDim; ++i) {
                    grad[i] = grad[i] / static_cast<double>(history.size()) + kL2 * p.weights[i];
                    p.weights[i] -= kLearningRate * grad[i];
                }
            }
            profiles.push_back(p);
        }
        return profiles;
    }

    fail(ErrorCode::InvalidArgument, "rule mode needs no calibration");
}

} // namespace rb
