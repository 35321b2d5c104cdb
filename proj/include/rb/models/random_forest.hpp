#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <vector>

#include "rb/forecaster.hpp"
#include "rb/models/linear_ar.hpp"
#include "rb/rng.hpp"

namespace rb {

/**
 * Regression forest on the same lag featurization as the linear model.
 * Each tree sees a bootstrap resample and considers ceil(p/3) random
 * feature candidates per split, chosen by variance reduction. Prediction
 * averages the trees; multi-step forecasts are recursive. Every random
 * draw derives from the configured seed, so results are reproducible and
 * independent of scheduling.
 */
class RandomForestForecaster final : public Forecaster {
public:
    RandomForestForecaster(int lags, int n_trees = 100, int max_depth = 8,
                           std::uint64_t seed = 0)
        : lags_(lags), n_trees_(n_trees), max_depth_(max_depth), seed_(seed) {
        if (lags < 1) fail(ErrorCode::InvalidArgument, "lag window must be >= 1");
        if (n_trees < 1) fail(ErrorCode::InvalidArgument, "forest needs at least one tree");
        if (max_depth < 1) fail(ErrorCode::InvalidArgument, "max depth must be >= 1");
    }

    ModelId id() const override { return ModelId::RandomForest; }

    void fit(std::span<const double> train) override {
        const auto p = static_cast<std::size_t>(lags_);
        if (train.size() < p + 10)
            fail(ErrorCode::SeriesTooShort, "forest needs at least p + 10 observations");

        table_ = detail::build_lag_table(train, lags_);
        trees_.clear();
        trees_.reserve(static_cast<std::size_t>(n_trees_));
        const std::size_t n_rows = table_.rows.size();

        for (int t = 0; t < n_trees_; ++t) {
            // Stream-split seeds keep trees independent of build order.
            Rng rng(Rng::mix(seed_, static_cast<std::uint64_t>(t)));
            std::vector<std::size_t> sample(n_rows);
            for (auto& s : sample) s = rng.index(n_rows);
            Tree tree;
            tree.root = build_node(tree, sample, 0, rng);
            trees_.push_back(std::move(tree));
        }

        window_.assign(train.end() - static_cast<std::ptrdiff_t>(p), train.end());
        fitted_ = true;
    }

    std::vector<double> predict(std::size_t horizon) const override {
        require_fitted();
        std::deque<double> window(window_.begin(), window_.end());
        std::vector<double> out;
        out.reserve(horizon);
        std::vector<double> features(window_.size());
        for (std::size_t h = 0; h < horizon; ++h) {
            for (std::size_t j = 0; j < features.size(); ++j)
                features[j] = window[window.size() - 1 - j];
            const double next = predict_row(features);
            out.push_back(next);
            window.pop_front();
            window.push_back(next);
        }
        return out;
    }

private:
    struct Node {
        int feature = -1;       // -1 marks a leaf
        double threshold = 0.0;
        double value = 0.0;     // leaf mean
        int left = -1;
        int right = -1;
    };

    struct Tree {
        std::vector<Node> nodes;
        int root = -1;
    };

    int build_node(Tree& tree, const std::vector<std::size_t>& rows, int depth, Rng& rng) {
        const int index = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();

        double sum = 0.0, min_y = table_.targets[rows[0]], max_y = min_y;
        for (std::size_t r : rows) {
            const double y = table_.targets[r];
            sum += y;
            min_y = std::min(min_y, y);
            max_y = std::max(max_y, y);
        }
        // Unanimous leaves return the shared value exactly, not a rounded mean.
        const double mean = min_y == max_y ? min_y : sum / static_cast<double>(rows.size());

        if (depth >= max_depth_ || rows.size() < 2 * kMinLeaf || min_y == max_y) {
            tree.nodes[index].value = mean;
            return index;
        }

        const auto p = static_cast<std::size_t>(lags_);
        const std::size_t n_candidates = (p + 2) / 3; // ceil(p / 3)
        std::vector<std::size_t> features(p);
        std::iota(features.begin(), features.end(), std::size_t{0});
        // Partial Fisher-Yates draw of candidate features.
        for (std::size_t i = 0; i < n_candidates; ++i)
            std::swap(features[i], features[i + rng.index(p - i)]);

        int best_feature = -1;
        double best_threshold = 0.0;
        double best_score = std::numeric_limits<double>::infinity();
        std::vector<std::pair<double, double>> pairs(rows.size()); // (feature value, target)

        for (std::size_t c = 0; c < n_candidates; ++c) {
            const std::size_t f = features[c];
            for (std::size_t i = 0; i < rows.size(); ++i)
                pairs[i] = {table_.rows[rows[i]][f], table_.targets[rows[i]]};
            std::sort(pairs.begin(), pairs.end());

            double left_sum = 0.0, left_sq = 0.0;
            double right_sum = 0.0, right_sq = 0.0;
            for (const auto& [_, y] : pairs) {
                right_sum += y;
                right_sq += y * y;
            }
            for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
                const auto [xv, y] = pairs[i];
                left_sum += y;
                left_sq += y * y;
                right_sum -= y;
                right_sq -= y * y;
                if (i + 1 < kMinLeaf || pairs.size() - i - 1 < kMinLeaf) continue;
                if (xv == pairs[i + 1].first) continue; // cannot split equal values
                const double nl = static_cast<double>(i + 1);
                const double nr = static_cast<double>(pairs.size() - i - 1);
                const double sse =
                    (left_sq - left_sum * left_sum / nl) + (right_sq - right_sum * right_sum / nr);
                if (sse < best_score) {
                    best_score = sse;
                    best_feature = static_cast<int>(f);
                    best_threshold = 0.5 * (xv + pairs[i + 1].first);
                }
            }
        }

        if (best_feature < 0) {
            tree.nodes[index].value = mean;
            return index;
        }

        std::vector<std::size_t> left_rows, right_rows;
        for (std::size_t r : rows) {
            if (table_.rows[r][static_cast<std::size_t>(best_feature)] <= best_threshold)
                left_rows.push_back(r);
            else
                right_rows.push_back(r);
        }
        if (left_rows.size() < kMinLeaf || right_rows.size() < kMinLeaf) {
            tree.nodes[index].value = mean;
            return index;
        }

        const int left = build_node(tree, left_rows, depth + 1, rng);
        const int right = build_node(tree, right_rows, depth + 1, rng);
        tree.nodes[index].feature = best_feature;
        tree.nodes[index].threshold = best_threshold;
        tree.nodes[index].left = left;
        tree.nodes[index].right = right;
        return index;
    }

    double predict_tree(const Tree& tree, const std::vector<double>& features) const {
        int node = tree.root;
        while (tree.nodes[static_cast<std::size_t>(node)].feature >= 0) {
            const Node& n = tree.nodes[static_cast<std::size_t>(node)];
            node = features[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
        }
        return tree.nodes[static_cast<std::size_t>(node)].value;
    }

    double predict_row(const std::vector<double>& features) const {
        double sum = 0.0;
        const double first = predict_tree(trees_[0], features);
        bool unanimous = true;
        for (const Tree& tree : trees_) {
            const double v = predict_tree(tree, features);
            sum += v;
            unanimous = unanimous && v == first;
        }
        return unanimous ? first : sum / static_cast<double>(trees_.size());
    }

    static constexpr std::size_t kMinLeaf = 2;

    int lags_;
    int n_trees_;
    int max_depth_;
    std::uint64_t seed_;
    detail::LagTable table_;
    std::vector<Tree> trees_;
    std::vector<double> window_;
};

} // namespace rb
