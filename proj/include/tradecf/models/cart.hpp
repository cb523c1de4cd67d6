// CART engine shared by the classification tree, the random forest, and the
// boosting weak learner. Classification splits use Gini impurity computed
// from integer class counts (bitwise reproducible under row permutation);
// regression splits maximize between-group sum of squares.
#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <vector>

#include "tradecf/common.hpp"
#include "tradecf/models/classifier.hpp"

namespace tradecf::models {

struct TreeNode {
    int feature = -1;        // -1 for leaves
    double threshold = 0.0;  // go left when x[feature] < threshold
    int left = -1;
    int right = -1;
    double value = 0.0;      // leaf prediction
};

inline double tree_predict(const std::vector<TreeNode>& nodes, const double* row) {
    int idx = 0;
    while (nodes[idx].feature >= 0) {
        idx = row[nodes[idx].feature] < nodes[idx].threshold ? nodes[idx].left
                                                             : nodes[idx].right;
    }
    return nodes[idx].value;
}

inline nlohmann::json tree_nodes_json(const std::vector<TreeNode>& nodes) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& n : nodes) {
        out.push_back({{"feature", n.feature},
                       {"threshold", n.threshold},
                       {"left", n.left},
                       {"right", n.right},
                       {"value", n.value}});
    }
    return out;
}

inline std::vector<TreeNode> tree_nodes_from_json(const nlohmann::json& j) {
    std::vector<TreeNode> nodes;
    for (const auto& n : j) {
        nodes.push_back({n.at("feature").get<int>(), n.at("threshold").get<double>(),
                         n.at("left").get<int>(), n.at("right").get<int>(),
                         n.at("value").get<double>()});
    }
    return nodes;
}

struct CartParams {
    bool classification = true;
    int max_depth = 8;
    int min_leaf = 10;
    int mtry = 0;  // features sampled per split; 0 means all
};

namespace detail {

struct CartBuilder {
    const Matrix& x;
    const std::vector<double>& target;  // 0/1 for classification
    CartParams params;
    Rng* rng;  // nullptr unless mtry > 0
    std::vector<TreeNode> nodes;
    std::vector<int> leaf_of_row;  // training-row -> leaf node index
    std::vector<std::size_t> scratch_features;

    CartBuilder(const Matrix& x_, const std::vector<double>& t_, const CartParams& p_,
                Rng* rng_)
        : x(x_), target(t_), params(p_), rng(rng_) {
        leaf_of_row.assign(x.rows(), -1);
        scratch_features.resize(x.cols());
        std::iota(scratch_features.begin(), scratch_features.end(), 0);
    }

    int build(std::vector<std::size_t>& rows, int depth) {
        double sum = 0.0;
        for (std::size_t r : rows) sum += target[r];
        const double n = static_cast<double>(rows.size());
        const double mean = sum / n;

        bool pure = true;
        for (std::size_t r : rows) {
            if (target[r] != target[rows.front()]) {
                pure = false;
                break;
            }
        }

        int best_feature = -1;
        double best_threshold = 0.0;
        double best_score = -1.0;
        // Parent score under the "maximize sum of squared child means" form;
        // a split is admissible only when it strictly improves on this.
        const double parent_score = sum * sum / n;

        if (!pure && depth < params.max_depth &&
            rows.size() >= 2 * static_cast<std::size_t>(params.min_leaf)) {
            const auto& features = candidate_features();
            std::vector<std::pair<double, double>> vals(rows.size());  // (x, target)
            for (std::size_t f : features) {
                for (std::size_t k = 0; k < rows.size(); ++k) {
                    vals[k] = {x(rows[k], f), target[rows[k]]};
                }
                std::sort(vals.begin(), vals.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                double left_sum = 0.0;
                std::size_t left_n = 0;
                for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
                    left_sum += vals[k].second;
                    ++left_n;
                    if (vals[k].first == vals[k + 1].first) continue;
                    if (left_n < static_cast<std::size_t>(params.min_leaf)) continue;
                    const std::size_t right_n = vals.size() - left_n;
                    if (right_n < static_cast<std::size_t>(params.min_leaf)) break;
                    const double right_sum = sum - left_sum;
                    const double score =
                        left_sum * left_sum / static_cast<double>(left_n) +
                        right_sum * right_sum / static_cast<double>(right_n);
                    if (score > best_score && score > parent_score) {
                        best_score = score;
                        best_feature = static_cast<int>(f);
                        best_threshold = 0.5 * (vals[k].first + vals[k + 1].first);
                    }
                }
            }
        }

        if (best_feature < 0) {
            const int idx = static_cast<int>(nodes.size());
            nodes.push_back({-1, 0.0, -1, -1, mean});
            for (std::size_t r : rows) leaf_of_row[r] = idx;
            return idx;
        }

        std::vector<std::size_t> left_rows, right_rows;
        for (std::size_t r : rows) {
            (x(r, best_feature) < best_threshold ? left_rows : right_rows).push_back(r);
        }
        const int idx = static_cast<int>(nodes.size());
        nodes.push_back({best_feature, best_threshold, -1, -1, mean});
        rows.clear();
        rows.shrink_to_fit();
        const int left = build(left_rows, depth + 1);
        const int right = build(right_rows, depth + 1);
        nodes[idx].left = left;
        nodes[idx].right = right;
        return idx;
    }

    const std::vector<std::size_t>& candidate_features() {
        if (params.mtry <= 0 ||
            static_cast<std::size_t>(params.mtry) >= x.cols() || rng == nullptr) {
            return scratch_features;
        }
        // Partial Fisher-Yates; the sampled prefix is the candidate set.
        sampled_.assign(scratch_features.begin(), scratch_features.end());
        for (int k = 0; k < params.mtry; ++k) {
            const std::size_t j =
                k + static_cast<std::size_t>(rng->uniform_int(sampled_.size() - k));
            std::swap(sampled_[k], sampled_[j]);
        }
        sampled_.resize(params.mtry);
        std::sort(sampled_.begin(), sampled_.end());
        return sampled_;
    }

    std::vector<std::size_t> sampled_;
};

}  // namespace detail

struct CartResult {
    std::vector<TreeNode> nodes;
    std::vector<int> leaf_of_row;
};

inline CartResult build_cart(const Matrix& x, const std::vector<double>& target,
                             const std::vector<std::size_t>& rows, const CartParams& params,
                             Rng* rng = nullptr) {
    detail::CartBuilder builder(x, target, params, rng);
    std::vector<std::size_t> work = rows;
    builder.build(work, 0);
    return {std::move(builder.nodes), std::move(builder.leaf_of_row)};
}

// ---------------------------------------------------------------------------
// Classification tree model (CART, Gini impurity).
// ---------------------------------------------------------------------------

class TreeClassifier final : public Classifier {
public:
    explicit TreeClassifier(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

    double predict_one(const double* row, std::size_t) const override {
        return tree_predict(nodes_, row);
    }
    const char* type_name() const override { return "tree"; }
    nlohmann::json params_json() const override { return {{"nodes", tree_nodes_json(nodes_)}}; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }

    static std::shared_ptr<Classifier> from_json(const nlohmann::json& j) {
        return std::make_shared<TreeClassifier>(tree_nodes_from_json(j.at("nodes")));
    }

private:
    std::vector<TreeNode> nodes_;
};

inline TrainedClassifier fit_tree(const ClassifierSpec& spec, const Matrix& x,
                                  const std::vector<int>& y,
                                  const std::vector<std::string>& feature_names) {
    CartParams params;
    params.classification = true;
    params.max_depth = static_cast<int>(spec.hp("max_depth", 8));
    params.min_leaf = static_cast<int>(spec.hp("min_leaf", 10));
    std::vector<double> target(y.begin(), y.end());
    std::vector<std::size_t> rows(x.rows());
    std::iota(rows.begin(), rows.end(), 0);
    auto result = build_cart(x, target, rows, params);
    return {spec, feature_names, std::make_shared<TreeClassifier>(std::move(result.nodes))};
}

}  // namespace tradecf::models
