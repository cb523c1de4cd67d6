// The fit/predict contract shared by the six classifier kinds, plus the
// trivial constant-probability model every probabilistic kind degenerates
// to on single-class training labels.
#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tradecf/common.hpp"
#include "tradecf/matrix.hpp"
#include "vendor_json.hpp"

namespace tradecf::models {

class UnsupportedOperation : public std::runtime_error {
public:
    explicit UnsupportedOperation(const std::string& what) : std::runtime_error(what) {}
};

enum class ModelKind { logit, logit_lasso, tree, random_forest, svm, gradient_boosting };

inline const char* kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::logit: return "logit";
        case ModelKind::logit_lasso: return "logit_lasso";
        case ModelKind::tree: return "tree";
        case ModelKind::random_forest: return "random_forest";
        case ModelKind::svm: return "svm";
        case ModelKind::gradient_boosting: return "gradient_boosting";
    }
    return "?";
}

inline ModelKind kind_from_name(const std::string& name) {
    for (ModelKind k : {ModelKind::logit, ModelKind::logit_lasso, ModelKind::tree,
                        ModelKind::random_forest, ModelKind::svm,
                        ModelKind::gradient_boosting}) {
        if (name == kind_name(k)) return k;
    }
    throw ConfigError("unknown model kind '" + name + "'");
}

inline const std::vector<ModelKind>& all_model_kinds() {
    static const std::vector<ModelKind> kinds = {
        ModelKind::logit,         ModelKind::logit_lasso, ModelKind::tree,
        ModelKind::random_forest, ModelKind::svm,         ModelKind::gradient_boosting};
    return kinds;
}

struct ClassifierSpec {
    ModelKind kind = ModelKind::logit_lasso;
    std::map<std::string, double> hyperparameters;
    std::uint64_t seed = 0;

    double hp(const std::string& name, double fallback) const {
        auto it = hyperparameters.find(name);
        return it == hyperparameters.end() ? fallback : it->second;
    }

    bool has_hp(const std::string& name) const { return hyperparameters.count(name) > 0; }

    // Rejects unknown keys and out-of-range values before any fitting work.
    void validate() const {
        static const std::map<ModelKind, std::vector<std::string>> known = {
            {ModelKind::logit, {"max_iter", "tol"}},
            {ModelKind::logit_lasso,
             {"n_lambda", "lambda_min_ratio", "cv_folds", "lambda", "max_outer", "tol"}},
            {ModelKind::tree, {"max_depth", "min_leaf"}},
            {ModelKind::random_forest, {"n_trees", "mtry", "min_leaf", "max_depth"}},
            {ModelKind::svm, {"c", "iterations", "holdout_fraction"}},
            {ModelKind::gradient_boosting,
             {"rounds", "depth", "shrinkage", "min_leaf"}},
        };
        const auto& keys = known.at(kind);
        for (const auto& [key, value] : hyperparameters) {
            bool ok = false;
            for (const auto& k : keys) ok = ok || k == key;
            if (!ok) {
                throw ConfigError(std::string("hyperparameter '") + key +
                                  "' is not valid for model kind " + kind_name(kind));
            }
            if (!std::isfinite(value)) {
                throw ConfigError(std::string("hyperparameter '") + key + "' must be finite");
            }
        }
        auto positive = [&](const std::string& key) {
            if (has_hp(key) && hp(key, 1) <= 0) {
                throw ConfigError(std::string("hyperparameter '") + key +
                                  "' must be positive");
            }
        };
        for (const char* key : {"max_iter", "n_lambda", "cv_folds", "max_depth", "min_leaf",
                                "n_trees", "c", "iterations", "rounds", "depth"}) {
            positive(key);
        }
        if (has_hp("lambda") && hp("lambda", 0) < 0) {
            throw ConfigError("hyperparameter 'lambda' must be >= 0");
        }
        if (has_hp("shrinkage") && (hp("shrinkage", 0.1) <= 0 || hp("shrinkage", 0.1) > 1)) {
            throw ConfigError("hyperparameter 'shrinkage' must be in (0,1]");
        }
        if (has_hp("holdout_fraction") &&
            (hp("holdout_fraction", 0.2) <= 0 || hp("holdout_fraction", 0.2) >= 1)) {
            throw ConfigError("hyperparameter 'holdout_fraction' must be in (0,1)");
        }
    }

    nlohmann::json to_json() const {
        nlohmann::json hp_json = nlohmann::json::object();
        for (const auto& [k, v] : hyperparameters) hp_json[k] = v;
        return {{"kind", kind_name(kind)}, {"hyperparameters", hp_json}, {"seed", seed}};
    }

    static ClassifierSpec from_json(const nlohmann::json& j) {
        ClassifierSpec spec;
        spec.kind = kind_from_name(j.at("kind").get<std::string>());
        for (const auto& [k, v] : j.at("hyperparameters").items()) {
            spec.hyperparameters[k] = v.get<double>();
        }
        spec.seed = j.at("seed").get<std::uint64_t>();
        return spec;
    }
};

// A fitted model. Implementations are immutable after construction and safe
// to share across threads.
class Classifier {
public:
    virtual ~Classifier() = default;
    // row points at the features in fit-time column order.
    virtual double predict_one(const double* row, std::size_t n_features) const = 0;
    virtual const char* type_name() const = 0;
    virtual nlohmann::json params_json() const = 0;
};

class ConstantClassifier final : public Classifier {
public:
    explicit ConstantClassifier(double p) : p_(p) {}
    double predict_one(const double*, std::size_t) const override { return p_; }
    const char* type_name() const override { return "constant"; }
    nlohmann::json params_json() const override { return {{"p", p_}}; }
    double probability() const { return p_; }

    static std::shared_ptr<Classifier> from_json(const nlohmann::json& j) {
        return std::make_shared<ConstantClassifier>(j.at("p").get<double>());
    }

private:
    double p_;
};

struct TrainedClassifier {
    ClassifierSpec spec;
    std::vector<std::string> feature_names;
    std::shared_ptr<const Classifier> model;

    // Rejects a schema mismatch naming the first offending column.
    void check_schema(const std::vector<std::string>& names) const {
        if (names.size() != feature_names.size()) {
            throw SchemaError("predict: expected " + std::to_string(feature_names.size()) +
                              " features, got " + std::to_string(names.size()));
        }
        for (std::size_t j = 0; j < names.size(); ++j) {
            if (names[j] != feature_names[j]) {
                throw SchemaError("predict: column " + std::to_string(j) + " is '" + names[j] +
                                  "', expected '" + feature_names[j] + "'");
            }
        }
    }

    std::vector<double> predict_proba(const Matrix& x,
                                      const std::vector<std::string>& names) const {
        check_schema(names);
        if (x.cols() != feature_names.size()) {
            throw SchemaError("predict: feature matrix has wrong width");
        }
        std::vector<double> out(x.rows());
        for (std::size_t i = 0; i < x.rows(); ++i) {
            out[i] = model->predict_one(x.row_ptr(i), x.cols());
        }
        return out;
    }

    // Convenience overload for callers that fitted with default names.
    std::vector<double> predict_proba(const Matrix& x) const {
        return predict_proba(x, feature_names);
    }
};

namespace detail {

inline std::vector<std::string> default_feature_names(std::size_t p) {
    std::vector<std::string> names(p);
    for (std::size_t j = 0; j < p; ++j) names[j] = "f" + std::to_string(j);
    return names;
}

inline std::vector<std::uint64_t> default_row_ids(std::size_t n) {
    std::vector<std::uint64_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = i;
    return ids;
}

inline void check_training_inputs(const Matrix& x, const std::vector<int>& y) {
    if (x.rows() == 0 || x.cols() == 0) throw DataError("fit: empty design matrix");
    if (x.rows() != y.size()) throw DataError("fit: rows(X) != |y|");
    for (double v : x.data()) {
        if (std::isnan(v)) throw SchemaError("fit: NaN in feature matrix");
    }
    for (int v : y) {
        if (v != 0 && v != 1) throw DataError("fit: labels must be 0/1");
    }
}

inline bool labels_constant(const std::vector<int>& y) {
    for (int v : y) {
        if (v != y.front()) return false;
    }
    return true;
}

inline double mean_label(const std::vector<int>& y) {
    double s = 0.0;
    for (int v : y) s += v;
    return s / static_cast<double>(y.size());
}

}  // namespace detail

// Deterministic fold assignment keyed to row ids: rows are ranked by
// hash(id, seed) and dealt round-robin, so the partition is balanced,
// order-invariant, and collapses to leave-one-out when folds == n.
inline std::vector<int> fold_assignment(const std::vector<std::uint64_t>& row_ids, int folds,
                                        std::uint64_t seed) {
    if (folds < 2) throw DataError("fold_assignment: folds must be >= 2");
    const std::size_t n = row_ids.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::vector<std::uint64_t> keys(n);
    for (std::size_t i = 0; i < n; ++i) keys[i] = splitmix64(row_ids[i] ^ splitmix64(seed));
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (keys[a] != keys[b]) return keys[a] < keys[b];
        return row_ids[a] < row_ids[b];
    });
    std::vector<int> fold(n);
    for (std::size_t r = 0; r < n; ++r) {
        fold[order[r]] = static_cast<int>(r % static_cast<std::size_t>(folds));
    }
    return fold;
}

}  // namespace tradecf::models
