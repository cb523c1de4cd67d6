// Penalty-free logistic regression by iteratively reweighted least squares.
// Converges when the score (gradient of the log-likelihood) drops below
// 1e-8 in max norm, capped at 100 iterations. Collinear columns are removed
// up front by the deterministic first-kept filter and reported with zero
// coefficients, which subsumes reference-level dropping for saturated
// dummy blocks.
#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "tradecf/common.hpp"
#include "tradecf/matrix.hpp"
#include "tradecf/models/classifier.hpp"

namespace tradecf::models {

class LinearLogitClassifier : public Classifier {
public:
    LinearLogitClassifier(double intercept, std::vector<double> coef)
        : intercept_(intercept), coef_(std::move(coef)) {}

    double predict_one(const double* row, std::size_t n) const override {
        double eta = intercept_;
        for (std::size_t j = 0; j < n; ++j) eta += coef_[j] * row[j];
        return sigmoid(eta);
    }
    const char* type_name() const override { return "linear_logit"; }
    nlohmann::json params_json() const override {
        return {{"intercept", intercept_}, {"coef", coef_}};
    }

    double intercept() const { return intercept_; }
    const std::vector<double>& coef() const { return coef_; }

    static std::shared_ptr<Classifier> from_json(const nlohmann::json& j) {
        return std::make_shared<LinearLogitClassifier>(
            j.at("intercept").get<double>(), j.at("coef").get<std::vector<double>>());
    }

private:
    double intercept_;
    std::vector<double> coef_;
};

namespace detail {

struct IrlsResult {
    double intercept = 0.0;
    std::vector<double> coef;  // full length, dropped columns at 0
    bool converged = false;
    int iterations = 0;
};

// IRLS on [1 | X(kept)]. Scores and deviance use the actual data; a
// step-halving safeguard keeps the deviance non-increasing.
inline IrlsResult irls_logit(const Matrix& x, const std::vector<int>& y, double tol = 1e-8,
                             int max_iter = 100) {
    const std::size_t n = x.rows();
    const std::size_t p = x.cols();

    Matrix design(n, p + 1);
    for (std::size_t i = 0; i < n; ++i) {
        design(i, 0) = 1.0;
        for (std::size_t j = 0; j < p; ++j) design(i, j + 1) = x(i, j);
    }
    const std::vector<std::size_t> kept = first_kept_columns(design);
    const Matrix d = design.select_cols(kept);
    const std::size_t q = d.cols();

    std::vector<double> beta(q, 0.0);
    auto deviance = [&](const std::vector<double>& b) {
        const auto eta = mat_vec(d, b);
        double dev = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double p_i = std::clamp(sigmoid(eta[i]), 1e-12, 1.0 - 1e-12);
            dev -= y[i] == 1 ? std::log(p_i) : std::log(1.0 - p_i);
        }
        return dev;
    };

    IrlsResult out;
    double dev = deviance(beta);
    for (int iter = 0; iter < max_iter; ++iter) {
        out.iterations = iter + 1;
        const auto eta = mat_vec(d, beta);
        std::vector<double> prob(n), w(n), resid(n);
        for (std::size_t i = 0; i < n; ++i) {
            prob[i] = sigmoid(eta[i]);
            w[i] = std::max(prob[i] * (1.0 - prob[i]), 1e-10);
            resid[i] = y[i] - prob[i];
        }
        std::vector<double> score(q, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = d.row_ptr(i);
            for (std::size_t j = 0; j < q; ++j) score[j] += row[j] * resid[i];
        }
        double max_score = 0.0;
        for (double s : score) max_score = std::max(max_score, std::abs(s));
        if (max_score < tol) {
            out.converged = true;
            break;
        }
        Matrix hess(q, q);
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = d.row_ptr(i);
            for (std::size_t a = 0; a < q; ++a) {
                const double wa = w[i] * row[a];
                for (std::size_t b = a; b < q; ++b) hess(a, b) += wa * row[b];
            }
        }
        for (std::size_t a = 0; a < q; ++a) {
            for (std::size_t b = 0; b < a; ++b) hess(a, b) = hess(b, a);
        }
        std::vector<double> step;
        if (!cholesky_solve(hess, score, step)) {
            double trace = 0.0;
            for (std::size_t a = 0; a < q; ++a) trace += hess(a, a);
            const double ridge = 1e-10 * std::max(trace / static_cast<double>(q), 1.0);
            for (std::size_t a = 0; a < q; ++a) hess(a, a) += ridge;
            if (!cholesky_solve(hess, score, step)) break;
            log_warn("logit: singular information matrix, applied ridge jitter");
        }
        // Step halving keeps the iteration stable on separable data.
        double scale = 1.0;
        std::vector<double> candidate(q);
        for (int half = 0; half < 30; ++half) {
            for (std::size_t j = 0; j < q; ++j) candidate[j] = beta[j] + scale * step[j];
            const double cand_dev = deviance(candidate);
            if (cand_dev <= dev + 1e-10) {
                beta = candidate;
                dev = cand_dev;
                break;
            }
            scale *= 0.5;
        }
    }

    out.coef.assign(p, 0.0);
    for (std::size_t k = 0; k < kept.size(); ++k) {
        if (kept[k] == 0) {
            out.intercept = beta[k];
        } else {
            out.coef[kept[k] - 1] = beta[k];
        }
    }
    return out;
}

}  // namespace detail

inline TrainedClassifier fit_logit(const ClassifierSpec& spec, const Matrix& x,
                                   const std::vector<int>& y,
                                   const std::vector<std::string>& feature_names) {
    const double tol = spec.hp("tol", 1e-8);
    const int max_iter = static_cast<int>(spec.hp("max_iter", 100));
    auto result = detail::irls_logit(x, y, tol, max_iter);
    return {spec, feature_names,
            std::make_shared<LinearLogitClassifier>(result.intercept, std::move(result.coef))};
}

}  // namespace tradecf::models
