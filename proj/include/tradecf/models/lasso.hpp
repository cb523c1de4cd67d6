// L1-penalized logistic regression by coordinate descent over a geometric
// lambda grid, with sequential strong-rule screening, warm starts, and
// KKT-verified solutions at every grid point. Lambda is selected by
// K-fold cross-validated deviance minimum; the intercept is unpenalized;
// non-binary columns are standardized internally and coefficients are
// reported on the raw scale.
#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <vector>

#include "tradecf/common.hpp"
#include "tradecf/matrix.hpp"
#include "tradecf/models/classifier.hpp"
#include "tradecf/models/logit.hpp"

namespace tradecf::models {

struct LassoScaler {
    std::vector<double> mean;    // 0 for untouched columns
    std::vector<double> scale;   // 1 for untouched columns
    std::vector<bool> constant;  // excluded from fitting entirely
};

namespace detail {

inline LassoScaler make_scaler(const Matrix& x) {
    const std::size_t n = x.rows(), p = x.cols();
    LassoScaler s;
    s.mean.assign(p, 0.0);
    s.scale.assign(p, 1.0);
    s.constant.assign(p, false);
    for (std::size_t j = 0; j < p; ++j) {
        bool binary = true;
        double sum = 0.0, sumsq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = x(i, j);
            binary = binary && (v == 0.0 || v == 1.0);
            sum += v;
            sumsq += v * v;
        }
        const double mean = sum / static_cast<double>(n);
        const double var = std::max(sumsq / static_cast<double>(n) - mean * mean, 0.0);
        if (var <= 0.0) {
            s.constant[j] = true;
            continue;
        }
        if (!binary) {
            s.mean[j] = mean;
            s.scale[j] = std::sqrt(var);
        }
    }
    return s;
}

// Column-major standardized copy. Row subset optional.
inline std::vector<double> standardized_columns(const Matrix& x, const LassoScaler& s,
                                                const std::vector<std::size_t>& rows) {
    const std::size_t n = rows.size(), p = x.cols();
    std::vector<double> z(n * p);
    for (std::size_t j = 0; j < p; ++j) {
        double* col = z.data() + j * n;
        const double m = s.mean[j];
        const double inv = 1.0 / s.scale[j];
        for (std::size_t i = 0; i < n; ++i) col[i] = (x(rows[i], j) - m) * inv;
    }
    return z;
}

inline double soft_threshold(double v, double t) {
    if (v > t) return v - t;
    if (v < -t) return v + t;
    return 0.0;
}

// Coordinate-descent path state over a fixed standardized design.
class LassoPathFitter {
public:
    LassoPathFitter(const std::vector<double>& z, const std::vector<int>& y, std::size_t n,
                    std::size_t p, const std::vector<bool>& constant)
        : z_(z.data()), y_(y.data()), n_(n), p_(p), constant_(constant) {
        b_.assign(p, 0.0);
        prob_.assign(n, 0.0);
        w_.assign(n, 0.0);
        resid_.assign(n, 0.0);
        v_.assign(p, 0.0);
        grad_.assign(p, 0.0);
        in_set_.assign(p, false);
        double ybar = 0.0;
        for (std::size_t i = 0; i < n_; ++i) ybar += y_[i];
        ybar /= static_cast<double>(n_);
        ybar = std::clamp(ybar, 1e-12, 1.0 - 1e-12);
        b0_ = std::log(ybar / (1.0 - ybar));
        refresh_state();
        full_gradient();
    }

    // Largest penalty with an all-zero solution, from the null model.
    double lambda_max() const {
        double g = 0.0;
        for (std::size_t j = 0; j < p_; ++j) {
            if (!constant_[j]) g = std::max(g, std::abs(grad_[j]));
        }
        return std::max(g, 1e-12);
    }

    // Solves at one penalty, warm-started from the current state. prev_lambda
    // drives the sequential strong rule (pass lambda itself for a cold solve).
    void solve(double lambda, double prev_lambda, double inner_tol, int max_outer) {
        std::vector<std::size_t> work_set;
        for (std::size_t j = 0; j < p_; ++j) {
            in_set_[j] = false;
        }
        const double strong_cut = 2.0 * lambda - prev_lambda;
        for (std::size_t j = 0; j < p_; ++j) {
            if (constant_[j]) continue;
            if (b_[j] != 0.0 || std::abs(grad_[j]) >= strong_cut) {
                in_set_[j] = true;
                work_set.push_back(j);
            }
        }
        while (true) {
            solve_on_set(work_set, lambda, inner_tol, max_outer);
            // One full gradient pass both certifies this solution and feeds
            // the next grid point's screening.
            full_gradient();
            bool violated = false;
            for (std::size_t j = 0; j < p_; ++j) {
                if (constant_[j] || in_set_[j]) continue;
                if (std::abs(grad_[j]) > lambda * (1.0 + 1e-9) + 1e-12) {
                    in_set_[j] = true;
                    work_set.push_back(j);
                    violated = true;
                }
            }
            if (!violated) break;
        }
    }

    double intercept() const { return b0_; }
    const std::vector<double>& coef() const { return b_; }
    const std::vector<double>& gradient() const { return grad_; }

    // Mean negative log-likelihood at the current solution.
    double train_deviance() const {
        double dev = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            const double p = std::clamp(prob_[i], 1e-12, 1.0 - 1e-12);
            dev -= y_[i] == 1 ? std::log(p) : std::log(1.0 - p);
        }
        return dev / static_cast<double>(n_);
    }

private:
    const double* col(std::size_t j) const { return z_ + j * n_; }

    void refresh_state() {
        // eta from scratch over nonzero coefficients.
        std::vector<double> eta(n_, b0_);
        for (std::size_t j = 0; j < p_; ++j) {
            if (b_[j] == 0.0) continue;
            const double* zj = col(j);
            const double bj = b_[j];
            for (std::size_t i = 0; i < n_; ++i) eta[i] += bj * zj[i];
        }
        for (std::size_t i = 0; i < n_; ++i) {
            prob_[i] = sigmoid(eta[i]);
            w_[i] = std::max(prob_[i] * (1.0 - prob_[i]), 1e-9);
            resid_[i] = y_[i] - prob_[i];
        }
    }

    void full_gradient() {
        for (std::size_t j = 0; j < p_; ++j) {
            if (constant_[j]) {
                grad_[j] = 0.0;
                continue;
            }
            const double* zj = col(j);
            double dot = 0.0;
            for (std::size_t i = 0; i < n_; ++i) dot += zj[i] * resid_[i];
            grad_[j] = dot / static_cast<double>(n_);
        }
    }

    void solve_on_set(const std::vector<std::size_t>& set, double lambda, double inner_tol,
                      int max_outer) {
        const double inv_n = 1.0 / static_cast<double>(n_);
        for (int outer = 0; outer < max_outer; ++outer) {
            refresh_state();
            double wsum = 0.0;
            for (std::size_t i = 0; i < n_; ++i) wsum += w_[i];
            for (std::size_t j : set) {
                const double* zj = col(j);
                double vj = 0.0;
                for (std::size_t i = 0; i < n_; ++i) vj += w_[i] * zj[i] * zj[i];
                v_[j] = vj * inv_n;
            }
            double outer_max_move = 0.0;
            // Inner CD on the quadratic approximation around the refresh point.
            for (int sweep = 0; sweep < 1000; ++sweep) {
                double max_move = 0.0;
                for (std::size_t j : set) {
                    if (v_[j] <= 0.0) continue;
                    const double* zj = col(j);
                    double dot = 0.0;
                    for (std::size_t i = 0; i < n_; ++i) dot += zj[i] * resid_[i];
                    const double u = dot * inv_n + v_[j] * b_[j];
                    const double bj_new = soft_threshold(u, lambda) / v_[j];
                    const double delta = bj_new - b_[j];
                    if (delta != 0.0) {
                        b_[j] = bj_new;
                        for (std::size_t i = 0; i < n_; ++i) resid_[i] -= w_[i] * zj[i] * delta;
                        max_move = std::max(max_move, v_[j] * delta * delta);
                    }
                }
                // Unpenalized intercept.
                {
                    double rsum = 0.0;
                    for (std::size_t i = 0; i < n_; ++i) rsum += resid_[i];
                    const double delta = rsum / wsum;
                    if (delta != 0.0) {
                        b0_ += delta;
                        for (std::size_t i = 0; i < n_; ++i) resid_[i] -= w_[i] * delta;
                        max_move = std::max(max_move, delta * delta);
                    }
                }
                outer_max_move = std::max(outer_max_move, max_move);
                if (max_move < inner_tol) break;
            }
            if (outer_max_move < inner_tol) break;  // quadratic already stationary
        }
        refresh_state();
    }

    const double* z_;
    const int* y_;
    std::size_t n_, p_;
    std::vector<bool> constant_;
    double b0_ = 0.0;
    std::vector<double> b_, prob_, w_, resid_, v_, grad_;
    std::vector<bool> in_set_;
};

}  // namespace detail

struct LassoPathResult {
    std::vector<double> lambdas;         // descending grid
    std::vector<double> intercepts;      // internal (standardized) scale
    Matrix coefs;                        // n_lambda x p, internal scale
    std::vector<double> train_deviance;  // mean NLL per grid point
    LassoScaler scaler;
};

// Path fit over the standard grid: n_lambda geometric points from lambda_max
// down lambda_min_ratio decades. Exposed for path-level tests.
inline LassoPathResult lasso_path(const Matrix& x, const std::vector<int>& y,
                                  int n_lambda = 100, double lambda_min_ratio = 1e-4,
                                  double inner_tol = 1e-11, int max_outer = 30) {
    const std::size_t n = x.rows(), p = x.cols();
    LassoPathResult out;
    out.scaler = detail::make_scaler(x);
    std::vector<std::size_t> all_rows(n);
    std::iota(all_rows.begin(), all_rows.end(), 0);
    const auto z = detail::standardized_columns(x, out.scaler, all_rows);
    detail::LassoPathFitter fitter(z, y, n, p, out.scaler.constant);

    const double lmax = fitter.lambda_max();
    out.lambdas.resize(n_lambda);
    for (int k = 0; k < n_lambda; ++k) {
        const double frac = n_lambda == 1 ? 0.0
                                          : static_cast<double>(k) /
                                                static_cast<double>(n_lambda - 1);
        out.lambdas[k] = lmax * std::pow(lambda_min_ratio, frac);
    }
    out.intercepts.resize(n_lambda);
    out.coefs = Matrix(n_lambda, p);
    out.train_deviance.resize(n_lambda);

    double prev_lambda = lmax;
    for (int k = 0; k < n_lambda; ++k) {
        fitter.solve(out.lambdas[k], prev_lambda, inner_tol, max_outer);
        prev_lambda = out.lambdas[k];
        out.intercepts[k] = fitter.intercept();
        for (std::size_t j = 0; j < p; ++j) out.coefs(k, j) = fitter.coef()[j];
        out.train_deviance[k] = fitter.train_deviance();
    }
    return out;
}

class LassoClassifier final : public Classifier {
public:
    LassoClassifier(double intercept_raw, std::vector<double> coef_raw, LassoScaler scaler,
                    double intercept_internal, std::vector<double> coef_internal,
                    double chosen_lambda, std::vector<double> lambda_grid,
                    std::vector<double> cv_deviance, std::vector<double> train_deviance)
        : intercept_raw_(intercept_raw),
          coef_raw_(std::move(coef_raw)),
          scaler_(std::move(scaler)),
          intercept_internal_(intercept_internal),
          coef_internal_(std::move(coef_internal)),
          chosen_lambda_(chosen_lambda),
          lambda_grid_(std::move(lambda_grid)),
          cv_deviance_(std::move(cv_deviance)),
          train_deviance_(std::move(train_deviance)) {}

    double predict_one(const double* row, std::size_t n) const override {
        double eta = intercept_raw_;
        for (std::size_t j = 0; j < n; ++j) eta += coef_raw_[j] * row[j];
        return sigmoid(eta);
    }
    const char* type_name() const override { return "lasso"; }

    nlohmann::json params_json() const override {
        return {{"intercept", intercept_raw_},
                {"coef", coef_raw_},
                {"intercept_internal", intercept_internal_},
                {"coef_internal", coef_internal_},
                {"scaler_mean", scaler_.mean},
                {"scaler_scale", scaler_.scale},
                {"chosen_lambda", chosen_lambda_},
                {"lambda_grid", lambda_grid_},
                {"cv_deviance", cv_deviance_},
                {"train_deviance", train_deviance_}};
    }

    static std::shared_ptr<Classifier> from_json(const nlohmann::json& j) {
        LassoScaler scaler;
        scaler.mean = j.at("scaler_mean").get<std::vector<double>>();
        scaler.scale = j.at("scaler_scale").get<std::vector<double>>();
        scaler.constant.assign(scaler.mean.size(), false);
        return std::make_shared<LassoClassifier>(
            j.at("intercept").get<double>(), j.at("coef").get<std::vector<double>>(),
            std::move(scaler), j.at("intercept_internal").get<double>(),
            j.at("coef_internal").get<std::vector<double>>(),
            j.at("chosen_lambda").get<double>(),
            j.at("lambda_grid").get<std::vector<double>>(),
            j.at("cv_deviance").get<std::vector<double>>(),
            j.at("train_deviance").get<std::vector<double>>());
    }

    double intercept() const { return intercept_raw_; }
    const std::vector<double>& coef() const { return coef_raw_; }
    const std::vector<double>& coef_internal() const { return coef_internal_; }
    double intercept_internal() const { return intercept_internal_; }
    const LassoScaler& scaler() const { return scaler_; }
    double chosen_lambda() const { return chosen_lambda_; }
    const std::vector<double>& lambda_grid() const { return lambda_grid_; }
    const std::vector<double>& cv_deviance() const { return cv_deviance_; }
    const std::vector<double>& train_deviance() const { return train_deviance_; }

private:
    double intercept_raw_;
    std::vector<double> coef_raw_;
    LassoScaler scaler_;
    double intercept_internal_;
    std::vector<double> coef_internal_;
    double chosen_lambda_;
    std::vector<double> lambda_grid_;
    std::vector<double> cv_deviance_;
    std::vector<double> train_deviance_;
};

struct LassoKktResidual {
    double zero_max = 0.0;     // max over zero coefficients of (|g| - lambda)+
    double nonzero_max = 0.0;  // max over nonzero coefficients of |g + lambda sign(b)|
};

// Recomputes the stationarity conditions on the internal scale from data,
// independent of anything cached at fit time. g_j = d/db_j of the mean
// negative log-likelihood.
inline LassoKktResidual lasso_kkt_residuals(const LassoClassifier& model, const Matrix& x,
                                            const std::vector<int>& y) {
    const std::size_t n = x.rows(), p = x.cols();
    const auto& scaler = model.scaler();
    std::vector<std::size_t> all_rows(n);
    std::iota(all_rows.begin(), all_rows.end(), 0);
    const auto z = detail::standardized_columns(x, scaler, all_rows);
    const auto& b = model.coef_internal();
    std::vector<double> resid(n);
    for (std::size_t i = 0; i < n; ++i) {
        double eta = model.intercept_internal();
        for (std::size_t j = 0; j < p; ++j) {
            if (b[j] != 0.0) eta += b[j] * z[j * n + i];
        }
        resid[i] = sigmoid(eta) - y[i];
    }
    LassoKktResidual out;
    const double lambda = model.chosen_lambda();
    for (std::size_t j = 0; j < p; ++j) {
        double g = 0.0;
        for (std::size_t i = 0; i < n; ++i) g += z[j * n + i] * resid[i];
        g /= static_cast<double>(n);
        if (b[j] == 0.0) {
            out.zero_max = std::max(out.zero_max, std::abs(g) - lambda);
        } else {
            out.nonzero_max =
                std::max(out.nonzero_max, std::abs(g + lambda * (b[j] > 0 ? 1.0 : -1.0)));
        }
    }
    out.zero_max = std::max(out.zero_max, 0.0);
    return out;
}

inline TrainedClassifier fit_logit_lasso(const ClassifierSpec& spec, const Matrix& x,
                                         const std::vector<int>& y,
                                         const std::vector<std::string>& feature_names,
                                         const std::vector<std::uint64_t>& row_ids) {
    const std::size_t n = x.rows(), p = x.cols();
    const int n_lambda = static_cast<int>(spec.hp("n_lambda", 100));
    const double lambda_min_ratio = spec.hp("lambda_min_ratio", 1e-4);
    const int folds = static_cast<int>(spec.hp("cv_folds", 5));
    const double inner_tol = spec.hp("tol", 1e-11);
    const int max_outer = static_cast<int>(spec.hp("max_outer", 30));

    const LassoScaler scaler = detail::make_scaler(x);
    std::vector<std::size_t> all_rows(n);
    std::iota(all_rows.begin(), all_rows.end(), 0);

    double chosen_lambda = 0.0;
    std::vector<double> lambda_grid, cv_curve, train_dev;
    std::vector<double> b_internal(p, 0.0);
    double b0_internal = 0.0;

    if (spec.has_hp("lambda")) {
        // Fixed penalty: a single tightly converged solve, no CV.
        chosen_lambda = spec.hp("lambda", 0.0);
        const auto z = detail::standardized_columns(x, scaler, all_rows);
        detail::LassoPathFitter fitter(z, y, n, p, scaler.constant);
        fitter.solve(chosen_lambda, chosen_lambda, 1e-15, 2000);
        b0_internal = fitter.intercept();
        b_internal = fitter.coef();
        lambda_grid = {chosen_lambda};
        train_dev = {fitter.train_deviance()};
    } else {
        const auto path = lasso_path(x, y, n_lambda, lambda_min_ratio, inner_tol, max_outer);
        lambda_grid = path.lambdas;
        train_dev = path.train_deviance;

        const auto fold_of = fold_assignment(row_ids, folds, spec.seed);
        std::vector<double> cv_sum(lambda_grid.size(), 0.0);
        for (int f = 0; f < folds; ++f) {
            std::vector<std::size_t> train_rows, held_rows;
            for (std::size_t i = 0; i < n; ++i) {
                (fold_of[i] == f ? held_rows : train_rows).push_back(i);
            }
            if (held_rows.empty() || train_rows.empty()) continue;
            const auto z_train = detail::standardized_columns(x, scaler, train_rows);
            std::vector<int> y_train(train_rows.size());
            for (std::size_t i = 0; i < train_rows.size(); ++i) y_train[i] = y[train_rows[i]];
            detail::LassoPathFitter fitter(z_train, y_train, train_rows.size(), p,
                                           scaler.constant);
            const auto z_held = detail::standardized_columns(x, scaler, held_rows);
            double prev = lambda_grid.front();
            for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
                fitter.solve(lambda_grid[k], prev, inner_tol, max_outer);
                prev = lambda_grid[k];
                const auto& b = fitter.coef();
                for (std::size_t i = 0; i < held_rows.size(); ++i) {
                    double eta = fitter.intercept();
                    for (std::size_t j = 0; j < p; ++j) {
                        if (b[j] != 0.0) eta += b[j] * z_held[j * held_rows.size() + i];
                    }
                    const double prob = std::clamp(sigmoid(eta), 1e-12, 1.0 - 1e-12);
                    cv_sum[k] -= y[held_rows[i]] == 1 ? std::log(prob) : std::log(1.0 - prob);
                }
            }
        }
        cv_curve.resize(lambda_grid.size());
        for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
            cv_curve[k] = cv_sum[k] / static_cast<double>(n);
        }
        std::size_t best = 0;
        for (std::size_t k = 1; k < cv_curve.size(); ++k) {
            if (cv_curve[k] < cv_curve[best]) best = k;  // ties keep the larger lambda
        }
        chosen_lambda = lambda_grid[best];

        // Final tightly converged solve at the chosen penalty, warm-started
        // from the full-data path solution.
        const auto z = detail::standardized_columns(x, scaler, all_rows);
        detail::LassoPathFitter fitter(z, y, n, p, scaler.constant);
        double prev = lambda_grid.front();
        for (std::size_t k = 0; k <= best; ++k) {
            fitter.solve(lambda_grid[k], prev, inner_tol, max_outer);
            prev = lambda_grid[k];
        }
        fitter.solve(chosen_lambda, chosen_lambda, 1e-15, 2000);
        b0_internal = fitter.intercept();
        b_internal = fitter.coef();
    }

    // Unstandardize.
    std::vector<double> coef_raw(p, 0.0);
    double intercept_raw = b0_internal;
    for (std::size_t j = 0; j < p; ++j) {
        if (b_internal[j] == 0.0) continue;
        coef_raw[j] = b_internal[j] / scaler.scale[j];
        intercept_raw -= b_internal[j] * scaler.mean[j] / scaler.scale[j];
    }

    auto model = std::make_shared<LassoClassifier>(
        intercept_raw, std::move(coef_raw), scaler, b0_internal, std::move(b_internal),
        chosen_lambda, std::move(lambda_grid), std::move(cv_curve), std::move(train_dev));
    return {spec, feature_names, model};
}

// Feature names with nonzero coefficients at the chosen penalty.
inline std::vector<std::string> selected_variables(const TrainedClassifier& trained) {
    if (trained.spec.kind != ModelKind::logit_lasso) {
        throw UnsupportedOperation("selected_variables: model kind must be logit_lasso");
    }
    std::vector<std::string> out;
    const auto* lasso = dynamic_cast<const LassoClassifier*>(trained.model.get());
    if (lasso == nullptr) return out;  // constant fallback has no selection
    for (std::size_t j = 0; j < lasso->coef().size(); ++j) {
        if (lasso->coef()[j] != 0.0) out.push_back(trained.feature_names[j]);
    }
    return out;
}

}  // namespace tradecf::models
