// Classification performance statistics: Efron pseudo-R2, AUC, PR-AUC,
// balanced accuracy, and F1 for the positive class.
//
// Conventions, pinned once and shared with the brute-force test oracles:
//   - a point is predicted positive iff score >= threshold;
//   - AUC follows the Mann-Whitney form, ties between a positive and a
//     negative score count 1/2;
//   - the PR curve takes one (recall, precision) point per unique score,
//     descending, and integrates precision over recall by the trapezoid
//     rule anchored at (0, P_first);
//   - degenerate ratios (0/0) evaluate to 0; AUC and PR-AUC are NaN
//     sentinels when only one class is present.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "tradecf/common.hpp"
#include "vendor_json.hpp"

namespace tradecf {

struct MetricsReport {
    double r2 = 0.0;
    double auc = 0.0;
    double pr_auc = 0.0;
    double bacc = 0.0;
    double f1 = 0.0;
    std::size_t n = 0;
    double positive_rate = 0.0;
    double threshold = 0.5;

    nlohmann::json to_json() const {
        auto field = [](double v) {
            return std::isnan(v) ? nlohmann::json() : nlohmann::json(v);
        };
        return {{"r2", field(r2)},     {"auc", field(auc)}, {"pr_auc", field(pr_auc)},
                {"bacc", field(bacc)}, {"f1", field(f1)},   {"n", n},
                {"positive_rate", positive_rate}, {"threshold", threshold}};
    }
};

inline const double kMetricUndefined = kUndefined;

inline MetricsReport evaluate(const std::vector<double>& scores, const std::vector<int>& labels,
                              double threshold = 0.5) {
    if (scores.empty()) throw DataError("evaluate: empty input");
    if (scores.size() != labels.size()) throw DataError("evaluate: length mismatch");
    const std::size_t n = scores.size();

    std::size_t n_pos = 0;
    for (int y : labels) {
        if (y != 0 && y != 1) throw DataError("evaluate: labels must be 0/1");
        n_pos += static_cast<std::size_t>(y);
    }
    const std::size_t n_neg = n - n_pos;

    MetricsReport rep;
    rep.n = n;
    rep.threshold = threshold;
    rep.positive_rate = static_cast<double>(n_pos) / static_cast<double>(n);

    // Efron pseudo-R2, clamped to [0,1].
    {
        const double ybar = rep.positive_rate;
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = labels[i] - scores[i];
            num += e * e;
            const double d = labels[i] - ybar;
            den += d * d;
        }
        rep.r2 = den > 0.0 ? std::clamp(1.0 - num / den, 0.0, 1.0) : 0.0;
    }

    // Confusion counts at the threshold.
    {
        std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool pred = scores[i] >= threshold;
            if (labels[i] == 1) {
                pred ? ++tp : ++fn;
            } else {
                pred ? ++fp : ++tn;
            }
        }
        auto rate = [](std::size_t a, std::size_t b) {
            return (a + b) == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(a + b);
        };
        const double tpr = rate(tp, fn);
        const double tnr = rate(tn, fp);
        const double precision = rate(tp, fp);
        rep.bacc = 0.5 * (tpr + tnr);
        rep.f1 = (precision + tpr) > 0.0 ? 2.0 * precision * tpr / (precision + tpr) : 0.0;
    }

    if (n_pos == 0 || n_neg == 0) {
        rep.auc = kMetricUndefined;
        rep.pr_auc = kMetricUndefined;
        return rep;
    }

    // Sort once; both ranked metrics share the ordering.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // AUC via average ranks (equivalent to pairwise counting with 1/2 ties).
    {
        double rank_sum_pos = 0.0;
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j < n && scores[order[j]] == scores[order[i]]) ++j;
            const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based
            for (std::size_t k = i; k < j; ++k) {
                if (labels[order[k]] == 1) rank_sum_pos += avg_rank;
            }
            i = j;
        }
        const double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
        rep.auc = (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
    }

    // PR curve over unique scores, descending.
    {
        double area = 0.0;
        double prev_recall = 0.0;
        double prev_precision = -1.0;  // set to the first point's precision
        std::size_t cum_pos = 0, cum_all = 0;
        std::size_t i = n;
        while (i > 0) {
            std::size_t j = i;
            while (j > 0 && scores[order[j - 1]] == scores[order[i - 1]]) --j;
            for (std::size_t k = j; k < i; ++k) {
                ++cum_all;
                cum_pos += static_cast<std::size_t>(labels[order[k]]);
            }
            const double recall = static_cast<double>(cum_pos) / static_cast<double>(n_pos);
            const double precision =
                static_cast<double>(cum_pos) / static_cast<double>(cum_all);
            if (prev_precision < 0.0) prev_precision = precision;
            area += (recall - prev_recall) * 0.5 * (precision + prev_precision);
            prev_recall = recall;
            prev_precision = precision;
            i = j;
        }
        rep.pr_auc = area;
    }
    return rep;
}

// Fixed-width comparison table, one row per model (Tables 1-2 layout).
inline std::string format_metrics_table(
    const std::string& title,
    const std::vector<std::pair<std::string, MetricsReport>>& rows,
    std::size_t train_obs, std::size_t test_obs) {
    std::string out;
    char buf[192];
    std::snprintf(buf, sizeof(buf), "%s\n", title.c_str());
    out += buf;
    std::snprintf(buf, sizeof(buf), "%-20s %6s %6s %6s %6s %6s %10s %10s\n", "Model", "R2",
                  "AUC", "PR", "BACC", "F1", "Train obs.", "Test obs.");
    out += buf;
    out += std::string(76, '-') + "\n";
    auto cell = [](double v) {
        char c[16];
        if (std::isnan(v)) {
            std::snprintf(c, sizeof(c), "%6s", "NA");
        } else {
            std::snprintf(c, sizeof(c), "%6.2f", v);
        }
        return std::string(c);
    };
    for (const auto& [name, m] : rows) {
        std::snprintf(buf, sizeof(buf), "%-20s %s %s %s %s %s %10zu %10zu\n", name.c_str(),
                      cell(m.r2).c_str(), cell(m.auc).c_str(), cell(m.pr_auc).c_str(),
                      cell(m.bacc).c_str(), cell(m.f1).c_str(), train_obs, test_obs);
        out += buf;
    }
    return out;
}

}  // namespace tradecf
