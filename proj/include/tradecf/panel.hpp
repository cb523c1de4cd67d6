// Firm-month feature panel construction and the descriptive statistics on
// top of the raw transactions.
//
// A PanelBuilder derives its vocabulary (destinations, departments, sectors,
// industries, continents, size quartiles, experience onsets) from the whole
// record set once, so panels built for different months share an identical
// column layout. Column ordering is sorted and therefore byte-stable.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tradecf/common.hpp"
#include "tradecf/csv.hpp"
#include "tradecf/date.hpp"
#include "tradecf/hs.hpp"
#include "tradecf/matrix.hpp"
#include "tradecf/types.hpp"
#include "vendor_json.hpp"

namespace tradecf {

struct PanelColumn {
    std::string name;
    std::string group;
    bool sam_only = false;
    bool is_binary = false;
};

// Non-feature labels carried per row for descriptive and heterogeneity work.
struct PanelAux {
    int size_quartile = 1;  // 1..4
    std::string modal_destination;
    std::string modal_continent;
    std::string modal_department;
    std::string modal_transport;
    int modal_sector = 0;    // HS chapter
    int modal_industry = 0;  // HS section
};

struct FeaturePanel {
    YearMonth ym;
    bool shock_aware = false;
    std::vector<std::string> firm_ids;      // one per row, sorted
    std::vector<PanelColumn> columns;
    Matrix features;                        // rows x columns
    std::vector<int> success;               // outcome in (year+1, month)
    std::vector<PanelAux> aux;

    std::size_t rows() const { return firm_ids.size(); }

    int column_index(std::string_view name) const {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].name == name) return static_cast<int>(j);
        }
        return -1;
    }

    std::vector<std::string> feature_names() const {
        std::vector<std::string> out;
        out.reserve(columns.size());
        for (const auto& c : columns) out.push_back(c.name);
        return out;
    }

    // Row ids for fold assignment: stable across row reordering.
    std::vector<std::uint64_t> row_ids() const {
        std::vector<std::uint64_t> ids(firm_ids.size());
        for (std::size_t i = 0; i < firm_ids.size(); ++i) {
            ids[i] = hash_combine(fnv1a64(firm_ids[i]),
                                  static_cast<std::uint64_t>(ym.index()));
        }
        return ids;
    }

    // View without the SAM-only columns.
    FeaturePanel sum_view() const {
        FeaturePanel out;
        out.ym = ym;
        out.shock_aware = false;
        out.firm_ids = firm_ids;
        out.success = success;
        out.aux = aux;
        std::vector<std::size_t> keep;
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (!columns[j].sam_only) {
                keep.push_back(j);
                out.columns.push_back(columns[j]);
            }
        }
        out.features = features.select_cols(keep);
        return out;
    }
};

namespace detail {

// Modal pick: largest value; ties broken by larger global total, then by
// lexicographically smaller key. Used for main destination and all other
// modal labels.
template <typename Map, typename GlobalTotal>
std::string modal_key(const Map& value_by_key, const GlobalTotal& global_total) {
    std::string best;
    double best_value = -1.0;
    double best_global = -1.0;
    for (const auto& [key, value] : value_by_key) {
        const double g = global_total(key);
        const bool wins = value > best_value ||
                          (value == best_value &&
                           (g > best_global || (g == best_global && key < best)));
        if (best.empty() || wins) {
            best = key;
            best_value = value;
            best_global = g;
        }
    }
    return best;
}

}  // namespace detail

class PanelBuilder {
public:
    PanelBuilder(const std::vector<TransactionRecord>& records,
                 const CovariateTable* covariates = nullptr)
        : covariates_(covariates) {
        // Per firm-month aggregates and global vocabularies.
        for (const auto& r : records) {
            const YearMonth ym = r.date.year_month();
            auto& cell = cells_[{r.firm_id, ym}];
            cell.total += r.fob_value_usd;
            cell.by_hs6[r.hs6()] += r.fob_value_usd;
            cell.by_dest[r.destination] += r.fob_value_usd;
            cell.by_dept[r.origin_department] += r.fob_value_usd;
            cell.by_transport[transport_name(r.transport)] += r.fob_value_usd;
            const int chapter = r.hs_chapter();
            cell.by_sector[chapter] += r.fob_value_usd;
            cell.by_industry[hs::section_of_chapter(chapter)] += r.fob_value_usd;

            destinations_.insert(r.destination);
            departments_.insert(r.origin_department);
            sectors_.insert(chapter);
            industries_.insert(hs::section_of_chapter(chapter));
            continents_.insert(hs::continent_of(r.destination));

            global_dest_value_[r.destination] += r.fob_value_usd;
            global_dept_value_[r.origin_department] += r.fob_value_usd;
            global_transport_value_[transport_name(r.transport)] += r.fob_value_usd;
            global_sector_value_[chapter] += r.fob_value_usd;
            global_industry_value_[hs::section_of_chapter(chapter)] += r.fob_value_usd;
            dest_tx_count_[r.destination] += 1;
            ++n_records_;

            yearly_total_[{r.firm_id, r.date.year}] += r.fob_value_usd;

            auto& d_first = first_dest_export_[{r.firm_id, r.destination}];
            if (d_first == 0 || ym.index() < d_first) d_first = ym.index();
            auto& s_first = first_sector_export_[{r.firm_id, chapter}];
            if (s_first == 0 || ym.index() < s_first) s_first = ym.index();
        }

        // Size quartiles per calendar year from ln yearly totals; firms at an
        // exact quartile boundary go to the lower quartile.
        std::map<int, std::vector<double>> by_year;
        for (const auto& [key, total] : yearly_total_) {
            by_year[key.second].push_back(log_value(total));
        }
        for (auto& [year, values] : by_year) {
            std::sort(values.begin(), values.end());
            const std::size_t n = values.size();
            auto rank = [&](int k) {
                std::size_t r = (k * n + 3) / 4;  // ceil(k*n/4)
                return values[r == 0 ? 0 : r - 1];
            };
            quartile_cuts_[year] = {rank(1), rank(2), rank(3)};
        }

        // Destinations qualifying for per-destination covariate columns:
        // at least 0.5% of all transactions.
        for (const auto& [dest, count] : dest_tx_count_) {
            if (n_records_ > 0 &&
                static_cast<double>(count) >= 0.005 * static_cast<double>(n_records_)) {
                covariate_dests_.push_back(dest);
            }
        }
        std::sort(covariate_dests_.begin(), covariate_dests_.end());
    }

    int size_quartile(const std::string& firm, int year) const {
        auto it = yearly_total_.find({firm, year});
        if (it == yearly_total_.end()) return 1;
        auto cuts = quartile_cuts_.find(year);
        if (cuts == quartile_cuts_.end()) return 1;
        const double v = log_value(it->second);
        const auto& [q1, q2, q3] = cuts->second;
        if (v <= q1) return 1;
        if (v <= q2) return 2;
        if (v <= q3) return 3;
        return 4;
    }

    bool firm_present(const std::string& firm, YearMonth ym) const {
        return cells_.find({firm, ym}) != cells_.end();
    }

    // One row per firm exporting in (year, month). Success = the firm has at
    // least one transaction in the same month of year+1. With shock_aware,
    // the label month's pandemic covariates are joined per destination.
    FeaturePanel build(int year, int month, bool shock_aware) const {
        if (month < 1 || month > 12) throw DataError("build_panel: month out of range");
        const YearMonth ym{year, month};
        const YearMonth label_ym{year + 1, month};

        if (shock_aware) {
            if (covariates_ == nullptr || covariates_->empty()) {
                std::string missing;
                for (const auto& d : covariate_dests_) {
                    if (!missing.empty()) missing += ", ";
                    missing += "(" + d + ", " + label_ym.str() + ")";
                }
                throw DataError(
                    "build_panel: shock-aware panel requires pandemic covariates; missing " +
                    (missing.empty() ? std::string("all destinations for ") + label_ym.str()
                                     : missing));
            }
        }

        FeaturePanel panel;
        panel.ym = ym;
        panel.shock_aware = shock_aware;
        panel.columns = make_columns(shock_aware);

        for (const auto& [key, cell] : cells_) {
            if (key.second == ym) panel.firm_ids.push_back(key.first);
        }
        std::sort(panel.firm_ids.begin(), panel.firm_ids.end());

        const std::size_t n = panel.firm_ids.size();
        panel.features = Matrix(n, panel.columns.size());
        panel.success.assign(n, 0);
        panel.aux.assign(n, PanelAux{});

        for (std::size_t i = 0; i < n; ++i) {
            fill_row(panel, i, ym, label_ym, shock_aware);
        }
        return panel;
    }

    const std::vector<std::string>& covariate_destinations() const { return covariate_dests_; }

private:
    struct Cell {
        double total = 0.0;
        std::map<std::string, double> by_hs6;
        std::map<std::string, double> by_dest;
        std::map<std::string, double> by_dept;
        std::map<std::string, double> by_transport;
        std::map<int, double> by_sector;
        std::map<int, double> by_industry;
    };

    static double log_value(double total) { return std::log(std::max(total, 1e-300)); }

    static double herfindahl(const std::map<std::string, double>& shares_of, double total) {
        if (shares_of.empty()) return 1.0;
        if (total <= 0.0) {
            // All-zero values: fall back to equal shares over the levels.
            const double s = 1.0 / static_cast<double>(shares_of.size());
            return s;
        }
        double hh = 0.0;
        for (const auto& [key, v] : shares_of) {
            const double share = v / total;
            hh += share * share;
        }
        return hh;
    }

    std::vector<PanelColumn> make_columns(bool shock_aware) const {
        std::vector<PanelColumn> cols;
        auto add = [&](std::string name, std::string group, bool binary, bool sam = false) {
            cols.push_back({std::move(name), std::move(group), sam, binary});
        };
        add("total_export_value_ln", "value", false);
        add("NP", "diversification", false);
        add("ND", "diversification", false);
        add("HH_p", "diversification", false);
        add("HH_d", "diversification", false);
        for (int q = 1; q <= 4; ++q) add("size_Q" + std::to_string(q), "size", true);
        for (const auto& d : destinations_) add("dest_" + d, "destination", true);
        for (const auto& c : continents_) add("cont_" + c, "continent", true);
        for (const auto& d : departments_) add("dept_" + d, "department", true);
        for (const char* t : {"land", "sea", "air", "other"}) {
            add(std::string("transport_") + t, "transport", true);
        }
        for (int s : sectors_) add("sector_" + two_digits(s), "sector", true);
        for (int s : industries_) add("industry_" + two_digits(s), "industry", true);
        for (const auto& d : destinations_) {
            add("dest_exp_" + d, "destination_experience", true);
        }
        for (int s : sectors_) add("sector_exp_" + two_digits(s), "sector_experience", true);
        for (int s : industries_) {
            add("sizex_industry_" + two_digits(s), "interaction_size_industry", false);
        }
        for (int s : sectors_) {
            add("sizex_sector_" + two_digits(s), "interaction_size_sector", false);
        }
        for (const char* t : {"land", "sea", "air", "other"}) {
            add(std::string("sizex_transport_") + t, "interaction_size_transport", false);
        }
        for (const auto& d : destinations_) {
            add("sizex_dest_" + d, "interaction_size_destination", false);
        }
        if (shock_aware) {
            for (const auto& d : covariate_dests_) {
                for (const char* c : PandemicCovariates::kNames) {
                    add(std::string("cov_") + c + "_" + d, "pandemic", false, true);
                }
            }
            for (const auto& d : covariate_dests_) {
                add("cov_missing_" + d, "pandemic", true, true);
            }
            for (const char* c : PandemicCovariates::kNames) {
                add(std::string("cov_wmean_") + c, "pandemic", false, true);
            }
        }
        return cols;
    }

    void fill_row(FeaturePanel& panel, std::size_t i, YearMonth ym, YearMonth label_ym,
                  bool shock_aware) const {
        const std::string& firm = panel.firm_ids[i];
        const Cell& cell = cells_.at({firm, ym});
        double* row = panel.features.row_ptr(i);
        std::size_t j = 0;
        auto put = [&](double v) { row[j++] = v; };

        const int quartile = size_quartile(firm, ym.year);

        put(log_value(cell.total));
        put(static_cast<double>(cell.by_hs6.size()));
        put(static_cast<double>(cell.by_dest.size()));
        put(herfindahl_map(cell.by_hs6, cell.total));
        put(herfindahl(cell.by_dest, cell.total));
        for (int q = 1; q <= 4; ++q) put(q == quartile ? 1.0 : 0.0);

        std::set<std::string> row_continents;
        for (const auto& [dest, v] : cell.by_dest) row_continents.insert(hs::continent_of(dest));
        for (const auto& d : destinations_) put(cell.by_dest.count(d) ? 1.0 : 0.0);
        for (const auto& c : continents_) put(row_continents.count(c) ? 1.0 : 0.0);
        for (const auto& d : departments_) put(cell.by_dept.count(d) ? 1.0 : 0.0);
        for (const char* t : {"land", "sea", "air", "other"}) {
            put(cell.by_transport.count(t) ? 1.0 : 0.0);
        }
        for (int s : sectors_) put(cell.by_sector.count(s) ? 1.0 : 0.0);
        for (int s : industries_) put(cell.by_industry.count(s) ? 1.0 : 0.0);

        // Experience dummies: 1 from the month of first export onward.
        for (const auto& d : destinations_) {
            auto it = first_dest_export_.find({firm, d});
            put(it != first_dest_export_.end() && it->second <= ym.index() ? 1.0 : 0.0);
        }
        for (int s : sectors_) {
            auto it = first_sector_export_.find({firm, s});
            put(it != first_sector_export_.end() && it->second <= ym.index() ? 1.0 : 0.0);
        }

        // Interaction factors: quartile index where the firm is active, else 0.
        for (int s : industries_) put(cell.by_industry.count(s) ? quartile : 0.0);
        for (int s : sectors_) put(cell.by_sector.count(s) ? quartile : 0.0);
        for (const char* t : {"land", "sea", "air", "other"}) {
            put(cell.by_transport.count(t) ? quartile : 0.0);
        }
        for (const auto& d : destinations_) put(cell.by_dest.count(d) ? quartile : 0.0);

        if (shock_aware) {
            for (const auto& d : covariate_dests_) {
                const bool serves = cell.by_dest.count(d) > 0;
                const PandemicCovariates* cov =
                    serves ? covariates_->find(d, label_ym) : nullptr;
                for (std::size_t c = 0; c < 6; ++c) {
                    put(cov != nullptr ? cov->value(c) : 0.0);
                }
            }
            for (const auto& d : covariate_dests_) {
                const bool serves = cell.by_dest.count(d) > 0;
                const bool missing = serves && covariates_->find(d, label_ym) == nullptr;
                put(missing ? 1.0 : 0.0);
            }
            // Export-value-weighted mean over served destinations with data.
            double wsum = 0.0;
            double acc[6] = {0, 0, 0, 0, 0, 0};
            for (const auto& [dest, v] : cell.by_dest) {
                const PandemicCovariates* cov = covariates_->find(dest, label_ym);
                if (cov == nullptr) continue;
                wsum += v;
                for (std::size_t c = 0; c < 6; ++c) acc[c] += v * cov->value(c);
            }
            for (std::size_t c = 0; c < 6; ++c) put(wsum > 0.0 ? acc[c] / wsum : 0.0);
        }

        panel.success[i] = firm_present(firm, label_ym) ? 1 : 0;

        PanelAux& aux = panel.aux[i];
        aux.size_quartile = quartile;
        aux.modal_destination = detail::modal_key(cell.by_dest, [&](const std::string& k) {
            auto it = global_dest_value_.find(k);
            return it == global_dest_value_.end() ? 0.0 : it->second;
        });
        aux.modal_continent = hs::continent_of(aux.modal_destination);
        aux.modal_department = detail::modal_key(cell.by_dept, [&](const std::string& k) {
            auto it = global_dept_value_.find(k);
            return it == global_dept_value_.end() ? 0.0 : it->second;
        });
        aux.modal_transport = detail::modal_key(cell.by_transport, [&](const std::string& k) {
            auto it = global_transport_value_.find(k);
            return it == global_transport_value_.end() ? 0.0 : it->second;
        });
        aux.modal_sector = modal_int_key(cell.by_sector, global_sector_value_);
        aux.modal_industry = modal_int_key(cell.by_industry, global_industry_value_);
    }

    static double herfindahl_map(const std::map<std::string, double>& m, double total) {
        return herfindahl(m, total);
    }

    static int modal_int_key(const std::map<int, double>& value_by_key,
                             const std::map<int, double>& global) {
        int best = 0;
        double best_value = -1.0, best_global = -1.0;
        bool first = true;
        for (const auto& [key, value] : value_by_key) {
            auto git = global.find(key);
            const double g = git == global.end() ? 0.0 : git->second;
            const bool wins = value > best_value ||
                              (value == best_value &&
                               (g > best_global || (g == best_global && key < best)));
            if (first || wins) {
                best = key;
                best_value = value;
                best_global = g;
                first = false;
            }
        }
        return best;
    }

    static std::string two_digits(int v) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "%02d", v);
        return buf;
    }

    const CovariateTable* covariates_;
    std::map<std::pair<std::string, YearMonth>, Cell> cells_;
    std::set<std::string> destinations_;
    std::set<std::string> departments_;
    std::set<int> sectors_;
    std::set<int> industries_;
    std::set<std::string> continents_;
    std::map<std::string, double> global_dest_value_;
    std::map<std::string, double> global_dept_value_;
    std::map<std::string, double> global_transport_value_;
    std::map<int, double> global_sector_value_;
    std::map<int, double> global_industry_value_;
    std::map<std::string, std::size_t> dest_tx_count_;
    std::size_t n_records_ = 0;
    std::map<std::pair<std::string, int>, double> yearly_total_;
    std::map<int, std::tuple<double, double, double>> quartile_cuts_;
    std::map<std::pair<std::string, std::string>, int> first_dest_export_;
    std::map<std::pair<std::string, int>, int> first_sector_export_;
};

inline FeaturePanel build_panel(const std::vector<TransactionRecord>& records,
                                const CovariateTable* covariates, int year, int month,
                                bool shock_aware) {
    PanelBuilder builder(records, covariates);
    return builder.build(year, month, shock_aware);
}

// ---------------------------------------------------------------------------
// Panel serialization: columnar delimited file + JSON schema sidecar.
// ---------------------------------------------------------------------------

inline void write_panel_csv(const FeaturePanel& panel, std::ostream& out) {
    csv::Writer w(out);
    std::vector<std::string> header = {"firm_id",       "year",
                                       "month",         "size_quartile",
                                       "modal_destination", "modal_continent",
                                       "modal_department",  "modal_transport",
                                       "modal_sector",  "modal_industry"};
    for (const auto& c : panel.columns) header.push_back(c.name);
    header.push_back("success");
    w.write_row(header);
    for (std::size_t i = 0; i < panel.rows(); ++i) {
        std::vector<std::string> row;
        row.reserve(header.size());
        const PanelAux& a = panel.aux[i];
        row.push_back(panel.firm_ids[i]);
        row.push_back(std::to_string(panel.ym.year));
        row.push_back(std::to_string(panel.ym.month));
        row.push_back(std::to_string(a.size_quartile));
        row.push_back(a.modal_destination);
        row.push_back(a.modal_continent);
        row.push_back(a.modal_department);
        row.push_back(a.modal_transport);
        row.push_back(std::to_string(a.modal_sector));
        row.push_back(std::to_string(a.modal_industry));
        for (std::size_t j = 0; j < panel.columns.size(); ++j) {
            row.push_back(format_g12(panel.features(i, j)));
        }
        row.push_back(std::to_string(panel.success[i]));
        w.write_row(row);
    }
}

inline nlohmann::json panel_schema_json(const FeaturePanel& panel) {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& c : panel.columns) {
        cols.push_back({{"name", c.name},
                        {"group", c.group},
                        {"type", c.is_binary ? "binary" : "numeric"},
                        {"tag", c.sam_only ? "SAM-only" : "SUM"}});
    }
    return {{"format_version", 1},
            {"year", panel.ym.year},
            {"month", panel.ym.month},
            {"shock_aware", panel.shock_aware},
            {"rows", panel.rows()},
            {"key_columns", {"firm_id", "year", "month"}},
            {"aux_columns",
             {"size_quartile", "modal_destination", "modal_continent", "modal_department",
              "modal_transport", "modal_sector", "modal_industry"}},
            {"outcome", "success"},
            {"columns", cols}};
}

inline FeaturePanel read_panel(std::istream& data, const nlohmann::json& schema) {
    FeaturePanel panel;
    panel.ym = {schema.at("year").get<int>(), schema.at("month").get<int>()};
    panel.shock_aware = schema.at("shock_aware").get<bool>();
    for (const auto& c : schema.at("columns")) {
        panel.columns.push_back({c.at("name").get<std::string>(),
                                 c.at("group").get<std::string>(),
                                 c.at("tag").get<std::string>() == "SAM-only",
                                 c.at("type").get<std::string>() == "binary"});
    }
    csv::Reader reader(data, "panel");
    const std::size_t n_aux = 10;  // firm_id..modal_industry
    if (reader.header().size() != n_aux + panel.columns.size() + 1) {
        throw SchemaError("panel: header does not match schema sidecar");
    }
    std::vector<std::vector<double>> feature_rows;
    csv::Row row;
    while (reader.next(row)) {
        if (row.fields.size() != reader.header().size()) {
            throw DataError("panel: malformed row at line " + std::to_string(row.line_no));
        }
        panel.firm_ids.push_back(row.fields[0]);
        PanelAux aux;
        long long q, sec, ind;
        parse_long(row.fields[3], q);
        aux.size_quartile = static_cast<int>(q);
        aux.modal_destination = row.fields[4];
        aux.modal_continent = row.fields[5];
        aux.modal_department = row.fields[6];
        aux.modal_transport = row.fields[7];
        parse_long(row.fields[8], sec);
        parse_long(row.fields[9], ind);
        aux.modal_sector = static_cast<int>(sec);
        aux.modal_industry = static_cast<int>(ind);
        panel.aux.push_back(std::move(aux));
        std::vector<double> feats(panel.columns.size());
        for (std::size_t j = 0; j < panel.columns.size(); ++j) {
            if (!parse_double(row.fields[n_aux + j], feats[j])) {
                throw DataError("panel: unparsable feature at line " +
                                std::to_string(row.line_no));
            }
        }
        feature_rows.push_back(std::move(feats));
        long long s;
        parse_long(row.fields.back(), s);
        panel.success.push_back(static_cast<int>(s));
    }
    panel.features = Matrix(feature_rows.size(), panel.columns.size());
    for (std::size_t i = 0; i < feature_rows.size(); ++i) {
        for (std::size_t j = 0; j < panel.columns.size(); ++j) {
            panel.features(i, j) = feature_rows[i][j];
        }
    }
    return panel;
}

// ---------------------------------------------------------------------------
// Descriptive statistics
// ---------------------------------------------------------------------------

enum class FirmStatusKind { surviving, entrant, exiting };

inline const char* firm_status_name(FirmStatusKind k) {
    switch (k) {
        case FirmStatusKind::surviving: return "surviving";
        case FirmStatusKind::entrant: return "entrant";
        case FirmStatusKind::exiting: return "exiting";
    }
    return "";
}

struct FirmStatus {
    std::string firm_id;
    int year = 0;     // the earlier year of the pair
    int quarter = 0;  // 1..4
    FirmStatusKind status = FirmStatusKind::surviving;
    double avg_export_value = 0.0;
};

inline bool in_quarter(const Date& d, int quarter) {
    return (d.month - 1) / 3 + 1 == quarter;
}

// Partition of the union of both years' exporters for one quarter pair.
inline std::vector<FirmStatus> classify_firm_status(
    const std::vector<TransactionRecord>& records_t,
    const std::vector<TransactionRecord>& records_t1, int quarter) {
    if (quarter < 1 || quarter > 4) throw DataError("classify_firm_status: bad quarter");
    std::map<std::string, double> totals_t, totals_t1;
    int year_t = 0;
    for (const auto& r : records_t) {
        if (!in_quarter(r.date, quarter)) continue;
        totals_t[r.firm_id] += r.fob_value_usd;
        year_t = r.date.year;
    }
    for (const auto& r : records_t1) {
        if (!in_quarter(r.date, quarter)) continue;
        totals_t1[r.firm_id] += r.fob_value_usd;
        if (year_t == 0) year_t = r.date.year - 1;
    }
    std::vector<FirmStatus> out;
    for (const auto& [firm, total] : totals_t) {
        FirmStatus fs;
        fs.firm_id = firm;
        fs.year = year_t;
        fs.quarter = quarter;
        auto it = totals_t1.find(firm);
        if (it != totals_t1.end()) {
            fs.status = FirmStatusKind::surviving;
            fs.avg_export_value = 0.5 * (total + it->second);
        } else {
            fs.status = FirmStatusKind::exiting;
            fs.avg_export_value = total;
        }
        out.push_back(std::move(fs));
    }
    for (const auto& [firm, total] : totals_t1) {
        if (totals_t.count(firm)) continue;
        out.push_back({firm, year_t, quarter, FirmStatusKind::entrant, total});
    }
    return out;
}

struct GroupGrowth {
    std::string group;
    std::size_t count_t = 0;
    std::size_t count_t1 = 0;
    double value_t = 0.0;
    double value_t1 = 0.0;
    double exporter_growth = 0.0;  // NaN sentinel when count_t == 0
    double value_growth = 0.0;     // NaN sentinel when value_t == 0
    double share_t = 0.0;          // share of exporter count in year t
    bool in_top80 = false;         // inside the cumulative-80%-of-exporters head
};

enum class GrowthGroupBy { destination, sector };

// Exporter-count and export-value growth per destination or HS-chapter
// sector between the same quarter of two consecutive years.
inline std::vector<GroupGrowth> growth_by_group(
    const std::vector<TransactionRecord>& records_t,
    const std::vector<TransactionRecord>& records_t1, GrowthGroupBy group_by, int quarter) {
    if (quarter < 1 || quarter > 4) throw DataError("growth_by_group: bad quarter");
    struct Agg {
        std::set<std::string> firms_t, firms_t1;
        double value_t = 0.0, value_t1 = 0.0;
    };
    std::map<std::string, Agg> agg;
    auto key_of = [&](const TransactionRecord& r) {
        if (group_by == GrowthGroupBy::destination) return r.destination;
        char buf[8];
        std::snprintf(buf, sizeof(buf), "%02d", r.hs_chapter());
        return std::string(buf);
    };
    for (const auto& r : records_t) {
        if (!in_quarter(r.date, quarter)) continue;
        auto& a = agg[key_of(r)];
        a.firms_t.insert(r.firm_id);
        a.value_t += r.fob_value_usd;
    }
    for (const auto& r : records_t1) {
        if (!in_quarter(r.date, quarter)) continue;
        auto& a = agg[key_of(r)];
        a.firms_t1.insert(r.firm_id);
        a.value_t1 += r.fob_value_usd;
    }
    std::vector<GroupGrowth> out;
    double total_count_t = 0.0;
    for (const auto& [group, a] : agg) {
        GroupGrowth g;
        g.group = group;
        g.count_t = a.firms_t.size();
        g.count_t1 = a.firms_t1.size();
        g.value_t = a.value_t;
        g.value_t1 = a.value_t1;
        g.exporter_growth =
            g.count_t == 0 ? kUndefined
                           : (static_cast<double>(g.count_t1) - static_cast<double>(g.count_t)) /
                                 static_cast<double>(g.count_t);
        g.value_growth =
            g.value_t == 0.0 ? kUndefined : (g.value_t1 - g.value_t) / g.value_t;
        total_count_t += static_cast<double>(g.count_t);
        out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(), [](const GroupGrowth& a, const GroupGrowth& b) {
        if (a.count_t != b.count_t) return a.count_t > b.count_t;
        return a.group < b.group;
    });
    double cum = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].share_t =
            total_count_t > 0.0 ? static_cast<double>(out[i].count_t) / total_count_t : 0.0;
        cum += out[i].share_t;
        out[i].in_top80 = i == 0 || cum <= 0.80;
    }
    return out;
}

}  // namespace tradecf
