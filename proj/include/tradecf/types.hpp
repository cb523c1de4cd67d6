// Domain records and their delimited-text ingestion.
//
// transactions file columns:
//   firm_id,date,product_code,origin_department,transport_mode,destination,
//   fob_value_usd[,is_reexport]
// covariates file columns:
//   destination,year,month,economic_index,government_index,health_index,
//   stringency_index,cases_per_100k,deaths_per_100k
#pragma once

#include <array>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "tradecf/common.hpp"
#include "tradecf/csv.hpp"
#include "tradecf/date.hpp"

namespace tradecf {

enum class Transport { land, sea, air, other };

inline const char* transport_name(Transport t) {
    switch (t) {
        case Transport::land: return "land";
        case Transport::sea: return "sea";
        case Transport::air: return "air";
        case Transport::other: return "other";
    }
    return "other";
}

inline bool parse_transport(std::string_view s, Transport& out) {
    if (s == "land") out = Transport::land;
    else if (s == "sea") out = Transport::sea;
    else if (s == "air") out = Transport::air;
    else if (s == "other") out = Transport::other;
    else return false;
    return true;
}

// One customs export line.
struct TransactionRecord {
    std::string firm_id;
    Date date;
    std::string product_code;        // 10 numeric digits
    std::string origin_department;
    Transport transport = Transport::other;
    std::string destination;         // ISO 3166-1 alpha-2
    double fob_value_usd = 0.0;

    int hs_chapter() const { return (product_code[0] - '0') * 10 + (product_code[1] - '0'); }
    std::string hs6() const { return product_code.substr(0, 6); }
};

// Destination-level monthly pandemic measures (indices 0..100, rates >= 0).
struct PandemicCovariates {
    std::string destination;
    YearMonth year_month;
    double economic_index = 0.0;
    double government_index = 0.0;
    double health_index = 0.0;
    double stringency_index = 0.0;
    double cases_per_100k = 0.0;
    double deaths_per_100k = 0.0;

    static constexpr std::array<const char*, 6> kNames = {
        "economic_index", "government_index", "health_index",
        "stringency_index", "cases_per_100k", "deaths_per_100k"};

    double value(std::size_t i) const {
        switch (i) {
            case 0: return economic_index;
            case 1: return government_index;
            case 2: return health_index;
            case 3: return stringency_index;
            case 4: return cases_per_100k;
            default: return deaths_per_100k;
        }
    }
};

struct RejectedRow {
    std::size_t line_no = 0;
    std::string reason;
};

struct IngestReport {
    std::vector<TransactionRecord> records;
    std::vector<RejectedRow> rejects;
    std::size_t reexports_excluded = 0;
};

inline const std::vector<std::string>& transaction_columns() {
    static const std::vector<std::string> cols = {
        "firm_id", "date", "product_code", "origin_department",
        "transport_mode", "destination", "fob_value_usd"};
    return cols;
}

// Reads transactions. Malformed rows are collected with their line numbers;
// only an unreadable stream or a bad header is fatal. When exclude_reexports
// is set and the optional is_reexport column is present, flagged rows are
// filtered out (counted, not treated as errors).
inline IngestReport ingest_transactions(std::istream& in, bool exclude_reexports = true) {
    csv::Reader reader(in, "transactions");
    const auto& required = transaction_columns();
    std::vector<int> col(required.size());
    for (std::size_t i = 0; i < required.size(); ++i) {
        col[i] = reader.column(required[i]);
        if (col[i] < 0) {
            throw DataError("transactions: header is missing column '" + required[i] + "'");
        }
    }
    const int reexport_col = reader.column("is_reexport");

    IngestReport report;
    csv::Row row;
    while (reader.next(row)) {
        auto reject = [&](const std::string& why) {
            report.rejects.push_back({row.line_no, why});
        };
        if (row.fields.size() != reader.header().size()) {
            reject("expected " + std::to_string(reader.header().size()) + " fields, got " +
                   std::to_string(row.fields.size()));
            continue;
        }
        TransactionRecord rec;
        rec.firm_id = trim(row.fields[col[0]]);
        if (rec.firm_id.empty()) {
            reject("empty firm_id");
            continue;
        }
        auto date = parse_date(trim(row.fields[col[1]]));
        if (!date) {
            reject("bad date '" + row.fields[col[1]] + "'");
            continue;
        }
        rec.date = *date;
        rec.product_code = trim(row.fields[col[2]]);
        bool product_ok = rec.product_code.size() == 10;
        for (char c : rec.product_code) product_ok = product_ok && c >= '0' && c <= '9';
        if (!product_ok) {
            reject("product_code must be 10 numeric digits, got '" + rec.product_code + "'");
            continue;
        }
        rec.origin_department = trim(row.fields[col[3]]);
        if (!parse_transport(trim(row.fields[col[4]]), rec.transport)) {
            reject("unknown transport_mode '" + row.fields[col[4]] + "'");
            continue;
        }
        rec.destination = trim(row.fields[col[5]]);
        if (rec.destination.empty()) {
            reject("empty destination");
            continue;
        }
        double value;
        if (!parse_double(row.fields[col[6]], value)) {
            reject("unparsable fob_value_usd '" + row.fields[col[6]] + "'");
            continue;
        }
        if (value < 0.0) {
            reject("negative fob_value_usd " + row.fields[col[6]]);
            continue;
        }
        rec.fob_value_usd = value;
        if (reexport_col >= 0 && exclude_reexports) {
            const std::string flag = trim(row.fields[reexport_col]);
            if (flag == "1" || flag == "true") {
                ++report.reexports_excluded;
                continue;
            }
        }
        report.records.push_back(std::move(rec));
    }
    return report;
}

struct CovariateIngestReport {
    std::vector<PandemicCovariates> records;
    std::vector<RejectedRow> rejects;
};

inline const std::vector<std::string>& covariate_columns() {
    static const std::vector<std::string> cols = {
        "destination", "year", "month", "economic_index", "government_index",
        "health_index", "stringency_index", "cases_per_100k", "deaths_per_100k"};
    return cols;
}

inline CovariateIngestReport ingest_covariates(std::istream& in) {
    csv::Reader reader(in, "covariates");
    const auto& required = covariate_columns();
    std::vector<int> col(required.size());
    for (std::size_t i = 0; i < required.size(); ++i) {
        col[i] = reader.column(required[i]);
        if (col[i] < 0) {
            throw DataError("covariates: header is missing column '" + required[i] + "'");
        }
    }

    CovariateIngestReport report;
    csv::Row row;
    while (reader.next(row)) {
        auto reject = [&](const std::string& why) {
            report.rejects.push_back({row.line_no, why});
        };
        if (row.fields.size() != reader.header().size()) {
            reject("wrong field count");
            continue;
        }
        PandemicCovariates cov;
        cov.destination = trim(row.fields[col[0]]);
        long long year, month;
        if (!parse_long(row.fields[col[1]], year) || !parse_long(row.fields[col[2]], month) ||
            month < 1 || month > 12) {
            reject("bad year/month");
            continue;
        }
        cov.year_month = {static_cast<int>(year), static_cast<int>(month)};
        double vals[6];
        bool ok = true;
        for (int k = 0; k < 6; ++k) ok = ok && parse_double(row.fields[col[3 + k]], vals[k]);
        if (!ok) {
            reject("unparsable covariate value");
            continue;
        }
        for (int k = 0; k < 4; ++k) {
            if (vals[k] < 0.0 || vals[k] > 100.0) {
                ok = false;
                reject(std::string(PandemicCovariates::kNames[k]) + " outside [0,100]");
                break;
            }
        }
        if (!ok) continue;
        if (vals[4] < 0.0 || vals[5] < 0.0) {
            reject("negative case/death rate");
            continue;
        }
        cov.economic_index = vals[0];
        cov.government_index = vals[1];
        cov.health_index = vals[2];
        cov.stringency_index = vals[3];
        cov.cases_per_100k = vals[4];
        cov.deaths_per_100k = vals[5];
        report.records.push_back(std::move(cov));
    }
    return report;
}

// Lookup keyed by (destination, year-month).
class CovariateTable {
public:
    CovariateTable() = default;
    explicit CovariateTable(const std::vector<PandemicCovariates>& rows) {
        for (const auto& r : rows) map_[{r.destination, r.year_month}] = r;
    }

    const PandemicCovariates* find(const std::string& dest, YearMonth ym) const {
        auto it = map_.find({dest, ym});
        return it == map_.end() ? nullptr : &it->second;
    }

    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }

private:
    std::map<std::pair<std::string, YearMonth>, PandemicCovariates> map_;
};

}  // namespace tradecf
