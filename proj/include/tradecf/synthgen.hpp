// Synthetic exporter worlds with a known survival process and a planted,
// heterogeneous shock. Three consecutive cohort years are generated: the
// training cohort year, the treated cohort year, and the shock year that
// provides the treated cohort's outcome labels.
//
// Survival from year y to y+1 in calendar month m follows
//   logit p = intercept + size*(class) + diversified*[ND>=2]
//             + month_effect[m] + industry_effect[section] + shock(firm, m)
// where shock(...) is nonzero only for outcomes observed in the shock year
// and is the sum of all matching shock rules. The oracle records, per
// treated firm-month, the counterfactual and shocked probabilities.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "tradecf/common.hpp"
#include "tradecf/config.hpp"
#include "tradecf/csv.hpp"
#include "tradecf/date.hpp"
#include "tradecf/hs.hpp"
#include "tradecf/types.hpp"

namespace tradecf::synthgen {

// One additive logit shift, applied in the shock year to every
// (quartile, industry, month) triple it matches. Empty sets match all.
struct ShockRule {
    std::set<int> months;
    std::set<int> industries;  // HS sections
    std::set<int> quartiles;   // 1..4
    double delta = 0.0;        // must be <= 0
};

struct GeneratorConfig {
    std::size_t n_firms = 1000;
    int base_year = 2018;
    std::vector<int> months = {1, 2, 3, 4, 5, 6, 7};
    std::uint64_t seed = 1;

    double beta_intercept = 1.7;
    double beta_size = 0.25;
    double beta_diversified = 0.2;
    std::map<int, double> beta_month;     // calendar month -> logit shift
    std::map<int, double> beta_industry;  // HS section -> logit shift
    std::optional<double> survival_prob;  // direct override in [0,1]

    std::vector<ShockRule> shocks;

    std::vector<std::pair<std::string, double>> industry_mix = {
        {"2", 0.18}, {"4", 0.14}, {"6", 0.12}, {"8", 0.08}, {"11", 0.14},
        {"12", 0.06}, {"14", 0.05}, {"15", 0.08}, {"16", 0.07}, {"17", 0.05},
        {"20", 0.03}};
    std::vector<std::pair<std::string, double>> destination_mix = {
        {"US", 0.35}, {"EC", 0.12}, {"PA", 0.08}, {"PE", 0.08}, {"MX", 0.07},
        {"BR", 0.06}, {"CL", 0.05}, {"DE", 0.05}, {"NL", 0.04}, {"CN", 0.04},
        {"ES", 0.03}, {"JP", 0.03}};
    std::vector<std::pair<std::string, double>> department_mix = {
        {"ANTIOQUIA", 0.30}, {"BOGOTA", 0.25}, {"VALLE", 0.20},
        {"ATLANTICO", 0.15}, {"BOLIVAR", 0.10}};
    std::vector<std::pair<std::string, double>> transport_mix = {
        {"sea", 0.50}, {"air", 0.30}, {"land", 0.18}, {"other", 0.02}};
    std::map<int, std::string> transport_by_industry;  // section -> mode

    double value_mu = 6.0;
    double value_sigma = 0.8;
    double value_mu_size_step = 1.5;
    double firm_mu_noise = 0.3;
    double base_activity = 0.95;  // presence prob per base-year month
    double entry_prob = 0.05;     // presence prob when absent the year before
    double tx_lambda_base = 0.5;  // transactions per month: 1 + Poisson(base + step*class)
    double tx_lambda_size_step = 0.8;
    double reexport_rate = 0.0;   // extra flagged rows in the csv output only

    int treated_year() const { return base_year + 1; }
    int shock_year() const { return base_year + 2; }

    std::vector<YearMonth> year_months() const {
        std::vector<YearMonth> out;
        for (int y : {base_year, base_year + 1, base_year + 2}) {
            for (int m : months) out.push_back({y, m});
        }
        return out;
    }
};

struct EffectOracleRow {
    std::string firm_id;
    int month = 0;  // calendar month of the treated cohort row
    double p_counterfactual = 0.0;
    double p_shocked = 0.0;
    double effect = 0.0;
};

struct EffectOracle {
    std::vector<EffectOracleRow> rows;

    double mean_effect(int month) const {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& r : rows) {
            if (r.month == month) {
                sum += r.effect;
                ++n;
            }
        }
        return n == 0 ? kUndefined : sum / static_cast<double>(n);
    }
};

struct GeneratedWorld {
    std::vector<TransactionRecord> records;
    std::vector<TransactionRecord> reexport_records;  // csv-only extras
    std::vector<PandemicCovariates> covariates;
    EffectOracle oracle;
};

namespace detail {

struct FirmAttributes {
    int size_class = 0;  // 0..3, quartile = class + 1
    int industry_section = 0;
    std::vector<int> chapters;
    std::vector<std::string> products;
    std::vector<std::string> destinations;
    std::vector<double> destination_weights;
    std::string department;
    Transport transport = Transport::sea;
    double firm_mu = 0.0;
};

inline std::vector<int> chapters_of_section(int section) {
    std::vector<int> out;
    for (int ch = 1; ch <= 99; ++ch) {
        if (hs::section_of_chapter(ch) == section) out.push_back(ch);
    }
    return out;
}

inline double round_cents(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace detail

inline void validate(const GeneratorConfig& cfg) {
    if (cfg.n_firms == 0) throw ConfigError("synthgen: n_firms must be positive");
    if (cfg.months.empty()) throw ConfigError("synthgen: empty month list");
    for (int m : cfg.months) {
        if (m < 1 || m > 12) throw ConfigError("synthgen: month out of range");
    }
    {
        // The generated span always covers three consecutive years, which
        // satisfies the two-consecutive-years minimum; guard anyway.
        std::set<int> years;
        for (const auto& ym : cfg.year_months()) years.insert(ym.year);
        if (years.size() < 2) throw ConfigError("synthgen: months must span >= 2 years");
    }
    if (cfg.survival_prob && (*cfg.survival_prob < 0.0 || *cfg.survival_prob > 1.0)) {
        throw ConfigError("synthgen: survival_prob outside [0,1]");
    }
    for (const auto& rule : cfg.shocks) {
        if (rule.delta > 0.0) {
            throw ConfigError("synthgen: shock delta must be <= 0, got " +
                              format_g12(rule.delta));
        }
        for (int m : rule.months) {
            if (m < 1 || m > 12) throw ConfigError("synthgen: shock month out of range");
        }
    }
    // Keep every reachable logit strictly inside the region where sigmoid
    // stays in (0,1) in double precision.
    double max_abs_eta = std::abs(cfg.beta_intercept) + 3.0 * std::abs(cfg.beta_size) +
                         std::abs(cfg.beta_diversified);
    double month_max = 0.0, industry_max = 0.0, shock_sum = 0.0;
    for (const auto& [m, b] : cfg.beta_month) month_max = std::max(month_max, std::abs(b));
    for (const auto& [s, b] : cfg.beta_industry) {
        industry_max = std::max(industry_max, std::abs(b));
    }
    for (const auto& rule : cfg.shocks) shock_sum += std::abs(rule.delta);
    max_abs_eta += month_max + industry_max + shock_sum;
    if (!std::isfinite(max_abs_eta) || max_abs_eta > 37.0) {
        throw ConfigError(
            "synthgen: configured logits imply survival probability outside (0,1)");
    }
}

inline double shock_delta(const GeneratorConfig& cfg, int quartile, int section, int month) {
    double delta = 0.0;
    for (const auto& rule : cfg.shocks) {
        const bool month_ok = rule.months.empty() || rule.months.count(month) > 0;
        const bool industry_ok = rule.industries.empty() || rule.industries.count(section) > 0;
        const bool quartile_ok = rule.quartiles.empty() || rule.quartiles.count(quartile) > 0;
        if (month_ok && industry_ok && quartile_ok) delta += rule.delta;
    }
    return delta;
}

inline GeneratedWorld generate(const GeneratorConfig& cfg) {
    validate(cfg);
    GeneratedWorld world;

    const int y0 = cfg.base_year;
    const int y1 = cfg.treated_year();
    const int y2 = cfg.shock_year();

    // Firm attributes, one derived RNG stream per firm.
    std::vector<detail::FirmAttributes> firms(cfg.n_firms);
    std::vector<std::string> firm_ids(cfg.n_firms);
    for (std::size_t i = 0; i < cfg.n_firms; ++i) {
        Rng rng(hash_combine(cfg.seed, hash_combine(0x66697268ULL, i)));
        auto& f = firms[i];
        char buf[16];
        std::snprintf(buf, sizeof(buf), "F%06zu", i);
        firm_ids[i] = buf;

        f.size_class = static_cast<int>(i % 4);
        {
            std::vector<double> w;
            for (const auto& [sec, weight] : cfg.industry_mix) w.push_back(weight);
            long long sec;
            const auto pick = rng.categorical(w);
            parse_long(cfg.industry_mix[pick].first, sec);
            f.industry_section = static_cast<int>(sec);
        }
        f.chapters = detail::chapters_of_section(f.industry_section);
        const std::size_t n_products = 1 + rng.uniform_int(3);
        for (std::size_t k = 0; k < n_products; ++k) {
            const int chapter = f.chapters[rng.uniform_int(f.chapters.size())];
            char code[16];
            std::snprintf(code, sizeof(code), "%02d%08llu", chapter,
                          static_cast<unsigned long long>(rng.uniform_int(100000000ULL)));
            f.products.push_back(code);
        }
        {
            std::vector<double> w;
            for (const auto& [dest, weight] : cfg.destination_mix) w.push_back(weight);
            const std::size_t n_dests = 1 + rng.uniform_int(3);
            std::set<std::size_t> picked;
            while (picked.size() < std::min(n_dests, cfg.destination_mix.size())) {
                picked.insert(rng.categorical(w));
            }
            for (std::size_t d : picked) {
                f.destinations.push_back(cfg.destination_mix[d].first);
                f.destination_weights.push_back(cfg.destination_mix[d].second);
            }
        }
        {
            std::vector<double> w;
            for (const auto& [dept, weight] : cfg.department_mix) w.push_back(weight);
            f.department = cfg.department_mix[rng.categorical(w)].first;
        }
        auto transport_override = cfg.transport_by_industry.find(f.industry_section);
        if (transport_override != cfg.transport_by_industry.end()) {
            parse_transport(transport_override->second, f.transport);
        } else {
            std::vector<double> w;
            for (const auto& [mode, weight] : cfg.transport_mix) w.push_back(weight);
            parse_transport(cfg.transport_mix[rng.categorical(w)].first, f.transport);
        }
        f.firm_mu = cfg.value_mu + cfg.value_mu_size_step * f.size_class +
                    cfg.firm_mu_noise * rng.normal();
    }

    auto survival_logit = [&](const detail::FirmAttributes& f, int month) {
        double eta = cfg.beta_intercept + cfg.beta_size * f.size_class +
                     cfg.beta_diversified * (f.destinations.size() >= 2 ? 1.0 : 0.0);
        auto bm = cfg.beta_month.find(month);
        if (bm != cfg.beta_month.end()) eta += bm->second;
        auto bi = cfg.beta_industry.find(f.industry_section);
        if (bi != cfg.beta_industry.end()) eta += bi->second;
        return eta;
    };

    // Presence decisions, then transactions and the oracle.
    for (std::size_t i = 0; i < cfg.n_firms; ++i) {
        const auto& f = firms[i];
        std::map<YearMonth, bool> present;
        for (int m : cfg.months) {
            Rng rng(hash_combine(cfg.seed,
                                 hash_combine(0x70726573ULL,
                                              hash_combine(i, YearMonth{y0, m}.index()))));
            present[{y0, m}] = rng.bernoulli(cfg.base_activity);
        }
        for (int y : {y1, y2}) {
            for (int m : cfg.months) {
                Rng rng(hash_combine(
                    cfg.seed,
                    hash_combine(0x70726573ULL, hash_combine(i, YearMonth{y, m}.index()))));
                if (present[{y - 1, m}]) {
                    double p0, p1;
                    if (cfg.survival_prob) {
                        p0 = p1 = *cfg.survival_prob;
                    } else {
                        const double eta = survival_logit(f, m);
                        const double delta =
                            y == y2 ? shock_delta(cfg, f.size_class + 1, f.industry_section, m)
                                    : 0.0;
                        p0 = sigmoid(eta);
                        p1 = sigmoid(eta + delta);
                    }
                    present[{y, m}] = rng.bernoulli(p1);
                    if (y == y2) {
                        world.oracle.rows.push_back(
                            {firm_ids[i], m, p0, p1, p1 - p0});
                    }
                } else {
                    present[{y, m}] = rng.bernoulli(cfg.entry_prob);
                }
            }
        }

        for (const auto& [ym, is_present] : present) {
            if (!is_present) continue;
            Rng rng(hash_combine(
                cfg.seed, hash_combine(0x74786e73ULL, hash_combine(i, ym.index()))));
            const int n_tx =
                1 + rng.poisson(cfg.tx_lambda_base + cfg.tx_lambda_size_step * f.size_class);
            for (int t = 0; t < n_tx; ++t) {
                TransactionRecord rec;
                rec.firm_id = firm_ids[i];
                rec.date = {ym.year, ym.month, 1 + static_cast<int>(rng.uniform_int(28))};
                rec.product_code = f.products[rng.uniform_int(f.products.size())];
                rec.origin_department = f.department;
                rec.transport = f.transport;
                rec.destination = f.destinations[rng.categorical(f.destination_weights)];
                rec.fob_value_usd =
                    detail::round_cents(rng.lognormal(f.firm_mu, cfg.value_sigma));
                world.records.push_back(std::move(rec));
                if (cfg.reexport_rate > 0.0 && rng.bernoulli(cfg.reexport_rate)) {
                    TransactionRecord re = world.records.back();
                    re.fob_value_usd =
                        detail::round_cents(rng.lognormal(f.firm_mu - 1.0, cfg.value_sigma));
                    world.reexport_records.push_back(std::move(re));
                }
            }
        }
    }

    // Destination-month pandemic measures for the treated and shock years.
    std::set<int> shocked_months;
    for (const auto& rule : cfg.shocks) {
        if (rule.months.empty()) {
            shocked_months.insert(cfg.months.begin(), cfg.months.end());
        } else {
            shocked_months.insert(rule.months.begin(), rule.months.end());
        }
    }
    for (const auto& [dest, weight] : cfg.destination_mix) {
        for (int y : {y1, y2}) {
            for (int m : cfg.months) {
                Rng rng(hash_combine(cfg.seed,
                                     hash_combine(0x636f7673ULL,
                                                  hash_combine(fnv1a64(dest),
                                                               YearMonth{y, m}.index()))));
                const bool hot = y == y2 && shocked_months.count(m) > 0;
                auto index_value = [&](double base_hot) {
                    const double v = hot ? base_hot + 8.0 * rng.normal()
                                         : 3.0 + 2.0 * rng.u01();
                    return std::clamp(std::round(v * 10000.0) / 10000.0, 0.0, 100.0);
                };
                PandemicCovariates cov;
                cov.destination = dest;
                cov.year_month = {y, m};
                cov.economic_index = index_value(55.0);
                cov.government_index = index_value(70.0);
                cov.health_index = index_value(60.0);
                cov.stringency_index = index_value(75.0);
                const double cases =
                    hot ? 220.0 + 60.0 * rng.u01() : 0.2 * rng.u01();
                cov.cases_per_100k = std::round(cases * 10000.0) / 10000.0;
                const double deaths = hot ? 6.0 + 3.0 * rng.u01() : 0.01 * rng.u01();
                cov.deaths_per_100k = std::round(deaths * 10000.0) / 10000.0;
                world.covariates.push_back(std::move(cov));
            }
        }
    }

    // Deterministic output ordering: by firm then date.
    std::sort(world.records.begin(), world.records.end(),
              [](const TransactionRecord& a, const TransactionRecord& b) {
                  if (a.firm_id != b.firm_id) return a.firm_id < b.firm_id;
                  if (a.date != b.date) return a.date < b.date;
                  if (a.product_code != b.product_code) return a.product_code < b.product_code;
                  return a.fob_value_usd < b.fob_value_usd;
              });
    return world;
}

// ---------------------------------------------------------------------------
// Config file mapping
// ---------------------------------------------------------------------------

// Shock rule text form: "months:4,5 sections:11,12 quartiles:1,2 delta:-1.5".
inline ShockRule parse_shock_rule(const std::string& text) {
    ShockRule rule;
    bool have_delta = false;
    for (const auto& token : split(text, ' ')) {
        const std::string t = trim(token);
        if (t.empty()) continue;
        const auto colon = t.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("config field 'shock': bad token '" + t + "'");
        }
        const std::string name = t.substr(0, colon);
        const std::string value = t.substr(colon + 1);
        auto parse_int_set = [&](std::set<int>& out) {
            for (const auto& part : split(value, ',')) {
                long long v;
                if (!parse_long(part, v)) {
                    throw ConfigError("config field 'shock': bad list '" + value + "'");
                }
                out.insert(static_cast<int>(v));
            }
        };
        if (name == "months") {
            parse_int_set(rule.months);
        } else if (name == "sections" || name == "industries") {
            parse_int_set(rule.industries);
        } else if (name == "quartiles") {
            parse_int_set(rule.quartiles);
        } else if (name == "delta") {
            if (!parse_double(value, rule.delta)) {
                throw ConfigError("config field 'shock': bad delta '" + value + "'");
            }
            have_delta = true;
        } else {
            throw ConfigError("config field 'shock': unknown token '" + name + "'");
        }
    }
    if (!have_delta) throw ConfigError("config field 'shock': missing delta");
    return rule;
}

inline GeneratorConfig generator_config_from(const KeyValueConfig& kv) {
    GeneratorConfig cfg;
    const long long n_firms = kv.get_int("n_firms", static_cast<long long>(cfg.n_firms));
    if (n_firms <= 0) throw ConfigError("config field 'n_firms': must be positive");
    cfg.n_firms = static_cast<std::size_t>(n_firms);
    cfg.base_year = static_cast<int>(kv.get_int("base_year", cfg.base_year));
    cfg.months = kv.get_month_list("months", cfg.months);
    cfg.seed = static_cast<std::uint64_t>(kv.get_int("seed", static_cast<long long>(cfg.seed)));
    cfg.beta_intercept = kv.get_double("beta.intercept", cfg.beta_intercept);
    cfg.beta_size = kv.get_double("beta.size", cfg.beta_size);
    cfg.beta_diversified = kv.get_double("beta.diversified", cfg.beta_diversified);
    for (const auto& [key, value] : kv.entries()) {
        if (key.rfind("beta.month.", 0) == 0) {
            long long m;
            double b;
            if (!parse_long(key.substr(11), m) || !parse_double(value, b)) {
                throw ConfigError("config field '" + key + "': bad month effect");
            }
            cfg.beta_month[static_cast<int>(m)] = b;
        } else if (key.rfind("beta.industry.", 0) == 0) {
            long long s;
            double b;
            if (!parse_long(key.substr(14), s) || !parse_double(value, b)) {
                throw ConfigError("config field '" + key + "': bad industry effect");
            }
            cfg.beta_industry[static_cast<int>(s)] = b;
        }
    }
    if (kv.has("survival_prob")) cfg.survival_prob = kv.get_double("survival_prob", 1.0);
    for (const auto& rule_text : kv.get_all("shock")) {
        cfg.shocks.push_back(parse_shock_rule(rule_text));
    }
    cfg.industry_mix = kv.get_mix("industry_mix", cfg.industry_mix);
    for (const auto& [sec, w] : cfg.industry_mix) {
        long long s;
        if (!parse_long(sec, s) || s < 1 || s > 22) {
            throw ConfigError("config field 'industry_mix': bad HS section '" + sec + "'");
        }
    }
    cfg.destination_mix = kv.get_mix("destination_mix", cfg.destination_mix);
    cfg.department_mix = kv.get_mix("department_mix", cfg.department_mix);
    cfg.transport_mix = kv.get_mix("transport_mix", cfg.transport_mix);
    for (const auto& [mode, w] : cfg.transport_mix) {
        Transport t;
        if (!parse_transport(mode, t)) {
            throw ConfigError("config field 'transport_mix': unknown mode '" + mode + "'");
        }
    }
    if (auto tbi = kv.get("transport_by_industry")) {
        for (const auto& part : split(*tbi, ',')) {
            const auto colon = part.find(':');
            long long sec;
            Transport t;
            if (colon == std::string::npos || !parse_long(part.substr(0, colon), sec) ||
                !parse_transport(trim(part.substr(colon + 1)), t)) {
                throw ConfigError("config field 'transport_by_industry': bad entry '" + part +
                                  "'");
            }
            cfg.transport_by_industry[static_cast<int>(sec)] = trim(part.substr(colon + 1));
        }
    }
    cfg.value_mu = kv.get_double("value_mu", cfg.value_mu);
    cfg.value_sigma = kv.get_double("value_sigma", cfg.value_sigma);
    cfg.value_mu_size_step = kv.get_double("value_mu_size_step", cfg.value_mu_size_step);
    cfg.firm_mu_noise = kv.get_double("firm_mu_noise", cfg.firm_mu_noise);
    cfg.base_activity = kv.get_double("base_activity", cfg.base_activity);
    cfg.entry_prob = kv.get_double("entry_prob", cfg.entry_prob);
    cfg.tx_lambda_base = kv.get_double("tx_lambda_base", cfg.tx_lambda_base);
    cfg.tx_lambda_size_step = kv.get_double("tx_lambda_size_step", cfg.tx_lambda_size_step);
    cfg.reexport_rate = kv.get_double("reexport_rate", cfg.reexport_rate);
    if (cfg.base_activity < 0.0 || cfg.base_activity > 1.0) {
        throw ConfigError("config field 'base_activity': outside [0,1]");
    }
    if (cfg.entry_prob < 0.0 || cfg.entry_prob > 1.0) {
        throw ConfigError("config field 'entry_prob': outside [0,1]");
    }
    return cfg;
}

// Default desk-scale shock: a broad April dip plus concentrated extra harm
// for small firms in fragile industries, easing in the following months.
inline std::vector<ShockRule> default_shocks() {
    return {
        {{4}, {}, {}, -1.05},
        {{5}, {}, {}, -0.55},
        {{6}, {}, {}, -0.30},
        {{7}, {}, {}, -0.15},
        {{4, 5}, {8, 11, 12, 14, 17, 20}, {}, -0.50},
        {{4, 5}, {8, 11, 12, 14, 17, 20}, {1, 2}, -0.80},
    };
}

// ---------------------------------------------------------------------------
// Serialization of generated artifacts
// ---------------------------------------------------------------------------

inline void write_transactions_csv(const GeneratedWorld& world, std::ostream& out) {
    csv::Writer w(out);
    std::vector<std::string> header = transaction_columns();
    header.push_back("is_reexport");
    w.write_row(header);
    auto row_of = [](const TransactionRecord& r, bool reexport) {
        return std::vector<std::string>{
            r.firm_id,         r.date.str(),         r.product_code,
            r.origin_department, transport_name(r.transport), r.destination,
            format_g12(r.fob_value_usd), reexport ? "1" : "0"};
    };
    for (const auto& r : world.records) w.write_row(row_of(r, false));
    for (const auto& r : world.reexport_records) w.write_row(row_of(r, true));
}

inline void write_covariates_csv(const GeneratedWorld& world, std::ostream& out) {
    csv::Writer w(out);
    w.write_row(covariate_columns());
    for (const auto& c : world.covariates) {
        w.write_row({c.destination, std::to_string(c.year_month.year),
                     std::to_string(c.year_month.month), format_g12(c.economic_index),
                     format_g12(c.government_index), format_g12(c.health_index),
                     format_g12(c.stringency_index), format_g12(c.cases_per_100k),
                     format_g12(c.deaths_per_100k)});
    }
}

inline void write_oracle_csv(const GeneratedWorld& world, std::ostream& out) {
    csv::Writer w(out);
    w.write_row({"firm_id", "month", "p_counterfactual", "p_shocked", "effect"});
    for (const auto& r : world.oracle.rows) {
        w.write_row({r.firm_id, std::to_string(r.month), format_g12(r.p_counterfactual),
                     format_g12(r.p_shocked), format_g12(r.effect)});
    }
}

inline EffectOracle read_oracle_csv(std::istream& in) {
    csv::Reader reader(in, "oracle");
    EffectOracle oracle;
    csv::Row row;
    while (reader.next(row)) {
        if (row.fields.size() != 5) throw DataError("oracle: malformed row");
        EffectOracleRow r;
        r.firm_id = row.fields[0];
        long long m;
        parse_long(row.fields[1], m);
        r.month = static_cast<int>(m);
        parse_double(row.fields[2], r.p_counterfactual);
        parse_double(row.fields[3], r.p_shocked);
        parse_double(row.fields[4], r.effect);
        oracle.rows.push_back(std::move(r));
    }
    return oracle;
}

}  // namespace tradecf::synthgen
