// Plain-text key=value configuration. Lines are `key = value`, `#` starts a
// comment, keys may repeat (repeatable rules collect in order).
#pragma once

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tradecf/common.hpp"

namespace tradecf {

class KeyValueConfig {
public:
    static KeyValueConfig parse(std::istream& in) {
        KeyValueConfig cfg;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const std::string trimmed = trim(line);
            if (trimmed.empty()) continue;
            const auto eq = trimmed.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
            }
            const std::string key = trim(trimmed.substr(0, eq));
            const std::string value = trim(trimmed.substr(eq + 1));
            if (key.empty()) {
                throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
            }
            cfg.entries_.push_back({key, value});
        }
        return cfg;
    }

    static KeyValueConfig parse_string(const std::string& text) {
        std::istringstream in(text);
        return parse(in);
    }

    bool has(const std::string& key) const {
        for (const auto& [k, v] : entries_) {
            if (k == key) return true;
        }
        return false;
    }

    // Last occurrence wins for scalar keys (flag overrides append).
    std::optional<std::string> get(const std::string& key) const {
        std::optional<std::string> out;
        for (const auto& [k, v] : entries_) {
            if (k == key) out = v;
        }
        return out;
    }

    std::vector<std::string> get_all(const std::string& key) const {
        std::vector<std::string> out;
        for (const auto& [k, v] : entries_) {
            if (k == key) out.push_back(v);
        }
        return out;
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        auto v = get(key);
        return v ? *v : fallback;
    }

    long long get_int(const std::string& key, long long fallback) const {
        auto v = get(key);
        if (!v) return fallback;
        long long out;
        if (!parse_long(*v, out)) {
            throw ConfigError("config field '" + key + "': expected integer, got '" + *v + "'");
        }
        return out;
    }

    double get_double(const std::string& key, double fallback) const {
        auto v = get(key);
        if (!v) return fallback;
        double out;
        if (!parse_double(*v, out)) {
            throw ConfigError("config field '" + key + "': expected number, got '" + *v + "'");
        }
        return out;
    }

    bool get_bool(const std::string& key, bool fallback) const {
        auto v = get(key);
        if (!v) return fallback;
        if (*v == "true" || *v == "1") return true;
        if (*v == "false" || *v == "0") return false;
        throw ConfigError("config field '" + key + "': expected true/false, got '" + *v + "'");
    }

    // "1-7" or "1,2,3"; validated to 1..12.
    std::vector<int> get_month_list(const std::string& key,
                                    const std::vector<int>& fallback) const {
        auto v = get(key);
        if (!v) return fallback;
        std::vector<int> out;
        const auto dash = v->find('-');
        if (dash != std::string::npos && v->find(',') == std::string::npos) {
            long long lo, hi;
            if (!parse_long(v->substr(0, dash), lo) || !parse_long(v->substr(dash + 1), hi) ||
                lo > hi) {
                throw ConfigError("config field '" + key + "': bad month range '" + *v + "'");
            }
            for (long long m = lo; m <= hi; ++m) out.push_back(static_cast<int>(m));
        } else {
            for (const auto& part : split(*v, ',')) {
                long long m;
                if (!parse_long(part, m)) {
                    throw ConfigError("config field '" + key + "': bad month '" + part + "'");
                }
                out.push_back(static_cast<int>(m));
            }
        }
        for (int m : out) {
            if (m < 1 || m > 12) {
                throw ConfigError("config field '" + key + "': month " + std::to_string(m) +
                                  " out of 1..12");
            }
        }
        if (out.empty()) throw ConfigError("config field '" + key + "': empty month list");
        return out;
    }

    // "key1:w1,key2:w2" pairs.
    std::vector<std::pair<std::string, double>> get_mix(
        const std::string& key, const std::vector<std::pair<std::string, double>>& fallback) const {
        auto v = get(key);
        if (!v) return fallback;
        std::vector<std::pair<std::string, double>> out;
        for (const auto& part : split(*v, ',')) {
            const auto colon = part.find(':');
            double w;
            if (colon == std::string::npos || !parse_double(part.substr(colon + 1), w) ||
                w < 0.0) {
                throw ConfigError("config field '" + key + "': bad mix entry '" + part + "'");
            }
            out.push_back({trim(part.substr(0, colon)), w});
        }
        if (out.empty()) throw ConfigError("config field '" + key + "': empty mix");
        return out;
    }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    // Stable digest of the effective configuration.
    std::uint64_t digest() const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const auto& [k, v] : entries_) {
            h = fnv1a64(k, h);
            h = fnv1a64("=", h);
            h = fnv1a64(v, h);
            h = fnv1a64("\n", h);
        }
        return h;
    }

    void set(const std::string& key, const std::string& value) {
        entries_.push_back({key, value});
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace tradecf
