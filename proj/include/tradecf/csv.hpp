// Minimal comma-separated text I/O. Fields must not contain the delimiter
// or newlines; the writer enforces this and the reader flags rows with the
// wrong field count instead of guessing.
#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tradecf/common.hpp"

namespace tradecf::csv {

struct Row {
    std::size_t line_no = 0;  // 1-based, header is line 1
    std::vector<std::string> fields;
};

class Reader {
public:
    // Throws DataError when the stream is unreadable or the header is missing.
    explicit Reader(std::istream& in, std::string_view what = "csv") : in_(in) {
        if (!in_.good()) throw DataError(std::string(what) + ": unreadable stream");
        std::string line;
        if (!std::getline(in_, line)) {
            throw DataError(std::string(what) + ": missing header row");
        }
        strip_cr(line);
        header_ = split(line, ',');
        for (auto& h : header_) h = trim(h);
        line_no_ = 1;
    }

    const std::vector<std::string>& header() const { return header_; }

    // Column index by name, -1 when absent.
    int column(std::string_view name) const {
        for (std::size_t i = 0; i < header_.size(); ++i) {
            if (header_[i] == name) return static_cast<int>(i);
        }
        return -1;
    }

    bool next(Row& row) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            strip_cr(line);
            if (line.empty()) continue;
            row.line_no = line_no_;
            row.fields = split(line, ',');
            return true;
        }
        return false;
    }

private:
    static void strip_cr(std::string& line) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
    }

    std::istream& in_;
    std::vector<std::string> header_;
    std::size_t line_no_ = 0;
};

class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void write_row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            const std::string& f = fields[i];
            if (f.find(',') != std::string::npos || f.find('\n') != std::string::npos) {
                throw DataError("csv writer: field contains delimiter or newline: " + f);
            }
            if (i) out_ << ',';
            out_ << f;
        }
        out_ << '\n';
    }

private:
    std::ostream& out_;
};

inline std::ifstream open_input(const std::string& path, std::string_view what) {
    std::ifstream in(path);
    if (!in.good()) throw DataError(std::string(what) + ": cannot open " + path);
    return in;
}

inline std::ofstream open_output(const std::string& path, std::string_view what) {
    std::ofstream out(path);
    if (!out.good()) throw DataError(std::string(what) + ": cannot write " + path);
    return out;
}

}  // namespace tradecf::csv
