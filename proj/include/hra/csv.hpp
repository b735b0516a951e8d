#ifndef HRA_CSV_HPP
#define HRA_CSV_HPP

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "hra/dataset.hpp"
#include "hra/error.hpp"
#include "hra/matrix.hpp"

namespace hra {

/// 17 significant digits: enough for any double to parse back bit-identically.
inline std::string format_number(double value) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
    return {buf, static_cast<std::size_t>(len)};
}

inline std::string format_fixed(double value, int decimals) {
    char buf[64];
    const int len = std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return {buf, static_cast<std::size_t>(len)};
}

namespace csv {

struct Row {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

/// Non-blank rows; lines starting with '#' are provenance comments.
inline std::vector<Row> read_rows(std::istream& in) {
    std::vector<Row> rows;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (number == 1 && line.starts_with("\xEF\xBB\xBF")) {
            line.erase(0, 3);
        }
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        rows.push_back({number, split(t)});
    }
    return rows;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for reading");
    }
    return in;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
    }
    return out;
}

inline void finish_output(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw Error(ErrorKind::IoError, "failed writing '" + path.string() + "'");
    }
}

inline std::string where(std::string_view source, std::size_t line, std::size_t column) {
    return std::string(source) + ":" + std::to_string(line) + ": column " + std::to_string(column);
}

inline double parse_number(std::string_view text, std::string_view source, std::size_t line, std::size_t column) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range) {
        throw Error(ErrorKind::NonFiniteValue, where(source, line, column) + ": '" + std::string(text) + "' overflows");
    }
    if (text.empty() || ec != std::errc() || ptr != last) {
        throw Error(ErrorKind::ParseError,
                    where(source, line, column) + ": expected a number, got '" + std::string(text) + "'");
    }
    if (!std::isfinite(value)) {
        throw Error(ErrorKind::NonFiniteValue, where(source, line, column) + ": '" + std::string(text) + "' is not finite");
    }
    return value;
}

inline int parse_int(std::string_view text, std::string_view source, std::size_t line, std::size_t column) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error(ErrorKind::ParseError,
                    where(source, line, column) + ": expected an integer, got '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace csv

inline constexpr std::string_view kLongCsvHeader = "dimension,measure,function,algorithm,value";

/// Long format: one `dimension,measure,function,algorithm,value` row per cell.
inline PerformanceDataset parse_long_csv(std::istream& in, std::string_view source = "<input>") {
    const auto rows = csv::read_rows(in);
    if (rows.empty()) {
        throw Error(ErrorKind::ParseError, std::string(source) + ": empty file, expected header '" +
                                               std::string(kLongCsvHeader) + "'");
    }
    const std::vector<std::string> header{"dimension", "measure", "function", "algorithm", "value"};
    if (rows.front().fields != header) {
        throw Error(ErrorKind::ParseError, csv::where(source, rows.front().line, 1) + ": header must be '" +
                                               std::string(kLongCsvHeader) + "'");
    }
    PerformanceDataset data;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != 5) {
            throw Error(ErrorKind::ParseError, std::string(source) + ":" + std::to_string(row.line) + ": expected 5 fields, got " +
                                                   std::to_string(row.fields.size()));
        }
        const int dimension = csv::parse_int(row.fields[0], source, row.line, 1);
        const auto& measure = row.fields[1];
        if (!is_standard_measure(measure)) {
            throw Error(ErrorKind::ParseError, csv::where(source, row.line, 2) + ": unknown measure '" + measure +
                                                   "' (expected best, worst, median, mean or std)");
        }
        if (row.fields[2].empty() || row.fields[3].empty()) {
            throw Error(ErrorKind::ParseError, std::string(source) + ":" + std::to_string(row.line) +
                                                   ": function and algorithm labels must be non-empty");
        }
        const double value = csv::parse_number(row.fields[4], source, row.line, 5);
        try {
            data.set({dimension, measure, row.fields[3], row.fields[2]}, value);
        } catch (const Error& e) {
            throw Error(e.kind(), std::string(source) + ":" + std::to_string(row.line) + ": " + e.what());
        }
    }
    return data;
}

inline PerformanceDataset load_long_csv(const std::filesystem::path& path) {
    auto in = csv::open_input(path);
    return parse_long_csv(in, path.string());
}

inline void write_long_csv(std::ostream& out, const PerformanceDataset& data) {
    out << kLongCsvHeader << '\n';
    const auto measures = data.measures();
    for (int d : data.dimensions()) {
        for (const auto& p : measures) {
            for (const auto& f : data.functions()) {
                for (const auto& a : data.algorithms()) {
                    if (auto v = data.get({d, p, a, f})) {
                        out << d << ',' << p << ',' << f << ',' << a << ',' << format_number(*v) << '\n';
                    }
                }
            }
        }
    }
}

inline void save_long_csv(const PerformanceDataset& data, const std::filesystem::path& path) {
    auto out = csv::open_output(path);
    write_long_csv(out, data);
    csv::finish_output(out, path);
}

/// `algorithm,<criterion1>,...` with one numeric row per alternative.
inline DecisionMatrix parse_rank_matrix_csv(std::istream& in, std::string_view source = "<input>") {
    const auto rows = csv::read_rows(in);
    if (rows.empty()) {
        throw Error(ErrorKind::EmptyMatrix, std::string(source) + ": no header row");
    }
    const auto& header = rows.front().fields;
    if (header.size() < 2) {
        throw Error(ErrorKind::EmptyMatrix, std::string(source) + ": header names no criteria");
    }
    if (rows.size() < 2) {
        throw Error(ErrorKind::EmptyMatrix, std::string(source) + ": no alternatives");
    }
    std::vector<std::string> criteria(header.begin() + 1, header.end());
    std::vector<std::string> alternatives;
    Matrix values(rows.size() - 1, criteria.size());
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != header.size()) {
            throw Error(ErrorKind::ParseError, std::string(source) + ":" + std::to_string(row.line) + ": expected " +
                                                   std::to_string(header.size()) + " fields, got " +
                                                   std::to_string(row.fields.size()));
        }
        alternatives.push_back(row.fields[0]);
        for (std::size_t j = 0; j < criteria.size(); ++j) {
            values(r - 1, j) = csv::parse_number(row.fields[j + 1], source, row.line, j + 2);
        }
    }
    try {
        return {std::move(alternatives), std::move(criteria), std::move(values)};
    } catch (const Error& e) {
        throw Error(e.kind(), std::string(source) + ": " + e.what());
    }
}

inline DecisionMatrix load_rank_matrix_csv(const std::filesystem::path& path) {
    auto in = csv::open_input(path);
    return parse_rank_matrix_csv(in, path.string());
}

inline void write_rank_matrix_csv(std::ostream& out, const DecisionMatrix& matrix) {
    out << "algorithm";
    for (const auto& c : matrix.criteria()) out << ',' << c;
    out << '\n';
    for (std::size_t i = 0; i < matrix.alternatives_count(); ++i) {
        out << matrix.alternatives()[i];
        for (double v : matrix.values().row(i)) out << ',' << format_number(v);
        out << '\n';
    }
}

inline void save_rank_matrix_csv(const DecisionMatrix& matrix, const std::filesystem::path& path) {
    auto out = csv::open_output(path);
    write_rank_matrix_csv(out, matrix);
    csv::finish_output(out, path);
}

}  // namespace hra

#endif  // HRA_CSV_HPP
