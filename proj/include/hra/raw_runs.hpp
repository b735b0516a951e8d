#ifndef HRA_RAW_RUNS_HPP
#define HRA_RAW_RUNS_HPP

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hra/csv.hpp"
#include "hra/error.hpp"
#include "hra/statistics.hpp"

/**
 * @file raw_runs.hpp
 * @brief Reader for competition result files.
 *
 * A result file is named `<Algorithm>_<Function>_<Dimension>.txt`, e.g.
 * `LSHADE_SPACMA_12_30.txt` or `jSO_F3_10.txt`. Its body is either
 *  - one value per line (one value per run),
 *  - one line of values (one value per run), or
 *  - a checkpoint table, one row per recording point and one column per
 *    run, in which case the last row holds the final error values.
 * Values may be separated by whitespace or commas.
 */

namespace hra {

struct RunFileName {
    std::string algorithm;
    std::string function;
    int dimension = 0;
};

namespace detail {

inline std::optional<int> parse_positive(std::string_view s) {
    if (s.empty() || s.size() > 6) return std::nullopt;
    int v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        v = v * 10 + (c - '0');
    }
    if (v <= 0) return std::nullopt;
    return v;
}

}  // namespace detail

/// Splits from the right, since algorithm names contain underscores.
inline std::optional<RunFileName> parse_run_file_name(std::string_view filename) {
    constexpr std::string_view ext = ".txt";
    if (filename.size() <= ext.size() || !filename.ends_with(ext)) return std::nullopt;
    auto stem = filename.substr(0, filename.size() - ext.size());
    const auto last = stem.rfind('_');
    if (last == stem.npos || last == 0) return std::nullopt;
    const auto prev = stem.rfind('_', last - 1);
    if (prev == stem.npos || prev == 0) return std::nullopt;

    auto function = stem.substr(prev + 1, last - prev - 1);
    if (!function.empty() && (function.front() == 'F' || function.front() == 'f')) function.remove_prefix(1);
    const auto fn = detail::parse_positive(function);
    const auto dim = detail::parse_positive(stem.substr(last + 1));
    if (!fn || !dim) return std::nullopt;
    return RunFileName{std::string(stem.substr(0, prev)), "f" + std::to_string(*fn), *dim};
}

/// Final error value of every run recorded in one result file.
inline std::vector<double> parse_run_values(std::istream& in, std::string_view source) {
    std::vector<std::vector<double>> table;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream tokens(line);
        std::vector<double> row;
        std::string token;
        std::size_t column = 0;
        while (tokens >> token) {
            ++column;
            try {
                row.push_back(csv::parse_number(token, source, number, column));
            } catch (const Error& e) {
                throw Error(ErrorKind::UnknownLayout, e.what());
            }
        }
        if (!row.empty()) table.push_back(std::move(row));
    }
    if (table.empty()) {
        throw Error(ErrorKind::EmptyRuns, std::string(source) + ": no run values");
    }
    std::vector<double> runs;
    const bool single_column =
        std::all_of(table.begin(), table.end(), [](const auto& r) { return r.size() == 1; });
    if (single_column) {
        for (const auto& r : table) runs.push_back(r.front());
    } else {
        const std::size_t width = table.front().size();
        for (const auto& r : table) {
            if (r.size() != width) {
                throw Error(ErrorKind::UnknownLayout, std::string(source) + ": ragged table, rows have " +
                                                          std::to_string(width) + " and " +
                                                          std::to_string(r.size()) + " values");
            }
        }
        runs = table.back();
    }
    for (double x : runs) {
        if (x < 0.0) {
            throw Error(ErrorKind::DomainViolation, std::string(source) + ": negative error value " + format_number(x));
        }
    }
    return runs;
}

/// Scans `directory` recursively for result files.
inline RawRuns load_raw_runs(const std::filesystem::path& directory) {
    std::error_code ec;
    if (!std::filesystem::is_directory(directory, ec)) {
        throw Error(ErrorKind::IoError, "'" + directory.string() + "' is not a readable directory");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(directory)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw Error(ErrorKind::EmptyRuns, "no result files (*.txt) under '" + directory.string() + "'");
    }
    RawRuns runs;
    for (const auto& path : files) {
        const auto name = parse_run_file_name(path.filename().string());
        if (!name) {
            throw Error(ErrorKind::UnknownLayout, "'" + path.string() +
                                                      "' is not named <algorithm>_<function>_<dimension>.txt");
        }
        auto in = csv::open_input(path);
        RunKey key{name->dimension, name->algorithm, name->function};
        if (!runs.emplace(key, parse_run_values(in, path.string())).second) {
            throw Error(ErrorKind::DuplicateTuple, "'" + path.string() + "' repeats dimension " +
                                                       std::to_string(key.dimension) + ", algorithm " +
                                                       key.algorithm + ", function " + key.function);
        }
    }
    return runs;
}

}  // namespace hra

#endif  // HRA_RAW_RUNS_HPP
