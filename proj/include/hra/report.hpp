#ifndef HRA_REPORT_HPP
#define HRA_REPORT_HPP

#include <algorithm>
#include <filesystem>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "hra/csv.hpp"
#include "hra/error.hpp"
#include "hra/hierarchy.hpp"

namespace hra {

enum class ReportFormat { Csv, Markdown };

/// A rendered table: already-formatted cells, ready for either format.
struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    friend bool operator==(const Table&, const Table&) = default;
};

inline std::string dimension_label(int d) { return "Dim" + std::to_string(d); }

/// Leaf ranks, per-dimension matrices, final matrix and final ranking, in
/// that order. Numbers carry full precision.
inline std::vector<Table> report_tables(const HraReport& report) {
    std::vector<Table> tables;
    const std::size_t m = report.algorithms.size();

    Table leaves{"leaf_ranks", {"dimension", "measure", "algorithm", "score", "rank"}, {}};
    for (int d : report.dimensions) {
        for (const auto& p : report.measures) {
            const auto& scores = report.leaf_scores.at({d, p});
            const auto& ranks = report.leaf_ranks.at({d, p});
            for (std::size_t i = 0; i < m; ++i) {
                leaves.rows.push_back({std::to_string(d), p, report.algorithms[i], format_number(scores[i]),
                                       format_number(ranks[i])});
            }
        }
    }
    tables.push_back(std::move(leaves));

    for (int d : report.dimensions) {
        Table t{"dimension_" + std::to_string(d), {"algorithm"}, {}};
        t.header.insert(t.header.end(), report.measures.begin(), report.measures.end());
        t.header.emplace_back("score");
        t.header.emplace_back("rank");
        const auto& matrix = report.dimension_matrices.at(d);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<std::string> row{report.algorithms[i]};
            for (double v : matrix.row(i)) row.push_back(format_number(v));
            row.push_back(format_number(report.dimension_scores.at(d)[i]));
            row.push_back(format_number(report.dimension_ranks.at(d)[i]));
            t.rows.push_back(std::move(row));
        }
        tables.push_back(std::move(t));
    }

    Table final_matrix{"final_matrix", {"algorithm"}, {}};
    for (int d : report.dimensions) final_matrix.header.push_back(dimension_label(d));
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::string> row{report.algorithms[i]};
        for (double v : report.final_matrix.row(i)) row.push_back(format_number(v));
        final_matrix.rows.push_back(std::move(row));
    }
    tables.push_back(std::move(final_matrix));

    Table ranking{"final_ranking", {"algorithm", "score", "hra_rank"}, {}};
    for (std::size_t i = 0; i < m; ++i) {
        ranking.rows.push_back(
            {report.algorithms[i], format_number(report.final_scores[i]), format_number(report.final_ranks[i])});
    }
    tables.push_back(std::move(ranking));
    return tables;
}

inline void write_csv_table(std::ostream& out, const Table& table) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t j = 0; j < cells.size(); ++j) {
            out << (j ? "," : "") << cells[j];
        }
        out << '\n';
    };
    line(table.header);
    for (const auto& row : table.rows) line(row);
}

inline void write_markdown_table(std::ostream& out, const Table& table) {
    auto line = [&](const std::vector<std::string>& cells) {
        out << '|';
        for (const auto& c : cells) out << ' ' << c << " |";
        out << '\n';
    };
    line(table.header);
    out << '|';
    for (std::size_t j = 0; j < table.header.size(); ++j) out << "---|";
    out << '\n';
    for (const auto& row : table.rows) line(row);
}

/// Reads back a pipe table written by write_markdown_table.
inline Table parse_markdown_table(std::istream& in, std::string name = {}) {
    Table table{std::move(name), {}, {}};
    std::string line;
    bool separator_seen = false;
    while (std::getline(in, line)) {
        auto t = csv::trim(line);
        if (t.empty() || t.front() != '|') continue;
        t.remove_prefix(1);
        if (!t.empty() && t.back() == '|') t.remove_suffix(1);
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const auto bar = t.find('|', start);
            cells.emplace_back(csv::trim(t.substr(start, bar == t.npos ? t.npos : bar - start)));
            if (bar == t.npos) break;
            start = bar + 1;
        }
        if (table.header.empty()) {
            table.header = std::move(cells);
        } else if (!separator_seen) {
            separator_seen = true;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    if (table.header.empty()) {
        throw Error(ErrorKind::ParseError, "no markdown table found");
    }
    return table;
}

inline std::string render(const Table& table, ReportFormat format) {
    std::ostringstream out;
    if (format == ReportFormat::Csv) {
        write_csv_table(out, table);
    } else {
        write_markdown_table(out, table);
    }
    return out.str();
}

/// Writes one file per table into `destination` (created if needed) and
/// returns the paths in table order.
inline std::vector<std::filesystem::path> emit_report(const HraReport& report, ReportFormat format,
                                                      const std::filesystem::path& destination) {
    std::error_code ec;
    std::filesystem::create_directories(destination, ec);
    if (ec) {
        throw Error(ErrorKind::IoError, "cannot create '" + destination.string() + "': " + ec.message());
    }
    std::vector<std::filesystem::path> written;
    for (const auto& table : report_tables(report)) {
        const auto path = destination / (table.name + (format == ReportFormat::Csv ? ".csv" : ".md"));
        auto out = csv::open_output(path);
        out << render(table, format);
        csv::finish_output(out, path);
        written.push_back(path);
    }
    return written;
}

/// Console table of the final ranking, scores to 4 decimals.
inline std::string format_ranking(const std::vector<std::string>& labels, const std::vector<double>& scores,
                                  const std::vector<double>& ranks, std::string_view rank_header = "hra_rank") {
    std::size_t width = std::string_view("algorithm").size();
    for (const auto& l : labels) width = std::max(width, l.size());
    std::ostringstream out;
    auto pad = [&](std::string_view s) { return std::string(s) + std::string(width - s.size(), ' '); };
    out << pad("algorithm") << "  score   " << rank_header << '\n';
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double r = ranks[i];
        const std::string rank = r == static_cast<double>(static_cast<long long>(r))
                                     ? std::to_string(static_cast<long long>(r))
                                     : format_fixed(r, 1);
        out << pad(labels[i]) << "  " << format_fixed(scores[i], 4) << "  " << rank << '\n';
    }
    return out.str();
}

}  // namespace hra

#endif  // HRA_REPORT_HPP
