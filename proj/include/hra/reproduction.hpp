#ifndef HRA_REPRODUCTION_HPP
#define HRA_REPRODUCTION_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hra/csv.hpp"
#include "hra/hierarchy.hpp"
#include "hra/matrix.hpp"
#include "hra/report.hpp"
#include "hra/rtopsis.hpp"

/**
 * @file reproduction.hpp
 * @brief Recomputes the published CEC 2017 HRA tables from the bundled
 *        fixtures.
 *
 * Fixture files (relative to the fixture directory):
 *   table1_dim10.csv .. table4_dim100.csv  per-dimension measure ranks
 *   table5_final.csv                       per-dimension ranks (Dim10..Dim100)
 *   table6_rankings.csv                    algorithm,score,hra_rank,...
 */

namespace hra {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct RankMismatch {
    std::string alternative;
    double expected = 0.0;
    double computed = 0.0;
};

/// Published dimension-10 matrix gives rank 3 twice in its mean column (and
/// no rank 1). Only the rows carrying that duplicated value may trade ranks
/// among themselves in the Dim10 check.
inline const std::vector<std::string>& dim10_anomaly_rows() {
    static const std::vector<std::string> rows{"jSO", "EBOwithCMAR"};
    return rows;
}

/// Rows whose ranks differ. When `tolerated` is non-empty, differences
/// confined to those rows are forgiven as long as they only permute the
/// expected ranks of that subset.
inline std::vector<RankMismatch> compare_ranks(const std::vector<std::string>& labels,
                                               const std::vector<double>& expected,
                                               const std::vector<double>& computed,
                                               const std::vector<std::string>& tolerated = {}) {
    std::vector<RankMismatch> all;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (expected[i] != computed[i]) all.push_back({labels[i], expected[i], computed[i]});
    }
    if (all.empty() || tolerated.empty()) return all;

    const bool confined = std::all_of(all.begin(), all.end(), [&](const RankMismatch& r) {
        return std::find(tolerated.begin(), tolerated.end(), r.alternative) != tolerated.end();
    });
    if (confined) {
        std::vector<double> want;
        std::vector<double> got;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (std::find(tolerated.begin(), tolerated.end(), labels[i]) != tolerated.end()) {
                want.push_back(expected[i]);
                got.push_back(computed[i]);
            }
        }
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        if (want == got) return {};
    }
    return all;
}

inline std::string describe(const std::vector<RankMismatch>& mismatches) {
    std::string out;
    for (const auto& m : mismatches) {
        if (!out.empty()) out += "; ";
        out += m.alternative + ": expected " + format_number(m.expected) + ", computed " + format_number(m.computed);
    }
    return out;
}

namespace detail {

/// Column `name` of `table`, reordered to follow `labels`.
inline std::vector<double> column_by_label(const DecisionMatrix& table, const std::string& name,
                                           const std::vector<std::string>& labels) {
    const auto& criteria = table.criteria();
    const auto col = std::find(criteria.begin(), criteria.end(), name);
    if (col == criteria.end()) {
        throw Error(ErrorKind::ParseError, "fixture has no column '" + name + "'");
    }
    const auto j = static_cast<std::size_t>(col - criteria.begin());
    std::map<std::string, double> by_label;
    for (std::size_t i = 0; i < table.alternatives_count(); ++i) {
        by_label[table.alternatives()[i]] = table.values()(i, j);
    }
    std::vector<double> out;
    for (const auto& l : labels) {
        auto it = by_label.find(l);
        if (it == by_label.end()) {
            throw Error(ErrorKind::ParseError, "fixture has no row for '" + l + "'");
        }
        out.push_back(it->second);
    }
    return out;
}

inline std::string brief(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

inline std::vector<std::vector<double>> columns_of(const DecisionMatrix& m) {
    std::vector<std::vector<double>> out;
    for (std::size_t j = 0; j < m.criteria_count(); ++j) out.push_back(m.values().column(j));
    return out;
}

}  // namespace detail

struct PublishedDimension {
    const char* file;
    const char* column;
};

inline constexpr PublishedDimension kPublishedDimensions[] = {
    {"table1_dim10.csv", "Dim10"},
    {"table2_dim30.csv", "Dim30"},
    {"table3_dim50.csv", "Dim50"},
    {"table4_dim100.csv", "Dim100"},
};

/// Six checks: the four per-dimension columns of the final matrix, then the
/// final scores (within `tolerance`) and final ranks (exact).
inline std::vector<CheckResult> verify_published_tables(const std::filesystem::path& fixtures, double tolerance) {
    std::vector<CheckResult> checks;
    auto guarded = [&](std::string name, auto&& body) {
        CheckResult c{std::move(name), false, {}};
        try {
            body(c);
        } catch (const std::exception& e) {
            c.passed = false;
            c.detail = e.what();
        }
        checks.push_back(std::move(c));
    };

    // loaded lazily so a broken fixture fails only the checks that use it
    std::optional<DecisionMatrix> final_table;

    for (const auto& dim : kPublishedDimensions) {
        guarded(std::string(dim.column) + " column from " + dim.file, [&](CheckResult& c) {
            const auto table = load_rank_matrix_csv(fixtures / dim.file);
            if (!final_table) final_table = load_rank_matrix_csv(fixtures / "table5_final.csv");
            const auto columns = detail::columns_of(table);
            const auto agg = aggregate_dimension(columns, Weights::equal(columns.size()));
            const auto expected = detail::column_by_label(*final_table, dim.column, table.alternatives());
            const bool anomalous = std::string(dim.column) == "Dim10";
            const auto mismatches = compare_ranks(table.alternatives(), expected, agg.result.ranks,
                                                  anomalous ? dim10_anomaly_rows() : std::vector<std::string>{});
            c.passed = mismatches.empty();
            c.detail = c.passed ? std::to_string(table.alternatives_count()) + " ranks agree" : describe(mismatches);
        });
    }

    std::optional<TopsisResult> overall;
    std::optional<DecisionMatrix> published;
    auto compute_overall = [&] {
        if (!final_table) final_table = load_rank_matrix_csv(fixtures / "table5_final.csv");
        if (!published) published = load_rank_matrix_csv(fixtures / "table6_rankings.csv");
        if (!overall) {
            const auto& v = final_table->values();
            overall = rtopsis(*final_table, CriteriaSpec::for_ranks(v.rows(), Weights::equal(v.cols())));
        }
    };

    guarded("final scores", [&](CheckResult& c) {
        compute_overall();
        const auto expected = detail::column_by_label(*published, "score", final_table->alternatives());
        double worst = 0.0;
        std::string worst_label;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            const double diff = std::abs(expected[i] - overall->closeness[i]);
            if (diff > worst || worst_label.empty()) {
                worst = diff;
                worst_label = final_table->alternatives()[i];
            }
        }
        c.passed = worst <= tolerance;
        c.detail = "max |score - published| = " + detail::brief(worst) + " (" + worst_label + "), tolerance " +
                   detail::brief(tolerance);
    });

    guarded("final ranks", [&](CheckResult& c) {
        compute_overall();
        const auto expected = detail::column_by_label(*published, "hra_rank", final_table->alternatives());
        const auto mismatches = compare_ranks(final_table->alternatives(), expected, overall->ranks);
        c.passed = mismatches.empty();
        c.detail = c.passed ? std::to_string(expected.size()) + " ranks agree" : describe(mismatches);
    });
    return checks;
}

}  // namespace hra

#endif  // HRA_REPRODUCTION_HPP
