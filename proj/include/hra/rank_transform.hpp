#ifndef HRA_RANK_TRANSFORM_HPP
#define HRA_RANK_TRANSFORM_HPP

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hra/dataset.hpp"
#include "hra/error.hpp"
#include "hra/matrix.hpp"
#include "hra/ranking.hpp"

namespace hra {

enum class Objective { Minimize, Maximize };

/// Smallest value gets rank 1 under Minimize; ties share the mean rank.
inline std::vector<double> mean_rank_column(std::span<const double> values, Objective objective) {
    return mean_ranks(values, objective == Objective::Minimize ? RankOrder::Ascending : RankOrder::Descending);
}

inline std::vector<double> mean_rank_column(const std::vector<double>& values, Objective objective) {
    return mean_rank_column(std::span<const double>(values), objective);
}

/// DecisionMatrix whose columns are mean ranks: each lies in [1, m] and sums
/// to m(m+1)/2.
class RankMatrix {
public:
    explicit RankMatrix(DecisionMatrix ranks) : ranks_(std::move(ranks)) {
        const auto& v = ranks_.values();
        const double m = static_cast<double>(v.rows());
        const double expected = m * (m + 1.0) / 2.0;
        for (std::size_t j = 0; j < v.cols(); ++j) {
            double sum = 0.0;
            for (std::size_t i = 0; i < v.rows(); ++i) {
                if (v(i, j) < 1.0 || v(i, j) > m) {
                    throw Error(ErrorKind::DomainViolation, "rank " + std::to_string(v(i, j)) + " outside [1, " +
                                                                std::to_string(v.rows()) + "] in column '" +
                                                                ranks_.criteria()[j] + "'");
                }
                sum += v(i, j);
            }
            // mid-ranks are half-integers, so the sum is exact
            if (sum != expected) {
                throw Error(ErrorKind::DomainViolation, "column '" + ranks_.criteria()[j] + "' sums to " +
                                                            std::to_string(sum) + ", expected " +
                                                            std::to_string(expected));
            }
        }
    }

    const DecisionMatrix& matrix() const noexcept { return ranks_; }
    std::size_t rows() const noexcept { return ranks_.alternatives_count(); }
    std::size_t cols() const noexcept { return ranks_.criteria_count(); }

    friend bool operator==(const RankMatrix&, const RankMatrix&) = default;

private:
    DecisionMatrix ranks_;
};

/// Ranks every column independently.
inline RankMatrix rank_columns(const DecisionMatrix& raw, Objective objective) {
    const auto& v = raw.values();
    Matrix ranked(v.rows(), v.cols());
    for (std::size_t j = 0; j < v.cols(); ++j) {
        const auto column = v.column(j);
        ranked.set_column(j, mean_rank_column(column, objective));
    }
    return RankMatrix(DecisionMatrix(raw.alternatives(), raw.criteria(), std::move(ranked)));
}

/// The algorithms x functions matrix for one (dimension, measure) pair.
inline DecisionMatrix collect_matrix(const PerformanceDataset& data, int dimension, const std::string& measure) {
    const auto& algorithms = data.algorithms();
    const auto& functions = data.functions();
    Matrix values(algorithms.size(), functions.size());
    std::vector<CellKey> missing;
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
        for (std::size_t j = 0; j < functions.size(); ++j) {
            CellKey key{dimension, measure, algorithms[i], functions[j]};
            if (auto x = data.get(key)) {
                values(i, j) = *x;
            } else {
                missing.push_back(std::move(key));
            }
        }
    }
    if (!missing.empty()) {
        std::string msg = std::to_string(missing.size()) + " missing tuple(s):";
        for (const auto& key : missing) {
            msg += " " + describe(key);
        }
        throw Error(ErrorKind::MissingCell, msg);
    }
    return {algorithms, functions, std::move(values)};
}

using LeafKey = std::pair<int, std::string>;

inline Objective objective_for(const std::map<std::string, Objective>& directions, const std::string& measure) {
    auto it = directions.find(measure);
    return it == directions.end() ? Objective::Minimize : it->second;
}

/// One rank matrix per (dimension, measure). Measures absent from
/// `directions` are minimized.
inline std::map<LeafKey, RankMatrix> rank_dataset(const PerformanceDataset& data,
                                                 const std::map<std::string, Objective>& directions,
                                                 const std::vector<int>& dimensions,
                                                 const std::vector<std::string>& measures) {
    if (auto missing = data.missing_cells(dimensions, measures); !missing.empty()) {
        std::string msg = "dataset incomplete, " + std::to_string(missing.size()) + " missing tuple(s):";
        for (const auto& key : missing) {
            msg += " " + describe(key);
        }
        throw Error(ErrorKind::MissingCell, msg);
    }
    std::map<LeafKey, RankMatrix> out;
    for (int d : dimensions) {
        for (const auto& p : measures) {
            out.emplace(LeafKey{d, p}, rank_columns(collect_matrix(data, d, p), objective_for(directions, p)));
        }
    }
    return out;
}

inline std::map<LeafKey, RankMatrix> rank_dataset(const PerformanceDataset& data,
                                                 const std::map<std::string, Objective>& directions = {}) {
    return rank_dataset(data, directions, data.dimensions(), data.measures());
}

}  // namespace hra

#endif  // HRA_RANK_TRANSFORM_HPP
