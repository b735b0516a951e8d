#ifndef HRA_HIERARCHY_HPP
#define HRA_HIERARCHY_HPP

#include <atomic>
#include <future>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hra/criteria.hpp"
#include "hra/dataset.hpp"
#include "hra/error.hpp"
#include "hra/matrix.hpp"
#include "hra/rank_transform.hpp"
#include "hra/rtopsis.hpp"

/**
 * @file hierarchy.hpp
 * @brief Three-level rank aggregation tree.
 *
 * Leaves are the rank matrices of every (dimension, measure) pair. Each leaf
 * collapses to a rank vector over the algorithms; the vectors of one
 * dimension form an algorithms x measures matrix that collapses again, and
 * the per-dimension vectors form the final algorithms x dimensions matrix.
 * Every collapse is an R-TOPSIS evaluation with cost criteria on (0, m+1),
 * and ranks (not closeness scores) are what move up the tree.
 */

namespace hra {

struct HraConfig {
    std::vector<int> dimensions;
    std::vector<std::string> measures;
    /// Unset weights default to equal weighting at that level.
    std::optional<Weights> function_weights;
    std::optional<Weights> measure_weights;
    std::optional<Weights> dimension_weights;
    std::map<std::string, Objective> directions;
    bool parallel = true;

    static HraConfig defaults_for(const PerformanceDataset& data) {
        HraConfig config;
        config.dimensions = data.dimensions();
        config.measures = data.measures();
        return config;
    }
};

/// One R-TOPSIS evaluation in the tree, labelled by its node.
struct NodeEvaluation {
    std::string node;
    TopsisResult result;
};

struct HraReport {
    std::vector<std::string> algorithms;
    std::vector<std::string> functions;
    std::vector<int> dimensions;
    std::vector<std::string> measures;

    std::map<LeafKey, std::vector<double>> leaf_scores;
    std::map<LeafKey, std::vector<double>> leaf_ranks;
    std::map<int, Matrix> dimension_matrices;
    std::map<int, std::vector<double>> dimension_scores;
    std::map<int, std::vector<double>> dimension_ranks;
    Matrix final_matrix;
    std::vector<double> final_scores;
    std::vector<double> final_ranks;
    std::size_t invocation_count = 0;

    /// Leaves in config order, then dimensions, then the overall node.
    std::vector<NodeEvaluation> evaluations;
};

struct LevelAggregate {
    /// Input matrix at this level (C_d or D), columns in config order.
    Matrix matrix;
    TopsisResult result;
};

namespace detail {

inline void require_length(const Weights& w, std::size_t expected, const char* name) {
    if (w.size() != expected) {
        throw Error(ErrorKind::ShapeMismatch, std::string(name) + " has " + std::to_string(w.size()) +
                                                  " entries, expected " + std::to_string(expected));
    }
}

inline LevelAggregate aggregate_rank_vectors(std::span<const std::vector<double>> columns, const Weights& weights,
                                             const char* what) {
    if (columns.empty()) {
        throw Error(ErrorKind::ShapeMismatch, std::string("no ") + what + " rank vectors to aggregate");
    }
    require_length(weights, columns.size(), what);
    const std::size_t m = columns.front().size();
    for (const auto& c : columns) {
        if (c.size() != m) {
            throw Error(ErrorKind::ShapeMismatch, std::string(what) + " rank vectors differ in length");
        }
    }
    LevelAggregate out;
    out.matrix = Matrix::from_columns({columns.begin(), columns.end()});
    out.result = rtopsis(out.matrix, CriteriaSpec::for_ranks(m, weights));
    return out;
}

}  // namespace detail

/// Leaf collapse: ranks of the algorithms for one (dimension, measure).
inline TopsisResult aggregate_leaf(const RankMatrix& ranks, const Weights& function_weights) {
    detail::require_length(function_weights, ranks.cols(), "function weights");
    return rtopsis(ranks.matrix(), CriteriaSpec::for_ranks(ranks.rows(), function_weights));
}

/// Joins the leaf rank vectors of one dimension (one per measure) and ranks
/// the result. `result.ranks` is the per-dimension ranking.
inline LevelAggregate aggregate_dimension(std::span<const std::vector<double>> leaf_ranks,
                                          const Weights& measure_weights) {
    return detail::aggregate_rank_vectors(leaf_ranks, measure_weights, "measure weights");
}

/// Joins the per-dimension rankings and ranks the result. `result.closeness`
/// are the final scores and `result.ranks` the overall ranking.
inline LevelAggregate aggregate_overall(std::span<const std::vector<double>> dimension_ranks,
                                        const Weights& dimension_weights) {
    return detail::aggregate_rank_vectors(dimension_ranks, dimension_weights, "dimension weights");
}

inline HraReport run_hra(const PerformanceDataset& data, const HraConfig& config) {
    if (config.dimensions.empty() || config.measures.empty()) {
        throw Error(ErrorKind::ShapeMismatch, "configuration needs at least one dimension and one measure");
    }
    if (data.algorithms().empty() || data.functions().empty()) {
        throw Error(ErrorKind::EmptyMatrix, "dataset has no algorithms or no functions");
    }
    const std::size_t n = data.functions().size();
    const std::size_t k = config.dimensions.size();
    const std::size_t l = config.measures.size();
    const Weights wf = config.function_weights.value_or(Weights::equal(n));
    const Weights wp = config.measure_weights.value_or(Weights::equal(l));
    const Weights wd = config.dimension_weights.value_or(Weights::equal(k));
    detail::require_length(wf, n, "function weights");
    detail::require_length(wp, l, "measure weights");
    detail::require_length(wd, k, "dimension weights");

    const auto leaves = rank_dataset(data, config.directions, config.dimensions, config.measures);

    std::atomic<std::size_t> invocations{0};
    const auto launch = config.parallel ? std::launch::async : std::launch::deferred;

    HraReport report;
    report.algorithms = data.algorithms();
    report.functions = data.functions();
    report.dimensions = config.dimensions;
    report.measures = config.measures;

    // Each task owns its slot, so results do not depend on the schedule.
    std::vector<std::future<TopsisResult>> leaf_tasks;
    std::vector<LeafKey> leaf_order;
    for (int d : config.dimensions) {
        for (const auto& p : config.measures) {
            leaf_order.emplace_back(d, p);
            const RankMatrix& leaf = leaves.at(leaf_order.back());
            leaf_tasks.push_back(std::async(launch, [&leaf, &wf, &invocations] {
                ++invocations;
                return aggregate_leaf(leaf, wf);
            }));
        }
    }
    std::vector<TopsisResult> leaf_results;
    leaf_results.reserve(leaf_tasks.size());
    for (auto& task : leaf_tasks) {
        leaf_results.push_back(task.get());
    }

    std::vector<std::vector<std::vector<double>>> per_dimension(k);
    for (std::size_t idx = 0; idx < leaf_order.size(); ++idx) {
        const auto& key = leaf_order[idx];
        report.leaf_scores[key] = leaf_results[idx].closeness;
        report.leaf_ranks[key] = leaf_results[idx].ranks;
        per_dimension[idx / l].push_back(leaf_results[idx].ranks);
        report.evaluations.push_back(
            {"leaf dimension=" + std::to_string(key.first) + " measure=" + key.second, leaf_results[idx]});
    }

    std::vector<std::future<LevelAggregate>> dimension_tasks;
    for (std::size_t q = 0; q < k; ++q) {
        dimension_tasks.push_back(std::async(launch, [&per_dimension, q, &wp, &invocations] {
            ++invocations;
            return aggregate_dimension(per_dimension[q], wp);
        }));
    }
    std::vector<std::vector<double>> dimension_columns;
    for (std::size_t q = 0; q < k; ++q) {
        LevelAggregate agg = dimension_tasks[q].get();
        const int d = config.dimensions[q];
        report.dimension_scores[d] = agg.result.closeness;
        report.dimension_ranks[d] = agg.result.ranks;
        dimension_columns.push_back(agg.result.ranks);
        report.evaluations.push_back({"dimension=" + std::to_string(d), agg.result});
        report.dimension_matrices[d] = std::move(agg.matrix);
    }

    ++invocations;
    LevelAggregate overall = aggregate_overall(dimension_columns, wd);
    report.final_matrix = std::move(overall.matrix);
    report.final_scores = overall.result.closeness;
    report.final_ranks = overall.result.ranks;
    report.evaluations.push_back({"overall", std::move(overall.result)});
    report.invocation_count = invocations.load();
    return report;
}

}  // namespace hra

#endif  // HRA_HIERARCHY_HPP
