#ifndef HRA_RTOPSIS_HPP
#define HRA_RTOPSIS_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hra/criteria.hpp"
#include "hra/error.hpp"
#include "hra/matrix.hpp"
#include "hra/ranking.hpp"

/**
 * @file rtopsis.hpp
 * @brief TOPSIS with fixed per-criterion domains (R-TOPSIS).
 *
 * The ideal and anti-ideal points are derived from the criteria domains
 * rather than from the rows being ranked, so the closeness of one
 * alternative never depends on which other alternatives are present.
 */

namespace hra {

enum class NormalizationMode { Max, MaxMin };

struct IdealSolutions {
    std::vector<double> positive;
    std::vector<double> negative;
};

struct Separations {
    std::vector<double> plus;
    std::vector<double> minus;
};

/// Intermediate values of one evaluation, kept for auditing.
struct TopsisTrace {
    Matrix normalized;
    Matrix weighted;
    IdealSolutions ideals;
    Separations separations;
};

struct TopsisResult {
    std::vector<double> closeness;
    /// 1 = highest closeness; ties share the mean position.
    std::vector<double> ranks;
    TopsisTrace trace;
};

/**
 * @brief Maps every value into [0, 1] relative to its criterion's domain.
 *
 * Max: x / upper. MaxMin: (x - lower) / (upper - lower). The two coincide
 * whenever lower == 0.
 */
inline Matrix normalize(const Matrix& values, const CriteriaSpec& spec, NormalizationMode mode) {
    if (values.cols() != spec.size()) {
        throw Error(ErrorKind::ShapeMismatch, "matrix has " + std::to_string(values.cols()) +
                                                  " criteria but spec describes " + std::to_string(spec.size()));
    }
    Matrix out(values.rows(), values.cols());
    for (std::size_t j = 0; j < values.cols(); ++j) {
        const Domain& d = spec.domain(j);
        if (!(d.lower < d.upper)) {
            throw Error(ErrorKind::DegenerateDomain, "criterion " + std::to_string(j + 1) + " has an empty domain");
        }
        if (mode == NormalizationMode::Max && d.upper <= 0.0) {
            throw Error(ErrorKind::ZeroUpperBound, "criterion " + std::to_string(j + 1) +
                                                       " needs a positive upper bound for Max normalization");
        }
        for (std::size_t i = 0; i < values.rows(); ++i) {
            const double x = values(i, j);
            if (!(x >= d.lower && x <= d.upper)) {
                throw Error(ErrorKind::DomainViolation, "value " + std::to_string(x) + " at row " +
                                                            std::to_string(i + 1) + ", criterion " +
                                                            std::to_string(j + 1) + " lies outside [" +
                                                            std::to_string(d.lower) + ", " +
                                                            std::to_string(d.upper) + "]");
            }
            out(i, j) = mode == NormalizationMode::Max ? x / d.upper : (x - d.lower) / (d.upper - d.lower);
        }
    }
    return out;
}

inline Matrix normalize(const DecisionMatrix& matrix, const CriteriaSpec& spec, NormalizationMode mode) {
    return normalize(matrix.values(), spec, mode);
}

inline Matrix weight_matrix(const Matrix& normalized, const CriteriaSpec& spec) {
    const Weights& w = spec.weights();
    if (normalized.cols() != w.size()) {
        throw Error(ErrorKind::ShapeMismatch, "normalized matrix has " + std::to_string(normalized.cols()) +
                                                  " columns but " + std::to_string(w.size()) + " weights were given");
    }
    Matrix out(normalized.rows(), normalized.cols());
    for (std::size_t i = 0; i < normalized.rows(); ++i) {
        for (std::size_t j = 0; j < normalized.cols(); ++j) {
            out(i, j) = w[j] * normalized(i, j);
        }
    }
    return out;
}

/**
 * @brief Positive and negative ideal points, fixed by the domains alone.
 *
 * They are the weighted images of the domain endpoints under `mode`. With
 * Max normalization the lower endpoint maps to (lower/upper) w, so Benefit
 * gives PIS = w, NIS = (lower/upper) w and Cost swaps the two. With MaxMin
 * the lower endpoint maps to 0. Both agree when every lower bound is 0.
 */
inline IdealSolutions ideal_solutions(const CriteriaSpec& spec, NormalizationMode mode) {
    IdealSolutions ideals;
    ideals.positive.resize(spec.size());
    ideals.negative.resize(spec.size());
    for (std::size_t j = 0; j < spec.size(); ++j) {
        const Domain& d = spec.domain(j);
        if (!(d.lower < d.upper)) {
            throw Error(ErrorKind::DegenerateDomain, "criterion " + std::to_string(j + 1) + " has an empty domain");
        }
        if (mode == NormalizationMode::Max && d.upper <= 0.0) {
            throw Error(ErrorKind::ZeroUpperBound, "criterion " + std::to_string(j + 1) +
                                                       " needs a positive upper bound, got " +
                                                       std::to_string(d.upper));
        }
        const double w = spec.weights()[j];
        const double floor = mode == NormalizationMode::Max ? (d.lower / d.upper) * w : 0.0;
        if (spec.direction(j) == Direction::Benefit) {
            ideals.positive[j] = w;
            ideals.negative[j] = floor;
        } else {
            ideals.positive[j] = floor;
            ideals.negative[j] = w;
        }
    }
    return ideals;
}

/// Max-normalization ideals: (lower/upper) w at the worse/better end.
inline IdealSolutions ideal_solutions(const CriteriaSpec& spec) {
    return ideal_solutions(spec, NormalizationMode::Max);
}

inline Separations separations(const Matrix& weighted, const IdealSolutions& ideals) {
    if (ideals.positive.size() != weighted.cols() || ideals.negative.size() != weighted.cols()) {
        throw Error(ErrorKind::ShapeMismatch, "ideal solutions do not match the weighted matrix width");
    }
    Separations s;
    s.plus.resize(weighted.rows());
    s.minus.resize(weighted.rows());
    for (std::size_t i = 0; i < weighted.rows(); ++i) {
        double plus = 0.0;
        double minus = 0.0;
        for (std::size_t j = 0; j < weighted.cols(); ++j) {
            const double dp = weighted(i, j) - ideals.positive[j];
            const double dm = weighted(i, j) - ideals.negative[j];
            plus += dp * dp;
            minus += dm * dm;
        }
        s.plus[i] = std::sqrt(plus);
        s.minus[i] = std::sqrt(minus);
    }
    return s;
}

inline std::vector<double> closeness(std::span<const double> plus, std::span<const double> minus) {
    if (plus.size() != minus.size()) {
        throw Error(ErrorKind::ShapeMismatch, "separation vectors differ in length");
    }
    std::vector<double> cc(plus.size());
    for (std::size_t i = 0; i < plus.size(); ++i) {
        const double total = plus[i] + minus[i];
        if (!(total > 0.0)) {
            throw Error(ErrorKind::DegenerateIdeals,
                        "alternative " + std::to_string(i + 1) + " is at zero distance from both ideals");
        }
        cc[i] = minus[i] / total;
    }
    return cc;
}

/// Descending mean ranks; the sum is always m(m+1)/2.
inline std::vector<double> scores_to_ranks(std::span<const double> scores) {
    return mean_ranks(scores, RankOrder::Descending);
}

inline std::vector<double> scores_to_ranks(const std::vector<double>& scores) {
    return scores_to_ranks(std::span<const double>(scores));
}

inline TopsisResult rtopsis(const Matrix& values, const CriteriaSpec& spec,
                            NormalizationMode mode = NormalizationMode::MaxMin) {
    TopsisResult result;
    result.trace.normalized = normalize(values, spec, mode);
    result.trace.weighted = weight_matrix(result.trace.normalized, spec);
    result.trace.ideals = ideal_solutions(spec, mode);
    result.trace.separations = separations(result.trace.weighted, result.trace.ideals);
    result.closeness = closeness(result.trace.separations.plus, result.trace.separations.minus);
    result.ranks = scores_to_ranks(result.closeness);
    return result;
}

inline TopsisResult rtopsis(const DecisionMatrix& matrix, const CriteriaSpec& spec,
                            NormalizationMode mode = NormalizationMode::MaxMin) {
    return rtopsis(matrix.values(), spec, mode);
}

}  // namespace hra

#endif  // HRA_RTOPSIS_HPP
