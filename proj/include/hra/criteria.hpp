#ifndef HRA_CRITERIA_HPP
#define HRA_CRITERIA_HPP

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hra/error.hpp"

namespace hra {

enum class Direction { Benefit, Cost };

/// Closed interval of admissible values for one criterion.
struct Domain {
    double lower = 0.0;
    double upper = 1.0;

    friend bool operator==(const Domain&, const Domain&) = default;
};

inline constexpr double kWeightSumTolerance = 1e-12;

/// Strictly positive weights summing to one. Out-of-tolerance input is
/// rejected, never renormalized.
class Weights {
public:
    explicit Weights(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) {
            throw Error(ErrorKind::InvalidWeights, "weight vector is empty");
        }
        for (std::size_t j = 0; j < values_.size(); ++j) {
            if (!std::isfinite(values_[j]) || values_[j] <= 0.0) {
                throw Error(ErrorKind::InvalidWeights,
                            "weight " + std::to_string(j + 1) + " must be positive and finite");
            }
        }
        const double sum = std::accumulate(values_.begin(), values_.end(), 0.0);
        if (std::abs(sum - 1.0) > kWeightSumTolerance) {
            throw Error(ErrorKind::InvalidWeights, "weights sum to " + std::to_string(sum) + ", expected 1");
        }
    }

    static Weights equal(std::size_t n) {
        if (n == 0) {
            throw Error(ErrorKind::InvalidWeights, "cannot build equal weights for zero criteria");
        }
        return Weights(std::vector<double>(n, 1.0 / static_cast<double>(n)));
    }

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t j) const { return values_[j]; }
    std::span<const double> values() const noexcept { return values_; }

    friend bool operator==(const Weights&, const Weights&) = default;

private:
    std::vector<double> values_;
};

/// Direction, fixed domain and weight for every criterion of a decision
/// problem. The domain is independent of the data being ranked.
class CriteriaSpec {
public:
    CriteriaSpec(std::vector<Direction> directions, std::vector<Domain> domains, Weights weights)
        : directions_(std::move(directions)), domains_(std::move(domains)), weights_(std::move(weights)) {
        if (directions_.size() != weights_.size() || domains_.size() != weights_.size()) {
            throw Error(ErrorKind::ShapeMismatch,
                        "criteria spec lengths disagree: " + std::to_string(directions_.size()) + " directions, " +
                            std::to_string(domains_.size()) + " domains, " + std::to_string(weights_.size()) +
                            " weights");
        }
        for (std::size_t j = 0; j < domains_.size(); ++j) {
            const auto& d = domains_[j];
            if (!std::isfinite(d.lower) || !std::isfinite(d.upper) || !(d.lower < d.upper)) {
                throw Error(ErrorKind::DegenerateDomain, "criterion " + std::to_string(j + 1) + " has domain [" +
                                                             std::to_string(d.lower) + ", " +
                                                             std::to_string(d.upper) + "]");
            }
        }
    }

    /// Same direction and domain for every criterion.
    static CriteriaSpec uniform(Direction direction, Domain domain, Weights weights) {
        const std::size_t n = weights.size();
        return {std::vector<Direction>(n, direction), std::vector<Domain>(n, domain), std::move(weights)};
    }

    /// Rank data over `alternatives` rows: cost criteria on (0, m+1). The row
    /// count is captured here so later row deletions cannot move the domain.
    static CriteriaSpec for_ranks(std::size_t alternatives, Weights weights) {
        return uniform(Direction::Cost, Domain{0.0, static_cast<double>(alternatives) + 1.0}, std::move(weights));
    }

    std::size_t size() const noexcept { return weights_.size(); }
    Direction direction(std::size_t j) const { return directions_.at(j); }
    const Domain& domain(std::size_t j) const { return domains_.at(j); }
    const Weights& weights() const noexcept { return weights_; }
    const std::vector<Direction>& directions() const noexcept { return directions_; }
    const std::vector<Domain>& domains() const noexcept { return domains_; }

private:
    std::vector<Direction> directions_;
    std::vector<Domain> domains_;
    Weights weights_;
};

}  // namespace hra

#endif  // HRA_CRITERIA_HPP
