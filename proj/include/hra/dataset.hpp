#ifndef HRA_DATASET_HPP
#define HRA_DATASET_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hra/error.hpp"

namespace hra {

inline constexpr std::array<std::string_view, 5> kStandardMeasures{"best", "worst", "median", "mean", "std"};

inline bool is_standard_measure(std::string_view measure) {
    return std::find(kStandardMeasures.begin(), kStandardMeasures.end(), measure) != kStandardMeasures.end();
}

struct CellKey {
    int dimension = 0;
    std::string measure;
    std::string algorithm;
    std::string function;

    friend auto operator<=>(const CellKey&, const CellKey&) = default;
    friend bool operator==(const CellKey&, const CellKey&) = default;
};

inline std::string describe(const CellKey& key) {
    return "(dimension=" + std::to_string(key.dimension) + ", measure=" + key.measure +
           ", algorithm=" + key.algorithm + ", function=" + key.function + ")";
}

/// Performance statistic per (dimension, measure, algorithm, function).
/// Algorithms and functions keep first-insertion order; dimensions are
/// ordered numerically and the standard measures keep their canonical order.
class PerformanceDataset {
public:
    void set(const CellKey& key, double value) {
        if (!std::isfinite(value)) {
            throw Error(ErrorKind::NonFiniteValue, "value for " + describe(key) + " is not finite");
        }
        if (!values_.emplace(key, value).second) {
            throw Error(ErrorKind::DuplicateTuple, describe(key) + " appears more than once");
        }
        remember(algorithms_, key.algorithm);
        remember(functions_, key.function);
        remember(measures_, key.measure);
        dimensions_.insert(key.dimension);
    }

    std::optional<double> get(const CellKey& key) const {
        if (auto it = values_.find(key); it != values_.end()) {
            return it->second;
        }
        return std::nullopt;
    }

    double at(const CellKey& key) const {
        if (auto v = get(key)) {
            return *v;
        }
        throw Error(ErrorKind::MissingCell, "no value for " + describe(key));
    }

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    const std::vector<std::string>& algorithms() const noexcept { return algorithms_; }
    const std::vector<std::string>& functions() const noexcept { return functions_; }
    std::vector<int> dimensions() const { return {dimensions_.begin(), dimensions_.end()}; }

    std::vector<std::string> measures() const {
        std::vector<std::string> out;
        for (auto standard : kStandardMeasures) {
            if (std::find(measures_.begin(), measures_.end(), standard) != measures_.end()) {
                out.emplace_back(standard);
            }
        }
        for (const auto& m : measures_) {
            if (!is_standard_measure(m)) {
                out.push_back(m);
            }
        }
        return out;
    }

    /// Tuples of the given (dimension x measure) grid with no value, over all
    /// known algorithms and functions.
    std::vector<CellKey> missing_cells(const std::vector<int>& dims, const std::vector<std::string>& measures) const {
        std::vector<CellKey> missing;
        for (int d : dims) {
            for (const auto& p : measures) {
                for (const auto& a : algorithms_) {
                    for (const auto& f : functions_) {
                        CellKey key{d, p, a, f};
                        if (!values_.contains(key)) {
                            missing.push_back(std::move(key));
                        }
                    }
                }
            }
        }
        return missing;
    }

    bool is_complete() const { return missing_cells(dimensions(), measures()).empty(); }

    const std::map<CellKey, double>& cells() const noexcept { return values_; }

    friend bool operator==(const PerformanceDataset& a, const PerformanceDataset& b) {
        return a.values_ == b.values_ && a.algorithms_ == b.algorithms_ && a.functions_ == b.functions_;
    }

private:
    static void remember(std::vector<std::string>& list, const std::string& label) {
        if (std::find(list.begin(), list.end(), label) == list.end()) {
            list.push_back(label);
        }
    }

    std::map<CellKey, double> values_;
    std::vector<std::string> algorithms_;
    std::vector<std::string> functions_;
    std::vector<std::string> measures_;
    std::set<int> dimensions_;
};

/// Violations of best <= median <= worst, best <= mean <= worst and std >= 0,
/// one message per offending (dimension, algorithm, function) group.
inline std::vector<std::string> statistic_ordering_violations(const PerformanceDataset& data) {
    std::vector<std::string> out;
    for (int d : data.dimensions()) {
        for (const auto& a : data.algorithms()) {
            for (const auto& f : data.functions()) {
                auto get = [&](std::string_view p) { return data.get({d, std::string(p), a, f}); };
                const auto best = get("best");
                const auto worst = get("worst");
                const auto median = get("median");
                const auto mean = get("mean");
                const auto std_dev = get("std");
                const std::string where = "(dimension=" + std::to_string(d) + ", algorithm=" + a + ", function=" + f + ")";
                if (std_dev && *std_dev < 0.0) {
                    out.push_back("negative std " + where);
                }
                if (best && worst && *best > *worst) {
                    out.push_back("best > worst " + where);
                }
                if (median && ((best && *best > *median) || (worst && *median > *worst))) {
                    out.push_back("median outside [best, worst] " + where);
                }
                if (mean && ((best && *best > *mean) || (worst && *mean > *worst))) {
                    out.push_back("mean outside [best, worst] " + where);
                }
            }
        }
    }
    return out;
}

}  // namespace hra

#endif  // HRA_DATASET_HPP
