#ifndef HRA_STATISTICS_HPP
#define HRA_STATISTICS_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hra/dataset.hpp"
#include "hra/error.hpp"

namespace hra {

enum class StdConvention { Sample, Population };

struct RunSummary {
    double best = 0.0;
    double worst = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double std_dev = 0.0;

    double get(std::string_view measure) const {
        if (measure == "best") return best;
        if (measure == "worst") return worst;
        if (measure == "median") return median;
        if (measure == "mean") return mean;
        if (measure == "std") return std_dev;
        throw Error(ErrorKind::ParseError, "unknown measure '" + std::string(measure) + "'");
    }

    friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

/// min, max, median (mean of the middle pair for even counts), arithmetic
/// mean and standard deviation of a non-empty list of runs. A single run has
/// zero deviation under either convention.
inline RunSummary compute_statistics(std::span<const double> runs, StdConvention convention = StdConvention::Sample) {
    if (runs.empty()) {
        throw Error(ErrorKind::EmptyRuns, "cannot summarize an empty list of runs");
    }
    for (double x : runs) {
        if (!std::isfinite(x)) {
            throw Error(ErrorKind::NonFiniteValue, "run value is not finite");
        }
    }
    std::vector<double> sorted(runs.begin(), runs.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    RunSummary s;
    s.best = sorted.front();
    s.worst = sorted.back();
    s.median = n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;

    double sum = 0.0;
    for (double x : runs) {
        sum += x;
    }
    // rounding can push the quotient one ulp past the extremes
    s.mean = std::clamp(sum / static_cast<double>(n), s.best, s.worst);

    if (n > 1) {
        double squares = 0.0;
        for (double x : runs) {
            const double d = x - s.mean;
            squares += d * d;
        }
        const double denominator = convention == StdConvention::Sample ? static_cast<double>(n - 1)
                                                                       : static_cast<double>(n);
        s.std_dev = std::sqrt(squares / denominator);
    }
    return s;
}

inline RunSummary compute_statistics(const std::vector<double>& runs,
                                     StdConvention convention = StdConvention::Sample) {
    return compute_statistics(std::span<const double>(runs), convention);
}

/// Orders embedded digit runs numerically, so "f2" < "f10".
inline bool natural_less(std::string_view a, std::string_view b) {
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
        const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
        if (da && db) {
            std::size_t ie = i;
            std::size_t je = j;
            while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
            while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
            auto na = a.substr(i, ie - i);
            auto nb = b.substr(j, je - j);
            while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
            while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
            if (na.size() != nb.size()) return na.size() < nb.size();
            if (na != nb) return na < nb;
            i = ie;
            j = je;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    return a.size() - i < b.size() - j;
}

struct RunKey {
    int dimension = 0;
    std::string algorithm;
    std::string function;
};

struct RunKeyLess {
    bool operator()(const RunKey& a, const RunKey& b) const {
        if (a.dimension != b.dimension) return a.dimension < b.dimension;
        if (a.algorithm != b.algorithm) return natural_less(a.algorithm, b.algorithm);
        return natural_less(a.function, b.function);
    }
};

/// Independent run results per (dimension, algorithm, function).
using RawRuns = std::map<RunKey, std::vector<double>, RunKeyLess>;

/// Five standard measures for every run group.
inline PerformanceDataset summarize_runs(const RawRuns& runs, StdConvention convention = StdConvention::Sample) {
    if (runs.empty()) {
        throw Error(ErrorKind::EmptyRuns, "no run groups to summarize");
    }
    // insert in (function, algorithm) order so the dataset's label lists come
    // out naturally sorted
    std::vector<const RawRuns::value_type*> order;
    for (const auto& entry : runs) {
        order.push_back(&entry);
    }
    std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
        if (a->first.dimension != b->first.dimension) return a->first.dimension < b->first.dimension;
        if (a->first.function != b->first.function) return natural_less(a->first.function, b->first.function);
        return natural_less(a->first.algorithm, b->first.algorithm);
    });

    PerformanceDataset data;
    for (const auto* entry : order) {
        const auto& key = entry->first;
        RunSummary s;
        try {
            s = compute_statistics(entry->second, convention);
        } catch (const Error& e) {
            throw Error(e.kind(), std::string(e.what()) + " for dimension " + std::to_string(key.dimension) +
                                      ", algorithm " + key.algorithm + ", function " + key.function);
        }
        for (auto measure : kStandardMeasures) {
            data.set({key.dimension, std::string(measure), key.algorithm, key.function}, s.get(measure));
        }
    }
    return data;
}

}  // namespace hra

#endif  // HRA_STATISTICS_HPP
