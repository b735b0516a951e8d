#ifndef HRA_RANKING_HPP
#define HRA_RANKING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "hra/error.hpp"

namespace hra {

enum class RankOrder { Ascending, Descending };

/// Mid-ranks: position 1 goes to the smallest (Ascending) or largest
/// (Descending) value, and a run of equal values shares the mean of the
/// positions it spans. Ties are exact equality.
template <typename T>
std::vector<double> mean_ranks(std::span<const T> values, RankOrder order) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(static_cast<double>(values[i]))) {
            throw Error(ErrorKind::NonFiniteValue, "cannot rank non-finite value at position " + std::to_string(i + 1));
        }
    }
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (order == RankOrder::Ascending) {
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    } else {
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    }

    std::vector<double> ranks(values.size());
    std::size_t start = 0;
    while (start < idx.size()) {
        std::size_t end = start + 1;
        while (end < idx.size() && values[idx[end]] == values[idx[start]]) {
            ++end;
        }
        // positions start+1 .. end share their mean
        const double shared = (static_cast<double>(start + 1) + static_cast<double>(end)) / 2.0;
        for (std::size_t k = start; k < end; ++k) {
            ranks[idx[k]] = shared;
        }
        start = end;
    }
    return ranks;
}

template <typename T>
std::vector<double> mean_ranks(const std::vector<T>& values, RankOrder order) {
    return mean_ranks(std::span<const T>(values), order);
}

}  // namespace hra

#endif  // HRA_RANKING_HPP
