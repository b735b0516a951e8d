#ifndef HRA_MATRIX_HPP
#define HRA_MATRIX_HPP

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hra/error.hpp"

namespace hra {

/// Dense row-major matrix.
template <typename T>
class BasicMatrix {
public:
    BasicMatrix() = default;
    BasicMatrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static BasicMatrix from_rows(const std::vector<std::vector<T>>& rows) {
        if (rows.empty()) {
            return {};
        }
        BasicMatrix out(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != out.cols_) {
                throw Error(ErrorKind::ShapeMismatch,
                            "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                " values, expected " + std::to_string(out.cols_));
            }
            for (std::size_t j = 0; j < out.cols_; ++j) {
                out(i, j) = rows[i][j];
            }
        }
        return out;
    }

    static BasicMatrix from_columns(const std::vector<std::vector<T>>& columns) {
        if (columns.empty()) {
            return {};
        }
        BasicMatrix out(columns.front().size(), columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != out.rows_) {
                throw Error(ErrorKind::ShapeMismatch,
                            "column " + std::to_string(j) + " has " +
                                std::to_string(columns[j].size()) + " values, expected " +
                                std::to_string(out.rows_));
            }
            for (std::size_t i = 0; i < out.rows_; ++i) {
                out(i, j) = columns[j][i];
            }
        }
        return out;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    const T& operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            out[i] = (*this)(i, j);
        }
        return out;
    }

    void set_column(std::size_t j, std::span<const T> values) {
        assert(values.size() == rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            (*this)(i, j) = values[i];
        }
    }

    std::span<const T> data() const noexcept { return data_; }

    friend bool operator==(const BasicMatrix&, const BasicMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using Matrix = BasicMatrix<double>;

namespace detail {

inline void require_unique(const std::vector<std::string>& labels, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& label : labels) {
        if (!seen.insert(label).second) {
            throw Error(ErrorKind::DuplicateLabel, std::string(what) + " label '" + label + "' repeated");
        }
    }
}

}  // namespace detail

/// Alternatives (rows) scored against criteria (columns).
class DecisionMatrix {
public:
    DecisionMatrix(std::vector<std::string> alternatives, std::vector<std::string> criteria, Matrix values)
        : alternatives_(std::move(alternatives)), criteria_(std::move(criteria)), values_(std::move(values)) {
        if (alternatives_.empty() || criteria_.empty()) {
            throw Error(ErrorKind::EmptyMatrix, "decision matrix needs at least one alternative and one criterion");
        }
        if (values_.rows() != alternatives_.size() || values_.cols() != criteria_.size()) {
            throw Error(ErrorKind::ShapeMismatch,
                        "values are " + std::to_string(values_.rows()) + "x" + std::to_string(values_.cols()) +
                            " but labels describe " + std::to_string(alternatives_.size()) + "x" +
                            std::to_string(criteria_.size()));
        }
        for (std::size_t i = 0; i < values_.rows(); ++i) {
            for (std::size_t j = 0; j < values_.cols(); ++j) {
                if (!std::isfinite(values_(i, j))) {
                    throw Error(ErrorKind::NonFiniteValue,
                                "value for '" + alternatives_[i] + "', '" + criteria_[j] + "' is not finite");
                }
            }
        }
        detail::require_unique(alternatives_, "alternative");
        detail::require_unique(criteria_, "criterion");
    }

    std::size_t alternatives_count() const noexcept { return alternatives_.size(); }
    std::size_t criteria_count() const noexcept { return criteria_.size(); }

    const std::vector<std::string>& alternatives() const noexcept { return alternatives_; }
    const std::vector<std::string>& criteria() const noexcept { return criteria_; }
    const Matrix& values() const noexcept { return values_; }

    /// Keeps only the listed rows, in the given order.
    DecisionMatrix select_rows(std::span<const std::size_t> keep) const {
        std::vector<std::string> labels;
        Matrix values(keep.size(), values_.cols());
        for (std::size_t r = 0; r < keep.size(); ++r) {
            labels.push_back(alternatives_.at(keep[r]));
            for (std::size_t j = 0; j < values_.cols(); ++j) {
                values(r, j) = values_(keep[r], j);
            }
        }
        return {std::move(labels), criteria_, std::move(values)};
    }

    friend bool operator==(const DecisionMatrix&, const DecisionMatrix&) = default;

private:
    std::vector<std::string> alternatives_;
    std::vector<std::string> criteria_;
    Matrix values_;
};

}  // namespace hra

#endif  // HRA_MATRIX_HPP
