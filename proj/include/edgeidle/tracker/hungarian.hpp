#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace edgeidle::tracker {

/// Dense row-major cost matrix. +infinity marks an inadmissible pair.
class CostMatrix {
public:
    CostMatrix() = default;
    CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct Assignment {
    std::vector<std::pair<std::size_t, std::size_t>> matches;  // ascending by row
    std::vector<std::size_t> unmatched_rows;
    std::vector<std::size_t> unmatched_cols;
    double total_cost = 0.0;
};

inline constexpr double kNoGate = std::numeric_limits<double>::infinity();

/// Optimal one-to-one assignment over admissible pairs (cost <= gate).
///
/// With a finite gate every matched pair earns (gate - cost), so the solver
/// minimises sum(cost - gate); with kNoGate it returns a maximum-cardinality
/// assignment of minimum total cost. Among optimal solutions the one whose
/// per-row column sequence is lexicographically smallest is returned, with
/// "unmatched" ordered after every column.
///
/// Throws ValidationError on NaN or -infinity entries.
Assignment hungarian_assign(const CostMatrix& cost, double gate = kNoGate);

}  // namespace edgeidle::tracker
