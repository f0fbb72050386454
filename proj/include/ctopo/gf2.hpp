#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctopo {

/// Sparse column over Z/2: strictly increasing row indices of the 1 entries.
using GF2Column = std::vector<std::uint32_t>;

/// Column-sparse matrix over Z/2.
struct GF2Matrix {
    std::size_t n_rows = 0;
    std::vector<GF2Column> columns;

    GF2Matrix() = default;
    GF2Matrix(std::size_t rows, std::vector<GF2Column> cols)
        : n_rows(rows), columns(std::move(cols)) {
        validate();
    }

    static GF2Matrix identity(std::size_t n) {
        std::vector<GF2Column> cols(n);
        for (std::size_t i = 0; i < n; ++i) cols[i] = {static_cast<std::uint32_t>(i)};
        return GF2Matrix(n, std::move(cols));
    }

    static GF2Matrix zero(std::size_t rows, std::size_t cols) {
        return GF2Matrix(rows, std::vector<GF2Column>(cols));
    }

    std::size_t n_cols() const noexcept { return columns.size(); }

    bool at(std::size_t row, std::size_t col) const {
        const GF2Column& c = columns.at(col);
        return std::binary_search(c.begin(), c.end(), static_cast<std::uint32_t>(row));
    }

    bool is_zero() const {
        return std::all_of(columns.begin(), columns.end(), [](const GF2Column& c) { return c.empty(); });
    }

    void validate() const {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            const GF2Column& c = columns[j];
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (c[i] >= n_rows)
                    throw std::out_of_range("column " + std::to_string(j) + " has row index " +
                                            std::to_string(c[i]) + " >= " + std::to_string(n_rows));
                if (i > 0 && c[i - 1] >= c[i])
                    throw std::invalid_argument("column " + std::to_string(j) +
                                                " row indices are not strictly increasing");
            }
        }
    }

    friend bool operator==(const GF2Matrix&, const GF2Matrix&) = default;
};

/// dst ← dst + src over Z/2 (symmetric difference of sorted index lists).
inline void add_column(GF2Column& dst, const GF2Column& src, GF2Column& scratch) {
    scratch.clear();
    std::set_symmetric_difference(dst.begin(), dst.end(), src.begin(), src.end(),
                                  std::back_inserter(scratch));
    dst.swap(scratch);
}

/// Product a · b over Z/2.
inline GF2Matrix multiply(const GF2Matrix& a, const GF2Matrix& b) {
    if (a.n_cols() != b.n_rows)
        throw std::invalid_argument("GF2 multiply: inner dimensions differ");
    std::vector<GF2Column> out(b.n_cols());
    GF2Column scratch;
    for (std::size_t j = 0; j < b.n_cols(); ++j)
        for (std::uint32_t k : b.columns[j]) add_column(out[j], a.columns[k], scratch);
    return GF2Matrix(a.n_rows, std::move(out));
}

inline constexpr std::uint32_t no_pivot = std::numeric_limits<std::uint32_t>::max();

/// Left-to-right column reduction: adds earlier columns until every nonzero
/// column has a distinct lowest row ("low"). Optionally records the
/// accumulated column operations (R = D · V).
class ColumnReduction {
public:
    explicit ColumnReduction(GF2Matrix m, bool track_operations = false)
        : matrix_(std::move(m)), low_(matrix_.n_cols(), no_pivot),
          pivot_col_(matrix_.n_rows, no_pivot) {
        if (track_operations) {
            ops_.resize(matrix_.n_cols());
            for (std::size_t j = 0; j < ops_.size(); ++j) ops_[j] = {static_cast<std::uint32_t>(j)};
        }
        GF2Column scratch;
        for (std::size_t j = 0; j < matrix_.n_cols(); ++j) {
            GF2Column& col = matrix_.columns[j];
            while (!col.empty()) {
                const std::uint32_t low = col.back();
                const std::uint32_t k = pivot_col_[low];
                if (k == no_pivot) {
                    pivot_col_[low] = static_cast<std::uint32_t>(j);
                    low_[j] = low;
                    ++rank_;
                    break;
                }
                add_column(col, matrix_.columns[k], scratch);
                if (track_operations) add_column(ops_[j], ops_[k], scratch);
            }
        }
    }

    std::size_t rank() const noexcept { return rank_; }

    /// Lowest row of reduced column j, or no_pivot if it reduced to zero.
    std::uint32_t low(std::size_t j) const { return low_.at(j); }

    /// Column whose low is `row`, or no_pivot.
    std::uint32_t pivot_column(std::size_t row) const { return pivot_col_.at(row); }

    const GF2Matrix& reduced() const noexcept { return matrix_; }

    /// Column j of V; empty if operations were not tracked.
    const GF2Column& operations(std::size_t j) const {
        static const GF2Column none;
        return ops_.empty() ? none : ops_.at(j);
    }

private:
    GF2Matrix matrix_;
    std::vector<std::uint32_t> low_;
    std::vector<std::uint32_t> pivot_col_;
    std::vector<GF2Column> ops_;
    std::size_t rank_ = 0;
};

inline std::size_t gf2_rank(GF2Matrix m) { return ColumnReduction(std::move(m)).rank(); }

}  // namespace ctopo
