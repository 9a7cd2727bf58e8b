#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "stpnet/core.hpp"

namespace stpnet {

using Int = std::int64_t;

/// Dense matrix with exact integer entries, row-major. Everything arising
/// from logical computations is 0/1, but products and sums of such matrices
/// stay exact here.
class DenseMatrix {
public:
    DenseMatrix(int rows, int cols);
    DenseMatrix(int rows, int cols, std::vector<Int> entries);

    static DenseMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    Int& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const std::vector<Int>& entries() const { return a_; }

    DenseMatrix transpose() const;
    DenseMatrix operator+(const DenseMatrix& other) const;
    DenseMatrix operator*(const DenseMatrix& other) const;  // ordinary product
    bool operator==(const DenseMatrix& other) const = default;

    std::string to_string() const;

private:
    int rows_;
    int cols_;
    std::vector<Int> a_;
};

/// Canonical basis column delta_dim^index, 1-based index.
struct DeltaVector {
    int dim;
    int index;

    DeltaVector(int dim_, int index_);

    DenseMatrix dense() const;
    bool operator==(const DeltaVector&) const = default;
    std::string to_string() const;  // "d<dim>^<index>"
};

/// Matrix whose every column is a delta vector; stored as the row count plus
/// the 1-based column indices, mirroring the shorthand d_m[i1 i2 ... in].
class LogicalMatrix {
public:
    LogicalMatrix(int rows, std::vector<int> col_indices);

    static LogicalMatrix identity(int n);
    static LogicalMatrix delta(int rows, std::initializer_list<int> col_indices);
    static LogicalMatrix from_delta_vector(const DeltaVector& v);

    int rows() const { return rows_; }
    int cols() const { return static_cast<int>(idx_.size()); }
    /// 1-based row index of the single 1 in column j (1-based).
    int col_index(int j) const { return idx_[static_cast<std::size_t>(j) - 1]; }
    const std::vector<int>& col_indices() const { return idx_; }

    DeltaVector column(int j) const { return DeltaVector(rows_, col_index(j)); }
    DeltaVector as_delta_vector() const;  // requires a single column

    DenseMatrix dense() const;
    bool operator==(const LogicalMatrix&) const = default;

    /// Shorthand text form, e.g. "d2[1 2 2 2]".
    std::string shorthand() const;

private:
    int rows_;
    std::vector<int> idx_;
};

/// Attempts to read a dense 0/1 matrix back as a logical matrix.
/// Throws dimension_error when some column is not a delta vector.
LogicalMatrix to_logical(const DenseMatrix& m);

}  // namespace stpnet
