#include "stpnet/matrix.hpp"

#include <sstream>

namespace stpnet {

DenseMatrix::DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw dimension_error("matrix dimensions must be positive");
    check_size_cap(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    a_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

DenseMatrix::DenseMatrix(int rows, int cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (rows < 1 || cols < 1) throw dimension_error("matrix dimensions must be positive");
    check_size_cap(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    if (a_.size() != static_cast<std::size_t>(rows) * cols) {
        throw dimension_error("entry count does not match dimensions");
    }
}

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

DenseMatrix DenseMatrix::operator+(const DenseMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw dimension_error("addition requires equal dimensions");
    }
    DenseMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] = a_[i] + other.a_[i];
    return s;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& other) const {
    if (cols_ != other.rows_) throw dimension_error("inner dimensions do not match");
    DenseMatrix p(rows_, other.cols_);
    for (int r = 0; r < rows_; ++r) {
        for (int k = 0; k < cols_; ++k) {
            Int v = at(r, k);
            if (v == 0) continue;
            for (int c = 0; c < other.cols_; ++c) p.at(r, c) += v * other.at(k, c);
        }
    }
    return p;
}

std::string DenseMatrix::to_string() const {
    std::ostringstream os;
    for (int r = 0; r < rows_; ++r) {
        os << (r == 0 ? "[" : " ");
        for (int c = 0; c < cols_; ++c) os << (c ? " " : "[") << at(r, c);
        os << "]" << (r + 1 == rows_ ? "]" : "\n");
    }
    return os.str();
}

DeltaVector::DeltaVector(int dim_, int index_) : dim(dim_), index(index_) {
    if (dim < 1) throw dimension_error("delta vector dimension must be positive");
    if (index < 1 || index > dim) {
        throw dimension_error("delta index " + std::to_string(index) + " out of [1," +
                              std::to_string(dim) + "]");
    }
}

DenseMatrix DeltaVector::dense() const {
    DenseMatrix m(dim, 1);
    m.at(index - 1, 0) = 1;
    return m;
}

std::string DeltaVector::to_string() const {
    return "d" + std::to_string(dim) + "^" + std::to_string(index);
}

LogicalMatrix::LogicalMatrix(int rows, std::vector<int> col_indices)
    : rows_(rows), idx_(std::move(col_indices)) {
    if (rows < 1) throw dimension_error("row count must be positive");
    if (idx_.empty()) throw dimension_error("logical matrix needs at least one column");
    check_size_cap(static_cast<std::size_t>(rows), idx_.size());
    for (int i : idx_) {
        if (i < 1 || i > rows_) {
            throw dimension_error("column index " + std::to_string(i) + " out of [1," +
                                  std::to_string(rows_) + "]");
        }
    }
}

LogicalMatrix LogicalMatrix::identity(int n) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
    return LogicalMatrix(n, std::move(idx));
}

LogicalMatrix LogicalMatrix::delta(int rows, std::initializer_list<int> col_indices) {
    return LogicalMatrix(rows, std::vector<int>(col_indices));
}

LogicalMatrix LogicalMatrix::from_delta_vector(const DeltaVector& v) {
    return LogicalMatrix(v.dim, {v.index});
}

DeltaVector LogicalMatrix::as_delta_vector() const {
    if (cols() != 1) throw dimension_error("matrix has more than one column");
    return DeltaVector(rows_, idx_[0]);
}

DenseMatrix LogicalMatrix::dense() const {
    DenseMatrix m(rows_, cols());
    for (int j = 0; j < cols(); ++j) m.at(idx_[static_cast<std::size_t>(j)] - 1, j) = 1;
    return m;
}

std::string LogicalMatrix::shorthand() const {
    std::ostringstream os;
    os << "d" << rows_ << "[";
    for (int j = 0; j < cols(); ++j) os << (j ? " " : "") << idx_[static_cast<std::size_t>(j)];
    os << "]";
    return os.str();
}

LogicalMatrix to_logical(const DenseMatrix& m) {
    std::vector<int> idx(static_cast<std::size_t>(m.cols()));
    for (int c = 0; c < m.cols(); ++c) {
        int hit = 0;
        for (int r = 0; r < m.rows(); ++r) {
            Int v = m.at(r, c);
            if (v == 1 && hit == 0) {
                hit = r + 1;
            } else if (v != 0) {
                throw dimension_error("column " + std::to_string(c + 1) +
                                      " is not a delta vector");
            }
        }
        if (hit == 0) {
            throw dimension_error("column " + std::to_string(c + 1) + " is zero");
        }
        idx[static_cast<std::size_t>(c)] = hit;
    }
    return LogicalMatrix(m.rows(), std::move(idx));
}

}  // namespace stpnet
