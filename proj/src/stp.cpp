#include "stpnet/stp.hpp"

#include <numeric>

namespace stpnet {

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    check_size_cap(static_cast<std::size_t>(a.rows()) * b.rows(),
                   static_cast<std::size_t>(a.cols()) * b.cols());
    DenseMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (int ar = 0; ar < a.rows(); ++ar) {
        for (int ac = 0; ac < a.cols(); ++ac) {
            Int v = a.at(ar, ac);
            if (v == 0) continue;
            for (int br = 0; br < b.rows(); ++br)
                for (int bc = 0; bc < b.cols(); ++bc)
                    k.at(ar * b.rows() + br, ac * b.cols() + bc) = v * b.at(br, bc);
        }
    }
    return k;
}

LogicalMatrix kron(const LogicalMatrix& a, const LogicalMatrix& b) {
    check_size_cap(static_cast<std::size_t>(a.rows()) * b.rows(),
                   static_cast<std::size_t>(a.cols()) * b.cols());
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(a.cols()) * b.cols());
    for (int ac = 1; ac <= a.cols(); ++ac)
        for (int bc = 1; bc <= b.cols(); ++bc)
            idx.push_back((a.col_index(ac) - 1) * b.rows() + b.col_index(bc));
    return LogicalMatrix(a.rows() * b.rows(), std::move(idx));
}

DenseMatrix stp(const DenseMatrix& a, const DenseMatrix& b) {
    const long long n = a.cols(), p = b.rows();
    const long long t = std::lcm(n, p);
    if (n == p) return a * b;
    DenseMatrix lhs = kron(a, DenseMatrix::identity(static_cast<int>(t / n)));
    DenseMatrix rhs = kron(b, DenseMatrix::identity(static_cast<int>(t / p)));
    return lhs * rhs;
}

LogicalMatrix stp(const LogicalMatrix& a, const LogicalMatrix& b) {
    const long long n = a.cols(), p = b.rows();
    const long long t = std::lcm(n, p);
    const long long tn = t / n, tp = t / p;
    const long long out_rows = a.rows() * tn;
    const long long out_cols = b.cols() * tp;
    check_size_cap(static_cast<std::size_t>(out_rows), static_cast<std::size_t>(out_cols));
    // Column j of B (x) I_{t/p} is delta_{pt/p}^{(iB-1)tp+r}; feeding that
    // basis index s through A (x) I_{t/n}: s = (sA-1)tn + r2 picks column sA
    // of A and lands on row (A.col[sA]-1)tn + r2.
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(out_cols));
    for (int jb = 1; jb <= b.cols(); ++jb) {
        const long long ib = b.col_index(jb);
        for (long long r = 0; r < tp; ++r) {
            const long long s = (ib - 1) * tp + r;  // 0-based row in Delta_t
            const long long sa = s / tn;            // 0-based column of A
            const long long r2 = s % tn;
            idx.push_back(static_cast<int>((a.col_index(static_cast<int>(sa) + 1) - 1) * tn +
                                           r2 + 1));
        }
    }
    return LogicalMatrix(static_cast<int>(out_rows), std::move(idx));
}

LogicalMatrix stp(const LogicalMatrix& a, const DeltaVector& b) {
    return stp(a, LogicalMatrix::from_delta_vector(b));
}

DeltaVector stp(const DeltaVector& a, const DeltaVector& b) {
    return DeltaVector(a.dim * b.dim, (a.index - 1) * b.dim + b.index);
}

LogicalMatrix swap_matrix(int m, int n) {
    if (m < 1 || n < 1) throw dimension_error("swap matrix arguments must be positive");
    check_size_cap(static_cast<std::size_t>(m) * n, static_cast<std::size_t>(m) * n);
    std::vector<int> idx(static_cast<std::size_t>(m) * n);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j)
            idx[static_cast<std::size_t>(i - 1) * n + (j - 1)] = (j - 1) * m + i;
    return LogicalMatrix(m * n, std::move(idx));
}

LogicalMatrix power_reduce_matrix() { return LogicalMatrix::delta(4, {1, 4}); }

LogicalMatrix product_power_reduce(int n) {
    if (n < 1) throw dimension_error("product_power_reduce needs n >= 1");
    const LogicalMatrix mr = power_reduce_matrix();
    LogicalMatrix acc = LogicalMatrix::identity(1);
    bool first = true;
    for (int i = 1; i <= n; ++i) {
        LogicalMatrix inner =
            stp(kron(LogicalMatrix::identity(2), swap_matrix(2, 1 << (n - i))), mr);
        LogicalMatrix factor = kron(LogicalMatrix::identity(1 << (i - 1)), inner);
        acc = first ? factor : stp(acc, factor);
        first = false;
    }
    return acc;
}

DenseMatrix front_lift(int t, const DenseMatrix& m) {
    if (t < 1) throw dimension_error("front_lift needs t >= 1");
    return kron(DenseMatrix::identity(t), m);
}

LogicalMatrix front_lift(int t, const LogicalMatrix& m) {
    if (t < 1) throw dimension_error("front_lift needs t >= 1");
    return kron(LogicalMatrix::identity(t), m);
}

LogicalMatrix conjunction_matrix() { return LogicalMatrix::delta(2, {1, 2, 2, 2}); }
LogicalMatrix disjunction_matrix() { return LogicalMatrix::delta(2, {1, 1, 1, 2}); }
LogicalMatrix negation_matrix() { return LogicalMatrix::delta(2, {2, 1}); }

}  // namespace stpnet
