#pragma once

#include "stpnet/matrix.hpp"

namespace stpnet {

/// Kronecker product, dims (A.rows*B.rows) x (A.cols*B.cols).
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);
LogicalMatrix kron(const LogicalMatrix& a, const LogicalMatrix& b);

/// Semi-tensor product A |x B = (A (x) I_{t/n})(B (x) I_{t/p}),
/// t = lcm(A.cols, B.rows). Coincides with the ordinary product when
/// A.cols == B.rows.
DenseMatrix stp(const DenseMatrix& a, const DenseMatrix& b);

/// Fast path for logical operands; the result densifies to
/// stp(a.dense(), b.dense()) and is again logical.
LogicalMatrix stp(const LogicalMatrix& a, const LogicalMatrix& b);

LogicalMatrix stp(const LogicalMatrix& a, const DeltaVector& b);
DeltaVector stp(const DeltaVector& a, const DeltaVector& b);

/// Swap matrix W_[m,n]: W_[m,n] |x x |x y = y |x x for x in Delta_m,
/// y in Delta_n. Col_{(i-1)n+j} = delta_mn^{(j-1)m+i}.
LogicalMatrix swap_matrix(int m, int n);

/// M_r = d4[1 4]; p |x p = M_r |x p for p in Delta_2.
LogicalMatrix power_reduce_matrix();

/// Phi_n, the 4^n x 2^n matrix with (p_1...p_n)^2 = Phi_n |x (p_1...p_n),
/// built as prod_{i=1..n} I_{2^{i-1}} (x) [(I_2 (x) W_[2,2^{n-i}]) M_r].
LogicalMatrix product_power_reduce(int n);

/// I_t (x) M, the matrix with X |x M = (I_t (x) M) |x X for every column
/// vector X of height t.
DenseMatrix front_lift(int t, const DenseMatrix& m);
LogicalMatrix front_lift(int t, const LogicalMatrix& m);

/// Structure matrices of the basic connectives.
LogicalMatrix conjunction_matrix();  // M_c = d2[1 2 2 2]
LogicalMatrix disjunction_matrix();  // M_d = d2[1 1 1 2]
LogicalMatrix negation_matrix();     // M_n = d2[2 1]

}  // namespace stpnet
