#pragma once

#include <set>
#include <string>

#include "stpnet/network.hpp"

namespace stpnet {

/// The bundled worked example: two states, two controls, state rules with
/// derivative atoms, rotating control dynamics.
///
///   x1' = x2 | (u1 & d(g)/d(u2))
///   x2' = x1 & (u2 | d(g)/d(u1))
///   u1' = !u2
///   u2' = u1
///   g   = u1 & u2
///
/// Alongside the general compiler, this module carries the example's literal
/// closed-form factor chain in which each derivative is kept as its structure
/// matrix M_g with the differentiated slot left vacant ("hat" form). The two
/// vacant slots survive as extra inputs, so the chain's time matrices are
/// 4 x 64 rather than 4 x 16, and its published reference values are frozen
/// here. The hat form is NOT equivalent to the cofactor-XOR semantics; see
/// divergence_report().
namespace closed_form {

NetworkSpec example_network();
std::string example_network_text();

/// The 4 x 64 closed-form matrix for step t+1 (t >= 0), evaluated with the
/// logical fast-path STP.
LogicalMatrix hat_time_matrix(int t);

/// Same chain evaluated factor by factor with the dense Kronecker-form STP.
DenseMatrix hat_time_matrix_dense(int t);

/// Frozen reference values for hat_time_matrix(0) and hat_time_matrix(1).
LogicalMatrix reference_time_matrix_1();
LogicalMatrix reference_time_matrix_2();

/// Distinct column indices of hat_time_matrix(t-1) |x u0 — the column
/// reading of the step-t reachable set in hat form.
std::set<int> hat_column_reachable(const DeltaVector& u0, int t);

/// The four-column successor pattern at step t, restricted to predecessor
/// state x: column indices of hat_time_matrix(t-1) |x u0 |x x over the two
/// vacant derivative slots.
std::vector<int> hat_branch_pattern(const DeltaVector& u0, const DeltaVector& x, int t);

/// Compares the truth-table compilation of the example against the frozen
/// hat-form reference matrices, entry by entry (the truth-table matrix is
/// evaluated with both vacant slots set to true, the reading under which the
/// hat form is supposed to reduce to the derivative). Returns a human-readable
/// report; `agrees` is false when any entry differs.
struct DivergenceReport {
    bool agrees;
    int mismatches;
    std::string text;
};
DivergenceReport divergence_report();

}  // namespace closed_form

}  // namespace stpnet
