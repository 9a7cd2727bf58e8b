#pragma once

#include <functional>

#include "stpnet/boolfun.hpp"
#include "stpnet/stp.hpp"

namespace stpnet {

/// A Boolean control network: n state update rules over states, controls and
/// derivative atoms; m control update rules over controls only; and the
/// derivative-source function g over controls only.
struct NetworkSpec {
    int n = 0;
    int m = 0;
    std::vector<ExprPtr> f;         // n state rules
    std::vector<ExprPtr> g_update;  // m control rules
    ExprPtr g;                      // derivative source, controls only

    /// Checks arities, variable ranges and the controls-only restriction on
    /// g_update and g. Throws dimension_error on violation.
    void validate() const;
};

/// Transition form: x(t+1) = L |x u(t) |x x(t), u(t+1) = G |x u(t).
/// Column (iu-1)*2^n + ix of L is the successor of state ix under control iu.
struct CompiledNetwork {
    int n;
    int m;
    LogicalMatrix L;  // 2^n x 2^{n+m}
    LogicalMatrix G;  // 2^m x 2^m

    int state_dim() const { return 1 << n; }
    int control_dim() const { return 1 << m; }
};

/// Oracle path: one column per joint (u, x) assignment, each state rule
/// evaluated directly with the derivative atoms precomputed at u.
CompiledNetwork compile_truth_table(const NetworkSpec& spec);

/// Observer for the factored compiler's rewrite steps. After every rewrite
/// the current front matrix and the pending variable sequence are reported;
/// front |x (encoded vars) is invariant across steps.
using RewriteObserver =
    std::function<void(const LogicalMatrix& front, const std::vector<VarRef>& vars)>;

/// Symbolic path: per-rule structure matrices over variable occurrences,
/// normalized by front-lifting, adjacent swaps and power reduction until the
/// form (single matrix) |x u1..um x1..xn is reached. Must agree with
/// compile_truth_table bit-exactly.
CompiledNetwork compile_factored(const NetworkSpec& spec,
                                 const RewriteObserver& observer = nullptr);

DeltaVector step(const CompiledNetwork& c, const DeltaVector& u, const DeltaVector& x);
DeltaVector control_step(const CompiledNetwork& c, const DeltaVector& u);
DeltaVector control_power(const CompiledNetwork& c, int t, const DeltaVector& u0);

/// L(t+1) = L (G^t (x) I_{2^n}): for all x and u0,
/// L(t+1) |x u0 |x x == step(c, control_power(c, t, u0), x).
LogicalMatrix time_indexed_matrix(const CompiledNetwork& c, int t);

/// Replaces every derivative atom d(g)/d(u_k) in e by the cofactor-XOR
/// derivative of g.
ExprPtr expand_derivatives(const ExprPtr& e, const ExprPtr& g);

}  // namespace stpnet
