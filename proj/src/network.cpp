#include "stpnet/network.hpp"

#include <algorithm>

namespace stpnet {

namespace {
void check_vars(const ExprPtr& e, int n, int m, bool controls_only, const char* where) {
    for (const VarRef& v : free_vars(e)) {
        switch (v.kind) {
            case VarRef::Kind::State:
                if (controls_only) {
                    throw dimension_error(std::string(where) + " may not reference states");
                }
                if (v.index > n) throw dimension_error("state index out of range in " + std::string(where));
                break;
            case VarRef::Kind::Control:
                if (v.index > m) throw dimension_error("control index out of range in " + std::string(where));
                break;
            case VarRef::Kind::Deriv:
                if (controls_only) {
                    throw dimension_error(std::string(where) + " may not reference derivative atoms");
                }
                if (v.index > m) throw dimension_error("derivative index out of range in " + std::string(where));
                break;
        }
    }
}
}  // namespace

void NetworkSpec::validate() const {
    if (n < 1 || m < 0) throw dimension_error("network needs n >= 1 states");
    if (f.size() != static_cast<std::size_t>(n)) throw dimension_error("expected n state rules");
    if (g_update.size() != static_cast<std::size_t>(m)) throw dimension_error("expected m control rules");
    if (!g) throw dimension_error("missing derivative source g");
    for (const auto& e : f) check_vars(e, n, m, false, "state rule");
    for (const auto& e : g_update) check_vars(e, n, m, true, "control rule");
    check_vars(g, n, m, true, "g");
}

ExprPtr expand_derivatives(const ExprPtr& e, const ExprPtr& g) {
    switch (e->kind()) {
        case ExprKind::Const:
        case ExprKind::StateVar:
        case ExprKind::ControlVar: return e;
        case ExprKind::DerivVar: return boolean_derivative(g, e->index());
        case ExprKind::Not: return Expr::negation(expand_derivatives(e->left(), g));
        case ExprKind::And:
            return Expr::conjunction(expand_derivatives(e->left(), g),
                                     expand_derivatives(e->right(), g));
        case ExprKind::Or:
            return Expr::disjunction(expand_derivatives(e->left(), g),
                                     expand_derivatives(e->right(), g));
        case ExprKind::Xor:
            return Expr::exclusive_or(expand_derivatives(e->left(), g),
                                      expand_derivatives(e->right(), g));
    }
    throw std::logic_error("unreachable expression kind");
}

CompiledNetwork compile_truth_table(const NetworkSpec& spec) {
    spec.validate();
    const int n = spec.n, m = spec.m;
    if (n + m > 16) throw size_cap_error("n + m beyond the compilation limit of 16");

    std::vector<int> lcols(std::size_t{1} << (n + m));
    for (int iu = 1; iu <= (1 << m); ++iu) {
        Assignment a;
        a.control = assignment_bits(iu, m);
        a.deriv.resize(static_cast<std::size_t>(m));
        for (int k = 1; k <= m; ++k) {
            a.deriv[static_cast<std::size_t>(k) - 1] =
                eval(boolean_derivative(spec.g, k), a) ? 1 : 0;
        }
        for (int ix = 1; ix <= (1 << n); ++ix) {
            a.state = assignment_bits(ix, n);
            std::vector<char> next(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                next[static_cast<std::size_t>(i)] = eval(spec.f[static_cast<std::size_t>(i)], a) ? 1 : 0;
            }
            lcols[static_cast<std::size_t>(iu - 1) * (1 << n) + (ix - 1)] =
                joint_delta_index(next);
        }
    }

    std::vector<int> gcols(std::size_t{1} << m);
    for (int iu = 1; iu <= (1 << m); ++iu) {
        Assignment a;
        a.control = assignment_bits(iu, m);
        std::vector<char> next(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
            next[static_cast<std::size_t>(j)] = eval(spec.g_update[static_cast<std::size_t>(j)], a) ? 1 : 0;
        }
        gcols[static_cast<std::size_t>(iu) - 1] = joint_delta_index(next);
    }

    return CompiledNetwork{n, m, LogicalMatrix(1 << n, std::move(lcols)),
                           m == 0 ? LogicalMatrix::identity(1)
                                  : LogicalMatrix(1 << m, std::move(gcols))};
}

namespace {

/// Token-sequence normalizer. The sequence (front matrix) |x v_1 |x ... |x v_r
/// denotes a function of the distinct variables among v_i; every rewrite
/// keeps that function intact.
class Normalizer {
public:
    explicit Normalizer(const RewriteObserver& obs) : obs_(obs), front_(LogicalMatrix::identity(1)) {}

    /// Appends M |x (vars...) to the sequence, front-lifting M over the
    /// variables already pending: (v_1..v_k) M = (I_{2^k} (x) M)(v_1..v_k).
    void append_rule(const LogicalMatrix& m, const std::vector<VarRef>& vars) {
        LogicalMatrix lifted = front_lift(1 << static_cast<int>(vars_.size()), m);
        front_ = stp(front_, lifted);
        vars_.insert(vars_.end(), vars.begin(), vars.end());
    }

    /// Sorts the pending variables into canonical order (controls first) by
    /// adjacent swaps and collapses adjacent duplicates with M_r.
    void normalize() {
        bool changed = true;
        while (changed) {
            changed = false;
            std::size_t j = 0;
            while (j + 1 < vars_.size()) {
                if (vars_[j] == vars_[j + 1]) {
                    apply_at(j, power_reduce_matrix());
                    vars_.erase(vars_.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                    changed = true;
                    notify();
                } else if (vars_[j + 1] < vars_[j]) {
                    apply_at(j, swap_matrix(2, 2));
                    std::swap(vars_[j], vars_[j + 1]);
                    changed = true;
                    notify();
                } else {
                    ++j;
                }
            }
        }
    }

    /// Widens the sequence to the full canonical variable list by appending
    /// sum-out factors (d1[1 1]) at the positions of absent variables.
    LogicalMatrix widen(const std::vector<VarRef>& full_order) const {
        LogicalMatrix e = LogicalMatrix::identity(1);
        std::size_t at = 0;
        for (const VarRef& v : full_order) {
            bool present = at < vars_.size() && vars_[at] == v;
            if (present) ++at;
            e = kron(e, present ? LogicalMatrix::identity(2) : LogicalMatrix(1, {1, 1}));
        }
        if (at != vars_.size()) {
            throw dimension_error("pending variables not a subsequence of the canonical order");
        }
        return stp(front_, e);
    }

    const LogicalMatrix& front() const { return front_; }
    const std::vector<VarRef>& vars() const { return vars_; }

private:
    void apply_at(std::size_t j, const LogicalMatrix& m) {
        front_ = stp(front_, front_lift(1 << static_cast<int>(j), m));
    }
    void notify() {
        if (obs_) obs_(front_, vars_);
    }

    const RewriteObserver& obs_;
    LogicalMatrix front_;
    std::vector<VarRef> vars_;
};

}  // namespace

CompiledNetwork compile_factored(const NetworkSpec& spec, const RewriteObserver& observer) {
    spec.validate();
    const int n = spec.n, m = spec.m;
    if (n + m > 16) throw size_cap_error("n + m beyond the compilation limit of 16");

    // State transition: normalize prod_i [M_{f_i} (occurrences of f_i)] to
    // L |x u1..um x1..xn.
    Normalizer norm(observer);
    for (const auto& rule : spec.f) {
        ExprPtr expanded = simplify(expand_derivatives(rule, spec.g));
        std::vector<VarRef> occ = occurrences(expanded);
        norm.append_rule(structure_matrix(expanded, occ), occ);
    }
    norm.normalize();

    std::vector<VarRef> full;
    for (int j = 1; j <= m; ++j) full.push_back({VarRef::Kind::Control, j});
    for (int i = 1; i <= n; ++i) full.push_back({VarRef::Kind::State, i});
    LogicalMatrix l = norm.widen(full);
    if (l.rows() != (1 << n) || l.cols() != (1 << (n + m))) {
        throw dimension_error("factored state compilation produced wrong dimensions");
    }

    // Control transition over u1..um alone.
    Normalizer gnorm(observer);
    for (const auto& rule : spec.g_update) {
        std::vector<VarRef> occ = occurrences(rule);
        gnorm.append_rule(structure_matrix(rule, occ), occ);
    }
    gnorm.normalize();
    std::vector<VarRef> ufull;
    for (int j = 1; j <= m; ++j) ufull.push_back({VarRef::Kind::Control, j});
    LogicalMatrix g = m == 0 ? LogicalMatrix::identity(1) : gnorm.widen(ufull);
    if (g.rows() != (1 << m) || g.cols() != (1 << m)) {
        throw dimension_error("factored control compilation produced wrong dimensions");
    }

    return CompiledNetwork{n, m, std::move(l), std::move(g)};
}

DeltaVector step(const CompiledNetwork& c, const DeltaVector& u, const DeltaVector& x) {
    if (u.dim != c.control_dim() || x.dim != c.state_dim()) {
        throw dimension_error("step operands do not match the network dimensions");
    }
    return stp(c.L, stp(u, x)).as_delta_vector();
}

DeltaVector control_step(const CompiledNetwork& c, const DeltaVector& u) {
    if (u.dim != c.control_dim()) {
        throw dimension_error("control vector does not match the network dimensions");
    }
    return stp(c.G, u).as_delta_vector();
}

DeltaVector control_power(const CompiledNetwork& c, int t, const DeltaVector& u0) {
    if (t < 0) throw dimension_error("control_power needs t >= 0");
    DeltaVector u = u0;
    for (int s = 0; s < t; ++s) u = control_step(c, u);
    return u;
}

LogicalMatrix time_indexed_matrix(const CompiledNetwork& c, int t) {
    if (t < 0) throw dimension_error("time_indexed_matrix needs t >= 0");
    LogicalMatrix gt = LogicalMatrix::identity(c.control_dim());
    for (int s = 0; s < t; ++s) gt = stp(c.G, gt);
    return stp(c.L, kron(gt, LogicalMatrix::identity(c.state_dim())));
}

}  // namespace stpnet
