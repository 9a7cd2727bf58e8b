#pragma once

#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "stpnet/matrix.hpp"

namespace stpnet {

enum class ExprKind { Const, StateVar, ControlVar, DerivVar, Not, And, Or, Xor };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable Boolean expression node. DerivVar(k) stands for the derivative
/// of the network's source function g with respect to control k; it reads
/// its value from the `deriv` slot of an Assignment.
class Expr {
public:
    static ExprPtr constant(bool v);
    static ExprPtr state_var(int i);
    static ExprPtr control_var(int j);
    static ExprPtr deriv_var(int k);
    static ExprPtr negation(ExprPtr child);
    static ExprPtr conjunction(ExprPtr l, ExprPtr r);
    static ExprPtr disjunction(ExprPtr l, ExprPtr r);
    static ExprPtr exclusive_or(ExprPtr l, ExprPtr r);

    ExprKind kind() const { return kind_; }
    bool value() const { return value_; }
    int index() const { return index_; }
    const ExprPtr& left() const { return left_; }
    const ExprPtr& right() const { return right_; }

private:
    Expr(ExprKind k, bool v, int idx, ExprPtr l, ExprPtr r)
        : kind_(k), value_(v), index_(idx), left_(std::move(l)), right_(std::move(r)) {}

    ExprKind kind_;
    bool value_;
    int index_;
    ExprPtr left_, right_;
};

/// One variable occurrence site; ordering is controls first, then states,
/// then derivative atoms, matching the u1..um x1..xn normal form.
struct VarRef {
    enum class Kind { Control, State, Deriv };
    Kind kind;
    int index;  // 1-based

    auto operator<=>(const VarRef&) const = default;
    std::string to_string() const;
};

/// Values for the three variable families, all 1-based.
struct Assignment {
    std::vector<char> state;
    std::vector<char> control;
    std::vector<char> deriv;

    bool lookup(const VarRef& v) const;
};

bool eval(const ExprPtr& e, const Assignment& a);

bool structural_equal(const ExprPtr& a, const ExprPtr& b);

/// Distinct free variables of e in canonical order.
std::vector<VarRef> free_vars(const ExprPtr& e);

/// Leaf occurrences of e, left to right, duplicates kept.
std::vector<VarRef> occurrences(const ExprPtr& e);

/// Delta-ordering helpers: in a product v1|x...|xvr of Delta_2 vectors the
/// joint index is 1 + sum (1-b_j) 2^{r-j}, so the all-true assignment is
/// column 1.
int joint_delta_index(const std::vector<char>& bits);
std::vector<char> assignment_bits(int index, int arity);

struct TruthTable {
    int arity;
    std::vector<char> outputs;  // 2^arity values in delta ordering

    bool operator==(const TruthTable&) const = default;
};

/// Enumerates all assignments of var_order in delta ordering.
/// var_order must list exactly the free variables of e, without duplicates.
TruthTable truth_table(const ExprPtr& e, const std::vector<VarRef>& var_order);

/// The 2 x 2^r logical matrix M with M |x v1...vr == encode(eval(e)) for every
/// assignment of var_order. var_order may repeat a variable; each position is
/// then an independent input slot (used by the factored compiler to keep
/// per-occurrence factors).
LogicalMatrix structure_matrix(const ExprPtr& e, const std::vector<VarRef>& var_order);

/// Cofactor-XOR Boolean derivative of a control-only expression g with
/// respect to u_k: g|_{u_k=1} (+) g|_{u_k=0}, constants folded. The result
/// never mentions u_k.
ExprPtr boolean_derivative(const ExprPtr& g, int k);

/// Substitutes a constant for control u_k.
ExprPtr substitute_control(const ExprPtr& e, int k, bool value);

/// Unit/annihilator and constant folding only; no full minimization.
ExprPtr simplify(const ExprPtr& e);

inline DeltaVector encode_bool(bool b) { return DeltaVector(2, b ? 1 : 2); }
inline bool decode_bool(const DeltaVector& v) { return v.index == 1; }

/// Expression text in the DSL syntax (x1, u2, d(g)/d(u1), &, |, !, ^).
std::string to_string(const ExprPtr& e);

}  // namespace stpnet
