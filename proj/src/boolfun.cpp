#include "stpnet/boolfun.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace stpnet {

ExprPtr Expr::constant(bool v) { return ExprPtr(new Expr(ExprKind::Const, v, 0, nullptr, nullptr)); }
ExprPtr Expr::state_var(int i) {
    if (i < 1) throw dimension_error("state variable index must be >= 1");
    return ExprPtr(new Expr(ExprKind::StateVar, false, i, nullptr, nullptr));
}
ExprPtr Expr::control_var(int j) {
    if (j < 1) throw dimension_error("control variable index must be >= 1");
    return ExprPtr(new Expr(ExprKind::ControlVar, false, j, nullptr, nullptr));
}
ExprPtr Expr::deriv_var(int k) {
    if (k < 1) throw dimension_error("derivative index must be >= 1");
    return ExprPtr(new Expr(ExprKind::DerivVar, false, k, nullptr, nullptr));
}
ExprPtr Expr::negation(ExprPtr child) {
    return ExprPtr(new Expr(ExprKind::Not, false, 0, std::move(child), nullptr));
}
ExprPtr Expr::conjunction(ExprPtr l, ExprPtr r) {
    return ExprPtr(new Expr(ExprKind::And, false, 0, std::move(l), std::move(r)));
}
ExprPtr Expr::disjunction(ExprPtr l, ExprPtr r) {
    return ExprPtr(new Expr(ExprKind::Or, false, 0, std::move(l), std::move(r)));
}
ExprPtr Expr::exclusive_or(ExprPtr l, ExprPtr r) {
    return ExprPtr(new Expr(ExprKind::Xor, false, 0, std::move(l), std::move(r)));
}

std::string VarRef::to_string() const {
    switch (kind) {
        case Kind::Control: return "u" + std::to_string(index);
        case Kind::State: return "x" + std::to_string(index);
        case Kind::Deriv: return "d(g)/d(u" + std::to_string(index) + ")";
    }
    return "?";
}

bool Assignment::lookup(const VarRef& v) const {
    const std::vector<char>* vec = nullptr;
    switch (v.kind) {
        case VarRef::Kind::State: vec = &state; break;
        case VarRef::Kind::Control: vec = &control; break;
        case VarRef::Kind::Deriv: vec = &deriv; break;
    }
    if (v.index < 1 || static_cast<std::size_t>(v.index) > vec->size()) {
        throw unbound_variable_error("no value bound for " + v.to_string());
    }
    return (*vec)[static_cast<std::size_t>(v.index) - 1] != 0;
}

bool eval(const ExprPtr& e, const Assignment& a) {
    switch (e->kind()) {
        case ExprKind::Const: return e->value();
        case ExprKind::StateVar: return a.lookup({VarRef::Kind::State, e->index()});
        case ExprKind::ControlVar: return a.lookup({VarRef::Kind::Control, e->index()});
        case ExprKind::DerivVar: return a.lookup({VarRef::Kind::Deriv, e->index()});
        case ExprKind::Not: return !eval(e->left(), a);
        case ExprKind::And: return eval(e->left(), a) && eval(e->right(), a);
        case ExprKind::Or: return eval(e->left(), a) || eval(e->right(), a);
        case ExprKind::Xor: return eval(e->left(), a) != eval(e->right(), a);
    }
    throw std::logic_error("unreachable expression kind");
}

bool structural_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind() != b->kind()) return false;
    switch (a->kind()) {
        case ExprKind::Const: return a->value() == b->value();
        case ExprKind::StateVar:
        case ExprKind::ControlVar:
        case ExprKind::DerivVar: return a->index() == b->index();
        case ExprKind::Not: return structural_equal(a->left(), b->left());
        default:
            return structural_equal(a->left(), b->left()) &&
                   structural_equal(a->right(), b->right());
    }
}

namespace {
void walk_leaves(const ExprPtr& e, const std::function<void(const VarRef&)>& fn) {
    switch (e->kind()) {
        case ExprKind::Const: return;
        case ExprKind::StateVar: fn({VarRef::Kind::State, e->index()}); return;
        case ExprKind::ControlVar: fn({VarRef::Kind::Control, e->index()}); return;
        case ExprKind::DerivVar: fn({VarRef::Kind::Deriv, e->index()}); return;
        case ExprKind::Not: walk_leaves(e->left(), fn); return;
        default:
            walk_leaves(e->left(), fn);
            walk_leaves(e->right(), fn);
    }
}
}  // namespace

std::vector<VarRef> free_vars(const ExprPtr& e) {
    std::set<VarRef> seen;
    walk_leaves(e, [&](const VarRef& v) { seen.insert(v); });
    return {seen.begin(), seen.end()};
}

std::vector<VarRef> occurrences(const ExprPtr& e) {
    std::vector<VarRef> out;
    walk_leaves(e, [&](const VarRef& v) { out.push_back(v); });
    return out;
}

int joint_delta_index(const std::vector<char>& bits) {
    int idx = 0;
    for (char b : bits) idx = idx * 2 + (b ? 0 : 1);
    return idx + 1;
}

std::vector<char> assignment_bits(int index, int arity) {
    std::vector<char> bits(static_cast<std::size_t>(arity));
    int v = index - 1;
    for (int j = arity - 1; j >= 0; --j) {
        bits[static_cast<std::size_t>(j)] = (v & 1) == 0 ? 1 : 0;
        v >>= 1;
    }
    return bits;
}

namespace {
// Evaluates with each position of var_order bound independently; the same
// variable occurring twice reads two different slots.
bool eval_positional(const ExprPtr& e, const std::vector<VarRef>& var_order,
                     const std::vector<char>& bits, std::size_t& cursor) {
    switch (e->kind()) {
        case ExprKind::Const: return e->value();
        case ExprKind::StateVar:
        case ExprKind::ControlVar:
        case ExprKind::DerivVar: {
            if (cursor >= var_order.size()) {
                throw unbound_variable_error("expression has more leaves than var_order slots");
            }
            return bits[cursor++] != 0;
        }
        case ExprKind::Not: return !eval_positional(e->left(), var_order, bits, cursor);
        case ExprKind::And: {
            bool l = eval_positional(e->left(), var_order, bits, cursor);
            bool r = eval_positional(e->right(), var_order, bits, cursor);
            return l && r;
        }
        case ExprKind::Or: {
            bool l = eval_positional(e->left(), var_order, bits, cursor);
            bool r = eval_positional(e->right(), var_order, bits, cursor);
            return l || r;
        }
        case ExprKind::Xor: {
            bool l = eval_positional(e->left(), var_order, bits, cursor);
            bool r = eval_positional(e->right(), var_order, bits, cursor);
            return l != r;
        }
    }
    throw std::logic_error("unreachable expression kind");
}

bool has_duplicates(const std::vector<VarRef>& vars) {
    std::set<VarRef> seen;
    for (const auto& v : vars)
        if (!seen.insert(v).second) return true;
    return false;
}

Assignment bind_assignment(const std::vector<VarRef>& var_order, const std::vector<char>& bits) {
    Assignment a;
    auto slot = [&](std::vector<char>& vec, int idx) -> char& {
        if (vec.size() < static_cast<std::size_t>(idx)) vec.resize(static_cast<std::size_t>(idx));
        return vec[static_cast<std::size_t>(idx) - 1];
    };
    for (std::size_t p = 0; p < var_order.size(); ++p) {
        const VarRef& v = var_order[p];
        switch (v.kind) {
            case VarRef::Kind::State: slot(a.state, v.index) = bits[p]; break;
            case VarRef::Kind::Control: slot(a.control, v.index) = bits[p]; break;
            case VarRef::Kind::Deriv: slot(a.deriv, v.index) = bits[p]; break;
        }
    }
    return a;
}

constexpr int kMaxArity = 16;
}  // namespace

TruthTable truth_table(const ExprPtr& e, const std::vector<VarRef>& var_order) {
    const int r = static_cast<int>(var_order.size());
    if (r > kMaxArity) {
        throw size_cap_error("truth table over " + std::to_string(r) + " variables");
    }
    TruthTable t{r, std::vector<char>(std::size_t{1} << r)};
    for (int col = 1; col <= (1 << r); ++col) {
        std::vector<char> bits = assignment_bits(col, r);
        t.outputs[static_cast<std::size_t>(col) - 1] =
            eval(e, bind_assignment(var_order, bits)) ? 1 : 0;
    }
    return t;
}

LogicalMatrix structure_matrix(const ExprPtr& e, const std::vector<VarRef>& var_order) {
    const int r = static_cast<int>(var_order.size());
    if (r > kMaxArity) {
        throw size_cap_error("structure matrix over " + std::to_string(r) + " slots");
    }
    const bool positional = has_duplicates(var_order);
    std::vector<int> idx(std::size_t{1} << r);
    for (int col = 1; col <= (1 << r); ++col) {
        std::vector<char> bits = assignment_bits(col, r);
        bool out;
        if (positional) {
            std::size_t cursor = 0;
            out = eval_positional(e, var_order, bits, cursor);
        } else {
            out = eval(e, bind_assignment(var_order, bits));
        }
        idx[static_cast<std::size_t>(col) - 1] = out ? 1 : 2;
    }
    return LogicalMatrix(2, std::move(idx));
}

ExprPtr substitute_control(const ExprPtr& e, int k, bool value) {
    switch (e->kind()) {
        case ExprKind::Const:
        case ExprKind::StateVar:
        case ExprKind::DerivVar: return e;
        case ExprKind::ControlVar: return e->index() == k ? Expr::constant(value) : e;
        case ExprKind::Not: return Expr::negation(substitute_control(e->left(), k, value));
        case ExprKind::And:
            return Expr::conjunction(substitute_control(e->left(), k, value),
                                     substitute_control(e->right(), k, value));
        case ExprKind::Or:
            return Expr::disjunction(substitute_control(e->left(), k, value),
                                     substitute_control(e->right(), k, value));
        case ExprKind::Xor:
            return Expr::exclusive_or(substitute_control(e->left(), k, value),
                                      substitute_control(e->right(), k, value));
    }
    throw std::logic_error("unreachable expression kind");
}

ExprPtr simplify(const ExprPtr& e) {
    auto is_const = [](const ExprPtr& x, bool v) {
        return x->kind() == ExprKind::Const && x->value() == v;
    };
    switch (e->kind()) {
        case ExprKind::Const:
        case ExprKind::StateVar:
        case ExprKind::ControlVar:
        case ExprKind::DerivVar: return e;
        case ExprKind::Not: {
            ExprPtr c = simplify(e->left());
            if (c->kind() == ExprKind::Const) return Expr::constant(!c->value());
            return Expr::negation(c);
        }
        case ExprKind::And: {
            ExprPtr l = simplify(e->left()), r = simplify(e->right());
            if (is_const(l, false) || is_const(r, false)) return Expr::constant(false);
            if (is_const(l, true)) return r;
            if (is_const(r, true)) return l;
            return Expr::conjunction(l, r);
        }
        case ExprKind::Or: {
            ExprPtr l = simplify(e->left()), r = simplify(e->right());
            if (is_const(l, true) || is_const(r, true)) return Expr::constant(true);
            if (is_const(l, false)) return r;
            if (is_const(r, false)) return l;
            return Expr::disjunction(l, r);
        }
        case ExprKind::Xor: {
            ExprPtr l = simplify(e->left()), r = simplify(e->right());
            if (l->kind() == ExprKind::Const && r->kind() == ExprKind::Const)
                return Expr::constant(l->value() != r->value());
            if (is_const(l, false)) return r;
            if (is_const(r, false)) return l;
            if (is_const(l, true)) return simplify(Expr::negation(r));
            if (is_const(r, true)) return simplify(Expr::negation(l));
            return Expr::exclusive_or(l, r);
        }
    }
    throw std::logic_error("unreachable expression kind");
}

ExprPtr boolean_derivative(const ExprPtr& g, int k) {
    if (k < 1) throw dimension_error("derivative index out of range");
    ExprPtr hi = substitute_control(g, k, true);
    ExprPtr lo = substitute_control(g, k, false);
    return simplify(Expr::exclusive_or(hi, lo));
}

std::string to_string(const ExprPtr& e) {
    std::function<std::string(const ExprPtr&, bool)> pr = [&](const ExprPtr& x,
                                                              bool top) -> std::string {
        auto bin = [&](const char* op) {
            std::string s = pr(x->left(), false) + " " + op + " " + pr(x->right(), false);
            return top ? s : "(" + s + ")";
        };
        switch (x->kind()) {
            case ExprKind::Const: return std::string(x->value() ? "1" : "0");
            case ExprKind::StateVar: return "x" + std::to_string(x->index());
            case ExprKind::ControlVar: return "u" + std::to_string(x->index());
            case ExprKind::DerivVar: return "d(g)/d(u" + std::to_string(x->index()) + ")";
            case ExprKind::Not: return "!" + pr(x->left(), false);
            case ExprKind::And: return bin("&");
            case ExprKind::Or: return bin("|");
            case ExprKind::Xor: return bin("^");
        }
        return "?";
    };
    return pr(e, true);
}

}  // namespace stpnet
