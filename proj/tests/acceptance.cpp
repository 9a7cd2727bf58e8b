// Acceptance gate: one pass/fail line per criterion, exit status 0 only when
// every criterion passes. Tolerances are pinned in the checks themselves.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "random_spec.hpp"
#include "stpnet/closed_form.hpp"
#include "stpnet/optimal.hpp"
#include "stpnet/reachability.hpp"

using namespace stpnet;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    std::cout << "criterion " << criterion << ": " << (ok ? "pass" : "FAIL") << " — " << what
              << "\n";
    if (!ok) ++failures;
}

bool stp_properties() {
    std::mt19937 rng(101);
    for (int it = 0; it < 500; ++it) {
        DenseMatrix a = testutil::random_matrix(rng, 8);
        DenseMatrix b = testutil::random_matrix(rng, 8);
        DenseMatrix c = testutil::random_matrix(rng, 8);
        if (stp(stp(a, b), c) != stp(a, stp(b, c))) return false;
        if (stp(a, b).transpose() != stp(b.transpose(), a.transpose())) return false;
        DenseMatrix b2(b.rows(), b.cols());
        for (int i = 0; i < b2.rows(); ++i)
            for (int j = 0; j < b2.cols(); ++j) b2.at(i, j) = static_cast<Int>(rng() % 7) - 3;
        if (stp(a, b + b2) != stp(a, b) + stp(a, b2)) return false;
        // Front lift: X |x M = (I_t (x) M) |x X.
        int t = 1 + static_cast<int>(rng() % 8);
        DenseMatrix x(t, 1);
        for (int i = 0; i < t; ++i) x.at(i, 0) = static_cast<Int>(rng() % 7) - 3;
        if (stp(x, a) != stp(front_lift(t, a), x)) return false;
        // Inverse reversal on permutation pairs (inverse == transpose there).
        int na = 1 + static_cast<int>(rng() % 8), nb = 1 + static_cast<int>(rng() % 8);
        DenseMatrix p(na, na), q(nb, nb);
        {
            std::vector<int> pa(static_cast<std::size_t>(na)), pb(static_cast<std::size_t>(nb));
            for (int i = 0; i < na; ++i) pa[static_cast<std::size_t>(i)] = i;
            for (int i = 0; i < nb; ++i) pb[static_cast<std::size_t>(i)] = i;
            std::shuffle(pa.begin(), pa.end(), rng);
            std::shuffle(pb.begin(), pb.end(), rng);
            for (int j = 0; j < na; ++j) p.at(pa[static_cast<std::size_t>(j)], j) = 1;
            for (int j = 0; j < nb; ++j) q.at(pb[static_cast<std::size_t>(j)], j) = 1;
        }
        DenseMatrix prod = stp(p, q);
        DenseMatrix inv = stp(q.transpose(), p.transpose());
        if (prod * inv != DenseMatrix::identity(prod.rows())) return false;
    }
    return true;
}

bool canonical_matrices() {
    std::vector<VarRef> uv{{VarRef::Kind::Control, 1}, {VarRef::Kind::Control, 2}};
    ExprPtr u1 = Expr::control_var(1), u2 = Expr::control_var(2);
    bool ok = structure_matrix(Expr::conjunction(u1, u2), uv) == LogicalMatrix(2, {1, 2, 2, 2});
    ok = ok && structure_matrix(Expr::disjunction(u1, u2), uv) == LogicalMatrix(2, {1, 1, 1, 2});
    ok = ok && structure_matrix(Expr::negation(u1), {uv[0]}) == LogicalMatrix(2, {2, 1});
    ok = ok && conjunction_matrix() == LogicalMatrix(2, {1, 2, 2, 2});
    ok = ok && disjunction_matrix() == LogicalMatrix(2, {1, 1, 1, 2});
    ok = ok && negation_matrix() == LogicalMatrix(2, {2, 1});
    ok = ok && power_reduce_matrix() == LogicalMatrix(4, {1, 4});
    return ok;
}

// The reference 64-column step matrices are checked against both evaluation
// routes of the transcribed factor chain, and then compared entry by entry
// with the independent truth-table oracle. The oracle disagrees with the
// reference (the chain's vacant-slot derivative treatment is not the
// cofactor-XOR semantics), so the printed variant is failed and the full diff
// is written to fixture_report.txt; the criterion's documented-divergence
// branch is then the passing outcome. Nothing is patched to force agreement.
bool fixture_matrices(std::string& note) {
    bool chain_ok = closed_form::hat_time_matrix(0) == closed_form::reference_time_matrix_1() &&
                    closed_form::hat_time_matrix(1) == closed_form::reference_time_matrix_2() &&
                    closed_form::hat_time_matrix_dense(0) ==
                        closed_form::reference_time_matrix_1().dense() &&
                    closed_form::hat_time_matrix_dense(1) ==
                        closed_form::reference_time_matrix_2().dense();
    closed_form::DivergenceReport rep = closed_form::divergence_report();
    std::ofstream out("fixture_report.txt");
    out << rep.text;
    bool report_written = static_cast<bool>(out);
    if (!chain_ok) {
        note = "transcribed chain does not reproduce the reference matrices";
        return false;
    }
    if (rep.agrees) {
        note = "both routes reproduce the reference; oracle agrees";
        return true;
    }
    note = "reference reproduced by both routes; truth-table oracle differs in " +
           std::to_string(rep.mismatches) +
           " entries, printed variant failed, diff recorded in fixture_report.txt";
    return report_written;
}

bool reachable_sets() {
    CompiledNetwork c = compile_truth_table(closed_form::example_network());
    if (paper_column_reachable(c, DeltaVector(4, 1), 1).members != std::set<int>{1, 2})
        return false;
    if (closed_form::hat_column_reachable(DeltaVector(4, 1), 1) != std::set<int>{1, 2})
        return false;
    if (closed_form::hat_branch_pattern(DeltaVector(4, 1), DeltaVector(4, 1), 2) !=
        std::vector<int>{1, 1, 1, 2})
        return false;
    if (closed_form::hat_branch_pattern(DeltaVector(4, 1), DeltaVector(4, 2), 2) !=
        std::vector<int>{2, 2, 2, 2})
        return false;
    return true;
}

bool derivative_oracle() {
    // Every Boolean function of u1..u3, by truth-table mask; independent
    // cofactor-XOR table computed straight from the mask.
    for (int mask = 0; mask < 256; ++mask) {
        ExprPtr g = Expr::constant(false);
        for (int b = 0; b < 8; ++b) {
            if (!(mask >> b & 1)) continue;
            ExprPtr row = Expr::constant(true);
            for (int j = 1; j <= 3; ++j) {
                ExprPtr lit = Expr::control_var(j);
                if (!(b >> (3 - j) & 1)) lit = Expr::negation(lit);
                row = Expr::conjunction(row, lit);
            }
            g = Expr::disjunction(g, row);
        }
        for (int k = 1; k <= 3; ++k) {
            ExprPtr d = boolean_derivative(g, k);
            for (int b = 0; b < 8; ++b) {
                int bit = 3 - k;
                bool hi = mask >> (b | 1 << bit) & 1;
                bool lo = mask >> (b & ~(1 << bit)) & 1;
                Assignment a;
                a.control = {static_cast<char>(b >> 2 & 1), static_cast<char>(b >> 1 & 1),
                             static_cast<char>(b & 1)};
                if (eval(d, a) != (hi != lo)) return false;
            }
        }
    }
    return true;
}

bool compiler_cross_validation() {
    std::mt19937 rng(102);
    for (int it = 0; it < 200; ++it) {
        NetworkSpec s = testutil::random_spec(rng, 3, 3);
        CompiledNetwork a = compile_truth_table(s);
        CompiledNetwork b = compile_factored(s);
        if (a.L != b.L || a.G != b.G) return false;
    }
    NetworkSpec fx = closed_form::example_network();
    CompiledNetwork a = compile_truth_table(fx);
    CompiledNetwork b = compile_factored(fx);
    return a.L == b.L && a.G == b.G;
}

bool optimal_control() {
    std::mt19937 rng(103);
    for (int it = 0; it < 100; ++it) {
        NetworkSpec s = testutil::random_spec(rng, 3, 3);  // at most 8 states, 64 edges
        CompiledNetwork c = compile_truth_table(s);
        PayoffFunction p = PayoffFunction::zero(c.control_dim(), c.state_dim());
        for (Rat& r : p.table)
            r = Rat(static_cast<long long>(rng() % 41) - 20, 1 + static_cast<long long>(rng() % 4));

        // Exhaustive simple-cycle oracle (the optimum mean is attained on a
        // simple cycle).
        Rat best(0);
        bool found = false;
        std::vector<char> on(static_cast<std::size_t>(c.state_dim()) + 1, 0);
        int depth = 0;
        auto dfs = [&](auto&& self, int start, int v, Rat acc) -> void {
            for (int iu = 1; iu <= c.control_dim(); ++iu) {
                int w = step(c, DeltaVector(c.control_dim(), iu),
                             DeltaVector(c.state_dim(), v)).index;
                Rat nacc = acc + p.at(iu, w);
                if (w == start) {
                    Rat mean = nacc / Rat(depth + 1);
                    if (!found || mean > best) best = mean;
                    found = true;
                } else if (w > start && !on[static_cast<std::size_t>(w)]) {
                    on[static_cast<std::size_t>(w)] = 1;
                    ++depth;
                    self(self, start, w, nacc);
                    --depth;
                    on[static_cast<std::size_t>(w)] = 0;
                }
            }
        };
        for (int start = 1; start <= c.state_dim(); ++start) dfs(dfs, start, start, Rat(0));
        CycleResult r = max_mean_cycle(c, p);
        if (!found || r.mean != best) return false;

        // Rollout bound at T = 10000.
        DeltaVector x0(c.state_dim(), 1 + static_cast<int>(rng() % c.state_dim()));
        OptimalPolicy pol = optimize(c, p, x0);
        const int T = 10000;
        Rat avg = average_payoff(c, p, x0, policy_controls(pol, T), T);
        Rat bound = Rat(10) * p.max_abs() *
                    Rat(static_cast<long long>(pol.transient.size() + pol.cycle.size()), T);
        Rat diff = avg - pol.mean_payoff;
        if (diff < Rat(0)) diff = -diff;
        if (diff > bound) return false;
    }
    return true;
}

bool control_trajectory() {
    CompiledNetwork c = compile_truth_table(closed_form::example_network());
    LogicalMatrix g = stp(negation_matrix(), swap_matrix(2, 2));
    if (c.G != g) return false;
    for (int iu = 1; iu <= 4; ++iu) {
        DeltaVector u0(4, iu);
        LogicalMatrix gp = LogicalMatrix::identity(4);
        DeltaVector iter = u0;
        for (int t = 0; t <= 8; ++t) {
            // Closed form [M_n W_[2]]^t u(0), the matrix-power route, and the
            // rule-by-rule iteration must all agree.
            if (control_power(c, t, u0) != stp(gp, u0).as_delta_vector()) return false;
            if (control_power(c, t, u0) != iter) return false;
            gp = stp(g, gp);
            iter = control_step(c, iter);
        }
    }
    return true;
}

}  // namespace

int main() {
    report(1, stp_properties(),
           "semi-tensor product laws on 500 random triples, dims <= 8, exact");
    report(2, canonical_matrices(), "canonical connective and power-reduction matrices");
    std::string note;
    bool c3 = fixture_matrices(note);
    report(3, c3, "reference step matrices: " + note);
    report(4, reachable_sets(), "reference reachable sets and branch patterns");
    report(5, derivative_oracle(),
           "cofactor-XOR derivative, all 256 three-variable functions, exhaustive");
    report(6, compiler_cross_validation(),
           "factored vs truth-table compilation on 200 random networks and the example");
    report(7, optimal_control(),
           "max mean cycle vs exhaustive enumeration (100 instances) and T=10000 rollout bound");
    report(8, control_trajectory(), "closed-form control powers match rule iteration, t <= 8");
    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
