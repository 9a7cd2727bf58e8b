#include <doctest.h>

#include <random>

#include "random_spec.hpp"
#include "stpnet/closed_form.hpp"
#include "stpnet/optimal.hpp"
#include "stpnet/reachability.hpp"

using namespace stpnet;

namespace {

Rat edge_weight(const CompiledNetwork& c, const PayoffFunction& p, PayoffTiming timing, int iu,
                int ix) {
    int succ = step(c, DeltaVector(c.control_dim(), iu), DeltaVector(c.state_dim(), ix)).index;
    return timing == PayoffTiming::Arrival ? p.at(iu, succ) : p.at(iu, ix);
}

// Best mean over all simple cycles, by exhaustive DFS. The optimum mean cycle
// can always be taken simple, so this is a complete oracle for the mean.
Rat brute_force_best_mean(const CompiledNetwork& c, const PayoffFunction& p,
                          PayoffTiming timing, const std::set<int>* allowed = nullptr) {
    int n = c.state_dim();
    Rat best(-1000000);
    bool found = false;
    std::vector<int> path;
    std::vector<char> on(static_cast<std::size_t>(n) + 1, 0);

    auto dfs = [&](auto&& self, int start, int v, Rat acc) -> void {
        for (int iu = 1; iu <= c.control_dim(); ++iu) {
            int w = step(c, DeltaVector(c.control_dim(), iu), DeltaVector(n, v)).index;
            if (allowed && !allowed->count(w)) continue;
            Rat nacc = acc + edge_weight(c, p, timing, iu, v);
            if (w == start) {
                Rat mean = nacc / Rat(static_cast<long long>(path.size()) + 1);
                if (!found || mean > best) best = mean;
                found = true;
            } else if (w > start && !on[static_cast<std::size_t>(w)]) {
                on[static_cast<std::size_t>(w)] = 1;
                path.push_back(w);
                self(self, start, w, nacc);
                path.pop_back();
                on[static_cast<std::size_t>(w)] = 0;
            }
        }
    };
    for (int start = 1; start <= n; ++start) {
        if (allowed && !allowed->count(start)) continue;
        dfs(dfs, start, start, Rat(0));
    }
    REQUIRE(found);
    return best;
}

PayoffFunction random_payoff(std::mt19937& rng, const CompiledNetwork& c) {
    PayoffFunction p = PayoffFunction::zero(c.control_dim(), c.state_dim());
    std::uniform_int_distribution<long long> num(-20, 20);
    std::uniform_int_distribution<long long> den(1, 4);
    for (Rat& r : p.table) r = Rat(num(rng), den(rng));
    return p;
}

void check_cycle_valid(const CompiledNetwork& c, const std::vector<std::pair<int, int>>& cyc) {
    REQUIRE(!cyc.empty());
    for (std::size_t i = 0; i < cyc.size(); ++i) {
        auto [iu, ix] = cyc[i];
        int succ = step(c, DeltaVector(c.control_dim(), iu), DeltaVector(c.state_dim(), ix)).index;
        CHECK(succ == cyc[(i + 1) % cyc.size()].second);
    }
}

}  // namespace

TEST_CASE("max mean cycle matches exhaustive simple-cycle enumeration") {
    std::mt19937 rng(61);
    for (int it = 0; it < 100; ++it) {
        NetworkSpec s = testutil::random_spec(rng, 3, 2);
        CompiledNetwork c = compile_truth_table(s);
        PayoffFunction p = random_payoff(rng, c);
        for (PayoffTiming timing : {PayoffTiming::Arrival, PayoffTiming::Departure}) {
            CycleResult r = max_mean_cycle(c, p, timing);
            CHECK(r.mean == brute_force_best_mean(c, p, timing));
            check_cycle_valid(c, r.cycle);
            // The reported cycle really achieves the reported mean.
            Rat total(0);
            for (auto [iu, ix] : r.cycle) total += edge_weight(c, p, timing, iu, ix);
            CHECK(total / Rat(static_cast<long long>(r.cycle.size())) == r.mean);
        }
    }
}

TEST_CASE("restricted search stays inside the reachable set") {
    std::mt19937 rng(62);
    for (int it = 0; it < 40; ++it) {
        NetworkSpec s = testutil::random_spec(rng, 3, 2);
        CompiledNetwork c = compile_truth_table(s);
        PayoffFunction p = random_payoff(rng, c);
        DeltaVector x0(c.state_dim(), 1 + static_cast<int>(rng() % c.state_dim()));
        std::set<int> allowed = reachable_closure(c, x0).members;
        CycleResult r = max_mean_cycle_from(c, p, x0);
        CHECK(r.mean == brute_force_best_mean(c, p, PayoffTiming::Arrival, &allowed));
        for (auto [iu, ix] : r.cycle) CHECK(allowed.count(ix) == 1);
        check_cycle_valid(c, r.cycle);
    }
}

TEST_CASE("policy rollout converges to the optimal mean") {
    std::mt19937 rng(63);
    for (int it = 0; it < 20; ++it) {
        NetworkSpec s = testutil::random_spec(rng, 3, 2);
        CompiledNetwork c = compile_truth_table(s);
        PayoffFunction p = random_payoff(rng, c);
        DeltaVector x0(c.state_dim(), 1 + static_cast<int>(rng() % c.state_dim()));
        OptimalPolicy pol = optimize(c, p, x0);
        check_cycle_valid(c, pol.cycle);

        const int T = 2000;
        std::vector<int> controls = policy_controls(pol, T);
        Rat avg = average_payoff(c, p, x0, controls, T);
        Rat bound = Rat(10) * p.max_abs() *
                    Rat(static_cast<long long>(pol.transient.size() + pol.cycle.size()), T);
        Rat diff = avg - pol.mean_payoff;
        if (diff < Rat(0)) diff = -diff;
        CHECK(diff <= bound);
        // The transient actually lands on the cycle entry state.
        DeltaVector x = x0;
        for (int iu : pol.transient) x = step(c, DeltaVector(c.control_dim(), iu), x);
        CHECK(x.index == pol.cycle.front().second);
    }
}

TEST_CASE("constrained policy follows the autonomous control orbit") {
    CompiledNetwork c = compile_truth_table(closed_form::example_network());
    PayoffFunction p = PayoffFunction::zero(c.control_dim(), c.state_dim());
    for (int iu = 1; iu <= 4; ++iu)
        for (int ix = 1; ix <= 4; ++ix) p.at(iu, ix) = Rat(iu * 10 + ix);

    OptimalPolicy pol = optimize_constrained(c, p, DeltaVector(4, 1), DeltaVector(4, 1));
    check_cycle_valid(c, pol.cycle);
    // Controls are forced, so the policy's per-cycle controls must follow G.
    DeltaVector u(4, 1);
    for (std::size_t i = 0; i < pol.transient.size(); ++i) {
        CHECK(pol.transient[i] == u.index);
        u = control_step(c, u);
    }
    for (std::size_t i = 0; i < pol.cycle.size(); ++i) {
        CHECK(pol.cycle[i].first == u.index);
        u = control_step(c, u);
    }
    // The reported mean is the cycle's own average.
    Rat total(0);
    for (auto [iu, ix] : pol.cycle) total += edge_weight(c, p, PayoffTiming::Arrival, iu, ix);
    CHECK(total / Rat(static_cast<long long>(pol.cycle.size())) == pol.mean_payoff);
}

TEST_CASE("average payoff timing flag selects the charged state") {
    CompiledNetwork c = compile_truth_table(closed_form::example_network());
    PayoffFunction p = PayoffFunction::zero(c.control_dim(), c.state_dim());
    for (int iu = 1; iu <= 4; ++iu)
        for (int ix = 1; ix <= 4; ++ix) p.at(iu, ix) = Rat(iu * 10 + ix);
    DeltaVector x0(4, 3);
    std::vector<int> controls{2, 4, 1};
    // Departure: charge states 3, then the successors under controls 2 and 4.
    int s1 = step(c, DeltaVector(4, 2), x0).index;
    int s2 = step(c, DeltaVector(4, 4), DeltaVector(4, s1)).index;
    int s3 = step(c, DeltaVector(4, 1), DeltaVector(4, s2)).index;
    Rat dep = (p.at(2, 3) + p.at(4, s1) + p.at(1, s2)) / Rat(3);
    Rat arr = (p.at(2, s1) + p.at(4, s2) + p.at(1, s3)) / Rat(3);
    CHECK(average_payoff(c, p, x0, controls, 3, PayoffTiming::Departure) == dep);
    CHECK(average_payoff(c, p, x0, controls, 3, PayoffTiming::Arrival) == arr);
}
