#pragma once

#include <boost/rational.hpp>
#include <set>
#include <vector>

#include "stpnet/network.hpp"

namespace stpnet {

using Rat = boost::rational<long long>;

/// Per-step payoff P(iu, ix), fully populated over all control and state
/// indices. Values are exact rationals.
struct PayoffFunction {
    int control_dim;
    int state_dim;
    std::vector<Rat> table;  // row-major by (iu-1)*state_dim + (ix-1)

    static PayoffFunction zero(int control_dim, int state_dim);
    Rat at(int iu, int ix) const { return table[static_cast<std::size_t>(iu - 1) * state_dim + ix - 1]; }
    Rat& at(int iu, int ix) { return table[static_cast<std::size_t>(iu - 1) * state_dim + ix - 1]; }
    Rat max_abs() const;
};

/// Which state a step's payoff is charged against: the state the step arrives
/// in, or the state it departs from. The control is the one applied in that
/// step either way.
enum class PayoffTiming { Arrival, Departure };

/// Finite-horizon average (1/T) sum_{t=1..T} of the per-step payoff along the
/// rollout from x0 driven by the given free control choices (controls[t-1] is
/// applied at step t).
Rat average_payoff(const CompiledNetwork& c, const PayoffFunction& p, const DeltaVector& x0,
                   const std::vector<int>& controls, int horizon,
                   PayoffTiming timing = PayoffTiming::Arrival);

/// A cycle in the control-choice graph: entries (iu, ix) mean control iu is
/// applied at state ix; the successor is the next entry's state (wrapping).
struct CycleResult {
    std::vector<std::pair<int, int>> cycle;
    Rat mean;
};

/// Maximum mean cycle over the full control-choice graph (every state has
/// 2^m out-edges). Karp's dynamic program gives the optimum mean; the cycle
/// itself is recovered from the tight subgraph after reweighting. Among
/// optimal cycles the shortest one with the lexicographically smallest
/// (state, control) sequence is returned.
CycleResult max_mean_cycle(const CompiledNetwork& c, const PayoffFunction& p,
                           PayoffTiming timing = PayoffTiming::Arrival);

/// As max_mean_cycle but restricted to the states reachable from x0.
CycleResult max_mean_cycle_from(const CompiledNetwork& c, const PayoffFunction& p,
                                const DeltaVector& x0,
                                PayoffTiming timing = PayoffTiming::Arrival);

struct OptimalPolicy {
    std::vector<int> transient;              // control indices from x0 to the cycle
    std::vector<std::pair<int, int>> cycle;  // (iu, ix) pairs, departure states
    Rat mean_payoff;
};

/// Infinite-horizon average-payoff optimal control with free controls:
/// the best mean cycle reachable from x0, entered by a shortest control path.
OptimalPolicy optimize(const CompiledNetwork& c, const PayoffFunction& p, const DeltaVector& x0,
                       PayoffTiming timing = PayoffTiming::Arrival);

/// Constrained mode: controls follow u(t+1) = G u(t), so the joint (u, x)
/// orbit is deterministic; the policy is the cycle that orbit enters.
OptimalPolicy optimize_constrained(const CompiledNetwork& c, const PayoffFunction& p,
                                   const DeltaVector& x0, const DeltaVector& u0,
                                   PayoffTiming timing = PayoffTiming::Arrival);

/// The control sequence emitted by a policy for the first `horizon` steps.
std::vector<int> policy_controls(const OptimalPolicy& policy, int horizon);

}  // namespace stpnet
