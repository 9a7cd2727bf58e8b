#pragma once

#include <optional>
#include <set>
#include <utility>

#include "stpnet/network.hpp"

namespace stpnet {

/// Rollout under the network's own control dynamics: T+1 states, T+1 controls
/// (controls[t] drives states[t] -> states[t+1]).
struct Trajectory {
    std::vector<DeltaVector> states;
    std::vector<DeltaVector> controls;
};

struct ReachableSet {
    int horizon;
    std::set<int> members;  // delta indices in [1, 2^n]

    bool operator==(const ReachableSet&) const = default;
};

Trajectory trajectory(const CompiledNetwork& c, const DeltaVector& x0, const DeltaVector& u0,
                      int horizon);

/// Column reading of the step-t successors with the control sequence pinned
/// by u0: the distinct column indices of time_indexed_matrix(c, t-1) |x u0.
ReachableSet paper_column_reachable(const CompiledNetwork& c, const DeltaVector& u0, int t);

/// Standard free-control semantics: R_0 = {x0},
/// R_{s+1} = { L |x u |x x : u in Delta_{2^m}, x in R_s }; returns R_t.
ReachableSet reachable_free_control(const CompiledNetwork& c, const DeltaVector& x0, int t);

/// Cumulative closure of reachable_free_control; stabilizes within 2^n
/// iterations.
ReachableSet reachable_closure(const CompiledNetwork& c, const DeltaVector& x0);

/// Whether xd is reachable from x0 under free controls; the witness is the
/// smallest horizon, searched up to 2^{n+m}.
std::pair<bool, std::optional<int>> controllable_to(const CompiledNetwork& c,
                                                    const DeltaVector& x0,
                                                    const DeltaVector& xd);

}  // namespace stpnet
