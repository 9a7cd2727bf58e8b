#include "stpnet/reachability.hpp"

namespace stpnet {

Trajectory trajectory(const CompiledNetwork& c, const DeltaVector& x0, const DeltaVector& u0,
                      int horizon) {
    if (horizon < 0) throw dimension_error("horizon must be >= 0");
    Trajectory tr;
    tr.states.push_back(x0);
    tr.controls.push_back(u0);
    for (int t = 0; t < horizon; ++t) {
        tr.states.push_back(step(c, tr.controls.back(), tr.states.back()));
        tr.controls.push_back(control_step(c, tr.controls.back()));
    }
    return tr;
}

ReachableSet paper_column_reachable(const CompiledNetwork& c, const DeltaVector& u0, int t) {
    if (t < 1) throw dimension_error("paper_column_reachable needs t >= 1");
    LogicalMatrix block = stp(time_indexed_matrix(c, t - 1), u0);
    ReachableSet r{t, {}};
    for (int j = 1; j <= block.cols(); ++j) r.members.insert(block.col_index(j));
    return r;
}

ReachableSet reachable_free_control(const CompiledNetwork& c, const DeltaVector& x0, int t) {
    if (t < 0) throw dimension_error("horizon must be >= 0");
    if (x0.dim != c.state_dim()) throw dimension_error("x0 does not match the network");
    std::set<int> cur{x0.index};
    for (int s = 0; s < t; ++s) {
        std::set<int> next;
        for (int ix : cur) {
            for (int iu = 1; iu <= c.control_dim(); ++iu) {
                next.insert(c.L.col_index((iu - 1) * c.state_dim() + ix));
            }
        }
        cur.swap(next);
    }
    return ReachableSet{t, std::move(cur)};
}

ReachableSet reachable_closure(const CompiledNetwork& c, const DeltaVector& x0) {
    if (x0.dim != c.state_dim()) throw dimension_error("x0 does not match the network");
    std::set<int> all{x0.index};
    std::set<int> frontier = all;
    while (!frontier.empty()) {
        std::set<int> next;
        for (int ix : frontier) {
            for (int iu = 1; iu <= c.control_dim(); ++iu) {
                int iy = c.L.col_index((iu - 1) * c.state_dim() + ix);
                if (all.insert(iy).second) next.insert(iy);
            }
        }
        frontier.swap(next);
    }
    return ReachableSet{-1, std::move(all)};
}

std::pair<bool, std::optional<int>> controllable_to(const CompiledNetwork& c,
                                                    const DeltaVector& x0,
                                                    const DeltaVector& xd) {
    if (x0.dim != c.state_dim() || xd.dim != c.state_dim()) {
        throw dimension_error("states do not match the network");
    }
    const long long bound = static_cast<long long>(c.state_dim()) * c.control_dim();
    std::set<int> cur{x0.index};
    for (long long t = 0; t <= bound; ++t) {
        if (cur.count(xd.index)) return {true, static_cast<int>(t)};
        std::set<int> next;
        for (int ix : cur) {
            for (int iu = 1; iu <= c.control_dim(); ++iu) {
                next.insert(c.L.col_index((iu - 1) * c.state_dim() + ix));
            }
        }
        cur.swap(next);
    }
    return {false, std::nullopt};
}

}  // namespace stpnet
