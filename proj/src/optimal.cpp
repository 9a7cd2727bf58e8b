#include "stpnet/optimal.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>

#include "stpnet/reachability.hpp"

namespace stpnet {

PayoffFunction PayoffFunction::zero(int control_dim, int state_dim) {
    return PayoffFunction{control_dim, state_dim,
                          std::vector<Rat>(static_cast<std::size_t>(control_dim) * state_dim)};
}

Rat PayoffFunction::max_abs() const {
    Rat best(0);
    for (const Rat& v : table) best = std::max(best, boost::abs(v));
    return best;
}

namespace {

int successor(const CompiledNetwork& c, int iu, int ix) {
    return c.L.col_index((iu - 1) * c.state_dim() + ix);
}

Rat edge_payoff(const CompiledNetwork& c, const PayoffFunction& p, PayoffTiming timing, int iu,
                int ix) {
    return timing == PayoffTiming::Arrival ? p.at(iu, successor(c, iu, ix)) : p.at(iu, ix);
}

void check_payoff(const CompiledNetwork& c, const PayoffFunction& p) {
    if (p.control_dim != c.control_dim() || p.state_dim != c.state_dim() ||
        p.table.size() != static_cast<std::size_t>(p.control_dim) * p.state_dim) {
        throw dimension_error("payoff table does not match the network dimensions");
    }
}

/// Karp's dynamic program restricted to the node set `nodes` (delta indices).
/// The induced subgraph must be closed under successors.
Rat karp_max_mean(const CompiledNetwork& c, const PayoffFunction& p, PayoffTiming timing,
                  const std::set<int>& nodes) {
    const int big = c.state_dim();
    const int cap = static_cast<int>(nodes.size());
    std::vector<std::vector<std::optional<Rat>>> f(
        static_cast<std::size_t>(cap) + 1,
        std::vector<std::optional<Rat>>(static_cast<std::size_t>(big) + 1));
    for (int v : nodes) f[0][static_cast<std::size_t>(v)] = Rat(0);
    for (int k = 1; k <= cap; ++k) {
        for (int ix : nodes) {
            const auto& from = f[static_cast<std::size_t>(k) - 1][static_cast<std::size_t>(ix)];
            if (!from) continue;
            for (int iu = 1; iu <= c.control_dim(); ++iu) {
                int iy = successor(c, iu, ix);
                Rat cand = *from + edge_payoff(c, p, timing, iu, ix);
                auto& slot = f[static_cast<std::size_t>(k)][static_cast<std::size_t>(iy)];
                if (!slot || cand > *slot) slot = cand;
            }
        }
    }
    std::optional<Rat> best;
    for (int v : nodes) {
        const auto& top = f[static_cast<std::size_t>(cap)][static_cast<std::size_t>(v)];
        if (!top) continue;
        std::optional<Rat> worst;
        for (int k = 0; k < cap; ++k) {
            const auto& fk = f[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)];
            if (!fk) continue;
            Rat ratio = (*top - *fk) / Rat(cap - k);
            if (!worst || ratio < *worst) worst = ratio;
        }
        if (worst && (!best || *worst > *best)) best = worst;
    }
    if (!best) throw std::logic_error("graph without a cycle; every node has out-edges");
    return *best;
}

struct TightGraph {
    // tight[ix] lists (iy, iu) pairs, sorted by (iy, iu).
    std::map<int, std::vector<std::pair<int, int>>> tight;
};

/// Potentials pi with pi[y] >= pi[x] + (w - mu) on every edge; along optimal
/// cycles equality holds on each edge, so every optimal cycle lives in the
/// tight subgraph and every tight cycle has mean mu.
TightGraph tight_subgraph(const CompiledNetwork& c, const PayoffFunction& p, PayoffTiming timing,
                          const std::set<int>& nodes, const Rat& mu) {
    std::map<int, Rat> pi;
    for (int v : nodes) pi[v] = Rat(0);
    for (std::size_t it = 0; it <= nodes.size(); ++it) {
        bool changed = false;
        for (int ix : nodes) {
            for (int iu = 1; iu <= c.control_dim(); ++iu) {
                int iy = successor(c, iu, ix);
                Rat cand = pi[ix] + edge_payoff(c, p, timing, iu, ix) - mu;
                if (cand > pi[iy]) {
                    pi[iy] = cand;
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
    TightGraph g;
    for (int ix : nodes) {
        auto& out = g.tight[ix];
        for (int iu = 1; iu <= c.control_dim(); ++iu) {
            int iy = successor(c, iu, ix);
            if (pi[iy] == pi[ix] + edge_payoff(c, p, timing, iu, ix) - mu) {
                out.emplace_back(iy, iu);
            }
        }
        std::sort(out.begin(), out.end());
    }
    return g;
}

/// Shortest cycle in the tight subgraph, lexicographically smallest state
/// sequence first (ties by control index). Minimal-length tight cycles are
/// simple, so no visited bookkeeping is needed.
std::vector<std::pair<int, int>> extract_cycle(const TightGraph& g) {
    auto bfs_cycle_len = [&](int s) -> int {
        std::map<int, int> dist;  // first-arrival distance from s
        std::deque<int> q{s};
        dist[s] = 0;
        int best = -1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (auto [w, iu] : g.tight.at(v)) {
                if (w == s) {
                    int len = dist[v] + 1;
                    if (best < 0 || len < best) best = len;
                }
                if (!dist.count(w)) {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
        return best;
    };

    int best_len = -1, best_start = -1;
    for (const auto& [s, _] : g.tight) {
        int len = bfs_cycle_len(s);
        if (len > 0 && (best_len < 0 || len < best_len)) {
            best_len = len;
            best_start = s;
        }
    }
    if (best_len < 0) throw std::logic_error("tight subgraph lost all cycles");

    // Only the first (smallest) start achieving best_len can carry the
    // lexicographically smallest sequence.
    for (const auto& [s, _] : g.tight) {
        if (bfs_cycle_len(s) != best_len) continue;
        // Exact-length reachability back to s.
        std::map<int, std::vector<char>> can;  // can[v][r]: v -> s in exactly r edges
        for (const auto& [v, __] : g.tight)
            can[v] = std::vector<char>(static_cast<std::size_t>(best_len) + 1, 0);
        can[s][0] = 1;
        for (int r = 1; r <= best_len; ++r) {
            for (const auto& [v, out] : g.tight) {
                for (auto [w, iu] : out) {
                    if (can[w][static_cast<std::size_t>(r) - 1]) can[v][static_cast<std::size_t>(r)] = 1;
                }
            }
        }
        std::vector<std::pair<int, int>> cycle;
        int cur = s;
        bool ok = true;
        for (int stepno = 1; stepno <= best_len && ok; ++stepno) {
            ok = false;
            for (auto [w, iu] : g.tight.at(cur)) {  // sorted: smallest state then control
                if (can[w][static_cast<std::size_t>(best_len - stepno)]) {
                    cycle.emplace_back(iu, cur);
                    cur = w;
                    ok = true;
                    break;
                }
            }
        }
        if (ok && cur == s) return cycle;
    }
    throw std::logic_error("cycle extraction failed");
}

CycleResult cycle_on_nodes(const CompiledNetwork& c, const PayoffFunction& p, PayoffTiming timing,
                           const std::set<int>& nodes) {
    Rat mu = karp_max_mean(c, p, timing, nodes);
    TightGraph g = tight_subgraph(c, p, timing, nodes, mu);
    std::vector<std::pair<int, int>> cyc = extract_cycle(g);
    Rat total(0);
    for (auto [iu, ix] : cyc) total += edge_payoff(c, p, timing, iu, ix);
    if (total / Rat(static_cast<long long>(cyc.size())) != mu) {
        throw std::logic_error("extracted cycle does not achieve the optimal mean");
    }
    return CycleResult{std::move(cyc), mu};
}

}  // namespace

Rat average_payoff(const CompiledNetwork& c, const PayoffFunction& p, const DeltaVector& x0,
                   const std::vector<int>& controls, int horizon, PayoffTiming timing) {
    check_payoff(c, p);
    if (horizon < 1) throw dimension_error("average_payoff needs horizon >= 1");
    if (controls.size() < static_cast<std::size_t>(horizon)) {
        throw dimension_error("not enough controls for the horizon");
    }
    int x = x0.index;
    if (x0.dim != c.state_dim()) throw dimension_error("x0 does not match the network");
    Rat total(0);
    for (int t = 1; t <= horizon; ++t) {
        int iu = controls[static_cast<std::size_t>(t) - 1];
        if (iu < 1 || iu > c.control_dim()) throw dimension_error("control index out of range");
        total += edge_payoff(c, p, timing, iu, x);
        x = successor(c, iu, x);
    }
    return total / Rat(horizon);
}

CycleResult max_mean_cycle(const CompiledNetwork& c, const PayoffFunction& p,
                           PayoffTiming timing) {
    check_payoff(c, p);
    std::set<int> all;
    for (int v = 1; v <= c.state_dim(); ++v) all.insert(v);
    return cycle_on_nodes(c, p, timing, all);
}

CycleResult max_mean_cycle_from(const CompiledNetwork& c, const PayoffFunction& p,
                                const DeltaVector& x0, PayoffTiming timing) {
    check_payoff(c, p);
    return cycle_on_nodes(c, p, timing, reachable_closure(c, x0).members);
}

OptimalPolicy optimize(const CompiledNetwork& c, const PayoffFunction& p, const DeltaVector& x0,
                       PayoffTiming timing) {
    CycleResult best = max_mean_cycle_from(c, p, x0, timing);

    std::set<int> on_cycle;
    for (auto [iu, ix] : best.cycle) on_cycle.insert(ix);

    // Shortest control path from x0 to the cycle; smallest control breaks ties.
    std::map<int, std::pair<int, int>> parent;  // state -> (previous state, control)
    std::deque<int> q{x0.index};
    parent[x0.index] = {0, 0};
    int entry = -1;
    if (on_cycle.count(x0.index)) entry = x0.index;
    while (entry < 0 && !q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int iu = 1; iu <= c.control_dim() && entry < 0; ++iu) {
            int w = successor(c, iu, v);
            if (parent.count(w)) continue;
            parent[w] = {v, iu};
            if (on_cycle.count(w)) entry = w;
            q.push_back(w);
        }
    }
    if (entry < 0) throw std::logic_error("optimal cycle not reachable from x0");

    std::vector<int> transient;
    for (int v = entry; v != x0.index;) {
        auto [pv, iu] = parent[v];
        transient.push_back(iu);
        v = pv;
    }
    std::reverse(transient.begin(), transient.end());

    // Rotate the cycle so it departs from the entry state.
    std::vector<std::pair<int, int>> cyc = best.cycle;
    auto it = std::find_if(cyc.begin(), cyc.end(), [&](auto& e) { return e.second == entry; });
    std::rotate(cyc.begin(), it, cyc.end());

    return OptimalPolicy{std::move(transient), std::move(cyc), best.mean};
}

OptimalPolicy optimize_constrained(const CompiledNetwork& c, const PayoffFunction& p,
                                   const DeltaVector& x0, const DeltaVector& u0,
                                   PayoffTiming timing) {
    check_payoff(c, p);
    // Deterministic orbit of (u, x); find where it first repeats.
    std::map<std::pair<int, int>, int> seen;
    std::vector<std::pair<int, int>> orbit;  // (iu, ix)
    DeltaVector u = u0;
    DeltaVector x = x0;
    while (!seen.count({u.index, x.index})) {
        seen[{u.index, x.index}] = static_cast<int>(orbit.size());
        orbit.emplace_back(u.index, x.index);
        DeltaVector nx = step(c, u, x);
        u = control_step(c, u);
        x = nx;
    }
    int start = seen[{u.index, x.index}];
    std::vector<int> transient;
    for (int t = 0; t < start; ++t) transient.push_back(orbit[static_cast<std::size_t>(t)].first);
    std::vector<std::pair<int, int>> cyc(orbit.begin() + start, orbit.end());
    Rat total(0);
    for (auto [iu, ix] : cyc) total += edge_payoff(c, p, timing, iu, ix);
    Rat mean = total / Rat(static_cast<long long>(cyc.size()));
    return OptimalPolicy{std::move(transient), std::move(cyc), mean};
}

std::vector<int> policy_controls(const OptimalPolicy& policy, int horizon) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(horizon));
    for (int u : policy.transient) {
        if (static_cast<int>(out.size()) >= horizon) break;
        out.push_back(u);
    }
    std::size_t k = 0;
    while (static_cast<int>(out.size()) < horizon) {
        out.push_back(policy.cycle[k % policy.cycle.size()].first);
        ++k;
    }
    return out;
}

}  // namespace stpnet
