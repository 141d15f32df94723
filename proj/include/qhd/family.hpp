#pragma once

// The inductively defined graph families A, B, C: blow-up moves at the
// current (-1)-vertex, breadth-first generation with canonical-form
// deduplication, reverse-search membership, and the dual star construction
// (central framing b-s, legs n_i/(n_i - m_i)).

#include <cstdint>
#include <deque>
#include <functional>
#include <future>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "qhd/errors.hpp"
#include "qhd/hj.hpp"
#include "qhd/plumbing.hpp"

namespace qhd {

enum class FamilyTag { A, B, C };

inline std::string to_string(FamilyTag t) {
    switch (t) {
        case FamilyTag::A: return "A";
        case FamilyTag::B: return "B";
        case FamilyTag::C: return "C";
    }
    return "?";
}

inline std::optional<FamilyTag> family_from_string(const std::string& s) {
    if (s == "A" || s == "a") return FamilyTag::A;
    if (s == "B" || s == "b") return FamilyTag::B;
    if (s == "C" || s == "c") return FamilyTag::C;
    return std::nullopt;
}

struct FamilySpec {
    FamilyTag tag;
    PlumbingGraph base;
    int terminal_framing;
};

// Base graphs: center (-1) with leaves (-3,-3,-3) / (-2,-4,-4) / (-2,-6,-3);
// the final (-1) becomes -4 / -3 / -2 respectively.
inline FamilySpec family_spec(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::A:
            return {tag, make_star(-1, {{-3}, {-3}, {-3}}), -4};
        case FamilyTag::B:
            return {tag, make_star(-1, {{-2}, {-4}, {-4}}), -3};
        case FamilyTag::C:
            return {tag, make_star(-1, {{-2}, {-6}, {-3}}), -2};
    }
    throw unknown_family("bad tag");
}

struct VertexBlowup {
    int at;
};
struct EdgeBlowup {
    int u, v;
};
using BlowupMove = std::variant<VertexBlowup, EdgeBlowup>;

// Vertex blow-up: attach a fresh (-1)-vertex to v and decrease framing(v).
// Edge blow-up: replace {u,v} by u - w - v with w = -1, decreasing both ends.
inline PlumbingGraph blow_up(const PlumbingGraph& g, const BlowupMove& move) {
    PlumbingGraph out = g;
    if (std::holds_alternative<VertexBlowup>(move)) {
        int v = std::get<VertexBlowup>(move).at;
        if (v < 0 || v >= g.size())
            throw invalid_target("vertex index out of range");
        int w = out.add_vertex("b" + std::to_string(out.size()), -1);
        out.framing[v] -= 1;
        out.add_edge(v, w);
    } else {
        auto [u, v] = std::get<EdgeBlowup>(move);
        auto key = std::minmax(u, v);
        auto it = std::find(out.edges.begin(), out.edges.end(),
                            std::make_pair(key.first, key.second));
        if (it == out.edges.end())
            throw invalid_target("no such edge");
        out.edges.erase(it);
        int w = out.add_vertex("b" + std::to_string(out.size()), -1);
        out.framing[u] -= 1;
        out.framing[v] -= 1;
        out.add_edge(u, w);
        out.add_edge(w, v);
    }
    return out;
}

// Inverse move on a (-1)-vertex of valency <= 2: remove it, raise the
// neighbours' framings, and reconnect them if there were two.
inline PlumbingGraph blow_down(const PlumbingGraph& g, int v) {
    if (v < 0 || v >= g.size())
        throw invalid_target("vertex index out of range");
    if (g.framing[v] != -1)
        throw not_blowable_down("vertex framing is not -1");
    auto adj = g.adjacency();
    if (adj[v].size() > 2)
        throw not_blowable_down("vertex has valency > 2");
    PlumbingGraph out;
    std::vector<int> remap(g.size(), -1);
    for (int i = 0; i < g.size(); ++i)
        if (i != v) remap[i] = out.add_vertex(g.ids[i], g.framing[i]);
    for (int w : adj[v]) out.framing[remap[w]] += 1;
    for (auto [a, b] : g.edges)
        if (a != v && b != v) out.add_edge(remap[a], remap[b]);
    if (adj[v].size() == 2) out.add_edge(remap[adj[v][0]], remap[adj[v][1]]);
    return out;
}

enum class BlowupPolicy {
    EdgesOnly,       // only edge blow-ups (3-legged members)
    StarPreserving,  // vertex blow-ups allowed when the result keeps a unique
                     // branch vertex (center move or a valency<=1 target)
    All,
};

namespace detail {

inline int unique_minus_one(const PlumbingGraph& g) {
    int found = -1;
    for (int v = 0; v < g.size(); ++v)
        if (g.framing[v] == -1) {
            if (found >= 0) throw bad_parameters("several (-1)-vertices");
            found = v;
        }
    if (found < 0) throw bad_parameters("no (-1)-vertex");
    return found;
}

inline int branch_vertex_count(const PlumbingGraph& g) {
    auto adj = g.adjacency();
    int n = 0;
    for (auto& a : adj)
        if (a.size() >= 3) ++n;
    return n;
}

// Moves admissible for family generation: targets are the current
// (-1)-vertex and its incident edges.
inline std::vector<BlowupMove> admissible_moves(const PlumbingGraph& g, BlowupPolicy policy) {
    int v = unique_minus_one(g);
    auto adj = g.adjacency();
    std::vector<BlowupMove> moves;
    bool vertex_ok = false;
    switch (policy) {
        case BlowupPolicy::EdgesOnly: vertex_ok = false; break;
        case BlowupPolicy::All: vertex_ok = true; break;
        case BlowupPolicy::StarPreserving:
            // valency 2 would create a second branch vertex
            vertex_ok = adj[v].size() != 2;
            break;
    }
    if (vertex_ok) moves.push_back(VertexBlowup{v});
    for (int w : adj[v]) moves.push_back(EdgeBlowup{v, w});
    return moves;
}

} // namespace detail

inline PlumbingGraph terminal_substitution(const PlumbingGraph& g, int terminal_framing) {
    int v = detail::unique_minus_one(g);
    PlumbingGraph out = g;
    out.framing[v] = terminal_framing;
    return out;
}

// All family members with at most max_vertices vertices, deduplicated up to
// isomorphism and sorted by (size, canonical form). The frontier can be
// expanded by several workers; the canonical-form set is the only shared
// state.
inline std::vector<PlumbingGraph> generate_family(const FamilySpec& spec, int max_vertices,
                                                  BlowupPolicy policy = BlowupPolicy::StarPreserving,
                                                  int threads = 1) {
    if (max_vertices < 4) throw bad_parameters("max_vertices must be >= 4");
    std::vector<PlumbingGraph> result;
    std::set<std::string> seen_states;   // pre-substitution states
    std::set<std::string> seen_results;  // emitted members
    std::mutex mtx;

    std::deque<PlumbingGraph> frontier{spec.base};
    seen_states.insert(canonical_form(spec.base));
    auto emit = [&](const PlumbingGraph& state) {
        PlumbingGraph member = terminal_substitution(state, spec.terminal_framing);
        std::lock_guard<std::mutex> lock(mtx);
        if (seen_results.insert(canonical_form(member)).second) result.push_back(member);
    };
    emit(frontier.front());

    while (!frontier.empty()) {
        std::vector<PlumbingGraph> layer(frontier.begin(), frontier.end());
        frontier.clear();
        auto expand = [&](const PlumbingGraph& state) {
            if (state.size() >= max_vertices) return;
            for (const auto& move : detail::admissible_moves(state, policy)) {
                PlumbingGraph next = blow_up(state, move);
                bool fresh;
                {
                    std::lock_guard<std::mutex> lock(mtx);
                    fresh = seen_states.insert(canonical_form(next)).second;
                }
                if (!fresh) continue;
                emit(next);
                {
                    std::lock_guard<std::mutex> lock(mtx);
                    frontier.push_back(next);
                }
            }
        };
        if (threads <= 1 || layer.size() < 4) {
            for (const auto& s : layer) expand(s);
        } else {
            std::vector<std::future<void>> futs;
            std::size_t chunk = (layer.size() + threads - 1) / threads;
            for (int t = 0; t < threads; ++t) {
                std::size_t lo = t * chunk, hi = std::min(layer.size(), lo + chunk);
                if (lo >= hi) break;
                futs.push_back(std::async(std::launch::async, [&, lo, hi] {
                    for (std::size_t i = lo; i < hi; ++i) expand(layer[i]);
                }));
            }
            for (auto& f : futs) f.get();
        }
    }
    std::sort(result.begin(), result.end(), [](const PlumbingGraph& a, const PlumbingGraph& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return canonical_form(a) < canonical_form(b);
    });
    return result;
}

// Membership by reverse search: undo the terminal substitution at every
// candidate vertex, then reverse blow-ups back to the base graph. At every
// intermediate state the (-1)-vertex is the last one created, so the undo is
// forced: a valency-1 (-1) undoes a vertex blow-up, a valency-2 one an edge
// blow-up, and the restored state must again have a unique (-1)-vertex next
// to the removed one.
inline bool is_in_family(const PlumbingGraph& g, const FamilySpec& spec) {
    if (!g.is_tree()) return false;
    std::string base_form = canonical_form(spec.base);

    auto reverse = [&](PlumbingGraph cur) -> bool {
        while (true) {
            if (canonical_form(cur) == base_form) return true;
            if (cur.size() <= spec.base.size()) return false;
            int w = -1;
            for (int v = 0; v < cur.size(); ++v)
                if (cur.framing[v] == -1) {
                    if (w >= 0) return false;
                    w = v;
                }
            if (w < 0) return false;
            auto adj = cur.adjacency();
            if (adj[w].size() > 2 || adj[w].empty()) return false;
            PlumbingGraph prev = blow_down(cur, w);
            int count = 0;
            bool at_neighbor = false;
            for (int v = 0; v < prev.size(); ++v)
                if (prev.framing[v] == -1) ++count;
            for (int nb : adj[w]) {
                int idx = nb > w ? nb - 1 : nb;
                if (prev.framing[idx] == -1) at_neighbor = true;
            }
            if (count != 1 || !at_neighbor) return false;
            cur = std::move(prev);
        }
    };

    for (int v = 0; v < g.size(); ++v) {
        if (g.framing[v] != spec.terminal_framing) continue;
        PlumbingGraph cand = g;
        cand.framing[v] = -1;
        bool multiple = false;
        for (int u = 0; u < cand.size(); ++u)
            if (u != v && cand.framing[u] == -1) multiple = true;
        if (multiple) continue;
        if (reverse(cand)) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Dual star graph: legs n_i/m_i become n_i/(n_i - m_i), center -b becomes
// b - s. Involutive up to isomorphism.

inline PlumbingGraph dual_star(const PlumbingGraph& g) {
    StarShape s = star_decomposition(g);
    std::int64_t b = -static_cast<std::int64_t>(s.center_framing);
    std::vector<std::vector<int>> dual_legs;
    for (const auto& leg : s.legs) {
        HJExpansion coeffs;
        for (int f : leg) {
            if (f >= -1)
                throw invalid_leg("leg framing " + std::to_string(f) + " is >= -1");
            coeffs.push_back(-static_cast<std::int64_t>(f));
        }
        auto [n, m] = hj_evaluate(coeffs);
        HJExpansion dual = dual_expansion(n, m);
        std::vector<int> dleg;
        for (auto a : dual) dleg.push_back(static_cast<int>(-a));
        dual_legs.push_back(std::move(dleg));
    }
    std::sort(dual_legs.begin(), dual_legs.end());
    return make_star(static_cast<int>(b - static_cast<std::int64_t>(s.legs.size())), dual_legs);
}

} // namespace qhd
