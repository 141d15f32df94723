#pragma once

// Decorated-tree plumbing graphs: vertices carry integer framings
// (self-intersections), edges are unordered pairs forming a tree. Provides
// the intersection matrix, an exact-arithmetic negative-definiteness test,
// minimality, star-shape decomposition and a canonical form for isomorphism.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "qhd/errors.hpp"

namespace qhd {

struct PlumbingGraph {
    std::vector<std::string> ids;            // vertex names (ASCII tokens)
    std::vector<int> framing;                // framing[i] decorates vertex i
    std::vector<std::pair<int, int>> edges;  // index pairs, first < second

    int size() const { return static_cast<int>(ids.size()); }

    int add_vertex(const std::string& id, int f) {
        ids.push_back(id);
        framing.push_back(f);
        return size() - 1;
    }

    void add_edge(int a, int b) {
        if (a == b)
            throw parse_error("self-loop at vertex " + ids[a]);
        if (a > b) std::swap(a, b);
        edges.emplace_back(a, b);
    }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(ids.size());
        for (auto [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        return adj;
    }

    int valency(int v) const {
        int d = 0;
        for (auto [a, b] : edges)
            if (a == v || b == v) ++d;
        return d;
    }

    std::optional<int> index_of(const std::string& id) const {
        for (int i = 0; i < size(); ++i)
            if (ids[i] == id) return i;
        return std::nullopt;
    }

    bool is_tree() const {
        int n = size();
        if (n == 0) return false;
        if (static_cast<int>(edges.size()) != n - 1) return false;
        std::set<std::pair<int, int>> seen;
        for (auto e : edges) {
            if (e.first == e.second) return false;
            if (!seen.insert(e).second) return false;
        }
        auto adj = adjacency();
        std::vector<char> vis(n, 0);
        std::vector<int> stack{0};
        vis[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (!vis[w]) {
                    vis[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
        }
        return count == n;
    }

    void validate_tree() const {
        if (!is_tree())
            throw parse_error("graph is not a tree (connected, |E| = |V|-1, simple)");
    }
};

// Convenience builder: a star with the given center framing and legs, each
// leg listed from the vertex adjacent to the center outward.
inline PlumbingGraph make_star(int center_framing, const std::vector<std::vector<int>>& legs) {
    PlumbingGraph g;
    int c = g.add_vertex("c", center_framing);
    for (std::size_t li = 0; li < legs.size(); ++li) {
        int prev = c;
        for (std::size_t j = 0; j < legs[li].size(); ++j) {
            int v = g.add_vertex("l" + std::to_string(li) + "_" + std::to_string(j),
                                 legs[li][j]);
            g.add_edge(prev, v);
            prev = v;
        }
    }
    return g;
}

inline PlumbingGraph make_chain(const std::vector<int>& framings) {
    PlumbingGraph g;
    int prev = -1;
    for (std::size_t i = 0; i < framings.size(); ++i) {
        int v = g.add_vertex("v" + std::to_string(i), framings[i]);
        if (prev >= 0) g.add_edge(prev, v);
        prev = v;
    }
    return g;
}

// ---------------------------------------------------------------------------
// Canonical form (framing-decorated AHU encoding, minimized over centroids).

namespace detail {

inline std::vector<int> tree_centroids(const PlumbingGraph& g) {
    int n = g.size();
    if (n == 1) return {0};
    auto adj = g.adjacency();
    std::vector<int> sub(n, 1), order, parent(n, -1);
    order.reserve(n);
    order.push_back(0);
    parent[0] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int w : adj[order[i]])
            if (w != parent[order[i]]) {
                parent[w] = order[i];
                order.push_back(w);
            }
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (*it != 0) sub[parent[*it]] += sub[*it];
    std::vector<int> cents;
    for (int v = 0; v < n; ++v) {
        int heaviest = (v == 0) ? 0 : n - sub[v];
        for (int w : adj[v])
            if (v == 0 ? (w != 0) : (w != parent[v])) heaviest = std::max(heaviest, sub[w]);
        if (heaviest <= n / 2) cents.push_back(v);
    }
    return cents;
}

inline std::string encode_rooted(const PlumbingGraph& g,
                                 const std::vector<std::vector<int>>& adj, int v,
                                 int parent, std::vector<int>* order_out) {
    std::vector<std::pair<std::string, int>> kids;
    for (int w : adj[v])
        if (w != parent) kids.emplace_back(encode_rooted(g, adj, w, v, nullptr), w);
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + std::to_string(g.framing[v]);
    if (order_out) order_out->push_back(v);
    for (auto& [enc, w] : kids) {
        if (order_out) {
            // re-walk this child recording the order; encodings are stable
            encode_rooted(g, adj, w, v, order_out);
        }
        s += enc;
    }
    s += ")";
    return s;
}

} // namespace detail

// Canonical string encoding, invariant under vertex relabelling.
inline std::string canonical_form(const PlumbingGraph& g) {
    g.validate_tree();
    auto adj = g.adjacency();
    std::string best;
    for (int c : detail::tree_centroids(g)) {
        std::string enc = detail::encode_rooted(g, adj, c, -1, nullptr);
        if (best.empty() || enc < best) best = enc;
    }
    return best;
}

// Vertex indices in canonical traversal order (preorder of the canonical
// rooted encoding). Matrices are indexed in this order.
inline std::vector<int> canonical_order(const PlumbingGraph& g) {
    g.validate_tree();
    auto adj = g.adjacency();
    std::string best;
    int best_root = -1;
    for (int c : detail::tree_centroids(g)) {
        std::string enc = detail::encode_rooted(g, adj, c, -1, nullptr);
        if (best.empty() || enc < best) {
            best = enc;
            best_root = c;
        }
    }
    std::vector<int> order;
    order.reserve(g.size());
    detail::encode_rooted(g, adj, best_root, -1, &order);
    return order;
}

inline bool is_isomorphic(const PlumbingGraph& a, const PlumbingGraph& b) {
    if (a.size() != b.size() || a.edges.size() != b.edges.size()) return false;
    return canonical_form(a) == canonical_form(b);
}

// ---------------------------------------------------------------------------
// Intersection matrix and definiteness.

// Symmetric matrix in canonical vertex order: diagonal = framings, 1 per edge.
inline std::vector<std::vector<std::int64_t>> intersection_matrix(const PlumbingGraph& g) {
    auto order = canonical_order(g);
    std::vector<int> pos(g.size());
    for (int i = 0; i < g.size(); ++i) pos[order[i]] = i;
    std::vector<std::vector<std::int64_t>> m(g.size(),
                                             std::vector<std::int64_t>(g.size(), 0));
    for (int i = 0; i < g.size(); ++i) m[pos[i]][pos[i]] = g.framing[i];
    for (auto [a, b] : g.edges) {
        m[pos[a]][pos[b]] = 1;
        m[pos[b]][pos[a]] = 1;
    }
    return m;
}

// Exact rational LDL-style elimination; no floating point anywhere.
inline bool matrix_negative_definite(std::vector<std::vector<mpq_class>> m) {
    std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i][i] >= 0) return false;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (m[i][j] == 0) continue;
            mpq_class f = m[i][j] / m[i][i];
            for (std::size_t k = i; k < n; ++k) m[j][k] -= f * m[i][k];
            m[j][i] = 0;
        }
    }
    return true;
}

inline bool is_negative_definite(const PlumbingGraph& g) {
    auto mi = intersection_matrix(g);
    std::vector<std::vector<mpq_class>> m(mi.size());
    for (std::size_t i = 0; i < mi.size(); ++i)
        for (auto v : mi[i]) m[i].emplace_back(static_cast<long>(v));
    return matrix_negative_definite(m);
}

// Minimal good resolution: no (-1)-framed vertex of valency <= 2. A
// valency->=3 (-1)-vertex (as in the family base graphs) does not count.
inline bool is_minimal(const PlumbingGraph& g) {
    for (int v = 0; v < g.size(); ++v)
        if (g.framing[v] == -1 && g.valency(v) <= 2) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Star shape.

struct StarShape {
    int center = -1;                      // vertex index in the source graph
    int center_framing = 0;
    std::vector<std::vector<int>> legs;   // framings, center-adjacent first
};

inline StarShape star_decomposition(const PlumbingGraph& g) {
    g.validate_tree();
    auto adj = g.adjacency();
    std::vector<int> branch;
    for (int v = 0; v < g.size(); ++v)
        if (adj[v].size() >= 3) branch.push_back(v);
    if (branch.size() != 1)
        throw not_star_shaped(branch.empty() ? "no vertex of valency >= 3"
                                             : "several vertices of valency >= 3");
    StarShape s;
    s.center = branch[0];
    s.center_framing = g.framing[s.center];
    for (int w : adj[s.center]) {
        std::vector<int> leg;
        int prev = s.center, cur = w;
        while (true) {
            leg.push_back(g.framing[cur]);
            int next = -1;
            for (int u : adj[cur])
                if (u != prev) next = u;
            if (next < 0) break;
            prev = cur;
            cur = next;
        }
        s.legs.push_back(std::move(leg));
    }
    std::sort(s.legs.begin(), s.legs.end());
    return s;
}

inline PlumbingGraph assemble_star(const StarShape& s) {
    return make_star(s.center_framing, s.legs);
}

// ---------------------------------------------------------------------------
// Text and JSON formats.
//
// Text: one graph per file, lines "v <id> <framing>" then "e <id> <id>",
// '#' starts a comment.

inline PlumbingGraph parse_graph(std::istream& in) {
    PlumbingGraph g;
    std::map<std::string, int> index;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "v") {
            std::string id;
            long f;
            if (!(ls >> id >> f))
                throw parse_error("line " + std::to_string(lineno) + ": expected 'v <id> <framing>'");
            if (index.count(id))
                throw parse_error("duplicate vertex id '" + id + "'");
            index[id] = g.add_vertex(id, static_cast<int>(f));
        } else if (kind == "e") {
            std::string a, b;
            if (!(ls >> a >> b))
                throw parse_error("line " + std::to_string(lineno) + ": expected 'e <id> <id>'");
            if (!index.count(a) || !index.count(b))
                throw parse_error("edge references unknown vertex on line " + std::to_string(lineno));
            g.add_edge(index[a], index[b]);
        } else {
            throw parse_error("line " + std::to_string(lineno) + ": unknown record '" + kind + "'");
        }
    }
    g.validate_tree();
    return g;
}

inline PlumbingGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

inline std::string format_graph(const PlumbingGraph& g) {
    std::ostringstream out;
    for (int i = 0; i < g.size(); ++i)
        out << "v " << g.ids[i] << " " << g.framing[i] << "\n";
    for (auto [a, b] : g.edges) {
        auto x = g.ids[a], y = g.ids[b];
        if (y < x) std::swap(x, y);
        out << "e " << x << " " << y << "\n";
    }
    return out.str();
}

inline nlohmann::json graph_to_json(const PlumbingGraph& g) {
    nlohmann::json vertices = nlohmann::json::object();
    for (int i = 0; i < g.size(); ++i) vertices[g.ids[i]] = g.framing[i];
    std::vector<std::pair<std::string, std::string>> es;
    for (auto [a, b] : g.edges) {
        auto x = g.ids[a], y = g.ids[b];
        if (y < x) std::swap(x, y);
        es.emplace_back(x, y);
    }
    std::sort(es.begin(), es.end());
    nlohmann::json edges = nlohmann::json::array();
    for (auto& [x, y] : es) edges.push_back({x, y});
    return nlohmann::json{{"vertices", vertices}, {"edges", edges}};
}

} // namespace qhd
